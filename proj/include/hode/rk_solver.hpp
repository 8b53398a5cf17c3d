#pragma once

#include <Eigen/Dense>
#include <span>
#include <stdexcept>
#include <vector>

#include "hode/ode_model.hpp"

namespace hode {

// Thrown when a stage evaluation produces a non-finite value.
struct DivergedTrajectory : std::runtime_error {
  int stage;
  double t;
  DivergedTrajectory(int stage_, double t_)
      : std::runtime_error("trajectory diverged at stage " + std::to_string(stage_) +
                           ", t = " + std::to_string(t_)),
        stage(stage_),
        t(t_) {}
};

// Solution and its first q-1 derivatives on the equispaced grid k/r_n,
// k = 0..r_n. states is (r_n+1) x q; row k holds
// (psi(a_k), psi'(a_k), ..., psi^(q-1)(a_k)).
struct GridSolution {
  std::vector<double> grid_points;
  Eigen::MatrixXd states;
  std::vector<double> theta;
  double step = 0.0;

  int r_n() const { return static_cast<int>(grid_points.size()) - 1; }
};

// Stage combination coefficients, rows nu = 1..q. The last row is always the
// classical RK4 weight vector (1/6, 1/3, 1/3, 1/6).
Eigen::MatrixXd gamma_coefficients(int q);

// One step of the four-stage scheme from state z at time t. z holds the
// function and its first q-1 derivatives.
std::vector<double> rk_step(const OdeSystem& system, double t, std::span<const double> z,
                            std::span<const double> theta, double h);

GridSolution solve(const OdeSystem& system, std::span<const double> theta, int r_n);

// Local Taylor evaluation from the nearest grid point at or below t, using H
// for the q-th derivative term. Exact at grid points.
double eval_dense(const GridSolution& sol, const OdeSystem& system, double t);

// d f_{theta,r_n}(t) / d theta at each t in t_list by central differences;
// returns |t_list| x p.
Eigen::MatrixXd sensitivity(const OdeSystem& system, std::span<const double> theta, int r_n,
                            std::span<const double> t_list);

}  // namespace hode
