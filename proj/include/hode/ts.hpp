#pragma once

#include <Eigen/Dense>
#include <functional>
#include <span>

#include "hode/draws.hpp"
#include "hode/numerics.hpp"
#include "hode/ode_model.hpp"
#include "hode/rktb.hpp"
#include "hode/spline.hpp"

namespace hode {

// Weighted squared norm of the binding function along the spline and its
// first q derivatives; no ODE solves. Requires basis order m >= q+2.
double ts_objective(const OdeSystem& system, const Eigen::VectorXd& beta,
                    const SplineBasis& basis, std::span<const double> eta,
                    const QuadratureRule& quad,
                    const std::function<double(double)>& weight = {});

// Default binding weight t^q (1-t)^q; vanishes with its first q-1 derivatives
// at both endpoints.
double default_ts_weight(int q, double t);

// Two-step posterior through the binding-function criterion.
PosteriorDraws run_ts(const OdeSystem& system, std::span<const double> x,
                      std::span<const double> y, const SplineBasis& basis, double prior_a,
                      double prior_b, int n_draws, RngStream& rng,
                      const TwoStepOptions& options = {});

}  // namespace hode
