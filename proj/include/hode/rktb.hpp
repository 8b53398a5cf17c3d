#pragma once

#include <Eigen/Dense>
#include <functional>
#include <span>

#include "hode/draws.hpp"
#include "hode/numerics.hpp"
#include "hode/ode_model.hpp"
#include "hode/spline.hpp"

namespace hode {

// Shared knobs for the two projection methods. g_density weights the RKTB
// projection integral (empty means Uniform(0,1)); weight is the TS binding
// weight (empty means t^q (1-t)^q).
struct TwoStepOptions {
  int quad_nodes = 64;
  int starts = 4;
  double tol = 1e-8;
  double max_discard_frac = 0.05;
  std::function<double(double)> g_density;
  std::function<double(double)> weight;
};

// Squared L2(g) distance between the spline f(., beta) and the grid solution
// at eta, by quadrature. Divergence at eta maps to +inf so optimizers skip it.
double projection_objective(const OdeSystem& system, const Eigen::VectorXd& beta,
                            const SplineBasis& basis, std::span<const double> eta, int r_n,
                            const QuadratureRule& quad,
                            const std::function<double(double)>& g_density = {});

// Two-step posterior through the solution-distance projection: each cycle
// draws sigma^2, then beta, then minimizes the projection objective over the
// parameter box.
PosteriorDraws run_rktb(const OdeSystem& system, std::span<const double> x,
                        std::span<const double> y, const SplineBasis& basis, double prior_a,
                        double prior_b, int r_n, int n_draws, RngStream& rng,
                        const TwoStepOptions& options = {});

}  // namespace hode
