#include "hode/rktb.hpp"

#include <cmath>
#include <limits>

#include "hode/rk_solver.hpp"
#include "two_step_common.hpp"

namespace hode {

namespace {

double projection_objective_cached(const OdeSystem& system,
                                   const Eigen::VectorXd& spline_at_nodes,
                                   std::span<const double> eta, int r_n,
                                   const QuadratureRule& quad,
                                   const Eigen::VectorXd& g_at_nodes) {
  GridSolution sol;
  try {
    sol = solve(system, eta, r_n);
  } catch (const DivergedTrajectory&) {
    return std::numeric_limits<double>::infinity();
  }
  double acc = 0.0;
  for (std::size_t i = 0; i < quad.nodes.size(); ++i) {
    const double d = spline_at_nodes[static_cast<Eigen::Index>(i)] -
                     eval_dense(sol, system, quad.nodes[i]);
    acc += quad.weights[i] * g_at_nodes[static_cast<Eigen::Index>(i)] * d * d;
  }
  return acc;
}

Eigen::VectorXd density_at_nodes(const QuadratureRule& quad,
                                 const std::function<double(double)>& g) {
  Eigen::VectorXd out(static_cast<Eigen::Index>(quad.nodes.size()));
  for (std::size_t i = 0; i < quad.nodes.size(); ++i)
    out[static_cast<Eigen::Index>(i)] = g ? g(quad.nodes[i]) : 1.0;
  return out;
}

}  // namespace

double projection_objective(const OdeSystem& system, const Eigen::VectorXd& beta,
                            const SplineBasis& basis, std::span<const double> eta, int r_n,
                            const QuadratureRule& quad,
                            const std::function<double(double)>& g_density) {
  require_inside_box(eta, system.theta_box, "projection_objective");
  Eigen::VectorXd spline_vals(static_cast<Eigen::Index>(quad.nodes.size()));
  for (std::size_t i = 0; i < quad.nodes.size(); ++i)
    spline_vals[static_cast<Eigen::Index>(i)] = basis_eval(basis, quad.nodes[i], 0).dot(beta);
  return projection_objective_cached(system, spline_vals, eta, r_n, quad,
                                     density_at_nodes(quad, g_density));
}

PosteriorDraws run_rktb(const OdeSystem& system, std::span<const double> x,
                        std::span<const double> y, const SplineBasis& basis, double prior_a,
                        double prior_b, int r_n, int n_draws, RngStream& rng,
                        const TwoStepOptions& options) {
  std::vector<std::string> warnings;
  // Sieve-size guidance: m >= 3 and k_n within (n^{1/2m}, n^{1/4}) up to a
  // factor-of-two slack; violations degrade the normal approximation but do
  // not invalidate the draw cycle.
  const double n = static_cast<double>(x.size());
  if (basis.order_m < 3)
    warnings.push_back("spline order m < 3 is below the supported range");
  if (n > 1) {
    const double lo = std::pow(n, 1.0 / (2.0 * basis.order_m));
    const double hi = std::pow(n, 0.25);
    if (basis.kn < 0.5 * lo || basis.kn > 2.0 * hi)
      warnings.push_back("kn = " + std::to_string(basis.kn) +
                         " far outside the (n^{1/2m}, n^{1/4}) window");
  }

  const QuadratureRule quad = gauss_legendre(options.quad_nodes);
  const Eigen::VectorXd g_nodes = density_at_nodes(quad, options.g_density);
  Eigen::MatrixXd basis_nodes(static_cast<Eigen::Index>(quad.nodes.size()), basis.basis_dim);
  for (std::size_t i = 0; i < quad.nodes.size(); ++i)
    basis_nodes.row(static_cast<Eigen::Index>(i)) = basis_eval(basis, quad.nodes[i], 0).transpose();

  auto make_objective = [&](const Eigen::VectorXd& beta) {
    Eigen::VectorXd spline_vals = basis_nodes * beta;
    return std::function<double(std::span<const double>)>(
        [&, spline_vals = std::move(spline_vals)](std::span<const double> eta) {
          return projection_objective_cached(system, spline_vals, eta, r_n, quad, g_nodes);
        });
  };

  return detail::spline_projection_draws(system, x, y, basis, prior_a, prior_b, n_draws, rng,
                                         options, make_objective, "RKTB", std::move(warnings));
}

}  // namespace hode
