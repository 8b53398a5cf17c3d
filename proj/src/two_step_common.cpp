#include "two_step_common.hpp"

#include <stdexcept>

namespace hode::detail {

PosteriorDraws spline_projection_draws(
    const OdeSystem& system, std::span<const double> x, std::span<const double> y,
    const SplineBasis& basis, double prior_a, double prior_b, int n_draws, RngStream& rng,
    const TwoStepOptions& options,
    const std::function<std::function<double(std::span<const double>)>(const Eigen::VectorXd&)>&
        make_objective,
    const std::string& tag, std::vector<std::string> warnings) {
  if (x.empty()) throw std::invalid_argument(tag + ": data must be nonempty");
  if (n_draws < 1) throw std::invalid_argument(tag + ": n_draws must be >= 1");

  const SplinePosterior post = fit_posterior(basis, x, y, prior_a, prior_b);
  const int p = system.param_dim_p;

  PosteriorDraws draws;
  draws.method_tag = tag;
  draws.warnings = std::move(warnings);
  draws.theta_draws.resize(n_draws, p);
  draws.sigma2_draws.resize(n_draws);

  int kept = 0;
  for (int s = 0; s < n_draws; ++s) {
    const double sigma2 = sample_inverse_gamma(post.sigma2_shape, post.sigma2_scale, rng);
    const Eigen::VectorXd beta = sample_beta(post, sigma2, rng);
    try {
      const MinimizeResult res =
          minimize_box(make_objective(beta), system.theta_box, options.starts, options.tol);
      for (int j = 0; j < p; ++j) draws.theta_draws(kept, j) = res.theta[j];
      draws.sigma2_draws[kept] = sigma2;
      if (res.multistart_disagreement) ++draws.multistart_disagreements;
      ++kept;
    } catch (const OptimizationFailed&) {
      ++draws.discarded;
    }
  }
  if (draws.discarded > options.max_discard_frac * n_draws)
    throw std::runtime_error(tag + ": " + std::to_string(draws.discarded) + " of " +
                             std::to_string(n_draws) + " projection draws failed");
  draws.theta_draws.conservativeResize(kept, p);
  draws.sigma2_draws.conservativeResize(kept);
  return draws;
}

}  // namespace hode::detail
