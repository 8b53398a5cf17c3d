#include "hode/rksb.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "hode/numerics.hpp"
#include "hode/rk_solver.hpp"

namespace hode {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double residual_ss(const OdeSystem& system, std::span<const double> x,
                   std::span<const double> y, std::span<const double> theta, int r_n) {
  const GridSolution sol = solve(system, theta, r_n);
  double ss = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = y[i] - eval_dense(sol, system, x[i]);
    ss += r * r;
  }
  return ss;
}

}  // namespace

double log_approx_likelihood(const OdeSystem& system, std::span<const double> x,
                             std::span<const double> y, std::span<const double> theta,
                             double sigma2, int r_n) {
  if (!(sigma2 > 0.0)) throw std::invalid_argument("log_approx_likelihood: sigma2 must be > 0");
  if (x.size() != y.size())
    throw std::invalid_argument("log_approx_likelihood: x and y lengths differ");
  double ss;
  try {
    ss = residual_ss(system, x, y, theta, r_n);
  } catch (const DivergedTrajectory&) {
    return kNegInf;
  }
  const double n = static_cast<double>(x.size());
  return -0.5 * n * std::log(2.0 * std::numbers::pi * sigma2) - ss / (2.0 * sigma2);
}

std::pair<double, double> sigma2_conditional(double prior_a, double prior_b, std::size_t n,
                                             double residual_ss) {
  return {prior_a + 0.5 * static_cast<double>(n), prior_b + 0.5 * residual_ss};
}

PosteriorDraws run_rksb(const OdeSystem& system, std::span<const double> x,
                        std::span<const double> y, const RksbConfig& config, RngStream& rng) {
  const int p = system.param_dim_p;
  const std::size_t n = x.size();
  if (n == 0) throw std::invalid_argument("run_rksb: data must be nonempty");
  if (x.size() != y.size()) throw std::invalid_argument("run_rksb: x and y lengths differ");
  if (config.burn_in < 0 || config.burn_in >= config.chain_length)
    throw std::invalid_argument("run_rksb: need 0 <= burn_in < chain_length");
  if (config.theta_prior_mean.size() != p || config.theta_prior_sd.size() != p ||
      config.proposal_sd.size() != p)
    throw std::invalid_argument("run_rksb: prior/proposal dimensions must equal p");
  for (int j = 0; j < p; ++j) {
    if (!(config.proposal_sd[j] > 0.0))
      throw std::invalid_argument("run_rksb: proposal_sd must be positive");
    if (!(config.theta_prior_sd[j] > 0.0))
      throw std::invalid_argument("run_rksb: theta_prior_sd must be positive");
  }

  auto log_prior = [&](const std::vector<double>& th) {
    double lp = 0.0;
    for (int j = 0; j < p; ++j) {
      const double zj = (th[j] - config.theta_prior_mean[j]) / config.theta_prior_sd[j];
      lp -= 0.5 * zj * zj;
    }
    return lp;  // truncation constant cancels in the Metropolis ratio
  };

  // Start at the prior mean pulled into the box interior.
  std::vector<double> theta(p);
  for (int j = 0; j < p; ++j) {
    const auto& [lo, hi] = system.theta_box[j];
    const double margin = 1e-3 * (hi - lo);
    theta[j] = std::clamp(config.theta_prior_mean[j], lo + margin, hi - margin);
  }
  double ss = residual_ss(system, x, y, theta, config.r_n);
  double lp = log_prior(theta);
  double sigma2 = config.ig_b / (config.ig_a + 1.0);

  std::vector<double> log_sd(p);
  for (int j = 0; j < p; ++j) log_sd[j] = std::log(config.proposal_sd[j]);

  const int n_keep = config.chain_length - config.burn_in;
  PosteriorDraws draws;
  draws.method_tag = "RKSB";
  draws.theta_draws.resize(n_keep, p);
  draws.sigma2_draws.resize(n_keep);

  std::vector<double> proposal(p);
  long accepted_post = 0;
  for (int it = 0; it < config.chain_length; ++it) {
    // (i) random-walk Metropolis on theta
    for (int j = 0; j < p; ++j)
      proposal[j] = theta[j] + std::exp(log_sd[j]) * rng.normal01();
    bool accept = false;
    if (inside_box(proposal, system.theta_box)) {
      double ss_prop;
      try {
        ss_prop = residual_ss(system, x, y, proposal, config.r_n);
      } catch (const DivergedTrajectory&) {
        ss_prop = std::numeric_limits<double>::infinity();
      }
      const double lp_prop = log_prior(proposal);
      const double log_ratio = -(ss_prop - ss) / (2.0 * sigma2) + lp_prop - lp;
      if (std::log(rng.uniform() + 1e-300) < log_ratio) {
        theta = proposal;
        ss = ss_prop;
        lp = lp_prop;
        accept = true;
      }
    }
    if (config.adapt && it < config.burn_in) {
      const double gain = 1.0 / std::pow(it + 1.0, 0.6);
      for (int j = 0; j < p; ++j)
        log_sd[j] += gain * ((accept ? 1.0 : 0.0) - 0.3);
    }

    // (ii) exact Gibbs update of sigma^2
    const auto [shape, scale] = sigma2_conditional(config.ig_a, config.ig_b, n, ss);
    sigma2 = sample_inverse_gamma(shape, scale, rng);

    if (it >= config.burn_in) {
      const int row = it - config.burn_in;
      for (int j = 0; j < p; ++j) draws.theta_draws(row, j) = theta[j];
      draws.sigma2_draws[row] = sigma2;
      if (accept) ++accepted_post;
    }
  }

  draws.acceptance_rate = static_cast<double>(accepted_post) / n_keep;
  if (accepted_post == 0) {
    draws.mixing_failure = true;
    draws.warnings.push_back("no accepted theta moves after burn-in");
  }
  return draws;
}

std::pair<double, double> equal_tailed_interval(std::span<const double> draws, double level) {
  if (draws.size() < 2)
    throw std::invalid_argument("equal_tailed_interval: need at least 2 draws");
  if (!(level > 0.0 && level < 1.0))
    throw std::invalid_argument("equal_tailed_interval: level must be in (0,1)");
  std::vector<double> sorted(draws.begin(), draws.end());
  std::sort(sorted.begin(), sorted.end());
  auto quantile = [&](double prob) {
    const double h = prob * (sorted.size() - 1);
    const std::size_t i = static_cast<std::size_t>(std::floor(h));
    if (i + 1 >= sorted.size()) return sorted.back();
    return sorted[i] + (h - static_cast<double>(i)) * (sorted[i + 1] - sorted[i]);
  };
  const double alpha = 1.0 - level;
  return {quantile(alpha / 2.0), quantile(1.0 - alpha / 2.0)};
}

}  // namespace hode
