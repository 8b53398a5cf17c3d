#pragma once

#include <Eigen/Dense>
#include <span>
#include <utility>

#include "hode/draws.hpp"
#include "hode/ode_model.hpp"
#include "hode/rng.hpp"

namespace hode {

// Sampler configuration for the sieve-Bayes posterior on (theta, sigma^2).
// The theta prior is a product of Gaussians truncated to the parameter box.
struct RksbConfig {
  Eigen::VectorXd theta_prior_mean;
  Eigen::VectorXd theta_prior_sd;
  double ig_a = 99.0;
  double ig_b = 1.0;
  int r_n = 100;
  int chain_length = 1500;
  int burn_in = 500;
  Eigen::VectorXd proposal_sd;
  bool adapt = true;
};

// Gaussian working-model log likelihood with the exact solution replaced by
// the grid approximation; the covariate density factor is theta-free and
// omitted. Solver divergence yields -inf.
double log_approx_likelihood(const OdeSystem& system, std::span<const double> x,
                             std::span<const double> y, std::span<const double> theta,
                             double sigma2, int r_n);

// Conditional update for sigma^2 given the residual sum of squares:
// returns the (shape, scale) of the inverse-gamma full conditional.
std::pair<double, double> sigma2_conditional(double prior_a, double prior_b, std::size_t n,
                                             double residual_ss);

// Random-walk Metropolis on theta with an exact Gibbs step for sigma^2.
// Proposal scales adapt toward 0.3 acceptance during burn-in only.
PosteriorDraws run_rksb(const OdeSystem& system, std::span<const double> x,
                        std::span<const double> y, const RksbConfig& config, RngStream& rng);

// Equal-tailed interval from empirical quantiles with linear interpolation
// between order statistics.
std::pair<double, double> equal_tailed_interval(std::span<const double> draws, double level);

}  // namespace hode
