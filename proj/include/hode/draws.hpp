#pragma once

#include <Eigen/Dense>
#include <limits>
#include <string>
#include <vector>

namespace hode {

// Posterior sample from one of the three Bayesian methods, S rows of theta
// (and matching sigma^2 draws when the method samples it).
struct PosteriorDraws {
  Eigen::MatrixXd theta_draws;   // S x p
  Eigen::VectorXd sigma2_draws;  // S, or empty
  std::string method_tag;        // "RKSB", "RKTB", "TS"
  double acceptance_rate = std::numeric_limits<double>::quiet_NaN();  // RKSB only
  bool mixing_failure = false;
  int discarded = 0;                  // projection draws dropped (RKTB/TS)
  int multistart_disagreements = 0;   // well-separated-minimum diagnostic
  std::vector<std::string> warnings;
};

}  // namespace hode
