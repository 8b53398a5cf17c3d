#pragma once

#include <Eigen/Dense>
#include <span>
#include <stdexcept>

#include "hode/ode_model.hpp"

namespace hode {

struct RankDeficient : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Least-squares fit on the grid-solved regression function with the usual
// asymptotic-normal covariance sigma2_hat (J^T J)^{-1}.
struct NlsFit {
  Eigen::VectorXd theta_hat;
  double sigma2_hat = 0.0;
  Eigen::MatrixXd cov;
  Eigen::VectorXd ci_lo, ci_hi;  // theta_hat_j +/- 1.96 sqrt(cov_jj)
};

NlsFit fit_nls(const OdeSystem& system, std::span<const double> x, std::span<const double> y,
               int r_n, int starts = 8);

}  // namespace hode
