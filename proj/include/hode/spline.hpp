#pragma once

#include <Eigen/Dense>
#include <span>
#include <stdexcept>
#include <vector>

#include "hode/rng.hpp"

namespace hode {

struct UnsupportedDerivative : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct SingularDesign : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// B-spline basis of order m (degree m-1) on [0,1] with kn-1 uniform interior
// knots and clamped boundary knots; basis_dim = kn + m - 1.
struct SplineBasis {
  int order_m = 0;
  int kn = 0;
  std::vector<double> knots;
  int basis_dim = 0;
};

SplineBasis make_basis(int m, int kn);

// Values (deriv = 0) or deriv-th derivatives of all basis functions at t.
// Left-limit convention at t = 1. Requires deriv <= m-2.
Eigen::VectorXd basis_eval(const SplineBasis& basis, double t, int deriv);

// Row i holds the basis values at x[i]. Covariates must lie in [0,1].
Eigen::MatrixXd design_matrix(const SplineBasis& basis, std::span<const double> x);

// Conjugate posterior for the working model Y = X beta + eps with
// beta | sigma^2 ~ N(0, sigma^2 n^2 kn^{-1} I) and sigma^2 ~ IG(a, b).
struct SplinePosterior {
  SplineBasis basis;
  Eigen::VectorXd mean;
  Eigen::MatrixXd precision_factor;  // lower Cholesky L, L L^T = X^T X + n^{-2} kn I
  double sigma2_shape = 0.0;
  double sigma2_scale = 0.0;
  int n_obs = 0;
};

SplinePosterior fit_posterior(const SplineBasis& basis, std::span<const double> x,
                              std::span<const double> y, double prior_a, double prior_b);

// One draw from N(mean, sigma2 (X^T X + n^{-2} kn I)^{-1}).
Eigen::VectorXd sample_beta(const SplinePosterior& post, double sigma2, RngStream& rng);

}  // namespace hode
