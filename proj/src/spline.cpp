#include "hode/spline.hpp"

#include <cmath>
#include <string>

namespace hode {

SplineBasis make_basis(int m, int kn) {
  if (m < 2) throw std::invalid_argument("make_basis: order m must be >= 2");
  if (kn < 1) throw std::invalid_argument("make_basis: kn must be >= 1");
  SplineBasis basis;
  basis.order_m = m;
  basis.kn = kn;
  basis.basis_dim = kn + m - 1;
  basis.knots.reserve(2 * m + kn - 1);
  for (int j = 0; j < m; ++j) basis.knots.push_back(0.0);
  for (int j = 1; j < kn; ++j) basis.knots.push_back(static_cast<double>(j) / kn);
  for (int j = 0; j < m; ++j) basis.knots.push_back(1.0);
  return basis;
}

Eigen::VectorXd basis_eval(const SplineBasis& basis, double t, int deriv) {
  const int m = basis.order_m;
  if (deriv < 0 || deriv > m - 2)
    throw UnsupportedDerivative("basis_eval: derivative order " + std::to_string(deriv) +
                                " unsupported for spline order " + std::to_string(m));
  if (!(t >= 0.0 && t <= 1.0))
    throw std::domain_error("basis_eval: t = " + std::to_string(t) + " outside [0,1]");

  const std::vector<double>& T = basis.knots;
  const int L = static_cast<int>(T.size());

  // Order-1 indicators, closed on the right at t = 1 (left-limit convention).
  const int base_order = m - deriv;
  std::vector<double> vals(L - 1, 0.0);
  for (int j = 0; j + 1 < L; ++j) {
    const bool in_span = (T[j] <= t && t < T[j + 1]) ||
                         (t == 1.0 && T[j + 1] == 1.0 && T[j] < 1.0);
    vals[j] = in_span ? 1.0 : 0.0;
  }

  // Raise to order base_order by the Cox-de Boor recurrence. Order-mu values
  // occupy vals[0 .. L-mu-1]; empty spans contribute nothing.
  for (int mu = 1; mu < base_order; ++mu) {
    for (int j = 0; j + mu + 1 < L; ++j) {
      const double dl = T[j + mu] - T[j];
      const double dr = T[j + mu + 1] - T[j + 1];
      double v = 0.0;
      if (dl > 0.0) v += (t - T[j]) / dl * vals[j];
      if (dr > 0.0) v += (T[j + mu + 1] - t) / dr * vals[j + 1];
      vals[j] = v;
    }
  }

  // Differentiate up to the requested order while raising to order m.
  for (int mu = base_order; mu < m; ++mu) {
    for (int j = 0; j + mu + 1 < L; ++j) {
      const double dl = T[j + mu] - T[j];
      const double dr = T[j + mu + 1] - T[j + 1];
      double v = 0.0;
      if (dl > 0.0) v += vals[j] / dl;
      if (dr > 0.0) v -= vals[j + 1] / dr;
      vals[j] = mu * v;
    }
  }

  Eigen::VectorXd out(basis.basis_dim);
  for (int j = 0; j < basis.basis_dim; ++j) out[j] = vals[j];
  return out;
}

Eigen::MatrixXd design_matrix(const SplineBasis& basis, std::span<const double> x) {
  Eigen::MatrixXd X(static_cast<Eigen::Index>(x.size()), basis.basis_dim);
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] >= 0.0 && x[i] <= 1.0))
      throw std::domain_error("design_matrix: covariate " + std::to_string(i) + " = " +
                              std::to_string(x[i]) + " outside [0,1]");
    X.row(static_cast<Eigen::Index>(i)) = basis_eval(basis, x[i], 0).transpose();
  }
  return X;
}

SplinePosterior fit_posterior(const SplineBasis& basis, std::span<const double> x,
                              std::span<const double> y, double prior_a, double prior_b) {
  const std::size_t n = x.size();
  if (n < 1) throw std::invalid_argument("fit_posterior: need at least one observation");
  if (y.size() != n) throw std::invalid_argument("fit_posterior: x and y lengths differ");
  if (!(prior_a > 0.0) || !(prior_b > 0.0))
    throw std::invalid_argument("fit_posterior: prior shape and scale must be positive");

  const Eigen::MatrixXd X = design_matrix(basis, x);
  const Eigen::Map<const Eigen::VectorXd> yv(y.data(), static_cast<Eigen::Index>(n));

  const double ridge = static_cast<double>(basis.kn) / (static_cast<double>(n) * n);
  Eigen::MatrixXd A = X.transpose() * X;
  A.diagonal().array() += ridge;

  Eigen::LLT<Eigen::MatrixXd> llt(A);
  if (llt.info() != Eigen::Success)
    throw SingularDesign("fit_posterior: Cholesky factorization failed");

  SplinePosterior post;
  post.basis = basis;
  const Eigen::VectorXd xty = X.transpose() * yv;
  post.mean = llt.solve(xty);
  post.precision_factor = llt.matrixL();
  post.sigma2_shape = prior_a + 0.5 * static_cast<double>(n);
  post.sigma2_scale = prior_b + 0.5 * std::max(0.0, yv.squaredNorm() - xty.dot(post.mean));
  post.n_obs = static_cast<int>(n);
  return post;
}

Eigen::VectorXd sample_beta(const SplinePosterior& post, double sigma2, RngStream& rng) {
  if (!(sigma2 >= 0.0)) throw std::invalid_argument("sample_beta: sigma2 must be >= 0");
  const Eigen::Index d = post.mean.size();
  Eigen::VectorXd z(d);
  for (Eigen::Index j = 0; j < d; ++j) z[j] = rng.normal01();
  // L^T w = z gives Cov(w) = (L L^T)^{-1}.
  const Eigen::VectorXd w =
      post.precision_factor.transpose().triangularView<Eigen::Upper>().solve(z);
  return post.mean + std::sqrt(sigma2) * w;
}

}  // namespace hode
