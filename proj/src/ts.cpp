#include "hode/ts.hpp"

#include <cmath>

#include "two_step_common.hpp"

namespace hode {

double default_ts_weight(int q, double t) {
  return std::pow(t * (1.0 - t), q);
}

namespace {

// h_rows: (q+1) x nodes matrix of the spline and its derivatives at the
// quadrature nodes; w_nodes carries weight * quadrature weight.
double ts_objective_cached(const OdeSystem& system, const Eigen::MatrixXd& h_rows,
                           std::span<const double> eta, const QuadratureRule& quad,
                           const Eigen::VectorXd& w_nodes) {
  const int q = system.order_q;
  double acc = 0.0;
  std::vector<double> h(q + 1);
  for (std::size_t i = 0; i < quad.nodes.size(); ++i) {
    for (int r = 0; r <= q; ++r) h[r] = h_rows(r, static_cast<Eigen::Index>(i));
    const double f = system.binding_F(quad.nodes[i], h, eta);
    acc += w_nodes[static_cast<Eigen::Index>(i)] * f * f;
  }
  return acc;
}

Eigen::VectorXd weighted_quad(const QuadratureRule& quad, int q,
                              const std::function<double(double)>& weight) {
  Eigen::VectorXd w(static_cast<Eigen::Index>(quad.nodes.size()));
  for (std::size_t i = 0; i < quad.nodes.size(); ++i) {
    const double wt = weight ? weight(quad.nodes[i]) : default_ts_weight(q, quad.nodes[i]);
    w[static_cast<Eigen::Index>(i)] = quad.weights[i] * wt;
  }
  return w;
}

// Basis and its first q derivatives at every node, stacked per derivative.
std::vector<Eigen::MatrixXd> basis_derivative_tables(const SplineBasis& basis, int q,
                                                     const QuadratureRule& quad) {
  if (basis.order_m < q + 2)
    throw UnsupportedDerivative("ts_objective: basis order m must be >= q+2");
  std::vector<Eigen::MatrixXd> tables(q + 1);
  for (int r = 0; r <= q; ++r) {
    tables[r].resize(static_cast<Eigen::Index>(quad.nodes.size()), basis.basis_dim);
    for (std::size_t i = 0; i < quad.nodes.size(); ++i)
      tables[r].row(static_cast<Eigen::Index>(i)) =
          basis_eval(basis, quad.nodes[i], r).transpose();
  }
  return tables;
}

Eigen::MatrixXd stack_h_rows(const std::vector<Eigen::MatrixXd>& tables,
                             const Eigen::VectorXd& beta) {
  const int q1 = static_cast<int>(tables.size());
  Eigen::MatrixXd h(q1, tables[0].rows());
  for (int r = 0; r < q1; ++r) h.row(r) = (tables[r] * beta).transpose();
  return h;
}

}  // namespace

double ts_objective(const OdeSystem& system, const Eigen::VectorXd& beta,
                    const SplineBasis& basis, std::span<const double> eta,
                    const QuadratureRule& quad, const std::function<double(double)>& weight) {
  require_inside_box(eta, system.theta_box, "ts_objective");
  const auto tables = basis_derivative_tables(basis, system.order_q, quad);
  return ts_objective_cached(system, stack_h_rows(tables, beta), eta, quad,
                             weighted_quad(quad, system.order_q, weight));
}

PosteriorDraws run_ts(const OdeSystem& system, std::span<const double> x,
                      std::span<const double> y, const SplineBasis& basis, double prior_a,
                      double prior_b, int n_draws, RngStream& rng,
                      const TwoStepOptions& options) {
  const int q = system.order_q;
  std::vector<std::string> warnings;
  const double n = static_cast<double>(x.size());
  if (basis.order_m <= 2 * q + 2)
    warnings.push_back("spline order m <= 2q+2; the linearization window needs m > 2q+2");
  if (n > 1) {
    const double lo = std::pow(n, 1.0 / (2.0 * basis.order_m));
    const double hi = std::pow(n, 1.0 / (4.0 * q + 4.0));
    if (basis.kn < 0.5 * lo || basis.kn > 2.0 * hi)
      warnings.push_back("kn = " + std::to_string(basis.kn) +
                         " far outside the (n^{1/2m}, n^{1/(4q+4)}) window");
  }

  const QuadratureRule quad = gauss_legendre(options.quad_nodes);
  const Eigen::VectorXd w_nodes = weighted_quad(quad, q, options.weight);
  const auto tables = basis_derivative_tables(basis, q, quad);

  auto make_objective = [&](const Eigen::VectorXd& beta) {
    Eigen::MatrixXd h = stack_h_rows(tables, beta);
    return std::function<double(std::span<const double>)>(
        [&, h = std::move(h)](std::span<const double> eta) {
          return ts_objective_cached(system, h, eta, quad, w_nodes);
        });
  };

  return detail::spline_projection_draws(system, x, y, basis, prior_a, prior_b, n_draws, rng,
                                         options, make_objective, "TS", std::move(warnings));
}

}  // namespace hode
