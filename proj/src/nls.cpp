#include "hode/nls.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "hode/numerics.hpp"
#include "hode/rk_solver.hpp"

namespace hode {

NlsFit fit_nls(const OdeSystem& system, std::span<const double> x, std::span<const double> y,
               int r_n, int starts) {
  const int p = system.param_dim_p;
  const std::size_t n = x.size();
  if (x.size() != y.size()) throw std::invalid_argument("fit_nls: x and y lengths differ");
  if (static_cast<int>(n) <= p)
    throw std::invalid_argument("fit_nls: need more observations than parameters");

  auto rss = [&](std::span<const double> theta) {
    GridSolution sol;
    try {
      sol = solve(system, theta, r_n);
    } catch (const DivergedTrajectory&) {
      return std::numeric_limits<double>::infinity();
    }
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double r = y[i] - eval_dense(sol, system, x[i]);
      acc += r * r;
    }
    return acc;
  };

  const MinimizeResult res = minimize_box(rss, system.theta_box, starts, 1e-9);

  NlsFit fit;
  fit.theta_hat = Eigen::Map<const Eigen::VectorXd>(res.theta.data(), p);
  fit.sigma2_hat = res.value / static_cast<double>(n - p);

  // Pull a boundary solution inside by a hair so central differences fit.
  std::vector<double> th = res.theta;
  for (int j = 0; j < p; ++j) {
    const auto& [lo, hi] = system.theta_box[j];
    const double nudge = 1e-9 * (hi - lo);
    th[j] = std::clamp(th[j], lo + nudge, hi - nudge);
  }
  const Eigen::MatrixXd J = sensitivity(system, th, r_n, x);
  const Eigen::MatrixXd jtj = J.transpose() * J;

  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(jtj);
  const double max_eig = eig.eigenvalues().maxCoeff();
  const double min_eig = eig.eigenvalues().minCoeff();
  if (!(max_eig > 0.0) || min_eig <= 1e-12 * max_eig)
    throw RankDeficient("fit_nls: J^T J is rank deficient");

  fit.cov = fit.sigma2_hat * jtj.inverse();
  fit.ci_lo.resize(p);
  fit.ci_hi.resize(p);
  for (int j = 0; j < p; ++j) {
    const double half = 1.96 * std::sqrt(fit.cov(j, j));
    fit.ci_lo[j] = fit.theta_hat[j] - half;
    fit.ci_hi[j] = fit.theta_hat[j] + half;
  }
  return fit;
}

}  // namespace hode
