#include "hode/rk_solver.hpp"

#include <cmath>

namespace hode {

Eigen::MatrixXd gamma_coefficients(int q) {
  if (q < 1) throw std::invalid_argument("gamma_coefficients: q must be >= 1");
  Eigen::MatrixXd gamma(q, 4);
  for (int nu = 1; nu <= q; ++nu) {
    const double s = q - nu;
    const double denom = (s + 2.0) * (s + 3.0);
    gamma(nu - 1, 0) = (s + 1.0) * (s + 1.0) / denom;
    gamma(nu - 1, 1) = 2.0 * (s + 1.0) / denom;
    gamma(nu - 1, 2) = gamma(nu - 1, 1);
    gamma(nu - 1, 3) = (1.0 - s) / denom;
  }
  return gamma;
}

namespace {

struct StepWorkspace {
  std::vector<double> u;  // stage argument vector, length q
  Eigen::MatrixXd gamma;  // q x 4
};

// Stage construction. Stage rho perturbs derivative d = nu-1 by Taylor terms
// on derivatives d+1 .. d+3 with the coefficients below; a term that would
// need psi^(q) is replaced by the already-computed k_{rho-1-(q-nu)}, and
// terms beyond psi^(q) do not appear.
void rk_step_impl(const OdeSystem& system, double t, std::span<const double> z,
                  std::span<const double> theta, double h, StepWorkspace& ws,
                  std::span<double> out) {
  const int q = system.order_q;
  double k[4];
  static constexpr double stage_time[4] = {0.0, 0.5, 0.5, 1.0};
  // corr[rho-1][j-1]: coefficient of the j-th correction term, in units of h^j.
  static constexpr double corr[4][3] = {{0.0, 0.0, 0.0},
                                        {0.5, 0.0, 0.0},
                                        {0.5, 0.25, 0.0},
                                        {1.0, 0.5, 0.25}};
  static constexpr int n_corr[4] = {0, 1, 2, 3};

  for (int rho = 1; rho <= 4; ++rho) {
    for (int nu = 1; nu <= q; ++nu) {
      double val = z[nu - 1];
      double hp = 1.0;
      for (int j = 1; j <= n_corr[rho - 1]; ++j) {
        hp *= h;
        const int e = nu - 1 + j;  // derivative index of this term
        if (e > q) break;
        const double c = corr[rho - 1][j - 1] * hp;
        if (e <= q - 1) {
          val += c * z[e];
        } else {  // e == q: substitute the stage value k_{rho-1-(q-nu)}
          val += c * k[rho - 2 - (q - nu)];
        }
      }
      ws.u[nu - 1] = val;
    }
    const double kr = system.rhs_H(t + stage_time[rho - 1] * h, ws.u, theta);
    if (!std::isfinite(kr)) throw DivergedTrajectory(rho, t);
    k[rho - 1] = kr;
  }

  for (int nu = 1; nu <= q; ++nu) {
    // T^nu: truncated Taylor series over the stored derivatives.
    double taylor = 0.0;
    double hp = 1.0, fact = 1.0;
    for (int i = 0; i <= q - nu - 1; ++i) {
      taylor += hp / fact * z[nu + i];
      hp *= h;
      fact *= (i + 2);
    }
    // h^{q-nu} / (q-nu+1)!
    double pref = 1.0;
    for (int i = 1; i <= q - nu; ++i) pref *= h / (i + 1.0);
    double combo = 0.0;
    for (int rho = 0; rho < 4; ++rho) combo += ws.gamma(nu - 1, rho) * k[rho];
    const double phi = taylor + pref * combo;
    out[nu - 1] = z[nu - 1] + h * phi;
    if (!std::isfinite(out[nu - 1])) throw DivergedTrajectory(4, t);
  }
}

}  // namespace

std::vector<double> rk_step(const OdeSystem& system, double t, std::span<const double> z,
                            std::span<const double> theta, double h) {
  const int q = system.order_q;
  if (!(h > 0.0)) throw std::invalid_argument("rk_step: h must be positive");
  if (static_cast<int>(z.size()) != q)
    throw std::invalid_argument("rk_step: state must have length q");
  for (double v : z)
    if (!std::isfinite(v)) throw std::invalid_argument("rk_step: non-finite state");
  StepWorkspace ws{std::vector<double>(q), gamma_coefficients(q)};
  std::vector<double> out(q);
  rk_step_impl(system, t, z, theta, h, ws, out);
  return out;
}

GridSolution solve(const OdeSystem& system, std::span<const double> theta, int r_n) {
  if (r_n < 2) throw std::invalid_argument("solve: r_n must be >= 2");
  require_inside_box(theta, system.theta_box, "solve");
  const int q = system.order_q;
  const double h = 1.0 / r_n;

  GridSolution sol;
  sol.theta.assign(theta.begin(), theta.end());
  sol.step = h;
  sol.grid_points.resize(r_n + 1);
  for (int k = 0; k <= r_n; ++k) sol.grid_points[k] = static_cast<double>(k) / r_n;
  sol.states.resize(r_n + 1, q);
  for (int j = 0; j < q; ++j) sol.states(0, j) = system.init_conditions[j];

  StepWorkspace ws{std::vector<double>(q), gamma_coefficients(q)};
  std::vector<double> z(system.init_conditions.begin(), system.init_conditions.end());
  std::vector<double> znext(q);
  for (int k = 0; k < r_n; ++k) {
    rk_step_impl(system, sol.grid_points[k], z, theta, h, ws, znext);
    for (int j = 0; j < q; ++j) sol.states(k + 1, j) = znext[j];
    z.swap(znext);
  }
  return sol;
}

double eval_dense(const GridSolution& sol, const OdeSystem& system, double t) {
  if (!(t >= 0.0 && t <= 1.0))
    throw std::domain_error("eval_dense: t = " + std::to_string(t) + " outside [0,1]");
  const int rn = sol.r_n();
  const int q = system.order_q;

  long idx = static_cast<long>(std::floor(t * rn));
  if (idx < 0) idx = 0;
  if (idx > rn) idx = rn;
  // Exact grid hits return the stored value.
  if (idx < rn && t == sol.grid_points[idx + 1]) return sol.states(idx + 1, 0);
  if (t == sol.grid_points[idx]) return sol.states(idx, 0);
  if (idx >= rn) idx = rn - 1;
  if (t < sol.grid_points[idx] && idx > 0) --idx;

  const double dt = t - sol.grid_points[idx];
  std::vector<double> z(q);
  for (int j = 0; j < q; ++j) z[j] = sol.states(idx, j);

  double value = 0.0;
  double dp = 1.0, fact = 1.0;
  for (int j = 0; j < q; ++j) {
    value += z[j] * dp / fact;
    dp *= dt;
    fact *= (j + 1);
  }
  value += system.rhs_H(sol.grid_points[idx], z, sol.theta) * dp / fact;
  return value;
}

Eigen::MatrixXd sensitivity(const OdeSystem& system, std::span<const double> theta, int r_n,
                            std::span<const double> t_list) {
  const int p = system.param_dim_p;
  require_inside_box(theta, system.theta_box, "sensitivity");
  Eigen::MatrixXd out(t_list.size(), p);
  std::vector<double> th(theta.begin(), theta.end());
  for (int j = 0; j < p; ++j) {
    const double lo = system.theta_box[j].first;
    const double hi = system.theta_box[j].second;
    double delta = std::max(1e-5 * std::abs(th[j]), 1e-7);
    if (th[j] + delta > hi || th[j] - delta < lo) {
      delta = 0.5 * std::min(hi - th[j], th[j] - lo);
      if (!(delta > 0.0))
        throw std::invalid_argument("sensitivity: theta[" + std::to_string(j) +
                                    "] too close to the box boundary");
    }
    const double saved = th[j];
    th[j] = saved + delta;
    GridSolution plus = solve(system, th, r_n);
    th[j] = saved - delta;
    GridSolution minus = solve(system, th, r_n);
    th[j] = saved;
    for (std::size_t i = 0; i < t_list.size(); ++i) {
      out(static_cast<Eigen::Index>(i), j) =
          (eval_dense(plus, system, t_list[i]) - eval_dense(minus, system, t_list[i])) /
          (2.0 * delta);
    }
  }
  return out;
}

}  // namespace hode
