#include "hode/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace hode {

bool inside_box(std::span<const double> theta, const ParamBox& box) {
  if (theta.size() != box.size()) return false;
  for (std::size_t j = 0; j < box.size(); ++j) {
    if (!(theta[j] >= box[j].first && theta[j] <= box[j].second)) return false;
  }
  return true;
}

void require_inside_box(std::span<const double> theta, const ParamBox& box,
                        const std::string& who) {
  if (theta.size() != box.size()) {
    throw std::invalid_argument(who + ": theta has dimension " +
                                std::to_string(theta.size()) + ", box expects " +
                                std::to_string(box.size()));
  }
  for (std::size_t j = 0; j < box.size(); ++j) {
    if (!(theta[j] >= box[j].first && theta[j] <= box[j].second)) {
      throw std::invalid_argument(who + ": theta[" + std::to_string(j) +
                                  "] = " + std::to_string(theta[j]) +
                                  " outside box [" + std::to_string(box[j].first) +
                                  ", " + std::to_string(box[j].second) + "]");
    }
  }
}

namespace {

// Legendre polynomial value and derivative via the three-term recurrence.
void legendre_pair(int n, double x, double& p, double& dp) {
  double p0 = 1.0, p1 = x;
  if (n == 0) {
    p = 1.0;
    dp = 0.0;
    return;
  }
  for (int k = 2; k <= n; ++k) {
    const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
    p0 = p1;
    p1 = pk;
  }
  p = p1;
  dp = n * (x * p1 - p0) / (x * x - 1.0);
}

}  // namespace

QuadratureRule gauss_legendre(int n_nodes) {
  if (n_nodes < 1) throw std::invalid_argument("gauss_legendre: n_nodes must be >= 1");
  const int n = n_nodes;
  QuadratureRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  if (n == 1) {
    rule.nodes[0] = 0.5;
    rule.weights[0] = 1.0;
    return rule;
  }
  // Roots on (-1,1) by Newton from the Chebyshev guess; symmetric pairs.
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = -std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double p = 0.0, dp = 1.0;
    for (int it = 0; it < 100; ++it) {
      legendre_pair(n, x, p, dp);
      const double delta = -p / dp;
      x += delta;
      if (std::abs(delta) <= 4.0 * std::numeric_limits<double>::epsilon() * std::abs(x) + 1e-300)
        break;
    }
    legendre_pair(n, x, p, dp);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = 0.5 * (x + 1.0);
    rule.weights[i] = 0.5 * w;
    rule.nodes[n - 1 - i] = 0.5 * (1.0 - x);
    rule.weights[n - 1 - i] = 0.5 * w;
  }
  if (n % 2 == 1) {
    double p = 0.0, dp = 1.0;
    legendre_pair(n, 0.0, p, dp);
    rule.nodes[n / 2] = 0.5;
    rule.weights[n / 2] = 1.0 / (dp * dp);
  }
  return rule;
}

namespace {

bool lex_less(std::span<const double> a, std::span<const double> b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

// Tracks the best point seen over every objective evaluation; ties at equal
// value resolve to the lexicographically smaller point.
struct BestTracker {
  std::vector<double> theta;
  double value = std::numeric_limits<double>::infinity();
  bool any_finite = false;

  void offer(std::span<const double> x, double v) {
    if (std::isnan(v)) return;
    if (std::isfinite(v)) any_finite = true;
    if (v < value || (v == value && (theta.empty() || lex_less(x, theta)))) {
      value = v;
      theta.assign(x.begin(), x.end());
    }
  }
};

using Objective = std::function<double(std::span<const double>)>;

void golden_section(const Objective& f, double lo, double hi, double width_tol,
                    BestTracker& best, std::vector<double>& local_min) {
  constexpr double invphi = 0.6180339887498949;
  double a = lo, b = hi;
  double x1 = b - invphi * (b - a);
  double x2 = a + invphi * (b - a);
  double f1 = f(std::span<const double>(&x1, 1));
  double f2 = f(std::span<const double>(&x2, 1));
  best.offer(std::span<const double>(&x1, 1), f1);
  best.offer(std::span<const double>(&x2, 1), f2);
  int guard = 0;
  while (b - a > width_tol && guard++ < 400) {
    if (f1 <= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - invphi * (b - a);
      f1 = f(std::span<const double>(&x1, 1));
      best.offer(std::span<const double>(&x1, 1), f1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + invphi * (b - a);
      f2 = f(std::span<const double>(&x2, 1));
      best.offer(std::span<const double>(&x2, 1), f2);
    }
  }
  local_min.assign(1, 0.5 * (a + b));
}

void clamp_into(std::vector<double>& x, const ParamBox& box) {
  for (std::size_t j = 0; j < box.size(); ++j)
    x[j] = std::clamp(x[j], box[j].first, box[j].second);
}

// Nelder-Mead with candidate points projected onto the box.
void nelder_mead(const Objective& f, const ParamBox& box, std::vector<double> x0,
                 double scale, double tol, int max_iter, BestTracker& best,
                 std::vector<double>& local_min) {
  const std::size_t p = box.size();
  std::vector<std::vector<double>> verts(p + 1, x0);
  for (std::size_t j = 0; j < p; ++j) {
    verts[j + 1][j] += scale * (box[j].second - box[j].first);
    clamp_into(verts[j + 1], box);
    if (verts[j + 1][j] == verts[0][j])
      verts[j + 1][j] -= scale * (box[j].second - box[j].first);
    clamp_into(verts[j + 1], box);
  }
  std::vector<double> fv(p + 1);
  for (std::size_t i = 0; i <= p; ++i) {
    fv[i] = f(verts[i]);
    best.offer(verts[i], fv[i]);
  }
  auto order = [&]() {
    for (std::size_t i = 0; i <= p; ++i)
      for (std::size_t j = i + 1; j <= p; ++j)
        if (fv[j] < fv[i]) {
          std::swap(fv[i], fv[j]);
          std::swap(verts[i], verts[j]);
        }
  };
  std::vector<double> centroid(p), xr(p), xe(p), xc(p);
  for (int it = 0; it < max_iter; ++it) {
    order();
    if (std::abs(fv[p] - fv[0]) <= tol && std::isfinite(fv[p])) break;
    for (std::size_t j = 0; j < p; ++j) {
      double s = 0.0;
      for (std::size_t i = 0; i < p; ++i) s += verts[i][j];
      centroid[j] = s / static_cast<double>(p);
    }
    for (std::size_t j = 0; j < p; ++j) xr[j] = centroid[j] + (centroid[j] - verts[p][j]);
    clamp_into(xr, box);
    const double fr = f(xr);
    best.offer(xr, fr);
    if (fr < fv[0]) {
      for (std::size_t j = 0; j < p; ++j) xe[j] = centroid[j] + 2.0 * (xr[j] - centroid[j]);
      clamp_into(xe, box);
      const double fe = f(xe);
      best.offer(xe, fe);
      if (fe < fr) {
        verts[p] = xe;
        fv[p] = fe;
      } else {
        verts[p] = xr;
        fv[p] = fr;
      }
    } else if (fr < fv[p - 1]) {
      verts[p] = xr;
      fv[p] = fr;
    } else {
      const bool outside = fr < fv[p];
      const std::vector<double>& base = outside ? xr : verts[p];
      for (std::size_t j = 0; j < p; ++j) xc[j] = centroid[j] + 0.5 * (base[j] - centroid[j]);
      clamp_into(xc, box);
      const double fc = f(xc);
      best.offer(xc, fc);
      if (fc < std::min(fr, fv[p])) {
        verts[p] = xc;
        fv[p] = fc;
      } else {
        for (std::size_t i = 1; i <= p; ++i) {
          for (std::size_t j = 0; j < p; ++j)
            verts[i][j] = verts[0][j] + 0.5 * (verts[i][j] - verts[0][j]);
          fv[i] = f(verts[i]);
          best.offer(verts[i], fv[i]);
        }
      }
    }
  }
  order();
  local_min = verts[0];
}

}  // namespace

MinimizeResult minimize_box(const Objective& objective, const ParamBox& box,
                            int starts, double tol) {
  if (box.empty()) throw std::invalid_argument("minimize_box: empty box");
  if (starts < 1) throw std::invalid_argument("minimize_box: starts must be >= 1");
  for (const auto& [lo, hi] : box) {
    if (!(lo < hi)) throw std::invalid_argument("minimize_box: box must have lo < hi");
  }
  const std::size_t p = box.size();
  BestTracker best;
  std::vector<std::vector<double>> local_minima;

  if (p == 1) {
    const double lo = box[0].first, hi = box[0].second;
    const double width_tol = std::max(tol, 64.0 * std::numeric_limits<double>::epsilon() *
                                               (std::abs(lo) + std::abs(hi)));
    const double w = (hi - lo) / starts;
    for (int s = 0; s < starts; ++s) {
      std::vector<double> xmin;
      golden_section(objective, lo + s * w, lo + (s + 1) * w, width_tol, best, xmin);
      local_minima.push_back(std::move(xmin));
    }
  } else {
    // Deterministic Latin hypercube: stratum centers visited with a
    // dimension-specific coprime stride.
    for (int s = 0; s < starts; ++s) {
      std::vector<double> x0(p);
      for (std::size_t j = 0; j < p; ++j) {
        int stride = 2 * static_cast<int>(j) + 3;
        while (std::gcd(stride, starts) != 1) ++stride;
        const int stratum = static_cast<int>((static_cast<long long>(s) * stride + j) % starts);
        const double u = (stratum + 0.5) / starts;
        x0[j] = box[j].first + u * (box[j].second - box[j].first);
      }
      std::vector<double> xmin;
      nelder_mead(objective, box, x0, 0.10, tol, 400 * static_cast<int>(p), best, xmin);
      // One refinement pass with a tighter simplex around the found point.
      std::vector<double> xref;
      nelder_mead(objective, box, xmin, 0.01, tol, 400 * static_cast<int>(p), best, xref);
      local_minima.push_back(std::move(xref));
    }
  }

  if (!best.any_finite)
    throw OptimizationFailed("minimize_box: objective not finite at any evaluated point");

  MinimizeResult result;
  result.theta = best.theta;
  result.value = best.value;
  // Flag starts that reached near-optimal values at visibly different points.
  double diag = 0.0;
  for (const auto& [lo, hi] : box) diag += (hi - lo) * (hi - lo);
  diag = std::sqrt(diag);
  const double value_slack = std::max(1e-6, 1e-6 * std::abs(result.value));
  for (const auto& lm : local_minima) {
    const double v = objective(lm);
    if (!std::isfinite(v) || v > result.value + value_slack) continue;
    double dist = 0.0;
    for (std::size_t j = 0; j < p; ++j)
      dist += (lm[j] - result.theta[j]) * (lm[j] - result.theta[j]);
    if (std::sqrt(dist) > 1e-3 * diag) result.multistart_disagreement = true;
  }
  return result;
}

double sample_inverse_gamma(double shape, double scale, RngStream& rng) {
  if (!(shape > 0.0) || !(scale > 0.0))
    throw std::invalid_argument("sample_inverse_gamma: shape and scale must be positive");
  double g = 0.0;
  for (int attempt = 0; attempt < 100 && g <= 0.0; ++attempt)
    g = rng.gamma(shape, 1.0 / scale);
  if (g <= 0.0) throw std::runtime_error("sample_inverse_gamma: gamma sampler returned 0");
  return 1.0 / g;
}

double sample_normal(double mean, double sd, RngStream& rng) {
  if (sd < 0.0) throw std::invalid_argument("sample_normal: negative sd");
  if (sd == 0.0) return mean;
  return mean + sd * rng.normal01();
}

}  // namespace hode
