#pragma once

#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "hode/rng.hpp"

namespace hode {

// Axis-aligned box of admissible parameters, one (lo, hi) pair per coordinate.
using ParamBox = std::vector<std::pair<double, double>>;

bool inside_box(std::span<const double> theta, const ParamBox& box);
void require_inside_box(std::span<const double> theta, const ParamBox& box,
                        const std::string& who);

// Quadrature rule on [0,1]; weights integrate the constant 1 exactly.
struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

// Gauss-Legendre rule mapped to [0,1]; exact for polynomials of degree
// <= 2*n_nodes - 1.
QuadratureRule gauss_legendre(int n_nodes);

struct OptimizationFailed : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct MinimizeResult {
  std::vector<double> theta;
  double value = 0.0;
  // Set when two near-optimal starts land on visibly different points; used
  // as a well-separated-minimum diagnostic by the two-step methods.
  bool multistart_disagreement = false;
};

// Deterministic bounded minimization: golden-section over `starts` bracket
// splits for 1-d problems, bounded Nelder-Mead from Latin-hypercube starts
// otherwise. The best point *evaluated anywhere* is returned; exact value
// ties break toward the lexicographically smallest point. For the 1-d path
// `tol` is the final bracket width, for Nelder-Mead the simplex value spread.
MinimizeResult minimize_box(const std::function<double(std::span<const double>)>& objective,
                            const ParamBox& box, int starts, double tol);

// Draw with density proportional to x^{-shape-1} exp(-scale/x) on (0, inf).
double sample_inverse_gamma(double shape, double scale, RngStream& rng);

// sd = 0 collapses to the mean; negative sd is rejected.
double sample_normal(double mean, double sd, RngStream& rng);

}  // namespace hode
