#pragma once

#include <Eigen/Dense>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "hode/draws.hpp"
#include "hode/numerics.hpp"
#include "hode/ode_model.hpp"
#include "hode/rktb.hpp"
#include "hode/spline.hpp"

namespace hode::detail {

// Draw cycle shared by RKTB and TS: sigma^2 from its inverse-gamma posterior,
// beta given sigma^2, then theta as the minimizer of a per-draw objective.
// `make_objective` receives the beta draw and returns the eta objective.
PosteriorDraws spline_projection_draws(
    const OdeSystem& system, std::span<const double> x, std::span<const double> y,
    const SplineBasis& basis, double prior_a, double prior_b, int n_draws, RngStream& rng,
    const TwoStepOptions& options,
    const std::function<std::function<double(std::span<const double>)>(const Eigen::VectorXd&)>&
        make_objective,
    const std::string& tag, std::vector<std::string> warnings);

}  // namespace hode::detail
