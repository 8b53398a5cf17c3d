#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "hode/numerics.hpp"

namespace hode {

// A q-th order scalar ODE in explicit form y^(q) = H(t, y, ..., y^(q-1), theta)
// together with the implicit binding form F(t, y, ..., y^(q), theta) = 0.
// Immutable after construction; safe to share across threads.
struct OdeSystem {
  std::string name;
  int order_q = 0;
  int param_dim_p = 0;

  // t in [0,1]; y holds (f, f', ..., f^(q-1)); returns f^(q).
  std::function<double(double t, std::span<const double> y, std::span<const double> theta)> rhs_H;

  // h holds (f, f', ..., f^(q)).
  std::function<double(double t, std::span<const double> h, std::span<const double> theta)> binding_F;

  // Writes dF/dtheta into out (length p).
  std::function<void(double t, std::span<const double> h, std::span<const double> theta,
                     std::span<double> out)>
      binding_F_dtheta;

  std::vector<double> init_conditions;  // c_0, ..., c_{q-1}
  ParamBox theta_box;
};

// Van der Pol oscillator: f'' - theta (1 - f^2) f' + f = 0, f(0)=2, f'(0)=0.
OdeSystem make_van_der_pol();

// f'' = -theta^2 f, f(0)=1, f'(0)=0; exact solution cos(theta t).
OdeSystem make_harmonic_oscillator();

// H == 0: the solution is the Taylor polynomial of the initial conditions.
OdeSystem make_linear_null(int q, std::vector<double> init);

// Glucose-hormone kinetics reduced to second order, constant forcing J == 1.
// Demo model; theta = (m1, m2, m3, m4).
OdeSystem make_glucose();

// Catalog lookup by CLI name: "vdp", "harmonic", "null-q<k>", "glucose".
OdeSystem make_model(const std::string& name);

}  // namespace hode
