#include "hode/ode_model.hpp"

#include <stdexcept>

namespace hode {

OdeSystem make_van_der_pol() {
  OdeSystem sys;
  sys.name = "vdp";
  sys.order_q = 2;
  sys.param_dim_p = 1;
  sys.rhs_H = [](double, std::span<const double> y, std::span<const double> th) {
    return th[0] * (1.0 - y[0] * y[0]) * y[1] - y[0];
  };
  sys.binding_F = [](double, std::span<const double> h, std::span<const double> th) {
    return h[2] - th[0] * (1.0 - h[0] * h[0]) * h[1] + h[0];
  };
  sys.binding_F_dtheta = [](double, std::span<const double> h, std::span<const double>,
                            std::span<double> out) {
    out[0] = -(1.0 - h[0] * h[0]) * h[1];
  };
  sys.init_conditions = {2.0, 0.0};
  sys.theta_box = {{0.1, 10.0}};
  return sys;
}

OdeSystem make_harmonic_oscillator() {
  OdeSystem sys;
  sys.name = "harmonic";
  sys.order_q = 2;
  sys.param_dim_p = 1;
  sys.rhs_H = [](double, std::span<const double> y, std::span<const double> th) {
    return -th[0] * th[0] * y[0];
  };
  sys.binding_F = [](double, std::span<const double> h, std::span<const double> th) {
    return h[2] + th[0] * th[0] * h[0];
  };
  sys.binding_F_dtheta = [](double, std::span<const double> h, std::span<const double> th,
                            std::span<double> out) {
    out[0] = 2.0 * th[0] * h[0];
  };
  sys.init_conditions = {1.0, 0.0};
  sys.theta_box = {{0.1, 10.0}};
  return sys;
}

OdeSystem make_linear_null(int q, std::vector<double> init) {
  if (q < 1) throw std::invalid_argument("make_linear_null: q must be >= 1");
  if (static_cast<int>(init.size()) != q)
    throw std::invalid_argument("make_linear_null: init must have length q");
  OdeSystem sys;
  sys.name = "null-q" + std::to_string(q);
  sys.order_q = q;
  sys.param_dim_p = 1;
  sys.rhs_H = [](double, std::span<const double>, std::span<const double>) { return 0.0; };
  sys.binding_F = [q](double, std::span<const double> h, std::span<const double>) {
    return h[q];
  };
  sys.binding_F_dtheta = [](double, std::span<const double>, std::span<const double>,
                            std::span<double> out) {
    out[0] = 0.0;
  };
  sys.init_conditions = std::move(init);
  sys.theta_box = {{-1.0, 1.0}};
  return sys;
}

OdeSystem make_glucose() {
  // g'' + 2*alpha*g' + omega0^2*g = S(t) with alpha = (m1+m3)/2,
  // omega0^2 = m1*m3 + m2*m4, S = m3*J + J' and J == 1.
  OdeSystem sys;
  sys.name = "glucose";
  sys.order_q = 2;
  sys.param_dim_p = 4;
  sys.rhs_H = [](double, std::span<const double> y, std::span<const double> m) {
    const double alpha = 0.5 * (m[0] + m[2]);
    const double omega2 = m[0] * m[2] + m[1] * m[3];
    return m[2] - 2.0 * alpha * y[1] - omega2 * y[0];
  };
  sys.binding_F = [](double, std::span<const double> h, std::span<const double> m) {
    const double alpha = 0.5 * (m[0] + m[2]);
    const double omega2 = m[0] * m[2] + m[1] * m[3];
    return h[2] + 2.0 * alpha * h[1] + omega2 * h[0] - m[2];
  };
  sys.binding_F_dtheta = [](double, std::span<const double> h, std::span<const double> m,
                            std::span<double> out) {
    out[0] = h[1] + m[2] * h[0];
    out[1] = m[3] * h[0];
    out[2] = h[1] + m[0] * h[0] - 1.0;
    out[3] = m[1] * h[0];
  };
  sys.init_conditions = {1.0, 0.0};
  sys.theta_box = {{0.01, 5.0}, {0.01, 5.0}, {0.01, 5.0}, {0.01, 5.0}};
  return sys;
}

OdeSystem make_model(const std::string& name) {
  if (name == "vdp") return make_van_der_pol();
  if (name == "harmonic") return make_harmonic_oscillator();
  if (name == "glucose") return make_glucose();
  if (name.rfind("null-q", 0) == 0) {
    const int q = std::stoi(name.substr(6));
    return make_linear_null(q, std::vector<double>(q, 1.0));
  }
  throw std::invalid_argument("make_model: unknown model '" + name + "'");
}

}  // namespace hode
