#include "gridmrf/stencil.hpp"

#include <cmath>
#include <cstdlib>

namespace gridmrf {

int Stencil::extent() const {
  int e = 0;
  for (const auto& [h, v] : coef) {
    if (v == 0.0) continue;
    e = std::max({e, std::abs(h[0]), std::abs(h[1])});
  }
  return e;
}

double Stencil::offcenter_abs_sum() const {
  double s = 0.0;
  for (const auto& [h, v] : coef)
    if (h[0] != 0 || h[1] != 0) s += std::fabs(v);
  return s;
}

void Stencil::validate() const {
  if (coef.empty()) throw std::invalid_argument("stencil is empty");
  if (!(center() > 0.0)) throw std::invalid_argument("stencil center must be positive");
  for (const auto& [h, v] : coef) {
    if (!std::isfinite(v)) throw std::invalid_argument("stencil coefficient not finite");
    if (at(-h[0], -h[1]) != v)
      throw std::invalid_argument("stencil must be symmetric under lag negation");
  }
}

Stencil convolve(const Stencil& a, const Stencil& b) {
  Stencil out;
  for (const auto& [ha, va] : a.coef) {
    if (va == 0.0) continue;
    for (const auto& [hb, vb] : b.coef) {
      if (vb == 0.0) continue;
      out.coef[{ha[0] + hb[0], ha[1] + hb[1]}] += va * vb;
    }
  }
  return out;
}

Stencil stencil_from_params(const ModelParams& params) {
  params.validate();
  Stencil base;
  base.set(0, 0, params.kappa * params.kappa + 4.0);
  base.set(1, 0, -1.0);
  base.set(-1, 0, -1.0);
  base.set(0, 1, -1.0);
  base.set(0, -1, -1.0);

  Stencil eta = base;
  for (int k = 0; k < params.nu; ++k) eta = convolve(eta, base);
  double t2 = params.tau * params.tau;
  for (auto& [h, v] : eta.coef) v *= t2;
  return eta;
}

double spectral_density(const ModelParams& params, double w1, double w2) {
  params.validate();
  double d = params.kappa * params.kappa + 4.0 - 2.0 * std::cos(w1) - 2.0 * std::cos(w2);
  if (d <= 0.0) throw numerical_error("spectral density singular");
  return std::pow(d, -params.nu - 1) / (params.tau * params.tau);
}

double inverse_spectrum(const Stencil& st, double w1, double w2) {
  double s = 0.0;
  for (const auto& [h, v] : st.coef) s += v * std::cos(w1 * h[0] + w2 * h[1]);
  return s;
}

}  // namespace gridmrf
