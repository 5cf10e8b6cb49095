#ifndef GRIDMRF_STENCIL_HPP
#define GRIDMRF_STENCIL_HPP

#include <array>
#include <map>

#include "gridmrf/types.hpp"

namespace gridmrf {

// Finite symmetric conditional-specification coefficients eta(h) of a
// stationary GMRF. eta(0) > 0 and eta(h) = eta(-h).
struct Stencil {
  using Lag = std::array<int, 2>;
  std::map<Lag, double> coef;

  double at(int h1, int h2) const {
    auto it = coef.find({h1, h2});
    return it == coef.end() ? 0.0 : it->second;
  }
  double center() const { return at(0, 0); }

  // Largest |component| over the support.
  int extent() const;

  // Sum of |eta(h)| over h != 0.
  double offcenter_abs_sum() const;

  void set(int h1, int h2, double v) { coef[{h1, h2}] = v; }

  // Checks symmetry, positive center, nonempty support.
  void validate() const;
};

// Discrete convolution of two stencils (product of their symbols).
Stencil convolve(const Stencil& a, const Stencil& b);

// eta for the model family: tau^2 times the (nu+1)-fold self-convolution of
// the base stencil {center kappa^2+4, four adjacent -1}.
Stencil stencil_from_params(const ModelParams& params);

// tau^-2 (kappa^2 + 4 - 2cos w1 - 2cos w2)^(-nu-1).
double spectral_density(const ModelParams& params, double w1, double w2);

// Symbol sum_h eta(h) e^{i w.h}; real by symmetry. Reciprocal of the
// spectral density wherever the latter is finite.
double inverse_spectrum(const Stencil& st, double w1, double w2);

}  // namespace gridmrf

#endif
