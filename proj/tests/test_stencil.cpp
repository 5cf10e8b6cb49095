#include <doctest.h>

#include <cmath>

#include "gridmrf/stencil.hpp"

using namespace gridmrf;

TEST_CASE("base stencil, nu = 0") {
  ModelParams p{.tau = 2.0, .kappa = 0.5, .nu = 0};
  Stencil st = stencil_from_params(p);
  CHECK(st.center() == doctest::Approx(4.0 * (0.25 + 4.0)));
  CHECK(st.at(1, 0) == doctest::Approx(-4.0));
  CHECK(st.at(0, -1) == doctest::Approx(-4.0));
  CHECK(st.at(1, 1) == 0.0);
  CHECK(st.extent() == 1);
}

TEST_CASE("self-convolved stencil, nu = 1, kappa = 0") {
  ModelParams p{.tau = 1.0, .kappa = 0.0, .nu = 1};
  Stencil st = stencil_from_params(p);
  CHECK(st.center() == doctest::Approx(20.0));   // 4^2 + 4
  CHECK(st.at(1, 0) == doctest::Approx(-8.0));
  CHECK(st.at(1, 1) == doctest::Approx(2.0));
  CHECK(st.at(2, 0) == doctest::Approx(1.0));
  CHECK(st.at(0, -2) == doctest::Approx(1.0));
  CHECK(st.extent() == 2);
}

TEST_CASE("symbol is the reciprocal spectral density") {
  ModelParams p{.tau = 1.3, .kappa = 0.7, .nu = 2};
  Stencil st = stencil_from_params(p);
  for (double w1 : {0.0, 0.3, 2.1})
    for (double w2 : {0.0, 1.7}) {
      double f = spectral_density(p, w1, w2);
      CHECK(inverse_spectrum(st, w1, w2) == doctest::Approx(1.0 / f).epsilon(1e-12));
    }
}

TEST_CASE("spectral density singular at zero frequency when kappa = 0") {
  ModelParams p{.tau = 1.0, .kappa = 0.0, .nu = 0};
  CHECK_THROWS_WITH_AS(spectral_density(p, 0.0, 0.0), "spectral density singular",
                       numerical_error);
  CHECK(spectral_density(p, 0.5, 0.0) > 0.0);
}

TEST_CASE("validate rejects asymmetric stencils") {
  Stencil st;
  st.set(0, 0, 4.0);
  st.set(1, 0, -1.0);
  CHECK_THROWS_AS(st.validate(), std::invalid_argument);
  st.set(-1, 0, -1.0);
  CHECK_NOTHROW(st.validate());
}

TEST_CASE("convolution multiplies symbols") {
  ModelParams a{.tau = 1.0, .kappa = 0.4, .nu = 0};
  Stencil sa = stencil_from_params(a), sc = convolve(sa, sa);
  double w1 = 0.9, w2 = 0.2;
  CHECK(inverse_spectrum(sc, w1, w2) ==
        doctest::Approx(std::pow(inverse_spectrum(sa, w1, w2), 2)).epsilon(1e-12));
}

TEST_CASE("dominance quantities") {
  ModelParams p{.tau = 1.0, .kappa = 1.0, .nu = 0};
  Stencil st = stencil_from_params(p);
  CHECK(st.offcenter_abs_sum() == doctest::Approx(4.0));
}
