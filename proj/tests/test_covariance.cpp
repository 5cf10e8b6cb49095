#include <doctest.h>

#include <cmath>
#include <random>

#include "gridmrf/covariance.hpp"

using namespace gridmrf;

TEST_CASE("white-noise stencil gives a delta covariance") {
  Stencil st;
  st.set(0, 0, 4.0);
  CovarianceTable t = covariance_table(st, 6, 6, 2);
  CHECK(t.values(0, 0) == doctest::Approx(0.25).epsilon(1e-13));
  double off = 0.0;
  for (int a = 0; a < t.t1; ++a)
    for (int b = 0; b < t.t2; ++b)
      if (a || b) off = std::max(off, std::fabs(t.values(a, b)));
  CHECK(off < 1e-14);
}

TEST_CASE("table depends only on the torus dimensions") {
  // same frequency grid, different (n, J) factorizations
  ModelParams p{.tau = 1.0, .kappa = 0.3, .nu = 1};
  CovarianceTable a = covariance_table(p, 4, 4, 6);
  CovarianceTable b = covariance_table(p, 8, 8, 3);
  REQUIRE(a.t1 == b.t1);
  CHECK((a.values - b.values).abs().maxCoeff() == 0.0);
}

TEST_CASE("small-grid padding floor") {
  ModelParams p{.tau = 1.0, .kappa = 0.3, .nu = 0};
  CovarianceTable t = table_for_grid(p, 8, 8, 3);
  CHECK(t.t1 == kSmallGridTorusFloor);
  CovarianceTable big = table_for_grid(p, 25, 25, 3);
  CHECK(big.t1 == 75);
}

TEST_CASE("symmetry K(h) = K(-h)") {
  ModelParams p{.tau = 0.8, .kappa = 0.5, .nu = 1};
  CovarianceTable t = covariance_table(p, 5, 7, 3);
  for (int a = -4; a <= 4; ++a)
    for (int b = -6; b <= 6; ++b)
      CHECK(t.at(a, b) == doctest::Approx(t.at(-a, -b)).epsilon(1e-12));
}

TEST_CASE("circulant matvec equals direct summation") {
  ModelParams p{.tau = 1.0, .kappa = 0.4, .nu = 0};
  CovarianceTable t = covariance_table(p, 6, 6, 2);
  std::mt19937 rng(11);
  std::vector<Location> src{{0, 0}, {1, 3}, {5, 5}, {2, 2}};
  std::vector<Location> tgt{{0, 1}, {4, 4}, {1, 3}};
  Eigen::VectorXd v = Eigen::VectorXd::Random(4);
  Eigen::VectorXd got = circ_matvec(t, v, src, tgt);
  for (size_t k = 0; k < tgt.size(); ++k) {
    double want = 0.0;
    for (size_t s = 0; s < src.size(); ++s)
      want += t.at(tgt[k].first - src[s].first, tgt[k].second - src[s].second) * v[s];
    CHECK(got[k] == doctest::Approx(want).epsilon(1e-10));
  }
}

TEST_CASE("circulant matvec rejects out-of-torus locations") {
  ModelParams p{.tau = 1.0, .kappa = 0.4, .nu = 0};
  CovarianceTable t = covariance_table(p, 4, 4, 2);
  std::vector<Location> bad{{9, 0}};
  Eigen::VectorXd v(1);
  v << 1.0;
  CHECK_THROWS_AS(circ_matvec(t, v, bad, bad), std::invalid_argument);
}

TEST_CASE("unconditional simulation is seed-reproducible") {
  ModelParams p{.tau = 1.0, .kappa = 0.3, .nu = 0, .sigma2 = 0.02, .mu = 3.0};
  GridMask m = GridMask::complete(7, 7);
  Eigen::VectorXd a = unconditional_sim(p, m, 2, 99);
  Eigen::VectorXd b = unconditional_sim(p, m, 2, 99);
  Eigen::VectorXd c = unconditional_sim(p, m, 2, 100);
  CHECK(a == b);
  CHECK((a - c).norm() > 0.0);
}

TEST_CASE("torus sampler has the table's second moments") {
  ModelParams p{.tau = 1.0, .kappa = 0.5, .nu = 0};
  CovarianceTable t = covariance_table(p, 16, 16, 2);  // 32x32 torus, no padding
  std::mt19937_64 rng(5);
  int reps = 4000;
  double s0 = 0.0, s1 = 0.0;  // var at a cell, covariance with right neighbor
  for (int r = 0; r < reps / 2; ++r) {
    auto [f, g] = sample_torus_fields(t, rng);
    s0 += f(3, 3) * f(3, 3) + g(3, 3) * g(3, 3);
    s1 += f(3, 3) * f(3, 4) + g(3, 3) * g(3, 4);
  }
  double k0 = t.values(0, 0), k1 = t.at(0, 1);
  // MC se of a variance estimate is roughly sqrt(2/reps) * K(0)
  CHECK(std::fabs(s0 / reps - k0) < 5.0 * k0 * std::sqrt(2.0 / reps));
  CHECK(std::fabs(s1 / reps - k1) < 5.0 * k0 * std::sqrt(2.0 / reps));
}

TEST_CASE("independence of the two sampled fields") {
  ModelParams p{.tau = 1.0, .kappa = 0.5, .nu = 0};
  CovarianceTable t = covariance_table(p, 8, 8, 2);
  std::mt19937_64 rng(17);
  double cross = 0.0;
  int reps = 2000;
  for (int r = 0; r < reps; ++r) {
    auto [f, g] = sample_torus_fields(t, rng);
    cross += f(2, 2) * g(2, 2);
  }
  CHECK(std::fabs(cross / reps) < 5.0 * t.values(0, 0) / std::sqrt(double(reps)));
}

TEST_CASE("simulation requires J >= 2") {
  ModelParams p{.tau = 1.0, .kappa = 0.5, .nu = 0};
  CHECK_THROWS_AS(unconditional_sim(p, GridMask::complete(4, 4), 1, 1),
                  std::invalid_argument);
}
