#include <doctest.h>

#include <cmath>
#include <numbers>

#include "gridmrf/oracle.hpp"

using namespace gridmrf;

TEST_CASE("single observation: oracle equals the fast path") {
  ModelParams p{.tau = 1.0, .kappa = 0.8, .nu = 0};
  GridMask m = GridMask::complete(1, 1);
  Eigen::VectorXd y(1);
  y << 1.3;
  LoglikBreakdown a = dense_loglik(p, m, y, 64);
  LoglikBreakdown b = loglik_exact(p, m, y, 64);
  CHECK(a.loglik == doctest::Approx(b.loglik).epsilon(1e-12));
}

TEST_CASE("quadrature saturation: J_hi 64 vs 128") {
  ModelParams p{.tau = 1.0, .kappa = 0.3, .nu = 1, .sigma2 = 0.01};
  GridMask m = GridMask::complete(5, 5);
  Eigen::VectorXd y = unconditional_sim(p, m, 2, 47);
  double a = dense_loglik(p, m, y, 64).loglik;
  double b = dense_loglik(p, m, y, 128).loglik;
  CHECK(std::fabs(a - b) < 1e-10 * std::fabs(a));
}

TEST_CASE("dense precision: 1x1 grid") {
  ModelParams p{.tau = 1.0, .kappa = 0.6, .nu = 0};
  GridMask m = GridMask::complete(1, 1);
  double k0 = table_for_grid(p, 1, 1, 64).values(0, 0);
  Eigen::MatrixXd q = dense_Q(p, m, 64);
  CHECK(q(0, 0) == doctest::Approx(1.0 / k0).epsilon(1e-10));
}

TEST_CASE("dense precision symmetry and interior stencil rows (6x6, nu=0)") {
  ModelParams p{.tau = 1.0, .kappa = 0.5, .nu = 0};
  GridMask m = GridMask::complete(6, 6);
  Eigen::MatrixXd q = dense_Q(p, m, 64);
  CHECK((q - q.transpose()).cwiseAbs().maxCoeff() < 1e-12 * q.cwiseAbs().maxCoeff());
  Stencil st = stencil_from_params(p);
  PartitionIndex idx = classify(m, st);
  for (int i = 0; i < idx.n_obs; ++i) {
    if (!idx.fully[i]) continue;
    auto [ri, ci] = m.coord(i);
    for (int j = 0; j < idx.n_obs; ++j) {
      auto [rj, cj] = m.coord(j);
      CHECK(q(i, j) == doctest::Approx(st.at(ri - rj, ci - cj)).epsilon(1e-6));
    }
  }
}

TEST_CASE("size guards") {
  ModelParams p{.tau = 1.0, .kappa = 0.5, .nu = 0};
  GridMask big = GridMask::complete(65, 65);  // 4225 observations
  Eigen::VectorXd y = Eigen::VectorXd::Zero(big.n_obs());
  CHECK_THROWS_AS(dense_loglik(p, big, y), size_guard_error);
  GridMask mid = GridMask::complete(46, 46);  // 2116 observations
  CHECK_THROWS_AS(dense_Q(p, mid), size_guard_error);
}

TEST_CASE("table difference shrinks with oversampling") {
  ModelParams p{.tau = 1.0, .kappa = 0.5, .nu = 0};
  double d1 = delta_J(p, 20, 20, 1);
  double d2 = delta_J(p, 20, 20, 2);
  double d3 = delta_J(p, 20, 20, 3);
  CHECK(d1 > d2);
  CHECK(d2 > d3);
  CHECK(d3 < 1e-6);
}

TEST_CASE("oracle determinism") {
  ModelParams p{.tau = 1.0, .kappa = 0.7, .nu = 1};
  GridMask m = GridMask::complete(4, 5);
  Eigen::VectorXd y = unconditional_sim(p, m, 2, 3);
  CHECK(dense_loglik(p, m, y).loglik == dense_loglik(p, m, y).loglik);
}
