#include <doctest.h>

#include <random>

#include "gridmrf/oracle.hpp"
#include "gridmrf/precision.hpp"

using namespace gridmrf;

namespace {

// Full dense precision in OBSERVATION order from the sparse blocks plus the
// dense corner.
Eigen::MatrixXd full_precision(const ModelParams& p, const GridMask& mask, int J) {
  Stencil st = stencil_from_params(p);
  PartitionIndex idx = classify(mask, st);
  int n = idx.n_obs, m = idx.m_n;
  Eigen::MatrixXd qp = Eigen::MatrixXd(assemble_sparse_Q(mask, idx, st));
  if (m > 0) {
    CovarianceTable table = table_for_grid(p, mask.n1, mask.n2, J);
    Eigen::MatrixXd s11(m, m);
    for (int j = 0; j < m; ++j) {
      auto [rj, cj] = mask.coord(idx.inv[j]);
      for (int i = 0; i < m; ++i) {
        auto [ri, ci] = mask.coord(idx.inv[i]);
        s11(i, j) = table.at(ri - rj, ci - cj);
      }
    }
    SparseSymMatrix q12 = Eigen::MatrixXd(qp.topRightCorner(m, n - m)).sparseView();
    SparseFactor q22(SparseSymMatrix(
        Eigen::MatrixXd(qp.bottomRightCorner(n - m, n - m)).sparseView()));
    qp.topLeftCorner(m, m) =
        q11_dense(s11.llt().solve(Eigen::MatrixXd::Identity(m, m)), q12, q22);
  }
  Eigen::MatrixXd q(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) q(i, j) = qp(idx.perm[i], idx.perm[j]);
  return q;
}

}  // namespace

TEST_CASE("assembled precision inverts the dense covariance (6x6, nu=0)") {
  ModelParams p{.tau = 1.0, .kappa = 0.4, .nu = 0};
  GridMask mask = GridMask::complete(6, 6);
  Eigen::MatrixXd q = full_precision(p, mask, 64);
  CovarianceTable table = table_for_grid(p, 6, 6, 64);
  int n = mask.n_obs();
  Eigen::MatrixXd sigma(n, n);
  for (int j = 0; j < n; ++j) {
    auto [rj, cj] = mask.coord(j);
    for (int i = 0; i < n; ++i) {
      auto [ri, ci] = mask.coord(i);
      sigma(i, j) = table.at(ri - rj, ci - cj);
    }
  }
  CHECK((q * sigma - Eigen::MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("sparse block corner is empty and matrix symmetric") {
  std::mt19937 rng(2);
  std::vector<std::uint8_t> obs(7 * 7);
  for (auto& o : obs) o = rng() % 4 ? 1 : 0;
  obs[0] = 1;
  GridMask mask(7, 7, obs);
  ModelParams p{.tau = 1.1, .kappa = 0.6, .nu = 1};
  Stencil st = stencil_from_params(p);
  PartitionIndex idx = classify(mask, st);
  Eigen::MatrixXd q = Eigen::MatrixXd(assemble_sparse_Q(mask, idx, st));
  CHECK((q - q.transpose()).cwiseAbs().maxCoeff() == 0.0);
  CHECK(q.topLeftCorner(idx.m_n, idx.m_n).cwiseAbs().maxCoeff() == 0.0);
  // fully-neighbored diagonal entries carry the stencil center
  for (int pos = idx.m_n; pos < idx.n_obs; ++pos)
    CHECK(q(pos, pos) == doctest::Approx(st.center()));
}

TEST_CASE("degenerate all-partial mask: Q11 is the covariance inverse") {
  GridMask mask = GridMask::complete(2, 2);  // every cell partially neighbored
  ModelParams p{.tau = 1.0, .kappa = 0.8, .nu = 0};
  Stencil st = stencil_from_params(p);
  PartitionIndex idx = classify(mask, st);
  REQUIRE(idx.m_n == 4);
  auto blocks_q = assemble_sparse_Q(mask, idx, st);
  CHECK(Eigen::MatrixXd(blocks_q).cwiseAbs().maxCoeff() == 0.0);
  Eigen::MatrixXd s11_inv = dense_Q(p, mask, 64);
  SparseSymMatrix q12(4, 0);
  SparseFactor q22{SparseSymMatrix(0, 0)};
  Eigen::MatrixXd q11 = q11_dense(s11_inv, q12, q22);
  CHECK((q11 - s11_inv).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("dominance ratio and the precision adjustment") {
  ModelParams p{.tau = 1.0, .kappa = 1.0, .nu = 0};
  Stencil st = stencil_from_params(p);
  CHECK(dominance_ratio(st) == doctest::Approx(1.25));

  GridMask mask = GridMask::complete(4, 4);
  PartitionIndex idx = classify(mask, st);
  Eigen::MatrixXd q = Eigen::MatrixXd(approx_Q(mask, idx, st, ApproxScheme::precision));
  // corner cell: two observed neighbors, adjusted diagonal 1.25 * 2
  int corner = idx.perm[mask.obs_of_cell[0]];
  CHECK(q(corner, corner) == doctest::Approx(2.5));
  // interior cell keeps the center
  int interior = idx.perm[mask.obs_of_cell[1 * 4 + 1]];
  CHECK(q(interior, interior) == doctest::Approx(5.0));
  CHECK((q - q.transpose()).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("precision adjustment inapplicable without diagonal dominance") {
  ModelParams p{.tau = 1.0, .kappa = 0.1, .nu = 1};
  Stencil st = stencil_from_params(p);
  REQUIRE(dominance_ratio(st) < 1.0);
  GridMask mask = GridMask::complete(5, 5);
  PartitionIndex idx = classify(mask, st);
  CHECK_THROWS_WITH_AS(approx_Q(mask, idx, st, ApproxScheme::precision),
                       "precision adjustment inapplicable", numerical_error);
}

TEST_CASE("periodic adjustment wraps lags onto the grid torus") {
  ModelParams p{.tau = 1.0, .kappa = 0.5, .nu = 0};
  Stencil st = stencil_from_params(p);
  GridMask mask = GridMask::complete(5, 6);
  PartitionIndex idx = classify(mask, st);
  Eigen::MatrixXd q = Eigen::MatrixXd(approx_Q(mask, idx, st, ApproxScheme::periodic));
  CHECK((q - q.transpose()).cwiseAbs().maxCoeff() == 0.0);
  // row (0,0): wrapped neighbors (4,0) and (0,5)
  int a = idx.perm[mask.obs_of_cell[0]];
  int b = idx.perm[mask.obs_of_cell[4 * 6 + 0]];
  CHECK(q(a, b) == doctest::Approx(-1.0));
  // every row sums to the symbol at frequency 0
  for (int i = 0; i < idx.n_obs; ++i)
    CHECK(q.row(i).sum() == doctest::Approx(inverse_spectrum(st, 0.0, 0.0)));
}

TEST_CASE("periodic adjustment guards") {
  ModelParams p{.tau = 1.0, .kappa = 0.5, .nu = 0};
  Stencil st = stencil_from_params(p);
  std::vector<std::uint8_t> obs(5 * 5, 1);
  obs[3] = 0;
  GridMask holey(5, 5, obs);
  CHECK_THROWS_AS(approx_Q(holey, classify(holey, st), st, ApproxScheme::periodic),
                  std::invalid_argument);
  GridMask tiny = GridMask::complete(2, 5);
  CHECK_THROWS_AS(approx_Q(tiny, classify(tiny, st), st, ApproxScheme::periodic),
                  std::invalid_argument);
}

TEST_CASE("sparse factor logdet matches dense") {
  std::mt19937 rng(9);
  int n = 30;
  Eigen::MatrixXd a = Eigen::MatrixXd::Random(n, n);
  Eigen::MatrixXd spd = a * a.transpose() + 5.0 * Eigen::MatrixXd::Identity(n, n);
  SparseFactor f{SparseSymMatrix(spd.sparseView())};
  double want = std::log(spd.determinant());
  CHECK(f.logdet() == doctest::Approx(want).epsilon(1e-9));
  Eigen::VectorXd rhs = Eigen::VectorXd::Random(n);
  CHECK((spd * f.solve(rhs) - rhs).norm() < 1e-9);
}

TEST_CASE("sparse factor rejects indefinite input") {
  Eigen::MatrixXd bad(2, 2);
  bad << 1.0, 3.0, 3.0, 1.0;
  CHECK_THROWS_AS(SparseFactor{SparseSymMatrix(bad.sparseView())}, numerical_error);
}
