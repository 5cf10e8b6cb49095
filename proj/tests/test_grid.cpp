#include <doctest.h>

#include <random>

#include "gridmrf/grid.hpp"

using namespace gridmrf;

namespace {
Stencil four_point() {
  return stencil_from_params(ModelParams{.tau = 1.0, .kappa = 1.0, .nu = 0});
}
}  // namespace

TEST_CASE("canonical orientation transposes tall grids") {
  std::vector<std::uint8_t> obs(5 * 3, 1);
  obs[1 * 3 + 2] = 0;  // row 1, col 2 in caller orientation
  GridMask m(5, 3, obs);
  CHECK(m.n1 == 3);
  CHECK(m.n2 == 5);
  CHECK(m.transposed);
  CHECK(m.n_obs() == 14);
  CHECK(!m.is_observed(2, 1));  // transposed coordinates
}

TEST_CASE("empty mask is rejected") {
  CHECK_THROWS_WITH_AS(GridMask(2, 2, {0, 0, 0, 0}), "no observations",
                       std::invalid_argument);
}

TEST_CASE("classification counts boundary cells on complete grids") {
  for (auto [r, c] : {std::pair{3, 3}, {3, 7}, {6, 4}, {10, 10}}) {
    GridMask m = GridMask::complete(r, c);
    PartitionIndex idx = classify(m, four_point());
    CHECK(idx.m_n == 2 * r + 2 * c - 4);
    CHECK(idx.n_obs == r * c);
  }
}

TEST_CASE("1x1 and thin grids are entirely partially neighbored") {
  PartitionIndex idx = classify(GridMask::complete(1, 1), four_point());
  CHECK(idx.m_n == 1);
  idx = classify(GridMask::complete(1, 9), four_point());
  CHECK(idx.m_n == 9);
}

TEST_CASE("a missing cell demotes its neighbors") {
  std::vector<std::uint8_t> obs(5 * 5, 1);
  obs[2 * 5 + 2] = 0;
  PartitionIndex idx = classify(GridMask(5, 5, obs), four_point());
  // boundary ring (16) + the four orthogonal neighbors of the hole
  CHECK(idx.m_n == 20);
}

TEST_CASE("perm is a bijection with the partial group first") {
  std::mt19937 rng(7);
  std::vector<std::uint8_t> obs(6 * 8);
  for (auto& o : obs) o = rng() % 4 ? 1 : 0;
  obs[0] = 1;
  GridMask m(6, 8, obs);
  PartitionIndex idx = classify(m, four_point());
  std::vector<int> seen(idx.n_obs, 0);
  for (int i = 0; i < idx.n_obs; ++i) {
    CHECK(idx.inv[idx.perm[i]] == i);
    seen[idx.perm[i]]++;
    CHECK((idx.perm[i] < idx.m_n) == !idx.fully[i]);
  }
  for (int s : seen) CHECK(s == 1);
}

TEST_CASE("block view and merge round-trip") {
  std::mt19937 rng(3);
  std::vector<std::uint8_t> obs(4 * 7);
  for (auto& o : obs) o = rng() % 3 ? 1 : 0;
  obs[5] = 1;
  GridMask m(4, 7, obs);
  PartitionIndex idx = classify(m, four_point());
  Eigen::VectorXd v = Eigen::VectorXd::Random(idx.n_obs);
  auto [v1, v2] = block_view(idx, v);
  CHECK(v1.size() == idx.m_n);
  CHECK(block_merge(idx, v1, v2) == v);
}
