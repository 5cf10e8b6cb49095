#ifndef GRIDMRF_GRID_HPP
#define GRIDMRF_GRID_HPP

#include <Eigen/Dense>
#include <cstdint>
#include <utility>
#include <vector>

#include "gridmrf/stencil.hpp"

namespace gridmrf {

// Observation pattern on a rectangular grid. Canonical orientation has
// n1 <= n2; inputs with more rows than columns are transposed on
// construction (`transposed` records this so grid-shaped outputs can be
// mapped back). Observations are indexed in row-major scan order.
struct GridMask {
  int n1 = 0;  // rows (n1 <= n2)
  int n2 = 0;  // columns
  bool transposed = false;
  std::vector<std::uint8_t> observed;  // n1*n2, row-major
  std::vector<int> cells;              // linear ids of observed cells, ascending
  std::vector<int> obs_of_cell;        // linear id -> observation index, -1 if missing

  GridMask() = default;
  // `obs` is rows x cols row-major in the caller's orientation.
  GridMask(int rows, int cols, std::vector<std::uint8_t> obs);
  static GridMask complete(int rows, int cols);

  int n_obs() const { return static_cast<int>(cells.size()); }
  bool is_observed(int i, int j) const { return observed[i * n2 + j] != 0; }
  std::pair<int, int> coord(int obs_index) const {
    int c = cells[obs_index];
    return {c / n2, c % n2};
  }
};

// Fully/partially-neighbored split and the permutation putting
// partially-neighbored observations first (row-major within each group).
struct PartitionIndex {
  std::vector<int> perm;            // observation index -> position
  std::vector<int> inv;             // position -> observation index
  std::vector<std::uint8_t> fully;  // per observation
  int m_n = 0;
  int n_obs = 0;
};

// Flags observation i fully neighbored iff every nonzero lag of the stencil
// lands on an observed in-grid cell.
PartitionIndex classify(const GridMask& mask, const Stencil& stencil);

// Splits a vector over observations into (partially, fully) neighbored parts.
std::pair<Eigen::VectorXd, Eigen::VectorXd> block_view(const PartitionIndex& index,
                                                       const Eigen::VectorXd& v);

// Inverse of block_view.
Eigen::VectorXd block_merge(const PartitionIndex& index, const Eigen::VectorXd& v1,
                            const Eigen::VectorXd& v2);

}  // namespace gridmrf

#endif
