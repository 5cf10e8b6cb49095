#ifndef GRIDMRF_SRC_ASSEMBLY_HPP
#define GRIDMRF_SRC_ASSEMBLY_HPP

#include <vector>

#include "gridmrf/covariance.hpp"
#include "gridmrf/precision.hpp"

namespace gridmrf::detail {

// Sparse precision blocks from the interior stencil, in partition order: Q22 ((n-m) x (n-m)) and Q12 (m x (n-m)).
struct SparseBlocks {
  SparseSymMatrix Q22;
  SparseSymMatrix Q12;
};
SparseBlocks stencil_blocks(const GridMask& mask, const PartitionIndex& index,
                           const Stencil& stencil);

// Grid coordinates of the partially / fully neighbored observations, in
// partition order.
std::vector<Location> partial_locations(const GridMask& mask, const PartitionIndex& index);
std::vector<Location> full_locations(const GridMask& mask, const PartitionIndex& index);

// Dense covariance of the partially neighbored observations from the table.
Eigen::MatrixXd sigma11_dense(const CovarianceTable& table,
                              const std::vector<Location>& locs);

}  // namespace gridmrf::detail

#endif
