#ifndef GRIDMRF_PRECISION_HPP
#define GRIDMRF_PRECISION_HPP

#include <Eigen/Dense>
#include <Eigen/SparseCholesky>
#include <Eigen/SparseCore>

#include "gridmrf/covariance.hpp"
#include "gridmrf/grid.hpp"

namespace gridmrf {

// Sparse symmetric storage: both triangles present with equal values.
using SparseSymMatrix = Eigen::SparseMatrix<double>;
using DenseSymMatrix = Eigen::MatrixXd;

// Sparse SPD factorization: AMD fill-reducing ordering + sparse Cholesky
// (LDL^T variant). Immutable after construction; solves are const.
class SparseFactor {
 public:
  explicit SparseFactor(const SparseSymMatrix& m);
  int dim() const { return dim_; }
  double logdet() const { return logdet_; }
  Eigen::VectorXd solve(const Eigen::VectorXd& rhs) const;

 private:
  Eigen::SimplicialLDLT<SparseSymMatrix> ldlt_;
  int dim_ = 0;
  double logdet_ = 0.0;
};

// Precision entries known from the conditional specification: (i, j) filled
// with eta(x_i - x_j) whenever at least one of the pair is fully neighbored.
// The (partially, partially) corner block is left empty. Rows/columns are in
// partition order (partially neighbored first).
SparseSymMatrix assemble_sparse_Q(const GridMask& mask, const PartitionIndex& index,
                                  const Stencil& stencil);

// Dense corner block Q11 = Sigma11^-1 + Q12 Q22^-1 Q21, computed column by
// column (one sparse solve plus one sparse multiply per column, columns in
// parallel; never materializes the dense (n - m_n) x m_n solve matrix).
DenseSymMatrix q11_dense(const DenseSymMatrix& sigma11_inv, const SparseSymMatrix& Q12,
                         const SparseFactor& Q22_factor, int workers = 0);

enum class ApproxScheme { none, precision, periodic };

// Diagonal dominance ratio eta(0) / sum_{h!=0} |eta(h)|; the precision
// adjustment applies only when this exceeds 1.
double dominance_ratio(const Stencil& stencil);

// Approximate full precision (partition order). `none` uses the stencil
// everywhere; `precision` replaces diagonals of partially neighbored rows by
// ratio * sum over observed neighbors of |eta|; `periodic` wraps lags onto
// the grid torus (complete grids only).
SparseSymMatrix approx_Q(const GridMask& mask, const PartitionIndex& index,
                         const Stencil& stencil, ApproxScheme scheme);

}  // namespace gridmrf

#endif
