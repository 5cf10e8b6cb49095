#include "gridmrf/precision.hpp"

#include <cmath>
#include <vector>

#include "assembly.hpp"
#include "gridmrf/threads.hpp"

namespace gridmrf {

SparseFactor::SparseFactor(const SparseSymMatrix& m) : dim_(static_cast<int>(m.rows())) {
  if (m.rows() != m.cols()) throw std::invalid_argument("matrix must be square");
  if (dim_ == 0) return;
  ldlt_.compute(m);
  if (ldlt_.info() != Eigen::Success)
    throw numerical_error("sparse factorization failed (matrix not positive definite?)");
  const auto& d = ldlt_.vectorD();
  for (int i = 0; i < d.size(); ++i) {
    if (!(d[i] > 0.0)) throw numerical_error("sparse factorization has nonpositive pivot");
    logdet_ += std::log(d[i]);
  }
}

Eigen::VectorXd SparseFactor::solve(const Eigen::VectorXd& rhs) const {
  if (rhs.size() != dim_) throw std::invalid_argument("rhs length mismatch");
  if (dim_ == 0) return rhs;
  return ldlt_.solve(rhs);
}

namespace detail {

std::vector<Location> partial_locations(const GridMask& mask, const PartitionIndex& index) {
  std::vector<Location> locs(index.m_n);
  for (int p = 0; p < index.m_n; ++p) locs[p] = mask.coord(index.inv[p]);
  return locs;
}

std::vector<Location> full_locations(const GridMask& mask, const PartitionIndex& index) {
  std::vector<Location> locs(index.n_obs - index.m_n);
  for (int p = index.m_n; p < index.n_obs; ++p)
    locs[p - index.m_n] = mask.coord(index.inv[p]);
  return locs;
}

Eigen::MatrixXd sigma11_dense(const CovarianceTable& table,
                              const std::vector<Location>& locs) {
  int m = static_cast<int>(locs.size());
  Eigen::MatrixXd s11(m, m);
  for (int j = 0; j < m; ++j)
    for (int i = 0; i < m; ++i)
      s11(i, j) = table.at(locs[i].first - locs[j].first, locs[i].second - locs[j].second);
  return s11;
}

namespace {

// Entries (pi, pj) with eta != 0 and at least one of the pair fully
// neighbored, positions in partition order.
void stencil_triplets(const GridMask& mask, const PartitionIndex& index,
                     const Stencil& stencil,
                     std::vector<Eigen::Triplet<double>>& out) {
  if (index.n_obs != mask.n_obs())
    throw std::invalid_argument("partition index does not match mask");
  for (int i = 0; i < index.n_obs; ++i) {
    int pi = index.perm[i];
    auto [r, c] = mask.coord(i);
    for (const auto& [h, v] : stencil.coef) {
      if (v == 0.0) continue;
      int rr = r + h[0], cc = c + h[1];
      if (rr < 0 || rr >= mask.n1 || cc < 0 || cc >= mask.n2) continue;
      int jo = mask.obs_of_cell[rr * mask.n2 + cc];
      if (jo < 0) continue;
      int pj = index.perm[jo];
      if (pi < index.m_n && pj < index.m_n) continue;  // corner block left empty
      out.emplace_back(pi, pj, v);
    }
  }
}

}  // namespace

SparseBlocks stencil_blocks(const GridMask& mask, const PartitionIndex& index,
                           const Stencil& stencil) {
  std::vector<Eigen::Triplet<double>> trip;
  stencil_triplets(mask, index, stencil, trip);
  int m = index.m_n, nf = index.n_obs - m;
  std::vector<Eigen::Triplet<double>> t22, t12;
  for (const auto& t : trip) {
    if (t.row() >= m && t.col() >= m)
      t22.emplace_back(t.row() - m, t.col() - m, t.value());
    else if (t.row() < m && t.col() >= m)
      t12.emplace_back(t.row(), t.col() - m, t.value());
  }
  SparseBlocks blocks;
  blocks.Q22.resize(nf, nf);
  blocks.Q22.setFromTriplets(t22.begin(), t22.end());
  blocks.Q12.resize(m, nf);
  blocks.Q12.setFromTriplets(t12.begin(), t12.end());
  return blocks;
}

}  // namespace detail

SparseSymMatrix assemble_sparse_Q(const GridMask& mask, const PartitionIndex& index,
                                  const Stencil& stencil) {
  stencil.validate();
  std::vector<Eigen::Triplet<double>> trip;
  detail::stencil_triplets(mask, index, stencil, trip);
  SparseSymMatrix q(index.n_obs, index.n_obs);
  q.setFromTriplets(trip.begin(), trip.end());
  return q;
}

DenseSymMatrix q11_dense(const DenseSymMatrix& sigma11_inv, const SparseSymMatrix& Q12,
                         const SparseFactor& Q22_factor, int workers) {
  int m = static_cast<int>(Q12.rows());
  if (sigma11_inv.rows() != m || sigma11_inv.cols() != m)
    throw std::invalid_argument("Sigma11 inverse dimension mismatch");
  if (Q12.cols() != Q22_factor.dim())
    throw std::invalid_argument("Q12 / Q22 dimension mismatch");
  DenseSymMatrix q11 = sigma11_inv;
  if (Q22_factor.dim() == 0 || m == 0) return q11;
  parallel_for(m, workers, [&](int j) {
    Eigen::VectorXd col = Q22_factor.solve(Q12.row(j).transpose());
    q11.col(j) += Q12 * col;
  });
  return q11;
}

double dominance_ratio(const Stencil& stencil) {
  return stencil.center() / stencil.offcenter_abs_sum();
}

SparseSymMatrix approx_Q(const GridMask& mask, const PartitionIndex& index,
                         const Stencil& stencil, ApproxScheme scheme) {
  stencil.validate();
  if (index.n_obs != mask.n_obs())
    throw std::invalid_argument("partition index does not match mask");
  std::vector<Eigen::Triplet<double>> trip;

  if (scheme == ApproxScheme::periodic) {
    if (mask.n_obs() != mask.n1 * mask.n2)
      throw std::invalid_argument("periodic adjustment requires a complete rectangular grid");
    int e = stencil.extent();
    if (mask.n1 < 2 * e + 1 || mask.n2 < 2 * e + 1)
      throw std::invalid_argument("grid too small for periodic adjustment");
    for (int i = 0; i < index.n_obs; ++i) {
      int pi = index.perm[i];
      auto [r, c] = mask.coord(i);
      for (const auto& [h, v] : stencil.coef) {
        if (v == 0.0) continue;
        int rr = (r + h[0] % mask.n1 + mask.n1) % mask.n1;
        int cc = (c + h[1] % mask.n2 + mask.n2) % mask.n2;
        trip.emplace_back(pi, index.perm[mask.obs_of_cell[rr * mask.n2 + cc]], v);
      }
    }
  } else {
    double lambda = 0.0;
    if (scheme == ApproxScheme::precision) {
      lambda = dominance_ratio(stencil);
      if (!(lambda > 1.0)) throw numerical_error("precision adjustment inapplicable");
    }
    for (int i = 0; i < index.n_obs; ++i) {
      int pi = index.perm[i];
      auto [r, c] = mask.coord(i);
      double neighbor_abs = 0.0;
      for (const auto& [h, v] : stencil.coef) {
        if (v == 0.0) continue;
        int rr = r + h[0], cc = c + h[1];
        if (rr < 0 || rr >= mask.n1 || cc < 0 || cc >= mask.n2) continue;
        int jo = mask.obs_of_cell[rr * mask.n2 + cc];
        if (jo < 0) continue;
        if (h[0] == 0 && h[1] == 0) continue;
        neighbor_abs += std::fabs(v);
        trip.emplace_back(pi, index.perm[jo], v);
      }
      double diag = stencil.center();
      if (scheme == ApproxScheme::precision && !index.fully[i]) diag = lambda * neighbor_abs;
      trip.emplace_back(pi, pi, diag);
    }
  }
  SparseSymMatrix q(index.n_obs, index.n_obs);
  q.setFromTriplets(trip.begin(), trip.end());
  return q;
}

}  // namespace gridmrf
