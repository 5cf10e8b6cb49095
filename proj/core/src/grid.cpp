#include "gridmrf/grid.hpp"

#include <stdexcept>

namespace gridmrf {

GridMask::GridMask(int rows, int cols, std::vector<std::uint8_t> obs) {
  if (rows < 1 || cols < 1) throw std::invalid_argument("grid dimensions must be >= 1");
  if (static_cast<int>(obs.size()) != rows * cols)
    throw std::invalid_argument("mask size does not match grid dimensions");
  if (rows > cols) {
    // canonical orientation n1 <= n2
    std::vector<std::uint8_t> t(obs.size());
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) t[j * rows + i] = obs[i * cols + j];
    n1 = cols;
    n2 = rows;
    observed = std::move(t);
    transposed = true;
  } else {
    n1 = rows;
    n2 = cols;
    observed = std::move(obs);
  }
  obs_of_cell.assign(static_cast<size_t>(n1) * n2, -1);
  for (int c = 0; c < n1 * n2; ++c) {
    if (observed[c]) {
      obs_of_cell[c] = static_cast<int>(cells.size());
      cells.push_back(c);
    }
  }
  if (cells.empty()) throw std::invalid_argument("no observations");
}

GridMask GridMask::complete(int rows, int cols) {
  return GridMask(rows, cols, std::vector<std::uint8_t>(static_cast<size_t>(rows) * cols, 1));
}

PartitionIndex classify(const GridMask& mask, const Stencil& stencil) {
  stencil.validate();
  if (mask.n_obs() == 0) throw std::invalid_argument("no observations");

  std::vector<std::array<int, 2>> lags;
  for (const auto& [h, v] : stencil.coef)
    if (v != 0.0 && (h[0] != 0 || h[1] != 0)) lags.push_back(h);

  PartitionIndex idx;
  idx.n_obs = mask.n_obs();
  idx.fully.assign(idx.n_obs, 1);
  for (int i = 0; i < idx.n_obs; ++i) {
    auto [r, c] = mask.coord(i);
    for (const auto& h : lags) {
      int rr = r + h[0], cc = c + h[1];
      if (rr < 0 || rr >= mask.n1 || cc < 0 || cc >= mask.n2 || !mask.is_observed(rr, cc)) {
        idx.fully[i] = 0;
        break;
      }
    }
  }
  idx.perm.assign(idx.n_obs, -1);
  idx.inv.reserve(idx.n_obs);
  for (int i = 0; i < idx.n_obs; ++i)  // partially neighbored first, row-major
    if (!idx.fully[i]) {
      idx.perm[i] = static_cast<int>(idx.inv.size());
      idx.inv.push_back(i);
    }
  idx.m_n = static_cast<int>(idx.inv.size());
  for (int i = 0; i < idx.n_obs; ++i)
    if (idx.fully[i]) {
      idx.perm[i] = static_cast<int>(idx.inv.size());
      idx.inv.push_back(i);
    }
  return idx;
}

std::pair<Eigen::VectorXd, Eigen::VectorXd> block_view(const PartitionIndex& index,
                                                       const Eigen::VectorXd& v) {
  if (v.size() != index.n_obs)
    throw std::invalid_argument("vector length does not match observation count");
  Eigen::VectorXd v1(index.m_n), v2(index.n_obs - index.m_n);
  for (int i = 0; i < index.n_obs; ++i) {
    int p = index.perm[i];
    if (p < index.m_n)
      v1[p] = v[i];
    else
      v2[p - index.m_n] = v[i];
  }
  return {std::move(v1), std::move(v2)};
}

Eigen::VectorXd block_merge(const PartitionIndex& index, const Eigen::VectorXd& v1,
                            const Eigen::VectorXd& v2) {
  if (v1.size() != index.m_n || v1.size() + v2.size() != index.n_obs)
    throw std::invalid_argument("block lengths do not match partition");
  Eigen::VectorXd v(index.n_obs);
  for (int i = 0; i < index.n_obs; ++i) {
    int p = index.perm[i];
    v[i] = p < index.m_n ? v1[p] : v2[p - index.m_n];
  }
  return v;
}

}  // namespace gridmrf
