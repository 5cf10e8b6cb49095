#include "gridmrf/likelihood.hpp"

#include <Eigen/Cholesky>
#include <chrono>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <utility>

#include "assembly.hpp"
#include "gridmrf/threads.hpp"

namespace gridmrf {

namespace {

constexpr double log_two_pi = 1.8378770664093453;

double dense_llt_logdet(const Eigen::LLT<Eigen::MatrixXd>& llt) {
  double ld = 0.0;
  const auto& L = llt.matrixLLT();
  for (Eigen::Index i = 0; i < L.rows(); ++i) ld += 2.0 * std::log(L(i, i));
  return ld;
}

Eigen::LLT<Eigen::MatrixXd> checked_llt(const Eigen::MatrixXd& m, const char* what) {
  Eigen::LLT<Eigen::MatrixXd> llt(m);
  if (llt.info() != Eigen::Success) throw numerical_error(what);
  return llt;
}

void check_mn_cap(int m_n, int cap) {
  if (m_n > cap)
    throw size_guard_error(
        "partially neighbored count " + std::to_string(m_n) + " exceeds the dense cap " +
        std::to_string(cap) +
        "; fill the missing cells (imputation) or raise the cap explicitly");
}

// Exact covariance solver for sigma2 = 0: dense Cholesky on the partially
// neighbored block, sparse Cholesky on the rest.
class NoNuggetSolver final : public CovSolver {
 public:
  NoNuggetSolver(const ModelParams& params, const GridMask& mask,
                 const PartitionIndex& index, int J, int mn_cap)
      : index_(index) {
    check_mn_cap(index.m_n, mn_cap);
    table_ = table_for_grid(params, mask.n1, mask.n2, J);
    part_ = detail::partial_locations(mask, index);
    full_ = detail::full_locations(mask, index);
    Stencil st = stencil_from_params(params);
    q22_mat_ = detail::stencil_blocks(mask, index, st).Q22;
    logdet_ = 0.0;
    if (index.m_n > 0) {
      s11_llt_ = checked_llt(detail::sigma11_dense(table_, part_),
                             "covariance block not positive definite");
      logdet_ += dense_llt_logdet(s11_llt_);
    }
    SparseFactor q22f(q22_mat_);
    logdet_ -= q22f.logdet();
  }

  double logdet() const override { return logdet_; }

  Eigen::VectorXd solve(const Eigen::VectorXd& y) const override {
    auto [y1, y2] = block_view(index_, y);
    if (index_.m_n == 0) return block_merge(index_, y1, q22_mat_ * y2);
    Eigen::VectorXd t = s11_llt_.solve(y1);
    if (full_.empty()) return block_merge(index_, t, y2);
    Eigen::VectorXd v2 = y2 - circ_matvec(table_, t, part_, full_);
    Eigen::VectorXd w2 = q22_mat_ * v2;
    Eigen::VectorXd w1 = t - s11_llt_.solve(circ_matvec(table_, w2, full_, part_));
    return block_merge(index_, w1, w2);
  }

  double quadform(const Eigen::VectorXd& y) const override {
    auto [y1, y2] = block_view(index_, y);
    double q = 0.0;
    Eigen::VectorXd v2 = y2;
    if (index_.m_n > 0) {
      Eigen::VectorXd t = s11_llt_.solve(y1);
      q += y1.dot(t);
      if (!full_.empty()) v2 -= circ_matvec(table_, t, part_, full_);
    }
    if (!full_.empty()) q += v2.dot(Eigen::VectorXd(q22_mat_ * v2));
    return q;
  }

 private:
  PartitionIndex index_;
  CovarianceTable table_;
  std::vector<Location> part_, full_;
  SparseSymMatrix q22_mat_;
  Eigen::LLT<Eigen::MatrixXd> s11_llt_;
  double logdet_ = 0.0;
};

// Nugget solver through the full precision: factor Q and I + sigma2 Q, both
// sparse with the dense corner embedded (corner kept trailing by the
// fill-reducing ordering).
class NuggetFullQSolver final : public CovSolver {
 public:
  NuggetFullQSolver(const ModelParams& params, const GridMask& mask,
                    const PartitionIndex& index, int J, int mn_cap)
      : index_(index), sigma2_(params.sigma2) {
    check_mn_cap(index.m_n, mn_cap);
    CovarianceTable table = table_for_grid(params, mask.n1, mask.n2, J);
    Stencil st = stencil_from_params(params);
    auto blocks = detail::stencil_blocks(mask, index, st);
    int m = index.m_n, n = index.n_obs;

    DenseSymMatrix q11;
    if (m > 0) {
      auto part = detail::partial_locations(mask, index);
      Eigen::LLT<Eigen::MatrixXd> s11_llt = checked_llt(
          detail::sigma11_dense(table, part), "covariance block not positive definite");
      DenseSymMatrix s11_inv = s11_llt.solve(DenseSymMatrix::Identity(m, m));
      SparseFactor q22f(blocks.Q22);
      q11 = q11_dense(s11_inv, blocks.Q12, q22f);
    }

    std::vector<Eigen::Triplet<double>> tq;
    for (int j = 0; j < m; ++j)
      for (int i = 0; i < m; ++i) tq.emplace_back(i, j, q11(i, j));
    for (int k = 0; k < blocks.Q12.outerSize(); ++k)
      for (SparseSymMatrix::InnerIterator it(blocks.Q12, k); it; ++it) {
        tq.emplace_back(static_cast<int>(it.row()), static_cast<int>(it.col()) + m,
                        it.value());
        tq.emplace_back(static_cast<int>(it.col()) + m, static_cast<int>(it.row()),
                        it.value());
      }
    for (int k = 0; k < blocks.Q22.outerSize(); ++k)
      for (SparseSymMatrix::InnerIterator it(blocks.Q22, k); it; ++it)
        tq.emplace_back(static_cast<int>(it.row()) + m, static_cast<int>(it.col()) + m,
                        it.value());
    Q_.resize(n, n);
    Q_.setFromTriplets(tq.begin(), tq.end());

    SparseSymMatrix A = Q_ * sigma2_;
    SparseSymMatrix eye(n, n);
    eye.setIdentity();
    A += eye;
    qf_ = std::make_unique<SparseFactor>(Q_);
    af_ = std::make_unique<SparseFactor>(A);
    logdet_ = -qf_->logdet() + af_->logdet();
  }

  double logdet() const override { return logdet_; }

  Eigen::VectorXd solve(const Eigen::VectorXd& y) const override {
    Eigen::VectorXd yp(y.size());
    for (int i = 0; i < index_.n_obs; ++i) yp[index_.perm[i]] = y[i];
    Eigen::VectorXd r = af_->solve(Q_ * yp);
    Eigen::VectorXd out(y.size());
    for (int i = 0; i < index_.n_obs; ++i) out[i] = r[index_.perm[i]];
    return out;
  }

 private:
  PartitionIndex index_;
  double sigma2_;
  SparseSymMatrix Q_;
  std::unique_ptr<SparseFactor> qf_, af_;
  double logdet_ = 0.0;
};

// Nugget solver without dense blocks beyond m_n x m_n: Schur complement of
// A22 = I + sigma2 Q22 inside I + sigma2 Q.
class NuggetLeanSolver final : public CovSolver {
 public:
  NuggetLeanSolver(const ModelParams& params, const GridMask& mask,
                   const PartitionIndex& index, int J, int mn_cap)
      : index_(index), sigma2_(params.sigma2) {
    check_mn_cap(index.m_n, mn_cap);
    CovarianceTable table = table_for_grid(params, mask.n1, mask.n2, J);
    int m = index.m_n, nf = index.n_obs - m;

    if (nf == 0) {
      // Everything partially neighbored: plain dense Sigma + sigma2 I.
      auto part = detail::partial_locations(mask, index);
      Eigen::MatrixXd s = detail::sigma11_dense(table, part);
      s.diagonal().array() += sigma2_;
      dense_llt_ = checked_llt(s, "covariance not positive definite");
      dense_only_ = true;
      logdet_ = dense_llt_logdet(dense_llt_);
      return;
    }

    Stencil st = stencil_from_params(params);
    auto blocks = detail::stencil_blocks(mask, index, st);
    Q12_ = std::move(blocks.Q12);

    q22_ = std::make_unique<SparseFactor>(blocks.Q22);
    SparseSymMatrix A22 = blocks.Q22 * sigma2_;
    SparseSymMatrix eye(nf, nf);
    eye.setIdentity();
    A22 += eye;
    a22_ = std::make_unique<SparseFactor>(A22);
    q22_mat_ = std::move(blocks.Q22);

    logdet_ = -q22_->logdet() + a22_->logdet();
    if (m > 0) {
      auto part = detail::partial_locations(mask, index);
      Eigen::LLT<Eigen::MatrixXd> s11_llt = checked_llt(
          detail::sigma11_dense(table, part), "covariance block not positive definite");
      logdet_ += dense_llt_logdet(s11_llt);
      DenseSymMatrix s11_inv = s11_llt.solve(DenseSymMatrix::Identity(m, m));
      q11_ = q11_dense(s11_inv, Q12_, *q22_);
      DenseSymMatrix schur = q11_dense(DenseSymMatrix::Zero(m, m), Q12_, *a22_);
      DenseSymMatrix b11_inv = DenseSymMatrix::Identity(m, m) + sigma2_ * q11_ -
                               (sigma2_ * sigma2_) * schur;
      b11_llt_ = checked_llt(b11_inv, "Schur block not positive definite");
      logdet_ += dense_llt_logdet(b11_llt_);
    }
  }

  double logdet() const override { return logdet_; }

  Eigen::VectorXd solve(const Eigen::VectorXd& y) const override {
    auto [y1, y2] = block_view(index_, y);
    if (dense_only_) return block_merge(index_, dense_llt_.solve(y1), y2);
    if (index_.m_n == 0) {
      // x = Q22 y, then A22^-1 x
      return block_merge(index_, y1, a22_->solve(q22_mat_ * y2));
    }
    // x = Q y with the dense corner
    Eigen::VectorXd x1 = q11_ * y1 + Q12_ * y2;
    Eigen::VectorXd x2 = Q12_.transpose() * y1 + q22_mat_ * y2;
    Eigen::VectorXd u1 = x1 - sigma2_ * (Q12_ * a22_->solve(x2));
    Eigen::VectorXd d1 = b11_llt_.solve(u1);
    Eigen::VectorXd d2 = a22_->solve(x2);
    Eigen::VectorXd r2 = d2 - sigma2_ * a22_->solve(Q12_.transpose() * d1);
    return block_merge(index_, d1, r2);
  }

 private:
  PartitionIndex index_;
  double sigma2_;
  bool dense_only_ = false;
  SparseSymMatrix Q12_, q22_mat_;
  DenseSymMatrix q11_;
  Eigen::LLT<Eigen::MatrixXd> dense_llt_, b11_llt_;
  std::unique_ptr<SparseFactor> q22_, a22_;
  double logdet_ = 0.0;
};

LoglikBreakdown finish(const CovSolver& solver, const ModelParams& params,
                       const Eigen::VectorXd& y, std::string method,
                       std::chrono::steady_clock::time_point t0) {
  Eigen::VectorXd centered = y.array() - params.mu;
  LoglikBreakdown b;
  b.n_obs = static_cast<int>(y.size());
  b.logdet = solver.logdet();
  b.quadform = solver.quadform(centered);
  b.loglik = -0.5 * b.n_obs * log_two_pi - 0.5 * b.logdet - 0.5 * b.quadform;
  b.method = std::move(method);
  b.wall_time =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return b;
}

void check_data(const GridMask& mask, const Eigen::VectorXd& y) {
  if (y.size() != mask.n_obs())
    throw std::invalid_argument("data vector length does not match observation count");
}

}  // namespace

double CovSolver::quadform(const Eigen::VectorXd& y) const { return y.dot(solve(y)); }

std::unique_ptr<CovSolver> make_exact_solver(const ModelParams& params,
                                             const GridMask& mask,
                                             const PartitionIndex& index, int J,
                                             bool full_q, int mn_cap) {
  params.validate();
  if (params.sigma2 == 0.0)
    return std::make_unique<NoNuggetSolver>(params, mask, index, J, mn_cap);
  if (full_q) return std::make_unique<NuggetFullQSolver>(params, mask, index, J, mn_cap);
  return std::make_unique<NuggetLeanSolver>(params, mask, index, J, mn_cap);
}

LoglikBreakdown loglik_exact(const ModelParams& params, const GridMask& mask,
                             const Eigen::VectorXd& y, int J) {
  if (params.sigma2 != 0.0)
    throw std::invalid_argument("no-nugget likelihood requires sigma2 = 0");
  check_data(mask, y);
  auto t0 = std::chrono::steady_clock::now();
  PartitionIndex index = classify(mask, stencil_from_params(params));
  auto solver = make_exact_solver(params, mask, index, J);
  return finish(*solver, params, y, "exact", t0);
}

LoglikBreakdown loglik_nugget_fullQ(const ModelParams& params, const GridMask& mask,
                                    const Eigen::VectorXd& y, int J) {
  if (!(params.sigma2 > 0.0))
    throw std::invalid_argument("nugget likelihood requires sigma2 > 0");
  check_data(mask, y);
  auto t0 = std::chrono::steady_clock::now();
  PartitionIndex index = classify(mask, stencil_from_params(params));
  auto solver = make_exact_solver(params, mask, index, J, /*full_q=*/true);
  return finish(*solver, params, y, "exact-nugget-fullQ", t0);
}

LoglikBreakdown loglik_nugget_lean(const ModelParams& params, const GridMask& mask,
                                   const Eigen::VectorXd& y, int J) {
  if (!(params.sigma2 > 0.0))
    throw std::invalid_argument("nugget likelihood requires sigma2 > 0");
  check_data(mask, y);
  auto t0 = std::chrono::steady_clock::now();
  PartitionIndex index = classify(mask, stencil_from_params(params));
  auto solver = make_exact_solver(params, mask, index, J, /*full_q=*/false);
  return finish(*solver, params, y, "exact-nugget", t0);
}

LoglikBreakdown loglik_approx(const ModelParams& params, const GridMask& mask,
                              const Eigen::VectorXd& y, ApproxScheme scheme) {
  if (params.sigma2 != 0.0)
    throw std::invalid_argument("approximate likelihoods require sigma2 = 0");
  check_data(mask, y);
  auto t0 = std::chrono::steady_clock::now();
  Stencil st = stencil_from_params(params);
  PartitionIndex index = classify(mask, st);
  SparseSymMatrix q = approx_Q(mask, index, st, scheme);
  SparseFactor f(q);
  Eigen::VectorXd centered = y.array() - params.mu;
  Eigen::VectorXd yp(centered.size());
  for (int i = 0; i < index.n_obs; ++i) yp[index.perm[i]] = centered[i];
  LoglikBreakdown b;
  b.n_obs = mask.n_obs();
  b.logdet = -f.logdet();
  b.quadform = yp.dot(q * yp);
  b.loglik = -0.5 * b.n_obs * log_two_pi - 0.5 * b.logdet - 0.5 * b.quadform;
  switch (scheme) {
    case ApproxScheme::none: b.method = "approx-none"; break;
    case ApproxScheme::precision: b.method = "approx-precision"; break;
    case ApproxScheme::periodic: b.method = "approx-periodic"; break;
  }
  b.wall_time =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return b;
}

LoglikBreakdown loglik_indblocks(const ModelParams& params, const GridMask& mask,
                                 const Eigen::VectorXd& y,
                                 const std::vector<std::vector<int>>& blocks, int J) {
  params.validate();
  check_data(mask, y);
  auto t0 = std::chrono::steady_clock::now();
  std::vector<std::uint8_t> seen(mask.n_obs(), 0);
  std::size_t total = 0;
  for (const auto& blk : blocks) {
    if (blk.size() > 4096) throw size_guard_error("block exceeds 4096 cells");
    for (int i : blk) {
      if (i < 0 || i >= mask.n_obs()) throw std::invalid_argument("block index out of range");
      if (seen[i]++) throw std::invalid_argument("blocks must not overlap");
    }
    total += blk.size();
  }
  if (total != static_cast<std::size_t>(mask.n_obs()))
    throw std::invalid_argument("blocks must cover every observation");

  CovarianceTable table = table_for_grid(params, mask.n1, mask.n2, J);
  LoglikBreakdown b;
  b.n_obs = mask.n_obs();
  for (const auto& blk : blocks) {
    int nb = static_cast<int>(blk.size());
    if (nb == 0) continue;
    Eigen::MatrixXd s(nb, nb);
    for (int j = 0; j < nb; ++j) {
      auto [rj, cj] = mask.coord(blk[j]);
      for (int i = 0; i < nb; ++i) {
        auto [ri, ci] = mask.coord(blk[i]);
        s(i, j) = table.at(ri - rj, ci - cj);
      }
    }
    s.diagonal().array() += params.sigma2;
    Eigen::LLT<Eigen::MatrixXd> llt =
        checked_llt(s, "block covariance not positive definite");
    Eigen::VectorXd yb(nb);
    for (int i = 0; i < nb; ++i) yb[i] = y[blk[i]] - params.mu;
    b.logdet += dense_llt_logdet(llt);
    b.quadform += yb.dot(llt.solve(yb));
  }
  b.loglik = -0.5 * b.n_obs * log_two_pi - 0.5 * b.logdet - 0.5 * b.quadform;
  b.method = "indblocks";
  b.wall_time =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return b;
}

std::vector<std::vector<int>> tile_blocks(const GridMask& mask, int tile_rows,
                                          int tile_cols) {
  if (tile_rows < 1 || tile_cols < 1)
    throw std::invalid_argument("tile dims must be >= 1");
  int br = (mask.n1 + tile_rows - 1) / tile_rows;
  int bc = (mask.n2 + tile_cols - 1) / tile_cols;
  std::vector<std::vector<int>> blocks(static_cast<std::size_t>(br) * bc);
  for (int i = 0; i < mask.n_obs(); ++i) {
    auto [r, c] = mask.coord(i);
    blocks[(r / tile_rows) * bc + (c / tile_cols)].push_back(i);
  }
  std::erase_if(blocks, [](const auto& blk) { return blk.empty(); });
  return blocks;
}

}  // namespace gridmrf
