#include "gridmrf/estimate.hpp"

#include <Eigen/Cholesky>
#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <memory>
#include <numbers>
#include <stdexcept>

#include "gridmrf/covariance.hpp"
#include "gridmrf/oracle.hpp"
#include "gridmrf/predict.hpp"

namespace gridmrf {

FitMethod fit_method_from_string(const std::string& s) {
  if (s == "exact") return FitMethod::exact;
  if (s == "exact-nugget") return FitMethod::exact_nugget;
  if (s == "none") return FitMethod::approx_none;
  if (s == "precision") return FitMethod::approx_precision;
  if (s == "periodic") return FitMethod::approx_periodic;
  if (s == "indblocks") return FitMethod::indblocks;
  throw std::invalid_argument("unknown fit method: " + s);
}

std::string to_string(FitMethod m) {
  switch (m) {
    case FitMethod::exact: return "exact";
    case FitMethod::exact_nugget: return "exact-nugget";
    case FitMethod::approx_none: return "none";
    case FitMethod::approx_precision: return "precision";
    case FitMethod::approx_periodic: return "periodic";
    case FitMethod::indblocks: return "indblocks";
  }
  return "?";
}

namespace {

constexpr double log_two_pi = 1.8378770664093453;

// logdet(M) and v -> M^-1 v for M = C(kappa, nu) + delta I under a given
// likelihood method, with C the unit-tau covariance.
struct ProfileEngine {
  double logdet = 0.0;
  std::function<Eigen::VectorXd(const Eigen::VectorXd&)> apply_inv;
};

ProfileEngine make_engine(double kappa, int nu, double delta, const GridMask& mask,
                          const PartitionIndex& index, FitMethod method, int J,
                          const std::vector<std::vector<int>>* blocks) {
  ModelParams p{.tau = 1.0, .kappa = kappa, .nu = nu, .sigma2 = delta, .mu = 0.0};
  p.validate();
  ProfileEngine eng;

  switch (method) {
    case FitMethod::exact:
      if (delta != 0.0) throw std::invalid_argument("method exact requires delta = 0");
      [[fallthrough]];
    case FitMethod::exact_nugget: {
      if (method == FitMethod::exact_nugget && !(delta > 0.0))
        throw std::invalid_argument("method exact-nugget requires delta > 0");
      auto solver = std::shared_ptr<CovSolver>(make_exact_solver(p, mask, index, J));
      eng.logdet = solver->logdet();
      eng.apply_inv = [solver](const Eigen::VectorXd& v) { return solver->solve(v); };
      return eng;
    }
    case FitMethod::approx_none:
    case FitMethod::approx_precision:
    case FitMethod::approx_periodic: {
      if (delta != 0.0)
        throw std::invalid_argument("approximate methods require delta = 0");
      ApproxScheme scheme = method == FitMethod::approx_none ? ApproxScheme::none
                            : method == FitMethod::approx_precision
                                ? ApproxScheme::precision
                                : ApproxScheme::periodic;
      auto q = std::make_shared<SparseSymMatrix>(
          approx_Q(mask, index, stencil_from_params(p), scheme));
      SparseFactor f(*q);
      eng.logdet = -f.logdet();
      auto perm = index.perm;
      eng.apply_inv = [q, perm](const Eigen::VectorXd& v) {
        Eigen::VectorXd vp(v.size());
        for (std::size_t i = 0; i < perm.size(); ++i) vp[perm[i]] = v[i];
        Eigen::VectorXd wp = *q * vp;
        Eigen::VectorXd w(v.size());
        for (std::size_t i = 0; i < perm.size(); ++i) w[i] = wp[perm[i]];
        return w;
      };
      return eng;
    }
    case FitMethod::indblocks: {
      if (blocks == nullptr)
        throw std::invalid_argument("indblocks profiling requires a block partition");
      CovarianceTable table = table_for_grid(p, mask.n1, mask.n2, J);
      struct Block {
        std::vector<int> idx;
        Eigen::LLT<Eigen::MatrixXd> llt;
      };
      auto bl = std::make_shared<std::vector<Block>>();
      for (const auto& blk : *blocks) {
        if (blk.size() > 4096) throw size_guard_error("block exceeds 4096 cells");
        int nb = static_cast<int>(blk.size());
        Eigen::MatrixXd s(nb, nb);
        for (int j = 0; j < nb; ++j) {
          auto [rj, cj] = mask.coord(blk[j]);
          for (int i = 0; i < nb; ++i) {
            auto [ri, ci] = mask.coord(blk[i]);
            s(i, j) = table.at(ri - rj, ci - cj);
          }
        }
        s.diagonal().array() += delta;
        Eigen::LLT<Eigen::MatrixXd> llt(s);
        if (llt.info() != Eigen::Success)
          throw numerical_error("block covariance not positive definite");
        for (int i = 0; i < nb; ++i) eng.logdet += 2.0 * std::log(llt.matrixLLT()(i, i));
        bl->push_back({blk, std::move(llt)});
      }
      eng.apply_inv = [bl](const Eigen::VectorXd& v) {
        Eigen::VectorXd out(v.size());
        for (const auto& b : *bl) {
          int nb = static_cast<int>(b.idx.size());
          Eigen::VectorXd vb(nb);
          for (int i = 0; i < nb; ++i) vb[i] = v[b.idx[i]];
          Eigen::VectorXd wb = b.llt.solve(vb);
          for (int i = 0; i < nb; ++i) out[b.idx[i]] = wb[i];
        }
        return out;
      };
      return eng;
    }
  }
  throw std::logic_error("unreachable");
}

ProfileResult profile_from_engine(const ProfileEngine& eng, const Eigen::VectorXd& y) {
  int n = static_cast<int>(y.size());
  Eigen::VectorXd ones = Eigen::VectorXd::Ones(n);
  Eigen::VectorXd a = eng.apply_inv(y);
  Eigen::VectorXd b = eng.apply_inv(ones);
  double denom = ones.dot(b);
  if (!(denom > 0.0)) throw numerical_error("profile normal equations degenerate");
  ProfileResult res;
  res.mu_hat = ones.dot(a) / denom;
  Eigen::VectorXd minv_r = a - res.mu_hat * b;  // M^-1 (y - mu 1) by linearity
  double quad = (y.array() - res.mu_hat).matrix().dot(minv_r);
  if (!(quad > 0.0)) throw numerical_error("profiled quadratic form not positive");
  double tau2 = n / quad;
  res.tau_hat = std::sqrt(tau2);
  res.loglik = -0.5 * n * log_two_pi - 0.5 * eng.logdet + 0.5 * n * std::log(tau2) -
               0.5 * n;
  return res;
}

// Derivative-free simplex minimizer (dim 1 or 2).
struct SimplexResult {
  std::vector<double> x;
  double f = 0.0;
  int iterations = 0;
  bool converged = false;
};

SimplexResult nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                          std::vector<double> x0, double step, double tol,
                          int max_iter) {
  int d = static_cast<int>(x0.size());
  std::vector<std::vector<double>> pts(d + 1, x0);
  for (int i = 0; i < d; ++i) pts[i + 1][i] += step;
  std::vector<double> fv(d + 1);
  for (int i = 0; i <= d; ++i) fv[i] = f(pts[i]);

  SimplexResult res;
  auto order = [&] {
    std::vector<int> idx(d + 1);
    for (int i = 0; i <= d; ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end(), [&](int a, int b) { return fv[a] < fv[b]; });
    std::vector<std::vector<double>> np(d + 1);
    std::vector<double> nf(d + 1);
    for (int i = 0; i <= d; ++i) { np[i] = pts[idx[i]]; nf[i] = fv[idx[i]]; }
    pts = std::move(np);
    fv = std::move(nf);
  };

  for (res.iterations = 0; res.iterations < max_iter; ++res.iterations) {
    order();
    if (std::fabs(fv[d] - fv[0]) < tol) {
      res.converged = true;
      break;
    }
    std::vector<double> centroid(d, 0.0);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) centroid[j] += pts[i][j] / d;
    auto at = [&](double t) {
      std::vector<double> p(d);
      for (int j = 0; j < d; ++j) p[j] = centroid[j] + t * (pts[d][j] - centroid[j]);
      return p;
    };
    std::vector<double> xr = at(-1.0);
    double fr = f(xr);
    if (fr < fv[0]) {
      std::vector<double> xe = at(-2.0);
      double fe = f(xe);
      if (fe < fr) { pts[d] = xe; fv[d] = fe; }
      else { pts[d] = xr; fv[d] = fr; }
    } else if (fr < fv[d - 1]) {
      pts[d] = xr; fv[d] = fr;
    } else {
      std::vector<double> xc = at(fr < fv[d] ? -0.5 : 0.5);
      double fc = f(xc);
      if (fc < std::min(fr, fv[d])) {
        pts[d] = xc; fv[d] = fc;
      } else {
        for (int i = 1; i <= d; ++i) {
          for (int j = 0; j < d; ++j) pts[i][j] = pts[0][j] + 0.5 * (pts[i][j] - pts[0][j]);
          fv[i] = f(pts[i]);
        }
      }
    }
  }
  order();
  res.x = pts[0];
  res.f = fv[0];
  return res;
}

}  // namespace

ProfileResult profile_closed_forms(double kappa, int nu, double delta,
                                   const GridMask& mask, const Eigen::VectorXd& y,
                                   FitMethod method, int J,
                                   const std::vector<std::vector<int>>* blocks) {
  if (y.size() != mask.n_obs())
    throw std::invalid_argument("data vector length does not match observation count");
  ModelParams p{.tau = 1.0, .kappa = kappa, .nu = nu, .sigma2 = delta};
  PartitionIndex index = classify(mask, stencil_from_params(p));
  ProfileEngine eng = make_engine(kappa, nu, delta, mask, index, method, J, blocks);
  return profile_from_engine(eng, y);
}

FitResult fit(const GridMask& mask, const Eigen::VectorXd& y, int nu, FitMethod method,
              const FitConfig& config) {
  if (y.size() != mask.n_obs())
    throw std::invalid_argument("data vector length does not match observation count");
  bool with_nugget =
      method == FitMethod::exact_nugget ||
      (method == FitMethod::indblocks && config.nugget);

  ModelParams shape{.tau = 1.0, .kappa = config.kappa0, .nu = nu};
  PartitionIndex index = classify(mask, stencil_from_params(shape));
  std::vector<std::vector<int>> blocks;
  const std::vector<std::vector<int>>* blocks_ptr = nullptr;
  if (method == FitMethod::indblocks) {
    blocks = tile_blocks(mask, config.block_size, config.block_size);
    blocks_ptr = &blocks;
  }

  FitResult result;
  result.method = to_string(method);

  auto objective = [&](const std::vector<double>& x) {
    double kappa = std::exp(x[0]);
    double delta = with_nugget ? std::exp(x[1]) : 0.0;
    double value;
    try {
      ProfileEngine eng = make_engine(kappa, nu, delta, mask, index, method, config.J,
                                      blocks_ptr);
      value = profile_from_engine(eng, y).loglik;
    } catch (const numerical_error&) {
      return std::numeric_limits<double>::max();
    }
    result.trace.push_back({kappa, delta, value});
    return -value;
  };

  std::vector<double> x0{std::log(config.kappa0)};
  if (with_nugget) {
    // delta start: 1% of the unit-tau variance at the starting kappa
    double c0 = table_for_grid(shape, mask.n1, mask.n2, config.J).values(0, 0);
    x0.push_back(std::log(0.01 * c0));
  }
  SimplexResult opt = nelder_mead(objective, x0, 0.5, config.tol, config.max_iter);
  result.iterations = opt.iterations;
  result.converged = opt.converged;

  double kappa = std::exp(opt.x[0]);
  double delta = with_nugget ? std::exp(opt.x[1]) : 0.0;
  ProfileEngine eng =
      make_engine(kappa, nu, delta, mask, index, method, config.J, blocks_ptr);
  ProfileResult prof = profile_from_engine(eng, y);
  result.params = ModelParams{.tau = prof.tau_hat,
                              .kappa = kappa,
                              .nu = nu,
                              .sigma2 = delta / (prof.tau_hat * prof.tau_hat),
                              .mu = prof.mu_hat};

  switch (method) {
    case FitMethod::exact:
      result.loglik = loglik_exact(result.params, mask, y, config.J);
      break;
    case FitMethod::exact_nugget:
      result.loglik = loglik_nugget_lean(result.params, mask, y, config.J);
      break;
    case FitMethod::approx_none:
      result.loglik = loglik_approx(result.params, mask, y, ApproxScheme::none);
      break;
    case FitMethod::approx_precision:
      result.loglik = loglik_approx(result.params, mask, y, ApproxScheme::precision);
      break;
    case FitMethod::approx_periodic:
      result.loglik = loglik_approx(result.params, mask, y, ApproxScheme::periodic);
      break;
    case FitMethod::indblocks:
      result.loglik = loglik_indblocks(result.params, mask, y, blocks, config.J);
      break;
  }
  return result;
}

}  // namespace gridmrf
