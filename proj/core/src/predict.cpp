#include "gridmrf/predict.hpp"

#include <Eigen/Cholesky>
#include <algorithm>
#include <cmath>
#include <memory>
#include <stdexcept>

#include "gridmrf/likelihood.hpp"
#include "gridmrf/threads.hpp"

namespace gridmrf {

namespace {

// Shared setup for kriging and conditional simulation: a covariance table on
// a torus large enough to hold observations and (possibly exterior) targets,
// the exact covariance solver, and all locations shifted to nonnegative
// coordinates.
struct KrigeContext {
  CovarianceTable table;
  std::unique_ptr<CovSolver> solver;
  std::vector<Location> obs;      // shifted observed cells
  std::vector<Location> targets;  // shifted targets
  PartitionIndex index;

  KrigeContext(const ModelParams& params, const GridMask& mask,
               const PredictionRequest& request, int J) {
    params.validate();
    if (request.targets.empty()) throw std::invalid_argument("no targets");
    int r_lo = 0, c_lo = 0, r_hi = mask.n1 - 1, c_hi = mask.n2 - 1;
    bool all_inside = true;
    for (const auto& [r, c] : request.targets) {
      r_lo = std::min(r_lo, r); r_hi = std::max(r_hi, r);
      c_lo = std::min(c_lo, c); c_hi = std::max(c_hi, c);
      bool inside = r >= 0 && r < mask.n1 && c >= 0 && c < mask.n2;
      all_inside = all_inside && inside;
      if (params.sigma2 == 0.0 && inside && mask.is_observed(r, c))
        throw std::invalid_argument(
            "target coincides with an observation; without a nugget the "
            "prediction is the observed value");
    }
    if (all_inside) {
      // Same table the solver uses, so interior prediction is consistent
      // with the factorized covariance (exact interpolation when sigma2=0).
      table = table_for_grid(params, mask.n1, mask.n2, J);
    } else {
      // Torus enlarged to contain the rectangle spanned by grid and targets.
      int need = std::max(r_hi - r_lo + 1, c_hi - c_lo + 1);
      if (mask.n1 < 20 || mask.n2 < 20) need = std::max(need, kSmallGridTorusFloor);
      table = covariance_table(params, mask.n1, mask.n2, J, need);
    }

    obs.resize(mask.n_obs());
    for (int i = 0; i < mask.n_obs(); ++i) {
      auto [r, c] = mask.coord(i);
      obs[i] = {r - r_lo, c - c_lo};
    }
    targets.reserve(request.targets.size());
    for (const auto& [r, c] : request.targets)
      targets.push_back({r - r_lo, c - c_lo});

    index = classify(mask, stencil_from_params(params));
    solver = make_exact_solver(params, mask, index, J);
  }

  // Conditional mean offsets Sigma0' (Sigma + sigma2 I)^-1 r for a centered
  // observation vector r.
  Eigen::VectorXd mean_offset(const Eigen::VectorXd& r) const {
    return circ_matvec(table, solver->solve(r), obs, targets);
  }
};

Eigen::MatrixXd cond_sim_impl(const KrigeContext& ctx, const ModelParams& params,
                              const Eigen::VectorXd& y, const PredictionRequest& request) {
  if (request.n_sims < 1) throw std::invalid_argument("n_sims must be >= 1");
  int nt = static_cast<int>(ctx.targets.size());
  Eigen::VectorXd base = ctx.mean_offset(Eigen::VectorXd(y.array() - params.mu));
  Eigen::MatrixXd draws(request.n_sims, nt);
  double sd_nugget = std::sqrt(params.sigma2);
  for (int s = 0; s < request.n_sims; ++s) {
    std::seed_seq seq{request.seed, static_cast<std::uint64_t>(s)};
    std::mt19937_64 rng(seq);
    auto [field, unused] = sample_torus_fields(ctx.table, rng);
    std::normal_distribution<double> gauss(0.0, 1.0);
    Eigen::VectorXd ystar(ctx.obs.size());
    for (std::size_t i = 0; i < ctx.obs.size(); ++i) {
      ystar[static_cast<Eigen::Index>(i)] = field(ctx.obs[i].first, ctx.obs[i].second);
      if (params.sigma2 > 0.0) ystar[static_cast<Eigen::Index>(i)] += sd_nugget * gauss(rng);
    }
    Eigen::VectorXd y0star(nt);
    for (int t = 0; t < nt; ++t) {
      y0star[t] = field(ctx.targets[t].first, ctx.targets[t].second);
      if (params.sigma2 > 0.0) y0star[t] += sd_nugget * gauss(rng);
    }
    Eigen::VectorXd predstar = ctx.mean_offset(ystar);
    draws.row(s) = (params.mu + base.array() + (y0star - predstar).array()).transpose();
  }
  return draws;
}

}  // namespace

Predictions krige(const ModelParams& params, const GridMask& mask,
                  const Eigen::VectorXd& y, const PredictionRequest& request, int J) {
  if (y.size() != mask.n_obs())
    throw std::invalid_argument("data vector length does not match observation count");
  KrigeContext ctx(params, mask, request, J);
  Predictions out;
  out.mean = (params.mu +
              ctx.mean_offset(Eigen::VectorXd(y.array() - params.mu)).array())
                 .matrix();
  if (!request.want_sd) return out;

  int nt = static_cast<int>(ctx.targets.size());
  out.sd.resize(nt);
  if (nt <= 2048) {
    // Exact per-target conditional sd: K(0) + sigma2 - c' (Sigma+sigma2 I)^-1 c.
    int n = static_cast<int>(ctx.obs.size());
    parallel_for(nt, 0, [&](int t) {
      Eigen::VectorXd c(n);
      for (int i = 0; i < n; ++i)
        c[i] = ctx.table.at(ctx.targets[t].first - ctx.obs[i].first,
                            ctx.targets[t].second - ctx.obs[i].second);
      double v = ctx.table.at(0, 0) + params.sigma2 - ctx.solver->quadform(c);
      out.sd[t] = std::sqrt(std::max(v, 0.0));
    });
  } else {
    PredictionRequest r = request;
    if (r.n_sims < 1) r.n_sims = 100;
    Eigen::MatrixXd draws = cond_sim_impl(ctx, params, y, r);
    Eigen::RowVectorXd mean = draws.colwise().mean();
    for (int t = 0; t < nt; ++t) {
      double ss = (draws.col(t).array() - mean[t]).square().sum();
      out.sd[t] = std::sqrt(ss / (draws.rows() - 1));
    }
  }
  return out;
}

Eigen::MatrixXd cond_sim(const ModelParams& params, const GridMask& mask,
                         const Eigen::VectorXd& y, const PredictionRequest& request,
                         int J) {
  if (y.size() != mask.n_obs())
    throw std::invalid_argument("data vector length does not match observation count");
  KrigeContext ctx(params, mask, request, J);
  return cond_sim_impl(ctx, params, y, request);
}

}  // namespace gridmrf
