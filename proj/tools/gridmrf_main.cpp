// gridmrf: covariance tables, simulation, likelihood evaluation, fitting,
// prediction, simulation studies, and timing sweeps for stationary GMRF
// models on (possibly incomplete) regular 2-D grids.

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <iostream>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "gridmrf/estimate.hpp"
#include "gridmrf/io.hpp"
#include "gridmrf/likelihood.hpp"
#include "gridmrf/oracle.hpp"
#include "gridmrf/predict.hpp"
#include "gridmrf/threads.hpp"

using nlohmann::json;
using namespace gridmrf;

namespace {

std::string utc_now() {
  std::time_t t = std::time(nullptr);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
  return buf;
}

json record(const std::string& command) {
  return json{{"command", command}, {"timestamp", utc_now()}, {"version", kVersion}};
}

json breakdown_json(const LoglikBreakdown& b) {
  return json{{"loglik", b.loglik},     {"logdet", b.logdet},
              {"quadform", b.quadform}, {"n_obs", b.n_obs},
              {"method", b.method},     {"wall_time", b.wall_time}};
}

json params_json(const ModelParams& p) {
  return json{{"tau", p.tau},       {"kappa", p.kappa}, {"nu", p.nu},
              {"sigma2", p.sigma2}, {"mu", p.mu}};
}

void emit(const json& doc, const std::string& out_path) {
  std::string s = doc.dump(2) + "\n";
  if (out_path.empty()) {
    std::cout << s;
  } else {
    std::ofstream out(out_path);
    if (!out) throw std::runtime_error(out_path + ": cannot open for writing");
    out << s;
  }
}

struct ModelFlags {
  double tau = 1.0, kappa = 0.2, sigma2 = 0.0, mu = 0.0;
  int nu = 0;
  ModelParams params() const {
    return ModelParams{.tau = tau, .kappa = kappa, .nu = nu, .sigma2 = sigma2, .mu = mu};
  }
  void add(CLI::App* cmd, bool with_noise = true) {
    cmd->add_option("--nu", nu, "integer smoothness");
    cmd->add_option("--kappa", kappa, "inverse range");
    cmd->add_option("--tau", tau, "precision scale");
    if (with_noise) {
      cmd->add_option("--sigma2", sigma2, "nugget variance");
      cmd->add_option("--mu", mu, "constant mean");
    }
  }
};

std::vector<Location> parse_targets(const std::vector<std::string>& specs,
                                    const GridMask& mask, bool all_missing) {
  std::vector<Location> targets;
  if (all_missing) {
    for (int r = 0; r < mask.n1; ++r)
      for (int c = 0; c < mask.n2; ++c)
        if (!mask.is_observed(r, c)) targets.push_back({r, c});
    return targets;
  }
  for (const auto& s : specs) {
    int r, c;
    char comma;
    std::istringstream ss(s);
    if (!(ss >> r >> comma >> c) || comma != ',')
      throw CLI::ValidationError("--target", "expected 'row,col': " + s);
    // user coordinates are in file orientation; mask may be transposed
    if (mask.transposed) std::swap(r, c);
    targets.push_back({r, c});
  }
  return targets;
}

// draws krige/condsim targets back into file orientation for output
Eigen::MatrixXd field_from_targets(const GridData& data,
                                   const std::vector<Location>& targets,
                                   const Eigen::VectorXd& vals, bool include_data) {
  Eigen::MatrixXd field = Eigen::MatrixXd::Constant(
      data.orig_n1, data.orig_n2, std::numeric_limits<double>::quiet_NaN());
  if (include_data) field = to_field(data);
  for (std::size_t t = 0; t < targets.size(); ++t) {
    auto [r, c] = targets[t];
    if (data.mask.transposed) std::swap(r, c);
    if (r < 0 || r >= data.orig_n1 || c < 0 || c >= data.orig_n2)
      throw std::invalid_argument("grid-file output requires in-grid targets");
    field(r, c) = vals[static_cast<Eigen::Index>(t)];
  }
  return field;
}

int run(int argc, char** argv) {
  CLI::App app{"exact and approximate Gaussian likelihoods for Markov random "
               "fields on incomplete grids"};
  app.require_subcommand(1);
  int threads = 0;
  app.add_option("--threads", threads, "cap on worker threads (default: all cores)");

  // ---- cov ----
  auto* cov = app.add_subcommand("cov", "compute a covariance table");
  ModelFlags cov_model;
  cov_model.add(cov, /*with_noise=*/false);
  int cov_n1 = 100, cov_n2 = 100, cov_J = 3;
  bool cov_check = false;
  std::string cov_out, cov_table_out;
  cov->add_option("--n1", cov_n1, "grid rows");
  cov->add_option("--n2", cov_n2, "grid columns");
  cov->add_option("--J", cov_J, "frequency oversampling factor");
  cov->add_flag("--check", cov_check, "also report the table change from J to J+1");
  cov->add_option("--table-out", cov_table_out, "binary table output (+ .json sidecar)");
  cov->add_option("--out", cov_out, "JSON record output (default stdout)");

  // ---- simulate ----
  auto* sim = app.add_subcommand("simulate", "draw an unconditional field");
  ModelFlags sim_model;
  sim_model.add(sim);
  int sim_n1 = 100, sim_n2 = 100, sim_J = 3;
  std::uint64_t sim_seed = 1;
  std::string sim_data, sim_out, sim_json_out;
  sim->add_option("--n1", sim_n1, "grid rows (ignored with --data)");
  sim->add_option("--n2", sim_n2, "grid columns (ignored with --data)");
  sim->add_option("--data", sim_data, "grid file providing the observation mask");
  sim->add_option("--J", sim_J, "frequency oversampling factor (>= 2)");
  sim->add_option("--seed", sim_seed, "random seed");
  sim->add_option("--out", sim_out, "output grid file")->required();
  sim->add_option("--json-out", sim_json_out, "JSON record output (default stdout)");

  // ---- loglik ----
  auto* ll = app.add_subcommand("loglik", "evaluate a loglikelihood");
  ModelFlags ll_model;
  ll_model.add(ll);
  std::string ll_data, ll_method = "exact", ll_out;
  int ll_J = 3, ll_block = 40;
  bool ll_verify = false;
  ll->add_option("--data", ll_data, "grid file")->required();
  ll->add_option("--method", ll_method,
                 "exact | exact-nugget | exact-nugget-fullq | none | precision | "
                 "periodic | indblocks");
  ll->add_option("--J", ll_J, "frequency oversampling factor");
  ll->add_option("--block-size", ll_block, "tile side for indblocks");
  ll->add_flag("--verify", ll_verify, "also run the dense reference (n_obs <= 4096)");
  ll->add_option("--out", ll_out, "JSON record output (default stdout)");

  // ---- fit ----
  auto* ft = app.add_subcommand("fit", "maximum-likelihood fit (mu, tau profiled)");
  std::string ft_data, ft_method = "exact", ft_out;
  int ft_nu = 0, ft_J = 3, ft_max_iter = 200, ft_block = 40;
  double ft_tol = 1e-6, ft_kappa0 = 0.1;
  bool ft_nugget = false;
  std::optional<double> ft_ref;
  ft->add_option("--data", ft_data, "grid file")->required();
  ft->add_option("--method", ft_method,
                 "exact | exact-nugget | none | precision | periodic | indblocks");
  ft->add_option("--nu", ft_nu, "integer smoothness (fixed)");
  ft->add_flag("--nugget", ft_nugget, "optimize a nugget (indblocks)");
  ft->add_option("--J", ft_J, "frequency oversampling factor");
  ft->add_option("--opt-tol", ft_tol, "simplex function tolerance");
  ft->add_option("--max-iter", ft_max_iter, "simplex iteration cap");
  ft->add_option("--kappa0", ft_kappa0, "search start for kappa");
  ft->add_option("--block-size", ft_block, "tile side for indblocks");
  double ft_ref_val = 0.0;
  auto* ref_opt = ft->add_option("--ref-loglik", ft_ref_val,
                                 "reference loglik for the reported difference");
  ft->add_option("--out", ft_out, "JSON record output (default stdout)");

  // ---- krige ----
  auto* kr = app.add_subcommand("krige", "conditional means (and sds) at targets");
  ModelFlags kr_model;
  kr_model.add(kr);
  std::string kr_data, kr_out, kr_sd_out, kr_json_out;
  std::vector<std::string> kr_targets;
  bool kr_all = false, kr_sd = false;
  int kr_J = 3, kr_nsims = 100;
  std::uint64_t kr_seed = 1;
  kr->add_option("--data", kr_data, "grid file")->required();
  kr->add_option("--target", kr_targets, "target cell 'row,col' (repeatable)");
  kr->add_flag("--all-missing", kr_all, "predict every missing cell");
  kr->add_flag("--sd", kr_sd, "also compute prediction standard deviations");
  kr->add_option("--J", kr_J, "frequency oversampling factor");
  kr->add_option("--n-sims", kr_nsims, "simulations for sd beyond 2048 targets");
  kr->add_option("--seed", kr_seed, "random seed");
  kr->add_option("--out", kr_out, "grid file of means (in-grid targets)");
  kr->add_option("--sd-out", kr_sd_out, "grid file of sds (in-grid targets)");
  kr->add_option("--json-out", kr_json_out, "JSON record output (default stdout)");

  // ---- condsim ----
  auto* cs = app.add_subcommand("condsim", "conditional simulations at targets");
  ModelFlags cs_model;
  cs_model.add(cs);
  std::string cs_data, cs_prefix, cs_json_out;
  std::vector<std::string> cs_targets;
  bool cs_all = false;
  int cs_J = 3, cs_nsims = 1;
  std::uint64_t cs_seed = 1;
  cs->add_option("--data", cs_data, "grid file")->required();
  cs->add_option("--target", cs_targets, "target cell 'row,col' (repeatable)");
  cs->add_flag("--all-missing", cs_all, "simulate every missing cell");
  cs->add_option("--J", cs_J, "frequency oversampling factor");
  cs->add_option("--n-sims", cs_nsims, "number of conditional draws");
  cs->add_option("--seed", cs_seed, "random seed");
  cs->add_option("--out-prefix", cs_prefix, "write each draw to <prefix><k>.grid")
      ->required();
  cs->add_option("--json-out", cs_json_out, "JSON record output (default stdout)");

  // ---- simstudy ----
  auto* ss = app.add_subcommand("simstudy", "repeated simulate-and-fit study");
  int ss_nu = 0, ss_reps = 100, ss_J = 3, ss_max_iter = 200;
  std::vector<double> ss_kappas{0.2};
  std::string ss_grid = "100x100", ss_methods = "exact", ss_out;
  std::uint64_t ss_seed = 1;
  ss->add_option("--nu", ss_nu, "integer smoothness");
  ss->add_option("--kappa-list", ss_kappas, "true kappa values");
  ss->add_option("--grid", ss_grid, "grid size, e.g. 100x100");
  ss->add_option("--reps", ss_reps, "replicates per kappa");
  ss->add_option("--methods", ss_methods, "comma list: exact,none,precision,periodic");
  ss->add_option("--seed", ss_seed, "random seed");
  ss->add_option("--J", ss_J, "frequency oversampling factor");
  ss->add_option("--max-iter", ss_max_iter, "simplex iteration cap");
  ss->add_option("--out", ss_out, "CSV output")->required();

  // ---- benchmark ----
  auto* bm = app.add_subcommand("benchmark", "likelihood timing sweep");
  std::vector<int> bm_sizes{100, 150, 200};
  std::vector<int> bm_nus{0, 1};
  double bm_sigma2 = 0.01;
  int bm_J = 3, bm_reps = 3;
  std::string bm_out;
  bm->add_option("--sizes", bm_sizes, "grid sides");
  bm->add_option("--nu", bm_nus, "smoothness values");
  bm->add_option("--sigma2", bm_sigma2, "nugget for the with-nugget column");
  bm->add_option("--J", bm_J, "frequency oversampling factor");
  bm->add_option("--reps", bm_reps, "repetitions (min is reported)");
  bm->add_option("--out", bm_out, "CSV output")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;  // usage error
  }
  if (threads > 0) set_default_threads(threads);

  if (cov->parsed()) {
    ModelParams p = cov_model.params();
    CovarianceTable table = table_for_grid(p, cov_n1, cov_n2, cov_J);
    json doc = record("cov");
    doc["params"] = params_json(p);
    doc["n1"] = cov_n1;
    doc["n2"] = cov_n2;
    doc["J"] = cov_J;
    doc["torus"] = {table.t1, table.t2};
    doc["K0"] = table.values(0, 0);
    if (cov_check) doc["delta_J"] = delta_J(p, cov_n1, cov_n2, cov_J);
    if (!cov_table_out.empty()) {
      write_table_binary(cov_table_out, table);
      doc["table_file"] = cov_table_out;
    }
    emit(doc, cov_out);
    return 0;
  }

  if (sim->parsed()) {
    ModelParams p = sim_model.params();
    GridMask mask;
    int on1 = sim_n1, on2 = sim_n2;
    if (!sim_data.empty()) {
      GridData d = read_grid_file(sim_data);
      mask = d.mask;
      on1 = d.orig_n1;
      on2 = d.orig_n2;
    } else {
      mask = GridMask::complete(sim_n1, sim_n2);
    }
    Eigen::VectorXd y = unconditional_sim(p, mask, sim_J, sim_seed);
    GridData out_data{mask, y, on1, on2};
    write_grid_file(sim_out, to_field(out_data));
    json doc = record("simulate");
    doc["params"] = params_json(p);
    doc["seed"] = sim_seed;
    doc["J"] = sim_J;
    doc["n_obs"] = mask.n_obs();
    doc["out"] = sim_out;
    emit(doc, sim_json_out);
    return 0;
  }

  if (ll->parsed()) {
    GridData data = read_grid_file(ll_data);
    ModelParams p = ll_model.params();
    LoglikBreakdown b;
    if (ll_method == "exact") {
      b = loglik_exact(p, data.mask, data.values, ll_J);
    } else if (ll_method == "exact-nugget") {
      b = loglik_nugget_lean(p, data.mask, data.values, ll_J);
    } else if (ll_method == "exact-nugget-fullq") {
      b = loglik_nugget_fullQ(p, data.mask, data.values, ll_J);
    } else if (ll_method == "none" || ll_method == "precision" ||
               ll_method == "periodic") {
      if (p.sigma2 > 0.0)
        throw std::invalid_argument("method " + ll_method + " requires sigma2 = 0");
      ApproxScheme scheme = ll_method == "none"        ? ApproxScheme::none
                            : ll_method == "precision" ? ApproxScheme::precision
                                                       : ApproxScheme::periodic;
      b = loglik_approx(p, data.mask, data.values, scheme);
    } else if (ll_method == "indblocks") {
      b = loglik_indblocks(p, data.mask, data.values,
                           tile_blocks(data.mask, ll_block, ll_block), ll_J);
    } else {
      throw CLI::ValidationError("--method", "unknown method: " + ll_method);
    }
    json doc = record("loglik");
    doc["params"] = params_json(p);
    doc["loglik"] = breakdown_json(b);
    if (ll_verify) {
      if (data.mask.n_obs() > 4096) {
        doc["verify"] = {{"skipped", "n_obs exceeds the dense guard (4096)"}};
      } else {
        LoglikBreakdown ref = dense_loglik(p, data.mask, data.values);
        doc["verify"] = {{"dense_loglik", ref.loglik},
                         {"discrepancy", b.loglik - ref.loglik}};
      }
    }
    emit(doc, ll_out);
    return 0;
  }

  if (ft->parsed()) {
    GridData data = read_grid_file(ft_data);
    FitConfig cfg;
    cfg.J = ft_J;
    cfg.tol = ft_tol;
    cfg.max_iter = ft_max_iter;
    cfg.kappa0 = ft_kappa0;
    cfg.nugget = ft_nugget;
    cfg.block_size = ft_block;
    auto t0 = std::chrono::steady_clock::now();
    FitResult res = fit(data.mask, data.values, ft_nu, fit_method_from_string(ft_method),
                        cfg);
    double minutes =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count() /
        60.0;
    json doc = record("fit");
    doc["method"] = res.method;
    doc["params"] = params_json(res.params);
    doc["sigma"] = std::sqrt(res.params.sigma2);
    doc["loglik"] = breakdown_json(res.loglik);
    doc["iterations"] = res.iterations;
    doc["converged"] = res.converged;
    doc["evaluations"] = res.trace.size();
    doc["minutes"] = minutes;
    if (ref_opt->count() > 0) doc["delta_loglik"] = res.loglik.loglik - ft_ref_val;
    emit(doc, ft_out);
    return 0;
  }

  if (kr->parsed()) {
    GridData data = read_grid_file(kr_data);
    ModelParams p = kr_model.params();
    PredictionRequest req;
    req.targets = parse_targets(kr_targets, data.mask, kr_all);
    req.want_sd = kr_sd;
    req.n_sims = kr_nsims;
    req.seed = kr_seed;
    Predictions pred = krige(p, data.mask, data.values, req, kr_J);
    if (!kr_out.empty())
      write_grid_file(kr_out, field_from_targets(data, req.targets, pred.mean, true));
    if (!kr_sd_out.empty()) {
      if (!kr_sd) throw CLI::ValidationError("--sd-out", "requires --sd");
      write_grid_file(kr_sd_out,
                      field_from_targets(data, req.targets, pred.sd, false));
    }
    json doc = record("krige");
    doc["params"] = params_json(p);
    doc["seed"] = kr_seed;
    doc["n_targets"] = req.targets.size();
    if (req.targets.size() <= 64) {
      json tl = json::array();
      for (std::size_t t = 0; t < req.targets.size(); ++t) {
        auto [r, c] = req.targets[t];
        if (data.mask.transposed) std::swap(r, c);
        json e{{"row", r}, {"col", c}, {"mean", pred.mean[static_cast<Eigen::Index>(t)]}};
        if (kr_sd) e["sd"] = pred.sd[static_cast<Eigen::Index>(t)];
        tl.push_back(e);
      }
      doc["targets"] = tl;
    }
    emit(doc, kr_json_out);
    return 0;
  }

  if (cs->parsed()) {
    GridData data = read_grid_file(cs_data);
    ModelParams p = cs_model.params();
    PredictionRequest req;
    req.targets = parse_targets(cs_targets, data.mask, cs_all);
    req.n_sims = cs_nsims;
    req.seed = cs_seed;
    Eigen::MatrixXd draws = cond_sim(p, data.mask, data.values, req, cs_J);
    json files = json::array();
    for (int s = 0; s < cs_nsims; ++s) {
      std::string path = cs_prefix + std::to_string(s) + ".grid";
      write_grid_file(path, field_from_targets(data, req.targets,
                                               draws.row(s).transpose(), true));
      files.push_back(path);
    }
    json doc = record("condsim");
    doc["params"] = params_json(p);
    doc["seed"] = cs_seed;
    doc["n_sims"] = cs_nsims;
    doc["n_targets"] = req.targets.size();
    doc["files"] = files;
    emit(doc, cs_json_out);
    return 0;
  }

  if (ss->parsed()) {
    int gn1, gn2;
    char x;
    std::istringstream gs(ss_grid);
    if (!(gs >> gn1 >> x >> gn2) || x != 'x')
      throw CLI::ValidationError("--grid", "expected ROWSxCOLS");
    std::vector<std::string> methods;
    {
      std::istringstream ms(ss_methods);
      std::string tok;
      while (std::getline(ms, tok, ',')) methods.push_back(tok);
    }
    GridMask mask = GridMask::complete(gn1, gn2);
    struct Row {
      double kappa_true;
      int rep;
      std::string method;
      double kappa_hat, tau_hat, mu_hat, loglik;
      bool converged;
    };
    std::vector<Row> rows(ss_kappas.size() * ss_reps * methods.size());
    std::mutex err_mutex;
    std::string first_error;
    parallel_for(static_cast<int>(ss_kappas.size()) * ss_reps, 0, [&](int job) {
      int ki = job / ss_reps, rep = job % ss_reps;
      double kappa_true = ss_kappas[static_cast<std::size_t>(ki)];
      ModelParams truth{.tau = 1.0, .kappa = kappa_true, .nu = ss_nu};
      std::uint64_t seed = ss_seed + 1000003ULL * static_cast<std::uint64_t>(job);
      try {
        Eigen::VectorXd y = unconditional_sim(truth, mask, std::max(ss_J, 2), seed);
        for (std::size_t mi = 0; mi < methods.size(); ++mi) {
          FitConfig cfg;
          cfg.J = ss_J;
          cfg.max_iter = ss_max_iter;
          FitResult res = fit(mask, y, ss_nu, fit_method_from_string(methods[mi]), cfg);
          rows[(static_cast<std::size_t>(job)) * methods.size() + mi] =
              Row{kappa_true,        rep,
                  methods[mi],       res.params.kappa,
                  res.params.tau,    res.params.mu,
                  res.loglik.loglik, res.converged};
        }
      } catch (const std::exception& e) {
        std::lock_guard<std::mutex> lock(err_mutex);
        if (first_error.empty()) first_error = e.what();
      }
    });
    if (!first_error.empty()) throw numerical_error(first_error);
    std::ofstream out(ss_out);
    if (!out) throw std::runtime_error(ss_out + ": cannot open for writing");
    out.precision(12);
    out << "kappa_true,rep,method,kappa_hat,tau_hat,mu_hat,loglik,converged\n";
    for (const auto& r : rows)
      out << r.kappa_true << ',' << r.rep << ',' << r.method << ',' << r.kappa_hat
          << ',' << r.tau_hat << ',' << r.mu_hat << ',' << r.loglik << ','
          << (r.converged ? 1 : 0) << '\n';
    // summary rows: mean and se of log kappa_hat per (kappa, method)
    for (double kt : ss_kappas)
      for (const auto& m : methods) {
        double sum = 0.0, sum2 = 0.0;
        int n = 0;
        for (const auto& r : rows)
          if (r.kappa_true == kt && r.method == m) {
            double lk = std::log(r.kappa_hat);
            sum += lk;
            sum2 += lk * lk;
            ++n;
          }
        double mean = sum / n;
        double var = n > 1 ? (sum2 - n * mean * mean) / (n - 1) : 0.0;
        out << kt << ",summary," << m << ',' << mean << ','
            << std::sqrt(std::max(var, 0.0) / n) << ",,,\n";
      }
    json doc = record("simstudy");
    doc["seed"] = ss_seed;
    doc["out"] = ss_out;
    doc["reps"] = ss_reps;
    std::ofstream side(ss_out + ".json");
    side << doc.dump(2) << '\n';
    emit(doc, "");
    return 0;
  }

  if (bm->parsed()) {
    std::ofstream out(bm_out);
    if (!out) throw std::runtime_error(bm_out + ": cannot open for writing");
    out << "n";
    for (int nu : bm_nus)
      out << ",nu" << nu << "_approx,nu" << nu << "_exact,nu" << nu << "_exact_nugget";
    out << "\n";
    for (int n : bm_sizes) {
      GridMask mask = GridMask::complete(n, n);
      out << n;
      for (int nu : bm_nus) {
        ModelParams p{.tau = 1.0, .kappa = 0.2, .nu = nu};
        Eigen::VectorXd y = unconditional_sim(p, mask, std::max(bm_J, 2), 42);
        auto time_min = [&](auto&& fn) {
          double best = std::numeric_limits<double>::max();
          for (int r = 0; r < bm_reps; ++r) {
            auto t0 = std::chrono::steady_clock::now();
            fn();
            best = std::min(best, std::chrono::duration<double>(
                                      std::chrono::steady_clock::now() - t0)
                                      .count());
          }
          return best;
        };
        double t_approx = time_min(
            [&] { loglik_approx(p, mask, y, ApproxScheme::precision); });
        double t_exact = time_min([&] { loglik_exact(p, mask, y, bm_J); });
        ModelParams pn = p;
        pn.sigma2 = bm_sigma2;
        double t_nugget =
            time_min([&] { loglik_nugget_lean(pn, mask, y, bm_J); });
        out.precision(6);
        out << ',' << t_approx << ',' << t_exact << ',' << t_nugget;
      }
      out << "\n";
      out.flush();
    }
    json doc = record("benchmark");
    doc["out"] = bm_out;
    std::ofstream side(bm_out + ".json");
    side << doc.dump(2) << '\n';
    emit(doc, "");
    return 0;
  }

  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const size_guard_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const numerical_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const CLI::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
