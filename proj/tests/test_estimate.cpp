#include <doctest.h>

#include <cmath>
#include <random>

#include "gridmrf/estimate.hpp"
#include "gridmrf/covariance.hpp"

using namespace gridmrf;

TEST_CASE("method tags round-trip") {
  for (auto m : {FitMethod::exact, FitMethod::exact_nugget, FitMethod::approx_none,
                 FitMethod::approx_precision, FitMethod::approx_periodic,
                 FitMethod::indblocks})
    CHECK(fit_method_from_string(to_string(m)) == m);
  CHECK_THROWS_AS(fit_method_from_string("bogus"), std::invalid_argument);
}

TEST_CASE("profiled value equals the full loglikelihood at the profile") {
  GridMask mask = GridMask::complete(8, 8);
  ModelParams truth{.tau = 2.0, .kappa = 0.4, .nu = 0, .sigma2 = 0.0, .mu = 1.0};
  Eigen::VectorXd y = unconditional_sim(truth, mask, 3, 13);

  SUBCASE("no nugget") {
    ProfileResult prof = profile_closed_forms(0.4, 0, 0.0, mask, y, FitMethod::exact, 3);
    ModelParams at{.tau = prof.tau_hat, .kappa = 0.4, .nu = 0, .sigma2 = 0.0,
                   .mu = prof.mu_hat};
    CHECK(loglik_exact(at, mask, y, 3).loglik ==
          doctest::Approx(prof.loglik).epsilon(1e-10));
  }
  SUBCASE("with nugget") {
    double delta = 0.05;
    ProfileResult prof =
        profile_closed_forms(0.4, 0, delta, mask, y, FitMethod::exact_nugget, 3);
    double t2 = prof.tau_hat * prof.tau_hat;
    ModelParams at{.tau = prof.tau_hat, .kappa = 0.4, .nu = 0, .sigma2 = delta / t2,
                   .mu = prof.mu_hat};
    CHECK(loglik_nugget_lean(at, mask, y, 3).loglik ==
          doctest::Approx(prof.loglik).epsilon(1e-10));
  }
  SUBCASE("approximate scheme") {
    ProfileResult prof =
        profile_closed_forms(0.4, 0, 0.0, mask, y, FitMethod::approx_none, 3);
    ModelParams at{.tau = prof.tau_hat, .kappa = 0.4, .nu = 0, .sigma2 = 0.0,
                   .mu = prof.mu_hat};
    CHECK(loglik_approx(at, mask, y, ApproxScheme::none).loglik ==
          doctest::Approx(prof.loglik).epsilon(1e-10));
  }
  SUBCASE("independent blocks") {
    auto blocks = tile_blocks(mask, 4, 4);
    ProfileResult prof =
        profile_closed_forms(0.4, 0, 0.0, mask, y, FitMethod::indblocks, 3, &blocks);
    ModelParams at{.tau = prof.tau_hat, .kappa = 0.4, .nu = 0, .sigma2 = 0.0,
                   .mu = prof.mu_hat};
    CHECK(loglik_indblocks(at, mask, y, blocks, 3).loglik ==
          doctest::Approx(prof.loglik).epsilon(1e-10));
  }
}

TEST_CASE("profiled mu/tau maximize: perturbations do not improve") {
  GridMask mask = GridMask::complete(7, 7);
  ModelParams truth{.tau = 1.0, .kappa = 0.5, .nu = 0};
  Eigen::VectorXd y = unconditional_sim(truth, mask, 3, 29);
  ProfileResult prof = profile_closed_forms(0.5, 0, 0.0, mask, y, FitMethod::exact, 3);
  for (double dm : {-0.1, 0.1})
    for (double dt : {0.9, 1.0, 1.1}) {
      ModelParams at{.tau = prof.tau_hat * dt, .kappa = 0.5, .nu = 0, .sigma2 = 0.0,
                     .mu = prof.mu_hat + dm};
      CHECK(loglik_exact(at, mask, y, 3).loglik <= prof.loglik + 1e-10);
    }
}

TEST_CASE("fit recovers reasonable parameters and satisfies the argmax property") {
  GridMask mask = GridMask::complete(32, 32);
  ModelParams truth{.tau = 1.0, .kappa = 0.2, .nu = 0, .sigma2 = 0.0, .mu = 0.5};
  Eigen::VectorXd y = unconditional_sim(truth, mask, 3, 101);
  FitResult res = fit(mask, y, 0, FitMethod::exact);
  CHECK(res.converged);
  CHECK(res.params.kappa > 0.02);
  CHECK(res.params.kappa < 2.0);
  // optimum beats the generating parameters and every trace point
  ProfileResult at_truth =
      profile_closed_forms(truth.kappa, 0, 0.0, mask, y, FitMethod::exact, 3);
  CHECK(res.loglik.loglik >= at_truth.loglik - 1e-6);
  for (const auto& tp : res.trace) CHECK(res.loglik.loglik >= tp.loglik - 1e-8);
}

TEST_CASE("nugget fit optimizes two parameters") {
  GridMask mask = GridMask::complete(24, 24);
  ModelParams truth{.tau = 1.0, .kappa = 0.3, .nu = 0, .sigma2 = 0.05, .mu = 0.0};
  Eigen::VectorXd y = unconditional_sim(truth, mask, 3, 202);
  FitConfig cfg;
  cfg.max_iter = 120;
  FitResult res = fit(mask, y, 0, FitMethod::exact_nugget, cfg);
  CHECK(res.converged);
  CHECK(res.params.sigma2 > 0.0);
  ProfileResult at_truth = profile_closed_forms(
      truth.kappa, 0, truth.sigma2 * truth.tau * truth.tau, mask, y,
      FitMethod::exact_nugget, 3);
  CHECK(res.loglik.loglik >= at_truth.loglik - 1e-6);
}

TEST_CASE("trace records every evaluation") {
  GridMask mask = GridMask::complete(10, 10);
  ModelParams truth{.tau = 1.0, .kappa = 0.4, .nu = 0};
  Eigen::VectorXd y = unconditional_sim(truth, mask, 3, 7);
  FitResult res = fit(mask, y, 0, FitMethod::approx_precision);
  CHECK(res.trace.size() >= static_cast<size_t>(res.iterations));
  CHECK(res.method == "precision");
}
