#include <doctest.h>

#include "gqm/avqfi.hpp"
#include "gqm/gaussian.hpp"
#include "gqm/sampler.hpp"
#include "gqm/sweep.hpp"

#include <cmath>
#include <numbers>
#include <vector>

using namespace gqm;

namespace {

constexpr double pi = std::numbers::pi;

/// The optimizer's probe family: photon number n_a split between squeezing
/// and displacement by t = |xi|^2 / (2 n_a), orthogonal displacement.
SingleModeProbeParams family(double n_a, double t) {
  const double cosh2a = 2.0 * n_a + 1.0 - 2.0 * n_a * t;
  return {1.0, 0.5 * std::acosh(std::max(1.0, cosh2a)), 0.0,
          std::sqrt(std::max(0.0, 2.0 * n_a * t)), pi / 2};
}

double family_value(double n_a, double t, double eta, double epsilon, int nodes) {
  const SingleModeProbeParams p = family(n_a, t);
  if (eta == 1.0) {
    return avqfi_sm_noiseless(from_single_mode_params(p).gamma, p.xi_mag);
  }
  return avqfi_sm_noisy(p, epsilon, eta, nodes);
}

}  // namespace

TEST_CASE("displacement-fraction optimizer") {
  SUBCASE("squeezing wins without loss") {
    const RatioOptimum r = optimize_displacement_ratio(5.0, 1.0, 1.0);
    CHECK(r.ratio < 1e-3);
    CHECK(r.avqfi == doctest::Approx(122.0).epsilon(1e-9));
  }

  SUBCASE("regime endpoints under loss") {
    CHECK(optimize_displacement_ratio(5.0, 0.99, 1.0).ratio < 0.02);
    CHECK(optimize_displacement_ratio(5.0, 0.2, 1.0).ratio > 0.98);
  }

  SUBCASE("reported optimum dominates the family") {
    const double n_a = 2.0, eta = 0.8, eps = 1.0;
    const int nodes = 64;
    const RatioOptimum r = optimize_displacement_ratio(n_a, eta, eps, nodes);
    CHECK(r.avqfi ==
          doctest::Approx(family_value(n_a, r.ratio, eta, eps, nodes))
              .epsilon(1e-10));
    for (int k = 0; k <= 10; ++k) {
      CHECK(r.avqfi >= family_value(n_a, k / 10.0, eta, eps, nodes) - 1e-9);
    }
  }

  SUBCASE("degenerate budgets") {
    const RatioOptimum none = optimize_displacement_ratio(1.0, 0.0, 1.0);
    CHECK(none.ratio == 0.0);
    CHECK(none.avqfi == 0.0);

    const RatioOptimum vac = optimize_displacement_ratio(0.0, 1.0, 1.0);
    CHECK(vac.ratio == 0.0);
    CHECK(vac.avqfi == doctest::Approx(2.0).epsilon(1e-12));
  }

  SUBCASE("validation") {
    CHECK_THROWS_AS(optimize_displacement_ratio(-1.0, 0.5, 1.0),
                    std::invalid_argument);
    CHECK_THROWS_AS(optimize_displacement_ratio(1.0, 1.2, 1.0),
                    std::invalid_argument);
    CHECK_THROWS_AS(optimize_displacement_ratio(1.0, 0.5, 0.0),
                    std::invalid_argument);
  }
}

TEST_CASE("two-mode squeezed vacuum reference") {
  bool reg = true;
  CHECK(std::fabs(avqfi_tmsv_reference(1.0, 1.0, 1.0, ComparisonMode::fixed_nA,
                                       256, &reg) -
                  10.0) < 1e-7);
  CHECK_FALSE(reg);  // closed form, no limiting procedure involved

  CHECK(std::fabs(avqfi_tmsv_reference(2.0, 1.0, 1.0, ComparisonMode::fixed_N) -
                  10.0) < 1e-7);

  CHECK(avqfi_tmsv_reference(1.0, 0.0, 1.0, ComparisonMode::fixed_nA) == 0.0);

  reg = true;
  const double lossy =
      avqfi_tmsv_reference(1.0, 0.8, 1.0, ComparisonMode::fixed_nA, 256, &reg);
  const double direct = avqfi_numeric(tmsv(std::asinh(1.0)), 1.0, 0.8,
                                      ThetaPrior::uniform(), 256)
                            .mean;
  CHECK(lossy == doctest::Approx(direct).epsilon(1e-12));
  CHECK_FALSE(reg);
}

TEST_CASE("relative advantage of the entangled reference") {
  SUBCASE("ties at equal encoded-mode photons without loss") {
    for (double n : {1.0, 5.0}) {
      CHECK(std::fabs(relative_increase(n, 1.0, 1.0, ComparisonMode::fixed_nA)) <
            1e-9);
    }
  }

  SUBCASE("loses at equal total photons without loss") {
    for (double total : {1.0, 2.0, 5.0}) {
      const double half = total / 2.0;
      const double tm = 4.0 * half * half + 4.0 * half + 2.0;
      const double single = 4.0 * total * total + 4.0 * total + 2.0;
      const double expected = (tm - single) / single;
      const double got = relative_increase(total, 1.0, 1.0, ComparisonMode::fixed_N);
      CHECK(got == doctest::Approx(expected).epsilon(1e-6));
      CHECK(got < 0.0);
    }
  }

  CHECK(relative_increase(1.0, 0.0, 1.0, ComparisonMode::fixed_nA) == 0.0);
}

TEST_CASE("QFI band over the encoding direction") {
  const GaussianState squeezed =
      from_single_mode_params({1.0, std::asinh(1.0), 0.0, 0.0, 0.0});
  const ThetaBand band = theta_band(squeezed, 0.5, 1.0);
  CHECK(band.min == doctest::Approx(2.0).epsilon(1e-6));
  CHECK(band.max == doctest::Approx(18.0).epsilon(1e-6));
  CHECK(band.mean == doctest::Approx(10.0).epsilon(1e-6));

  for (double eta : {1.0, 0.8}) {
    const ThetaBand flat = theta_band(tmsv(std::asinh(1.0)), 0.5, eta);
    CHECK(flat.max - flat.min < 1e-7 * flat.mean);
  }

  const GaussianState coherent =
      from_single_mode_params({1.0, 0.0, 0.0, std::sqrt(2.0), 0.3});
  const ThetaBand c = theta_band(coherent, 0.5, 1.0);
  CHECK(c.max - c.min < 1e-9);

  CHECK_THROWS_AS(theta_band(squeezed, 0.5, 1.0, 0), std::invalid_argument);
}

TEST_CASE("grid sweep") {
  SUBCASE("3x3 grid, equal encoded-mode photons") {
    SweepSpec spec;
    spec.n_axis = {1.0, 5.0, 3};
    spec.eta_axis = {0.2, 1.0, 3};
    spec.epsilon = 1.0;
    spec.mode = ComparisonMode::fixed_nA;
    spec.nodes = 64;
    const std::vector<SweepRecord> rows = run_sweep(spec);
    REQUIRE(rows.size() == 9);

    // n-major ordering with eta varying fastest
    CHECK(rows[0].n == doctest::Approx(1.0));
    CHECK(rows[0].eta == doctest::Approx(0.2));
    CHECK(rows[1].eta == doctest::Approx(0.6));
    CHECK(rows[2].eta == doctest::Approx(1.0));
    CHECK(rows[3].n == doctest::Approx(3.0));

    for (const SweepRecord& r : rows) {
      CHECK(r.epsilon == doctest::Approx(1.0));
      CHECK(r.avqfi_single_opt > 0.0);
      CHECK(r.increase >= -1e-6);
      CHECK(r.flags.find("error") == std::string::npos);
    }
    // no pathologies anywhere on this grid
    CHECK(rows[2].flags.empty());
    CHECK(rows[0].flags.empty());
  }

  SUBCASE("single point reproduces the direct calls") {
    SweepSpec spec;
    spec.n_axis = {2.0, 2.0, 1};
    spec.eta_axis = {0.7, 0.7, 1};
    spec.epsilon = 1.0;
    spec.nodes = 64;
    const std::vector<SweepRecord> rows = run_sweep(spec);
    REQUIRE(rows.size() == 1);
    const RatioOptimum opt = optimize_displacement_ratio(2.0, 0.7, 1.0, 64);
    CHECK(rows[0].optimal_ratio == doctest::Approx(opt.ratio).epsilon(1e-12));
    CHECK(rows[0].avqfi_single_opt == doctest::Approx(opt.avqfi).epsilon(1e-12));
    CHECK(rows[0].avqfi_tmsv ==
          doctest::Approx(avqfi_tmsv_reference(2.0, 0.7, 1.0,
                                               ComparisonMode::fixed_nA, 64))
              .epsilon(1e-12));
  }

  SUBCASE("fixed total photons without loss favors the single mode") {
    SweepSpec spec;
    spec.n_axis = {2.0, 2.0, 1};
    spec.eta_axis = {1.0, 1.0, 1};
    spec.mode = ComparisonMode::fixed_N;
    spec.nodes = 64;
    const std::vector<SweepRecord> rows = run_sweep(spec);
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].increase < 0.0);
  }

  SUBCASE("fully lossy rows are flagged") {
    SweepSpec spec;
    spec.n_axis = {1.0, 1.0, 1};
    spec.eta_axis = {0.0, 0.0, 1};
    const std::vector<SweepRecord> rows = run_sweep(spec);
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].flags == "fully-lossy");
    CHECK(rows[0].avqfi_single_opt == 0.0);
    CHECK(rows[0].avqfi_tmsv == 0.0);
    CHECK(rows[0].increase == 0.0);
  }

  SUBCASE("single-mode optimum improves with transmissivity") {
    SweepSpec spec;
    spec.n_axis = {2.0, 2.0, 1};
    spec.eta_axis = {0.3, 0.9, 3};
    spec.nodes = 64;
    const std::vector<SweepRecord> rows = run_sweep(spec);
    REQUIRE(rows.size() == 3);
    CHECK(rows[1].avqfi_single_opt >= rows[0].avqfi_single_opt - 1e-6);
    CHECK(rows[2].avqfi_single_opt >= rows[1].avqfi_single_opt - 1e-6);
  }

  SUBCASE("validation") {
    SweepSpec spec;
    spec.n_axis = {1.0, 2.0, 0};
    CHECK_THROWS_AS(run_sweep(spec), std::invalid_argument);
    spec.n_axis = {1.0, 2.0, 2};
    spec.eta_axis = {0.5, 1.2, 2};
    CHECK_THROWS_AS(run_sweep(spec), std::invalid_argument);
    spec.eta_axis = {0.5, 1.0, 2};
    spec.epsilon = 0.0;
    CHECK_THROWS_AS(run_sweep(spec), std::invalid_argument);
    spec.epsilon = 1.0;
    spec.nodes = 33;
    CHECK_THROWS_AS(run_sweep(spec), std::invalid_argument);
  }
}
