#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "gqm/avqfi.hpp"
#include "gqm/gaussian.hpp"
#include "gqm/sampler.hpp"

#include <cmath>
#include <numbers>

using namespace gqm;

namespace {

constexpr double pi = std::numbers::pi;

double max_abs_diff(const Matrix& a, const Matrix& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

Matrix identity2() { return Matrix::Identity(2, 2); }

}  // namespace

TEST_CASE("rotation symplectic matrices") {
  CHECK(max_abs_diff(rotation_symplectic(0.0).s, identity2()) == 0.0);

  Matrix quarter(2, 2);
  quarter << 0, 1, -1, 0;
  CHECK(max_abs_diff(rotation_symplectic(pi / 2).s, quarter) < 1e-15);

  const Matrix cycle = rotation_symplectic(0.7).s * rotation_symplectic(-0.7).s;
  CHECK(max_abs_diff(cycle, identity2()) < 1e-15);
}

TEST_CASE("squeeze symplectic matrices") {
  CHECK(max_abs_diff(squeeze_symplectic(0.0).s, identity2()) == 0.0);

  const Matrix s1 = squeeze_symplectic(1.0).s;
  CHECK(s1(0, 0) == doctest::Approx(std::exp(1.0)).epsilon(1e-15));
  CHECK(s1(1, 1) == doctest::Approx(std::exp(-1.0)).epsilon(1e-15));
  CHECK(s1(0, 1) == 0.0);
  CHECK(s1.determinant() == doctest::Approx(1.0).epsilon(1e-14));

  const Matrix cycle = squeeze_symplectic(0.3).s * squeeze_symplectic(-0.3).s;
  CHECK(max_abs_diff(cycle, identity2()) < 1e-15);
}

TEST_CASE("symplectic matrix construction verifies the defining relation") {
  Matrix bad = Matrix::Identity(2, 2);
  bad(0, 0) = 2.0;  // det 2: not symplectic
  CHECK_THROWS_AS(SymplecticMatrix{bad}, std::invalid_argument);
  CHECK_NOTHROW(SymplecticMatrix{rotation_symplectic(1.2).s *
                                 squeeze_symplectic(0.8).s});
}

TEST_CASE("apply_unitary moves moments and preserves invariants") {
  const GaussianState vac = vacuum_state(1);

  SUBCASE("vacuum is rotation invariant") {
    const GaussianState out = apply_unitary(vac, rotation_symplectic(1.1));
    CHECK(max_abs_diff(out.gamma, identity2()) < 1e-15);
    CHECK(out.xi.norm() == 0.0);
  }

  SUBCASE("squeezed vacuum covariance") {
    const GaussianState out = apply_unitary(vac, squeeze_symplectic(0.4));
    CHECK(out.gamma(0, 0) == doctest::Approx(std::exp(0.8)).epsilon(1e-14));
    CHECK(out.gamma(1, 1) == doctest::Approx(std::exp(-0.8)).epsilon(1e-14));
  }

  SUBCASE("determinant and symplectic spectrum preserved") {
    SeededRng rng(11);
    for (int i = 0; i < 100; ++i) {
      const GaussianState st = sample_mixed_single_mode(1.0 + rng.uniform(), rng);
      const Matrix u = rotation_symplectic(rng.uniform(0.0, 2 * pi)).s *
                       squeeze_symplectic(rng.uniform(-0.8, 0.8)).s *
                       rotation_symplectic(rng.uniform(0.0, 2 * pi)).s;
      const GaussianState out = apply_unitary(st, SymplecticMatrix(u));
      CHECK(out.gamma.determinant() ==
            doctest::Approx(st.gamma.determinant()).epsilon(1e-10));
      CHECK(symplectic_eigenvalues(out)[0] ==
            doctest::Approx(symplectic_eigenvalues(st)[0]).epsilon(1e-9));
    }
  }

  SUBCASE("single-mode matrix embeds on a selected mode of a two-mode state") {
    const GaussianState two = tmsv(0.6);
    const GaussianState out =
        apply_unitary(two, squeeze_symplectic(0.3), 1);
    CHECK(max_abs_diff(out.gamma.topLeftCorner(2, 2),
                       two.gamma.topLeftCorner(2, 2)) == 0.0);
    const Matrix s = squeeze_symplectic(0.3).s;
    CHECK(max_abs_diff(out.gamma.bottomRightCorner(2, 2),
                       s * two.gamma.bottomRightCorner(2, 2) * s.transpose()) <
          1e-14);
  }

  SUBCASE("dimension mismatch is rejected") {
    const GaussianState two = tmsv(0.3);
    Matrix four = Matrix::Identity(4, 4);
    CHECK_THROWS_AS(apply_unitary(vac, SymplecticMatrix(four)),
                    std::invalid_argument);
    CHECK_THROWS_AS(apply_unitary(two, rotation_symplectic(0.2), 5),
                    std::invalid_argument);
  }
}

TEST_CASE("apply_loss attenuates toward the vacuum") {
  SUBCASE("eta = 1 is the identity") {
    SeededRng rng(3);
    const GaussianState st = sample_mixed_single_mode(2.0, rng);
    const GaussianState out = apply_loss(st, 1.0);
    CHECK(max_abs_diff(out.gamma, st.gamma) < 1e-15);
    CHECK((out.xi - st.xi).norm() < 1e-15);
  }

  SUBCASE("eta = 0 produces the vacuum on the lossy mode") {
    SeededRng rng(4);
    const GaussianState st = sample_mixed_single_mode(3.0, rng);
    const GaussianState out = apply_loss(st, 0.0);
    CHECK(max_abs_diff(out.gamma, identity2()) < 1e-15);
    CHECK(out.xi.norm() == 0.0);
  }

  SUBCASE("half loss on a symmetric thermal state") {
    const GaussianState st(1, 3.0 * identity2(), Vector::Zero(2));
    const GaussianState out = apply_loss(st, 0.5);
    CHECK(max_abs_diff(out.gamma, 2.0 * identity2()) < 1e-15);
  }

  SUBCASE("transmissivity outside [0, 1] is rejected") {
    CHECK_THROWS_AS(apply_loss(vacuum_state(1), -0.1), std::invalid_argument);
    CHECK_THROWS_AS(apply_loss(vacuum_state(1), 1.1), std::invalid_argument);
  }

  SUBCASE("output stays physical and photons attenuate linearly") {
    SeededRng rng(5);
    for (int i = 0; i < 40; ++i) {
      SingleModeProbeParams p = sample_mixed_params(2.0, rng);
      p.xi_mag = 0.0;  // linear attenuation of the photon number needs xi = 0
      const GaussianState st = from_single_mode_params(p);
      const double eta = rng.uniform();
      const GaussianState out = apply_loss(st, eta);
      CHECK(symplectic_eigenvalues(out)[0] >= 1.0 - 1e-9);
      CHECK(mean_photon_number(out) ==
            doctest::Approx(eta * mean_photon_number(st)).epsilon(1e-10));
    }
  }
}

TEST_CASE("symplectic eigenvalues") {
  const GaussianState thermal(1, 2.5 * identity2(), Vector::Zero(2));
  CHECK(symplectic_eigenvalues(thermal)[0] == doctest::Approx(2.5).epsilon(1e-12));

  const GaussianState squeezed =
      apply_unitary(vacuum_state(1), squeeze_symplectic(0.7));
  CHECK(symplectic_eigenvalues(squeezed)[0] == doctest::Approx(1.0).epsilon(1e-12));

  const std::vector<double> nus = symplectic_eigenvalues(tmsv(0.7));
  REQUIRE(nus.size() == 2);
  CHECK(nus[0] == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(nus[1] == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("mean photon number") {
  CHECK(mean_photon_number(vacuum_state(1)) == doctest::Approx(0.0));

  Vector xi(2);
  xi << std::sqrt(2.0), 0.0;
  const GaussianState coherent(1, identity2(), xi);
  CHECK(mean_photon_number(coherent) == doctest::Approx(1.0).epsilon(1e-14));

  const double r = 0.9;
  const GaussianState two = tmsv(r);
  CHECK(mean_photon_number(two, 0) ==
        doctest::Approx(std::sinh(r) * std::sinh(r)).epsilon(1e-12));
  CHECK(mean_photon_number(two, -1) ==
        doctest::Approx(2.0 * std::sinh(r) * std::sinh(r)).epsilon(1e-12));

  SUBCASE("agrees with the parametric formula on random probes") {
    SeededRng rng(6);
    for (int i = 0; i < 100; ++i) {
      const SingleModeProbeParams p = sample_mixed_params(1.5, rng);
      const GaussianState st = from_single_mode_params(p);
      const double expected =
          (p.nu * std::cosh(2.0 * p.alpha) + p.xi_mag * p.xi_mag - 1.0) / 2.0;
      CHECK(mean_photon_number(st) == doctest::Approx(expected).epsilon(1e-12));
    }
  }
}

TEST_CASE("partial trace") {
  const double r = 0.8;
  const GaussianState reduced = partial_trace(tmsv(r), 0);
  CHECK(max_abs_diff(reduced.gamma, std::cosh(2.0 * r) * identity2()) < 1e-12);
  CHECK(reduced.xi.norm() == 0.0);

  SUBCASE("product states reduce to their factors") {
    SeededRng rng(7);
    const GaussianState a = sample_mixed_single_mode(1.0, rng);
    const GaussianState b = sample_mixed_single_mode(2.0, rng);
    Matrix gamma = Matrix::Zero(4, 4);
    gamma.topLeftCorner(2, 2) = a.gamma;
    gamma.bottomRightCorner(2, 2) = b.gamma;
    Vector xi(4);
    xi << a.xi, b.xi;
    const GaussianState prod(2, gamma, xi);
    CHECK(max_abs_diff(partial_trace(prod, 0).gamma, a.gamma) == 0.0);
    CHECK(max_abs_diff(partial_trace(prod, 1).gamma, b.gamma) == 0.0);
    CHECK((partial_trace(prod, 1).xi - b.xi).norm() == 0.0);
  }

  SUBCASE("reductions of sampled states are physical") {
    SeededRng rng(8);
    for (int i = 0; i < 50; ++i) {
      const GaussianState st = sample_two_mode_pure(1.0 + 2.0 * rng.uniform(), rng);
      CHECK(symplectic_eigenvalues(partial_trace(st, 0))[0] >= 1.0 - 1e-9);
      CHECK(symplectic_eigenvalues(partial_trace(st, 1))[0] >= 1.0 - 1e-9);
    }
  }

  CHECK_THROWS_AS(partial_trace(vacuum_state(1), 0), std::invalid_argument);
}

TEST_CASE("standard form reduction") {
  SUBCASE("a state already in standard form is a fixed point") {
    StandardFormParams p;
    p.a_x = 2.0;
    p.a_p = 2.2;
    p.a_xp = 0.2;
    p.b = 1.5;
    p.c = 0.6;
    p.d = -0.3;
    p.xi_x = 0.3;
    p.xi_p = -0.1;
    const GaussianState st = from_standard_form(p);
    const StandardFormResult res = standard_form(st);
    CHECK(res.params.a_x == doctest::Approx(p.a_x).epsilon(1e-9));
    CHECK(res.params.a_p == doctest::Approx(p.a_p).epsilon(1e-9));
    CHECK(res.params.a_xp == doctest::Approx(p.a_xp).epsilon(1e-9));
    CHECK(res.params.b == doctest::Approx(p.b).epsilon(1e-9));
    CHECK(res.params.c == doctest::Approx(p.c).epsilon(1e-9));
    CHECK(res.params.d == doctest::Approx(p.d).epsilon(1e-9));
    CHECK(max_abs_diff(res.local_a, identity2()) < 1e-9);
    CHECK(max_abs_diff(res.local_b, identity2()) < 1e-9);
    CHECK(res.b_shift.norm() < 1e-12);
  }

  SUBCASE("two-mode squeezed vacuum parameters") {
    const double r = 0.65;
    const StandardFormResult res = standard_form(tmsv(r));
    const double ch = std::cosh(2.0 * r), sh = std::sinh(2.0 * r);
    CHECK(res.params.a_x == doctest::Approx(ch).epsilon(1e-9));
    CHECK(res.params.a_p == doctest::Approx(ch).epsilon(1e-9));
    CHECK(res.params.b == doctest::Approx(ch).epsilon(1e-9));
    CHECK(res.params.a_xp == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(res.params.c == doctest::Approx(sh).epsilon(1e-9));
    CHECK(res.params.d == doctest::Approx(-sh).epsilon(1e-9));
    CHECK(std::fabs(res.params.xi_x) < 1e-12);
    CHECK(std::fabs(res.params.xi_p) < 1e-12);
  }

  SUBCASE("reduction preserves spectrum, mode-A photons and the averaged QFI") {
    SeededRng rng(9);
    for (int i = 0; i < 6; ++i) {
      const GaussianState st = sample_two_mode_pure(1.0 + 2.0 * rng.uniform(), rng);
      const GaussianState back = from_standard_form(standard_form(st).params);
      const std::vector<double> n0 = symplectic_eigenvalues(st);
      const std::vector<double> n1 = symplectic_eigenvalues(back);
      CHECK(n1[0] == doctest::Approx(n0[0]).epsilon(1e-9));
      CHECK(n1[1] == doctest::Approx(n0[1]).epsilon(1e-9));
      CHECK(mean_photon_number(back, 0) ==
            doctest::Approx(mean_photon_number(st, 0)).epsilon(1e-9));
      const double before =
          avqfi_numeric(st, 0.5, 1.0, ThetaPrior::uniform(), 128).mean;
      const double after =
          avqfi_numeric(back, 0.5, 1.0, ThetaPrior::uniform(), 128).mean;
      CHECK(after == doctest::Approx(before).epsilon(1e-8));
    }
  }
}

TEST_CASE("single-mode parametrization") {
  const GaussianState vac = from_single_mode_params({1.0, 0.0, 0.0, 0.0, 0.0});
  CHECK(max_abs_diff(vac.gamma, identity2()) < 1e-15);
  CHECK(vac.xi.norm() == 0.0);

  const GaussianState sq = from_single_mode_params({1.0, 0.5, 0.0, 0.0, 0.0});
  CHECK(sq.gamma(0, 0) == doctest::Approx(std::exp(1.0)).epsilon(1e-14));
  CHECK(sq.gamma(1, 1) == doctest::Approx(std::exp(-1.0)).epsilon(1e-14));

  CHECK_THROWS_AS(from_single_mode_params({0.9, 0.0, 0.0, 0.0, 0.0}),
                  std::invalid_argument);
  CHECK_THROWS_AS(from_single_mode_params({1.0, -0.1, 0.0, 0.0, 0.0}),
                  std::invalid_argument);
}

TEST_CASE("two-mode squeezed vacuum constructor") {
  const GaussianState vac2 = tmsv(0.0);
  CHECK(max_abs_diff(vac2.gamma, Matrix::Identity(4, 4)) < 1e-15);
  CHECK(vac2.xi.norm() == 0.0);

  const double r = std::asinh(1.0);
  const GaussianState st = tmsv(r);
  CHECK(st.gamma(0, 0) == doctest::Approx(3.0).epsilon(1e-12));      // cosh 2r
  CHECK(st.gamma(0, 2) ==
        doctest::Approx(std::sqrt(8.0)).epsilon(1e-12));             // sinh 2r
  CHECK(st.gamma(1, 3) == doctest::Approx(-std::sqrt(8.0)).epsilon(1e-12));
  CHECK(st.gamma(0, 1) == doctest::Approx(0.0));
}

TEST_CASE("state construction enforces physicality") {
  CHECK_THROWS_AS(GaussianState(1, 0.5 * identity2(), Vector::Zero(2)),
                  std::invalid_argument);

  Matrix asym = identity2();
  asym(0, 1) = 0.1;  // asymmetric beyond tolerance
  CHECK_THROWS_AS(GaussianState(1, asym, Vector::Zero(2)),
                  std::invalid_argument);

  Matrix nan_gamma = identity2();
  nan_gamma(0, 0) = std::nan("");
  CHECK_THROWS_AS(GaussianState(1, nan_gamma, Vector::Zero(2)),
                  std::invalid_argument);

  Matrix tiny = 2.0 * identity2();
  tiny(0, 1) = 1e-13;  // within symmetrization tolerance
  const GaussianState st(1, tiny, Vector::Zero(2));
  CHECK(st.gamma(0, 1) == st.gamma(1, 0));
}

TEST_CASE("state JSON round trip") {
  SeededRng rng(10);
  const GaussianState st = sample_two_mode_pure(2.0, rng);
  const GaussianState back = state_from_json(to_json(st));
  CHECK(back.mode_count == 2);
  CHECK(max_abs_diff(back.gamma, st.gamma) < 1e-12);
  CHECK((back.xi - st.xi).norm() < 1e-12);

  CHECK_THROWS(state_from_json("not json"));
  CHECK_THROWS_AS(state_from_json("{\"modes\":1,\"gamma\":[[1,0]],\"xi\":[0,0]}"),
                  std::invalid_argument);
  CHECK_THROWS_AS(state_from_json("{\"modes\":3,\"gamma\":[],\"xi\":[]}"),
                  std::invalid_argument);
  CHECK_THROWS_AS(state_from_json("{\"gamma\":[[1,0],[0,1]],\"xi\":[0,0]}"),
                  std::invalid_argument);
}
