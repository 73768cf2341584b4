#include "gqm/sampler.hpp"

#include <cmath>
#include <numbers>

namespace gqm {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;
constexpr int kRejectionCap = 1000000;

void check_photon_number(double n_a) {
  if (!(n_a >= 0.0))
    throw std::invalid_argument("photon number must be >= 0");
}

}  // namespace

SingleModeProbeParams sample_pure_params(double n_a, SeededRng& rng) {
  check_photon_number(n_a);
  // cosh(alpha) uniform on [1, sqrt(n_a+1)] keeps cosh(2 alpha) <= 2 n_a + 1,
  // the energy constraint then dictates the displacement magnitude
  const double u = rng.uniform(1.0, std::sqrt(n_a + 1.0));
  const double alpha = std::acosh(std::max(1.0, u));
  const double phi = rng.uniform(0.0, two_pi);
  const double xi_sq = std::max(0.0, 2.0 * (n_a + 1.0 - u * u));
  const double psi = rng.uniform(0.0, two_pi);
  return {1.0, alpha, phi, std::sqrt(xi_sq), psi};
}

SingleModeProbeParams sample_mixed_params(double n_a, SeededRng& rng) {
  check_photon_number(n_a);
  const double w = 2.0 * n_a + 1.0;
  const double box_t = w * w * w;          // nu^3 bounding box
  const double box_u = std::sqrt(n_a + 1.0);  // cosh(alpha) bounding box
  for (int attempt = 0; attempt < kRejectionCap; ++attempt) {
    const double t = rng.uniform(1.0, box_t);
    const double u = rng.uniform(1.0, box_u);
    const double nu = std::cbrt(t);
    const double cosh2a = 2.0 * u * u - 1.0;
    if (nu * cosh2a > w) continue;
    const double alpha = std::acosh(std::max(1.0, u));
    const double phi = rng.uniform(0.0, two_pi);
    const double xi_sq = std::max(0.0, w - nu * cosh2a);
    const double psi = rng.uniform(0.0, two_pi);
    return {nu, alpha, phi, std::sqrt(xi_sq), psi};
  }
  throw std::runtime_error("rejection sampling cap exceeded");
}

GaussianState sample_pure_single_mode(double n_a, SeededRng& rng) {
  return from_single_mode_params(sample_pure_params(n_a, rng));
}

GaussianState sample_mixed_single_mode(double n_a, SeededRng& rng) {
  return from_single_mode_params(sample_mixed_params(n_a, rng));
}

GaussianState sample_two_mode_pure(double nu, SeededRng& rng,
                                   const TwoModeSampleCaps& caps) {
  if (nu < 1.0)
    throw std::invalid_argument("reduction eigenvalue must be >= 1");
  if (caps.max_cosh_alpha < 1.0 || caps.max_xi_sq < 0.0)
    throw std::invalid_argument("invalid local energy caps");

  const double r = 0.5 * std::acosh(nu);
  GaussianState state = tmsv(r);
  for (int mode = 0; mode < 2; ++mode) {
    const double alpha = std::acosh(rng.uniform(1.0, caps.max_cosh_alpha));
    const double t_left = rng.uniform(0.0, two_pi);
    const double t_right = rng.uniform(0.0, two_pi);
    const Matrix local = rotation_symplectic(t_left).s *
                         squeeze_symplectic(alpha).s *
                         rotation_symplectic(t_right).s;
    state = apply_unitary(state, SymplecticMatrix(local), mode);
    const double xi_mag = std::sqrt(rng.uniform(0.0, caps.max_xi_sq));
    const double psi = rng.uniform(0.0, two_pi);
    state.xi(2 * mode) += xi_mag * std::cos(psi);
    state.xi(2 * mode + 1) += xi_mag * std::sin(psi);
  }
  return state;
}

}  // namespace gqm
