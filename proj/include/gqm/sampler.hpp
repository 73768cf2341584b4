#pragma once

#include "gqm/gaussian.hpp"

#include <cstdint>
#include <random>

namespace gqm {

/// Deterministic uniform generator. Wraps mt19937_64 with an explicit
/// 53-bit mantissa mapping so that identical seeds give identical streams on
/// every platform (std::uniform_real_distribution is implementation-defined
/// and would break that guarantee).
class SeededRng {
 public:
  explicit SeededRng(std::uint64_t seed) : gen_(seed) {}

  /// Uniform on [0, 1).
  double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

 private:
  std::mt19937_64 gen_;
};

/// Pure single-mode probe drawn from the invariant measure at exact mean
/// photon number n_a: cosh(alpha) uniform on [1, sqrt(n_a + 1)], phi and psi
/// uniform on [0, 2pi), |xi|^2 = 2 n_a + 1 - cosh(2 alpha), nu = 1.
SingleModeProbeParams sample_pure_params(double n_a, SeededRng& rng);

/// Mixed single-mode probe at exact mean photon number n_a: (nu^3, cosh alpha)
/// uniform on the admissible region {nu >= 1, alpha >= 0,
/// nu cosh 2 alpha <= 2 n_a + 1} by rejection from its bounding box; the
/// energy constraint then fixes |xi|^2 = 2 n_a + 1 - nu cosh 2 alpha
/// (the displacement is the dependent coordinate). phi, psi uniform.
/// Throws after 10^6 rejected proposals.
SingleModeProbeParams sample_mixed_params(double n_a, SeededRng& rng);

GaussianState sample_pure_single_mode(double n_a, SeededRng& rng);
GaussianState sample_mixed_single_mode(double n_a, SeededRng& rng);

/// Energy caps for the local dressing unitaries of the two-mode sampler;
/// the underlying measure is unnormalizable without them.
struct TwoModeSampleCaps {
  double max_cosh_alpha = 2.0;  // local squeezing: cosh alpha <= this
  double max_xi_sq = 2.0;       // local displacement: |xi|^2 <= this
};

/// Random pure two-mode probe: a two-mode squeezed vacuum with reduction
/// eigenvalue nu, dressed by independent random local Gaussian unitaries
/// (rotation - squeeze - rotation plus a displacement) on each mode.
GaussianState sample_two_mode_pure(double nu, SeededRng& rng,
                                   const TwoModeSampleCaps& caps = {});

}  // namespace gqm
