#pragma once

#include "gqm/gaussian.hpp"

#include <string>
#include <vector>

namespace gqm {

/// Direction-averaged QFI plus the spread of the per-direction values.
/// min_theta / max_theta are the extreme QFI values seen on the theta grid.
/// quadrature_nodes is 0 when a closed form produced the number.
struct AvqfiResult {
  double mean = 0.0;
  double variance = 0.0;
  double min_theta = 0.0;
  double max_theta = 0.0;
  int quadrature_nodes = 0;
  std::string method;  // "closed_form" or "quadrature"
  bool regularized = false;
};

/// Averaging weight over the encoding direction: uniform on [0, 2pi), or a
/// tabulated density given on a uniform grid over [0, 2pi) (node i at
/// theta = 2 pi i / n). Tabulated densities must be nonnegative and
/// normalized, (2pi/n) * sum p_i = 1 within 1e-9.
struct ThetaPrior {
  bool is_uniform = true;
  std::vector<double> density;

  static ThetaPrior uniform();
  static ThetaPrior tabulated(std::vector<double> density);
};

/// Average the engine QFI over the encoding direction with the trapezoidal
/// rule on the periodic grid (spectrally accurate for these integrands).
/// nodes must be even and >= 16; a tabulated prior overrides nodes with its
/// own table length.
AvqfiResult avqfi_numeric(const GaussianState& probe, double epsilon, double eta,
                          const ThetaPrior& prior, int nodes = 256);

/// Noiseless single-mode QFI at a fixed encoding direction (phi = 0 frame):
///   H(theta) = (2 |xi|^2 / nu) (cosh 2a - cos(4 theta - 2 psi) sinh 2a)
///            + (4 nu^2 / (nu^2+1)) (cosh^4 a + sinh^4 a - cos(4 theta) sinh^2 2a / 2)
double qfi_sm_noiseless_theta(const SingleModeProbeParams& p, double theta);

/// Noiseless single-mode average over theta; depends on the probe only
/// through tr Gamma, det Gamma and |xi|:
///   (tr^2 + 4 det) / (2 (1 + det)) + |xi|^2 tr / det.
double avqfi_sm_noiseless(const Matrix& gamma_a, double xi_mag);

/// Variance of the noiseless single-mode QFI over theta (phi = 0 frame):
/// (V1^2 + V2^2 + 2 V1 V2 cos 2 psi) / 2 with
/// V1 = 2 nu^2 sinh^2 2a / (nu^2 + 1), V2 = 2 |xi|^2 sinh 2a / nu.
double qfi_variance_noiseless(const SingleModeProbeParams& p);

/// Noiseless two-mode average over theta, closed form in the standard-form
/// parameters. Probes at det Gamma = 1 (pure) hit a removable singularity and
/// are evaluated by the same (1+delta) scaling limit the engine uses.
double avqfi_two_mode_noiseless(const StandardFormParams& p);

/// Two-mode squeezed vacuum average: 4 sinh^4 r + 4 sinh^2 r + 2.
double avqfi_tmsv_noiseless(double r);

/// Lossy single-mode QFI at fixed direction, closed form (phi = 0 frame).
/// Valid for epsilon > 0; epsilon <= 0 throws.
double qfi_sm_noisy_closed(const SingleModeProbeParams& p, double epsilon,
                           double eta, double theta);

/// Average of qfi_sm_noisy_closed over theta on an even >= 16 node grid.
double avqfi_sm_noisy(const SingleModeProbeParams& p, double epsilon, double eta,
                      int nodes = 256);

/// Noiseless extremes over single-mode probes at mean photon number n:
/// max (pure squeezed) = 4n^2 + 4n + 2, min (thermal) =
/// 4(2n+1)^2 / (1 + (2n+1)^2), coherent = 2(1 + 2n).
struct NoiselessBounds {
  double max = 0.0;
  double min = 0.0;
  double coherent = 0.0;
};
NoiselessBounds avqfi_bounds_noiseless(double n_a);

}  // namespace gqm
