#pragma once

#include <Eigen/Dense>

#include <stdexcept>
#include <string>
#include <vector>

namespace gqm {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Thrown when an encoded state falls in the near-pure symplectic-eigenvalue
/// window where the information functional changes rank and the generic
/// formula is unreliable. The CLI maps this to exit code 3.
class rank_change_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Symplectic form: direct sum of [[0,1],[-1,0]] blocks, one per mode.
Matrix symplectic_form(int mode_count);

/// Real symplectic matrix. Construction verifies s * Omega * s^T = Omega
/// entrywise to 1e-10.
struct SymplecticMatrix {
  Matrix s;
  explicit SymplecticMatrix(Matrix m);
};

/// Gaussian state of 1 or 2 bosonic modes in quadrature representation:
/// covariance matrix gamma (vacuum = identity) and displacement vector xi.
///
/// Construction symmetrizes gamma, requires all entries finite, and enforces
/// physicality (every symplectic eigenvalue >= 1 - 1e-9).
struct GaussianState {
  int mode_count;
  Matrix gamma;
  Vector xi;

  GaussianState(int mode_count, Matrix gamma, Vector xi);

  /// Construction path for operations that provably preserve physicality
  /// (unitary conjugation, loss on a physical input); skips the eigenvalue
  /// check but still symmetrizes and requires finiteness.
  static GaussianState unchecked(int mode_count, Matrix gamma, Vector xi);

 private:
  struct unchecked_tag {};
  GaussianState(unchecked_tag, int mode_count, Matrix gamma, Vector xi);
};

/// Canonical single-mode parametrization: Gamma = nu * R_phi S_{2 alpha} R_phi^T,
/// xi = xi_mag * (cos psi, sin psi).
struct SingleModeProbeParams {
  double nu = 1.0;      // symplectic eigenvalue, >= 1
  double alpha = 0.0;   // squeezing magnitude, >= 0
  double phi = 0.0;     // squeezing direction
  double xi_mag = 0.0;  // displacement magnitude, >= 0
  double psi = 0.0;     // displacement direction
};

/// Two-mode standard form: Gamma = [[A, C], [C^T, b*I]] with
/// A = [[a_x, a_xp], [a_xp, a_p]], C = diag(c, d), displacement (xi_x, xi_p, 0, 0).
struct StandardFormParams {
  double a_x = 1.0, a_p = 1.0, a_xp = 0.0;
  double b = 1.0, c = 0.0, d = 0.0;
  double xi_x = 0.0, xi_p = 0.0;
};

/// Parameters of the squeezing channel acting on mode A: transmissivity-eta
/// loss, rotation by theta, squeeze by epsilon, loss again.
struct EncodingParams {
  double epsilon = 0.0;  // squeezing strength being estimated
  double theta = 0.0;    // squeezing direction
  double eta = 1.0;      // transmissivity in [0, 1]; 1 = noiseless
};

/// R_theta = [[cos, sin], [-sin, cos]].
SymplecticMatrix rotation_symplectic(double theta);

/// S_alpha = diag(e^alpha, e^-alpha).
SymplecticMatrix squeeze_symplectic(double alpha);

/// Two-mode squeezer with parameter r (generates the two-mode squeezed
/// vacuum when applied to the two-mode vacuum).
SymplecticMatrix two_mode_squeeze_symplectic(double r);

/// Gamma -> s Gamma s^T, xi -> s xi. A 2x2 matrix is embedded on the selected
/// mode (0-based); mode = -1 applies a full-size matrix to all modes.
GaussianState apply_unitary(const GaussianState& state, const SymplecticMatrix& s,
                            int mode = -1);

/// Pure-loss channel of transmissivity eta on one mode:
/// Gamma -> K Gamma K^T + (1-eta) * I_mode, xi -> K xi, K = sqrt(eta) on the mode.
GaussianState apply_loss(const GaussianState& state, double eta, int mode = 0);

/// Williamson spectrum, descending, one value per mode. Computed from the
/// eigenvalues of Omega*Gamma (purely imaginary pairs +-i nu).
std::vector<double> symplectic_eigenvalues(const GaussianState& state);

/// Mean photon number of one mode: (tr Gamma_mode / 2 + |xi_mode|^2 - 1) / 2.
/// mode = -1 sums over all modes.
double mean_photon_number(const GaussianState& state, int mode = 0);

/// Reduction of a two-mode state to the kept mode (diagonal block + subvector).
GaussianState partial_trace(const GaussianState& state, int keep);

/// Local operations bringing a two-mode state to standard form, and where
/// they take it: Gamma_std = L Gamma L^T with L = local_a (+) local_b,
/// xi_std = L xi + (0, 0, b_shift). local_a is a rotation (phase rotation on
/// mode A, which leaves the direction-averaged information invariant);
/// local_b is a general single-mode symplectic plus the displacement b_shift
/// that zeroes the mode-B mean.
struct StandardFormResult {
  StandardFormParams params;
  Matrix local_a;    // 2x2 rotation applied to mode A
  Matrix local_b;    // 2x2 symplectic applied to mode B
  Vector b_shift;    // 2-vector added on mode B after the linear part
};

/// Reduce a two-mode state to standard form (Williamson on mode B, then an
/// SVD of the cross block with the residual sign freedom fixed by c >= 0 and
/// descending |c| >= |d|).
StandardFormResult standard_form(const GaussianState& state);

/// Assemble the standard-form state.
GaussianState from_standard_form(const StandardFormParams& p);

GaussianState from_single_mode_params(const SingleModeProbeParams& p);

/// Two-mode squeezed vacuum with parameter r.
GaussianState tmsv(double r);

GaussianState vacuum_state(int mode_count);

/// JSON round trip, schema {"modes": m, "gamma": [[...], ...], "xi": [...]}
/// with gamma row-major.
std::string to_json(const GaussianState& state);
GaussianState state_from_json(const std::string& text);

}  // namespace gqm
