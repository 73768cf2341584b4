#pragma once

#include "gqm/gaussian.hpp"

#include <optional>

namespace gqm {

enum class DerivativeMode { analytic, finite_difference };

/// Everything the information formula needs about the encoded state:
/// the encoded first and second moments, their derivatives with respect to
/// the estimated squeezing strength, and the Williamson spectrum with its
/// derivative. m_enc stores Omega * gamma_enc, the real representation in
/// which determinants and squares of the formula are evaluated.
struct EncodedDerivatives {
  Matrix gamma_enc;
  Vector xi_enc;
  Matrix dgamma;
  Vector dxi;
  std::vector<double> nus;
  std::vector<double> dnus;
  Matrix m_enc;
};

/// QFI split into its three contributions: the whole-covariance term, the
/// symplectic-eigenvalue term, and the displacement term. value is their sum,
/// clamped to 0 if a rounding-level negative appears. regularized marks
/// values obtained by the pure-state limit procedure (see qfi_two_mode).
struct QfiResult {
  double value = 0.0;
  double term_covariance = 0.0;
  double term_eigenvalues = 0.0;
  double term_displacement = 0.0;
  bool regularized = false;
};

/// Encoding channel on mode A: loss(eta), rotation(theta), squeeze(epsilon),
/// loss(eta). eta = 1 reproduces the unitary encoding exactly.
GaussianState encode(const GaussianState& probe, const EncodingParams& p);

/// Derivatives of the encoded state with respect to epsilon at fixed
/// (theta, eta). The analytic path requires eta = 1, where
/// dGamma = J Gamma + Gamma J^T with J = diag(1,-1) on the encoded mode and
/// the spectrum is constant. The finite-difference path uses central
/// differences with step h = 1e-4 * max(1, |epsilon|) and one Richardson
/// extrapolation level.
EncodedDerivatives encoded_derivatives(const GaussianState& probe,
                                       const EncodingParams& p,
                                       DerivativeMode mode);

/// QFI of a two-mode probe under the encoding channel.
///
/// Pure encoded states (all Williamson eigenvalues <= 1 + 1e-9) are handled
/// by evaluating at probes (1+delta)*Gamma for delta in {1e-4, 5e-5} and
/// extrapolating delta -> 0; such results carry regularized = true.
/// Encoded eigenvalues inside (1 + 1e-9, 1 + 1e-6) with eta < 1 raise
/// rank_change_error. The optional force parameter overrides the derivative
/// pipeline (default: analytic at eta = 1, finite differences otherwise).
QfiResult qfi_two_mode(const GaussianState& probe, const EncodingParams& p,
                       std::optional<DerivativeMode> force = std::nullopt);

/// QFI of a single-mode probe under the encoding channel. At eta = 1 the
/// determinant-derivative term vanishes identically and is dropped.
QfiResult qfi_single_mode(const GaussianState& probe, const EncodingParams& p,
                          std::optional<DerivativeMode> force = std::nullopt);

/// Dispatch on probe.mode_count.
QfiResult qfi_auto(const GaussianState& probe, const EncodingParams& p);

/// Residual |LHS - RHS| of the determinant identity that makes the
/// single-mode QFI independent of any passive-partner eigenvalue:
/// (dP/de)^2 / P = P * tr[(G^-1 dG)^2] - (1+P)^2 * tr[((1-(Om G)^2)^-1 Om dG)^2]
/// evaluated on the encoded state, P = det(Gamma_enc).
double verify_single_mode_identity(const GaussianState& probe,
                                   const EncodingParams& p);

}  // namespace gqm
