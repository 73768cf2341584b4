#include "gqm/qfi.hpp"

#include <algorithm>
#include <cmath>

namespace gqm {

namespace {

constexpr double kPureTol = 1e-9;     // Williamson eigenvalue within this of 1: pure
constexpr double kRankWindow = 1e-6;  // (1+kPureTol, 1+kRankWindow): rank-change regime
constexpr double kDegenerateTol = 1e-6;
constexpr double kRegDeltas[2] = {1e-4, 5e-5};

Vector to_vector(const std::vector<double>& v) {
  return Eigen::Map<const Vector>(v.data(), static_cast<long>(v.size()));
}

double fd_step(double epsilon) { return 1e-4 * std::max(1.0, std::abs(epsilon)); }

/// Evaluate the formula on the encoded derivatives, with the per-mode rule
/// that eigenvalues pinned at 1 contribute nothing to the eigenvalue term
/// (their 0/0 limit) and exactly degenerate pairs contribute its limit, 0.
QfiResult evaluate_direct(const GaussianState& probe, const EncodingParams& p,
                          DerivativeMode dmode) {
  const int m = probe.mode_count;
  const int dim = 2 * m;
  const EncodedDerivatives d = encoded_derivatives(probe, p, dmode);

  Eigen::PartialPivLU<Matrix> gamma_lu(d.gamma_enc);
  const Matrix om = symplectic_form(m);
  const Matrix resolvent =
      (Matrix::Identity(dim, dim) - d.m_enc * d.m_enc).partialPivLu().solve(om * d.dgamma);
  const double tr2 = (resolvent * resolvent).trace();
  const double disp = 2.0 * d.dxi.dot(gamma_lu.solve(d.dxi));

  QfiResult r;
  r.term_displacement = disp;
  if (m == 1) {
    const double det = d.nus[0] * d.nus[0];
    r.term_covariance = (det + 1.0) / 2.0 * tr2;
    if (p.eta < 1.0 && d.nus[0] > 1.0 + kPureTol) {
      const double ddet = 2.0 * d.nus[0] * d.dnus[0];
      r.term_eigenvalues = ddet * ddet / (2.0 * (det * det - 1.0));
    }
  } else {
    const Matrix gi_dg = gamma_lu.solve(d.dgamma);
    const double tr1 = (gi_dg * gi_dg).trace();
    const double n1 = d.nus[0], n2 = d.nus[1];
    const double det = n1 * n1 * n2 * n2;
    const double root = (1.0 + n1 * n1) * (1.0 + n2 * n2);
    r.term_covariance = (det * tr1 - root * tr2) / (2.0 * (det - 1.0));
    if (std::abs(n1 - n2) > kDegenerateTol) {
      double bracket = 0.0;
      if (n2 > 1.0 + kPureTol)
        bracket += d.dnus[1] * d.dnus[1] / (n2 * n2 * n2 * n2 - 1.0);
      if (n1 > 1.0 + kPureTol)
        bracket -= d.dnus[0] * d.dnus[0] / (n1 * n1 * n1 * n1 - 1.0);
      r.term_eigenvalues = 2.0 * (n1 * n1 - n2 * n2) / (det - 1.0) * bracket;
    }
  }
  r.value = r.term_covariance + r.term_eigenvalues + r.term_displacement;
  return r;
}

QfiResult finalize(QfiResult r) {
  if (r.value < -1e-9)
    throw std::runtime_error("QFI evaluated negative beyond tolerance: " +
                             std::to_string(r.value));
  r.value = std::max(0.0, r.value);
  return r;
}

GaussianState scaled_probe(const GaussianState& probe, double delta) {
  return GaussianState::unchecked(probe.mode_count, (1.0 + delta) * probe.gamma,
                                  probe.xi);
}

QfiResult qfi_checked(const GaussianState& probe, const EncodingParams& p,
                      std::optional<DerivativeMode> force) {
  const DerivativeMode dmode = force.value_or(
      p.eta == 1.0 ? DerivativeMode::analytic : DerivativeMode::finite_difference);
  const std::vector<double> nus = symplectic_eigenvalues(encode(probe, p));

  const bool all_pure = std::all_of(nus.begin(), nus.end(),
                                    [](double n) { return n <= 1.0 + kPureTol; });
  if (all_pure && probe.mode_count == 2) {
    // pure encoded state: the formula divides by det - 1 = 0. Evaluate on
    // (1+delta)-scaled probes and extrapolate the limit delta -> 0.
    const QfiResult f1 = evaluate_direct(scaled_probe(probe, kRegDeltas[0]), p, dmode);
    const QfiResult f2 = evaluate_direct(scaled_probe(probe, kRegDeltas[1]), p, dmode);
    QfiResult r;
    r.term_covariance = 2.0 * f2.term_covariance - f1.term_covariance;
    r.term_eigenvalues = 2.0 * f2.term_eigenvalues - f1.term_eigenvalues;
    r.term_displacement = 2.0 * f2.term_displacement - f1.term_displacement;
    r.value = r.term_covariance + r.term_eigenvalues + r.term_displacement;
    r.regularized = true;
    return finalize(r);
  }
  if (p.eta < 1.0) {
    for (double n : nus)
      if (n > 1.0 + kPureTol && n < 1.0 + kRankWindow)
        throw rank_change_error(
            "encoded state is in the rank-change regime (symplectic eigenvalue " +
            std::to_string(n) + " within (1+1e-9, 1+1e-6)); the information "
            "functional is unreliable here");
  }
  return finalize(evaluate_direct(probe, p, dmode));
}

}  // namespace

GaussianState encode(const GaussianState& probe, const EncodingParams& p) {
  GaussianState s = apply_loss(probe, p.eta, 0);
  s = apply_unitary(s, rotation_symplectic(p.theta), 0);
  s = apply_unitary(s, squeeze_symplectic(p.epsilon), 0);
  return apply_loss(s, p.eta, 0);
}

EncodedDerivatives encoded_derivatives(const GaussianState& probe,
                                       const EncodingParams& p,
                                       DerivativeMode mode) {
  const int m = probe.mode_count;
  EncodedDerivatives out;
  const GaussianState enc = encode(probe, p);
  out.gamma_enc = enc.gamma;
  out.xi_enc = enc.xi;
  out.m_enc = symplectic_form(m) * enc.gamma;
  out.nus = symplectic_eigenvalues(enc);

  if (mode == DerivativeMode::analytic) {
    if (p.eta != 1.0)
      throw std::invalid_argument("analytic derivatives are only available at eta = 1");
    // d/de of S_e ... S_e^T at the encoded state: generator J = diag(1,-1) on mode A
    Matrix j = Matrix::Zero(2 * m, 2 * m);
    j(0, 0) = 1.0;
    j(1, 1) = -1.0;
    out.dgamma = j * enc.gamma + enc.gamma * j.transpose();
    out.dxi = j * enc.xi;
    out.dnus.assign(m, 0.0);
    return out;
  }

  const double h = fd_step(p.epsilon);
  if (p.epsilon + h == p.epsilon || p.epsilon - h == p.epsilon)
    throw std::runtime_error("finite-difference step underflow");

  struct Sample {
    Matrix gamma;
    Vector xi;
    Vector nus;
  };
  auto at = [&](double e) -> Sample {
    const GaussianState s = encode(probe, {e, p.theta, p.eta});
    return {s.gamma, s.xi, to_vector(symplectic_eigenvalues(s))};
  };
  const Sample cp = at(p.epsilon + h), cm = at(p.epsilon - h);
  const Sample fp = at(p.epsilon + h / 2.0), fm = at(p.epsilon - h / 2.0);
  auto combine = [&](const auto& coarse_p, const auto& coarse_m, const auto& fine_p,
                     const auto& fine_m) {
    return (((fine_p - fine_m) * (4.0 / h) - (coarse_p - coarse_m) * (1.0 / (2.0 * h))) *
            (1.0 / 3.0))
        .eval();
  };
  out.dgamma = combine(cp.gamma, cm.gamma, fp.gamma, fm.gamma);
  out.dxi = combine(cp.xi, cm.xi, fp.xi, fm.xi);
  const Vector dn = combine(cp.nus, cm.nus, fp.nus, fm.nus);
  out.dnus.assign(dn.data(), dn.data() + m);
  return out;
}

QfiResult qfi_two_mode(const GaussianState& probe, const EncodingParams& p,
                       std::optional<DerivativeMode> force) {
  if (probe.mode_count != 2)
    throw std::invalid_argument("qfi_two_mode needs a two-mode probe");
  return qfi_checked(probe, p, force);
}

QfiResult qfi_single_mode(const GaussianState& probe, const EncodingParams& p,
                          std::optional<DerivativeMode> force) {
  if (probe.mode_count != 1)
    throw std::invalid_argument("qfi_single_mode needs a single-mode probe");
  // single-mode pure encoded states are regular: the covariance term carries
  // no det - 1 divisor and the determinant term vanishes in the pure limit,
  // so no scaling limit is needed here
  return qfi_checked(probe, p, force);
}

QfiResult qfi_auto(const GaussianState& probe, const EncodingParams& p) {
  return probe.mode_count == 1 ? qfi_single_mode(probe, p) : qfi_two_mode(probe, p);
}

double verify_single_mode_identity(const GaussianState& probe,
                                   const EncodingParams& p) {
  if (probe.mode_count != 1)
    throw std::invalid_argument("the determinant identity is single-mode");
  const EncodedDerivatives d =
      encoded_derivatives(probe, p, DerivativeMode::finite_difference);

  const double det = d.nus[0] * d.nus[0];
  const double ddet = 2.0 * d.nus[0] * d.dnus[0];
  Eigen::PartialPivLU<Matrix> gamma_lu(d.gamma_enc);
  const Matrix gi_dg = gamma_lu.solve(d.dgamma);
  const double tr1 = (gi_dg * gi_dg).trace();
  const Matrix resolvent = (Matrix::Identity(2, 2) - d.m_enc * d.m_enc)
                               .partialPivLu()
                               .solve(symplectic_form(1) * d.dgamma);
  const double tr2 = (resolvent * resolvent).trace();

  const double lhs = ddet * ddet / det;
  const double rhs = det * tr1 - (1.0 + det) * (1.0 + det) * tr2;
  return std::abs(lhs - rhs);
}

}  // namespace gqm
