#include "gqm/gaussian.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>

namespace gqm {

namespace {

constexpr double kPhysicalityTol = 1e-9;
constexpr double kSymplecticTol = 1e-10;

double wrap_angle(double a) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  double r = std::fmod(a, two_pi);
  return r < 0.0 ? r + two_pi : r;
}

void check_mode_index(int mode, int mode_count) {
  if (mode < 0 || mode >= mode_count)
    throw std::invalid_argument("mode index out of range");
}

/// Embed a 2x2 block on the given mode of a 2m x 2m identity.
Matrix embed(const Matrix& u, int mode, int mode_count) {
  Matrix full = Matrix::Identity(2 * mode_count, 2 * mode_count);
  full.block<2, 2>(2 * mode, 2 * mode) = u;
  return full;
}

/// Symplectic eigenvalues straight from a covariance matrix (no state checks).
std::vector<double> symplectic_spectrum(const Matrix& gamma) {
  const int m = static_cast<int>(gamma.rows()) / 2;
  Eigen::EigenSolver<Matrix> solver(symplectic_form(m) * gamma, false);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("symplectic eigenvalue solve failed");
  std::vector<double> im(2 * m);
  for (int i = 0; i < 2 * m; ++i) im[i] = std::abs(solver.eigenvalues()[i].imag());
  // eigenvalues come in +-i nu pairs: after a descending sort the pairs are
  // adjacent, so every other entry is one Williamson eigenvalue
  std::sort(im.begin(), im.end(), std::greater<>());
  std::vector<double> nus(m);
  for (int j = 0; j < m; ++j) nus[j] = im[2 * j];
  return nus;
}

}  // namespace

Matrix symplectic_form(int mode_count) {
  Matrix omega = Matrix::Zero(2 * mode_count, 2 * mode_count);
  for (int k = 0; k < mode_count; ++k) {
    omega(2 * k, 2 * k + 1) = 1.0;
    omega(2 * k + 1, 2 * k) = -1.0;
  }
  return omega;
}

SymplecticMatrix::SymplecticMatrix(Matrix m) : s(std::move(m)) {
  if (s.rows() != s.cols() || s.rows() % 2 != 0 || s.rows() == 0)
    throw std::invalid_argument("symplectic matrix must be square of even size");
  const int modes = static_cast<int>(s.rows()) / 2;
  const Matrix omega = symplectic_form(modes);
  if (((s * omega * s.transpose() - omega).array().abs() > kSymplecticTol).any())
    throw std::invalid_argument("matrix does not preserve the symplectic form");
}

GaussianState::GaussianState(int mode_count_, Matrix gamma_, Vector xi_)
    : GaussianState(unchecked_tag{}, mode_count_, std::move(gamma_), std::move(xi_)) {
  for (double nu : symplectic_spectrum(gamma))
    if (nu < 1.0 - kPhysicalityTol)
      throw std::invalid_argument("state is not physical: symplectic eigenvalue " +
                                  std::to_string(nu) + " below 1");
}

GaussianState::GaussianState(unchecked_tag, int mode_count_, Matrix gamma_, Vector xi_)
    : mode_count(mode_count_), gamma(std::move(gamma_)), xi(std::move(xi_)) {
  if (mode_count != 1 && mode_count != 2)
    throw std::invalid_argument("only 1- and 2-mode states are supported");
  if (gamma.rows() != 2 * mode_count || gamma.cols() != 2 * mode_count)
    throw std::invalid_argument("covariance matrix has wrong dimensions");
  if (xi.size() != 2 * mode_count)
    throw std::invalid_argument("displacement vector has wrong dimensions");
  if (!gamma.allFinite() || !xi.allFinite())
    throw std::invalid_argument("state has non-finite entries");
  if (((gamma - gamma.transpose()).array().abs() > 1e-12).any())
    throw std::invalid_argument("covariance matrix is not symmetric");
  gamma = 0.5 * (gamma + gamma.transpose()).eval();
}

GaussianState GaussianState::unchecked(int mode_count, Matrix gamma, Vector xi) {
  return GaussianState(unchecked_tag{}, mode_count, std::move(gamma), std::move(xi));
}

SymplecticMatrix rotation_symplectic(double theta) {
  const double c = std::cos(theta), s = std::sin(theta);
  Matrix r(2, 2);
  r << c, s, -s, c;
  return SymplecticMatrix(std::move(r));
}

SymplecticMatrix squeeze_symplectic(double alpha) {
  Matrix s = Matrix::Zero(2, 2);
  s(0, 0) = std::exp(alpha);
  s(1, 1) = std::exp(-alpha);
  return SymplecticMatrix(std::move(s));
}

SymplecticMatrix two_mode_squeeze_symplectic(double r) {
  const double ch = std::cosh(r), sh = std::sinh(r);
  Matrix s = Matrix::Zero(4, 4);
  s.block<2, 2>(0, 0) = ch * Matrix::Identity(2, 2);
  s.block<2, 2>(2, 2) = ch * Matrix::Identity(2, 2);
  Matrix z = Matrix::Zero(2, 2);
  z(0, 0) = sh;
  z(1, 1) = -sh;
  s.block<2, 2>(0, 2) = z;
  s.block<2, 2>(2, 0) = z;
  return SymplecticMatrix(std::move(s));
}

GaussianState apply_unitary(const GaussianState& state, const SymplecticMatrix& s,
                            int mode) {
  Matrix u;
  if (s.s.rows() == 2 * state.mode_count && (mode == -1 || state.mode_count == 1)) {
    u = s.s;
  } else if (s.s.rows() == 2 && state.mode_count == 2) {
    check_mode_index(mode, state.mode_count);
    u = embed(s.s, mode, state.mode_count);
  } else {
    throw std::invalid_argument("symplectic matrix does not match the selected modes");
  }
  return GaussianState::unchecked(state.mode_count, u * state.gamma * u.transpose(),
                                  u * state.xi);
}

GaussianState apply_loss(const GaussianState& state, double eta, int mode) {
  if (eta < 0.0 || eta > 1.0)
    throw std::invalid_argument("transmissivity must lie in [0, 1]");
  check_mode_index(mode, state.mode_count);
  const Matrix k = embed(std::sqrt(eta) * Matrix::Identity(2, 2), mode, state.mode_count);
  Matrix noise = Matrix::Zero(2 * state.mode_count, 2 * state.mode_count);
  noise.block<2, 2>(2 * mode, 2 * mode) = (1.0 - eta) * Matrix::Identity(2, 2);
  return GaussianState::unchecked(state.mode_count,
                                  k * state.gamma * k.transpose() + noise,
                                  k * state.xi);
}

std::vector<double> symplectic_eigenvalues(const GaussianState& state) {
  return symplectic_spectrum(state.gamma);
}

double mean_photon_number(const GaussianState& state, int mode) {
  if (mode == -1) {
    double total = 0.0;
    for (int k = 0; k < state.mode_count; ++k) total += mean_photon_number(state, k);
    return total;
  }
  check_mode_index(mode, state.mode_count);
  const double tr = state.gamma.block<2, 2>(2 * mode, 2 * mode).trace();
  const double xi_sq = state.xi.segment<2>(2 * mode).squaredNorm();
  return (tr / 2.0 + xi_sq - 1.0) / 2.0;
}

GaussianState partial_trace(const GaussianState& state, int keep) {
  if (state.mode_count != 2)
    throw std::invalid_argument("partial trace needs a two-mode state");
  check_mode_index(keep, 2);
  return GaussianState(1, state.gamma.block<2, 2>(2 * keep, 2 * keep),
                       state.xi.segment<2>(2 * keep));
}

StandardFormResult standard_form(const GaussianState& state) {
  if (state.mode_count != 2)
    throw std::invalid_argument("standard form needs a two-mode state");

  // Williamson on mode B: S_b = sqrt(b) * Gamma_B^{-1/2} maps Gamma_B to b*I
  // (det S_b = 1, so it is symplectic)
  const Matrix gamma_b = state.gamma.block<2, 2>(2, 2);
  Eigen::SelfAdjointEigenSolver<Matrix> es(gamma_b);
  const double b = std::sqrt(gamma_b.determinant());
  const Matrix s_b = std::sqrt(b) *
      (es.eigenvectors() * es.eigenvalues().cwiseSqrt().cwiseInverse().asDiagonal() *
       es.eigenvectors().transpose());

  const Matrix cross = state.gamma.block<2, 2>(0, 2) * s_b.transpose();

  // rotate both sides to diagonalize the cross block; reflections are not
  // symplectic, so fold any det = -1 factor of the SVD into the sign of the
  // second singular value
  Eigen::JacobiSVD<Matrix> svd(cross, Eigen::ComputeFullU | Eigen::ComputeFullV);
  Matrix u = svd.matrixU(), v = svd.matrixV();
  double c = svd.singularValues()(0), d = svd.singularValues()(1);
  if (u.determinant() < 0.0) {
    u.col(1) *= -1.0;
    d = -d;
  }
  if (v.determinant() < 0.0) {
    v.col(1) *= -1.0;
    d = -d;
  }

  const Matrix local_a = u.transpose();
  const Matrix local_b = v.transpose() * s_b;
  Matrix l = Matrix::Zero(4, 4);
  l.block<2, 2>(0, 0) = local_a;
  l.block<2, 2>(2, 2) = local_b;

  const Matrix g = l * state.gamma * l.transpose();
  const Vector moved = l * state.xi;

  StandardFormResult out;
  out.params = {g(0, 0), g(1, 1), g(0, 1), b, c, d, moved(0), moved(1)};
  out.local_a = local_a;
  out.local_b = local_b;
  out.b_shift = -moved.segment<2>(2);
  return out;
}

GaussianState from_standard_form(const StandardFormParams& p) {
  Matrix g = Matrix::Zero(4, 4);
  g(0, 0) = p.a_x;
  g(1, 1) = p.a_p;
  g(0, 1) = g(1, 0) = p.a_xp;
  g(2, 2) = g(3, 3) = p.b;
  g(0, 2) = g(2, 0) = p.c;
  g(1, 3) = g(3, 1) = p.d;
  Vector xi(4);
  xi << p.xi_x, p.xi_p, 0.0, 0.0;
  return GaussianState(2, std::move(g), std::move(xi));
}

GaussianState from_single_mode_params(const SingleModeProbeParams& p) {
  if (p.nu < 1.0)
    throw std::invalid_argument("symplectic eigenvalue must be >= 1");
  if (p.alpha < 0.0 || p.xi_mag < 0.0)
    throw std::invalid_argument("squeezing and displacement magnitudes must be >= 0");
  const double phi = wrap_angle(p.phi), psi = wrap_angle(p.psi);
  const Matrix r = rotation_symplectic(phi).s;
  const Matrix gamma = p.nu * r * squeeze_symplectic(2.0 * p.alpha).s * r.transpose();
  Vector xi(2);
  xi << p.xi_mag * std::cos(psi), p.xi_mag * std::sin(psi);
  return GaussianState(1, gamma, std::move(xi));
}

GaussianState tmsv(double r) {
  return apply_unitary(vacuum_state(2), two_mode_squeeze_symplectic(r));
}

GaussianState vacuum_state(int mode_count) {
  return GaussianState(mode_count, Matrix::Identity(2 * mode_count, 2 * mode_count),
                       Vector::Zero(2 * mode_count));
}

std::string to_json(const GaussianState& state) {
  nlohmann::json j;
  j["modes"] = state.mode_count;
  auto rows = nlohmann::json::array();
  for (int i = 0; i < state.gamma.rows(); ++i) {
    auto row = nlohmann::json::array();
    for (int k = 0; k < state.gamma.cols(); ++k) row.push_back(state.gamma(i, k));
    rows.push_back(std::move(row));
  }
  j["gamma"] = std::move(rows);
  auto xi = nlohmann::json::array();
  for (int i = 0; i < state.xi.size(); ++i) xi.push_back(state.xi(i));
  j["xi"] = std::move(xi);
  return j.dump();
}

GaussianState state_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument(std::string("invalid state JSON: ") + e.what());
  }
  if (!j.contains("modes") || !j.contains("gamma") || !j.contains("xi"))
    throw std::invalid_argument("state JSON needs fields modes, gamma, xi");
  const int m = j["modes"].get<int>();
  if (m != 1 && m != 2)
    throw std::invalid_argument("state JSON: modes must be 1 or 2");
  const auto& rows = j["gamma"];
  if (!rows.is_array() || static_cast<int>(rows.size()) != 2 * m)
    throw std::invalid_argument("state JSON: gamma must be a 2m x 2m array");
  Matrix gamma(2 * m, 2 * m);
  for (int i = 0; i < 2 * m; ++i) {
    if (!rows[i].is_array() || static_cast<int>(rows[i].size()) != 2 * m)
      throw std::invalid_argument("state JSON: gamma must be a 2m x 2m array");
    for (int k = 0; k < 2 * m; ++k) gamma(i, k) = rows[i][k].get<double>();
  }
  const auto& xis = j["xi"];
  if (!xis.is_array() || static_cast<int>(xis.size()) != 2 * m)
    throw std::invalid_argument("state JSON: xi must have length 2m");
  Vector xi(2 * m);
  for (int i = 0; i < 2 * m; ++i) xi(i) = xis[i].get<double>();
  return GaussianState(m, std::move(gamma), std::move(xi));
}

}  // namespace gqm
