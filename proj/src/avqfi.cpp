#include "gqm/avqfi.hpp"

#include "gqm/qfi.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace gqm {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

void check_nodes(int nodes) {
  if (nodes < 16 || nodes % 2 != 0)
    throw std::invalid_argument("quadrature nodes must be even and >= 16");
}

void check_phi_zero(const SingleModeProbeParams& p) {
  if (std::abs(std::remainder(p.phi, two_pi)) > 1e-12)
    throw std::invalid_argument(
        "closed form is written in the phi = 0 frame; rotate the probe first");
}

void check_params(const SingleModeProbeParams& p) {
  if (p.nu < 1.0 || p.alpha < 0.0 || p.xi_mag < 0.0)
    throw std::invalid_argument("invalid single-mode probe parameters");
}

}  // namespace

ThetaPrior ThetaPrior::uniform() { return ThetaPrior{}; }

ThetaPrior ThetaPrior::tabulated(std::vector<double> density) {
  const int n = static_cast<int>(density.size());
  check_nodes(n);
  double sum = 0.0;
  for (double v : density) {
    if (!(v >= 0.0))
      throw std::invalid_argument("prior density must be nonnegative");
    sum += v;
  }
  if (std::abs(sum * two_pi / n - 1.0) > 1e-9)
    throw std::invalid_argument("prior density must integrate to 1 over [0, 2pi)");
  ThetaPrior p;
  p.is_uniform = false;
  p.density = std::move(density);
  return p;
}

AvqfiResult avqfi_numeric(const GaussianState& probe, double epsilon, double eta,
                          const ThetaPrior& prior, int nodes) {
  if (!prior.is_uniform) nodes = static_cast<int>(prior.density.size());
  check_nodes(nodes);

  AvqfiResult out;
  out.quadrature_nodes = nodes;
  out.method = "quadrature";
  out.min_theta = std::numeric_limits<double>::infinity();
  out.max_theta = -std::numeric_limits<double>::infinity();

  std::vector<double> values(nodes), weights(nodes);
  for (int i = 0; i < nodes; ++i) {
    const double theta = two_pi * i / nodes;
    const QfiResult q = qfi_auto(probe, {epsilon, theta, eta});
    values[i] = q.value;
    out.regularized = out.regularized || q.regularized;
    // trapezoid on the periodic grid == equal weights
    weights[i] = prior.is_uniform ? 1.0 / nodes : prior.density[i] * two_pi / nodes;
    out.min_theta = std::min(out.min_theta, q.value);
    out.max_theta = std::max(out.max_theta, q.value);
  }
  double mean = 0.0;
  for (int i = 0; i < nodes; ++i) mean += weights[i] * values[i];
  double var = 0.0;
  for (int i = 0; i < nodes; ++i) var += weights[i] * (values[i] - mean) * (values[i] - mean);
  out.mean = mean;
  out.variance = std::max(0.0, var);
  return out;
}

double qfi_sm_noiseless_theta(const SingleModeProbeParams& p, double theta) {
  check_params(p);
  check_phi_zero(p);
  const double ch2 = std::cosh(2.0 * p.alpha), sh2 = std::sinh(2.0 * p.alpha);
  const double ch = std::cosh(p.alpha), sh = std::sinh(p.alpha);
  const double xi_sq = p.xi_mag * p.xi_mag;
  return (2.0 * xi_sq / p.nu) * (ch2 - std::cos(4.0 * theta - 2.0 * p.psi) * sh2) +
         (4.0 * p.nu * p.nu / (p.nu * p.nu + 1.0)) *
             (ch * ch * ch * ch + sh * sh * sh * sh -
              0.5 * std::cos(4.0 * theta) * sh2 * sh2);
}

double avqfi_sm_noiseless(const Matrix& gamma_a, double xi_mag) {
  if (gamma_a.rows() != 2 || gamma_a.cols() != 2)
    throw std::invalid_argument("expected a single-mode covariance matrix");
  const double tr = gamma_a.trace();
  const double det = gamma_a.determinant();
  return (tr * tr + 4.0 * det) / (2.0 * (1.0 + det)) + xi_mag * xi_mag * tr / det;
}

double qfi_variance_noiseless(const SingleModeProbeParams& p) {
  check_params(p);
  check_phi_zero(p);
  const double sh2 = std::sinh(2.0 * p.alpha);
  const double v1 = 2.0 * p.nu * p.nu * sh2 * sh2 / (p.nu * p.nu + 1.0);
  const double v2 = 2.0 * p.xi_mag * p.xi_mag * sh2 / p.nu;
  return (v1 * v1 + v2 * v2 + 2.0 * v1 * v2 * std::cos(2.0 * p.psi)) / 2.0;
}

namespace {

double avqfi_two_mode_noiseless_raw(const StandardFormParams& p) {
  const double ax = p.a_x, ap = p.a_p, axp = p.a_xp, b = p.b, c = p.c, d = p.d;
  const double xi_sq = p.xi_x * p.xi_x + p.xi_p * p.xi_p;
  const double det = (ax * b - c * c) * (ap * b - d * d) - b * b * axp * axp;
  const double disp = b * xi_sq / det * (b * (ax + ap) - c * c - d * d);
  const double den1 = 2.0 * (-b * b * axp * axp + (c * c - ax * b) * (d * d - b * ap) - 1.0);
  const double t2 = (c * c * (4.0 * d * d - b * (ax + 5.0 * ap)) +
                     b * (b * (ax * ax + 6.0 * ax * ap + ap * ap - 4.0 * axp * axp) -
                          d * d * (5.0 * ax + ap))) /
                    den1;
  const double num3 =
      4.0 * (b * b + c * d + 1.0) *
          (-(b * b + 1.0) * axp * axp + ax * (ap * b * b - b * d * d + ap) +
           c * c * (d * d - b * ap) + c * d) +
      std::pow(ax + b * b * (ax + ap) - b * (c * c + d * d) + ap, 2);
  const double den3 =
      den1 * (ax * ap + b * b * (ax * ap - axp * axp + 1.0) -
              b * (ap * c * c + ax * d * d) - axp * axp + (c * d + 1.0) * (c * d + 1.0));
  return disp + t2 - num3 / den3;
}

}  // namespace

double avqfi_two_mode_noiseless(const StandardFormParams& p) {
  from_standard_form(p);  // physicality gate; throws on bad parameters
  const double det = (p.a_x * p.b - p.c * p.c) * (p.a_p * p.b - p.d * p.d) -
                     p.b * p.b * p.a_xp * p.a_xp;
  if (std::abs(det - 1.0) > 1e-6) return avqfi_two_mode_noiseless_raw(p);
  // pure state: the expression has a removable det - 1 singularity; take the
  // same (1+delta) scaling limit the numeric engine uses
  auto scaled = [&](double delta) {
    StandardFormParams q = p;
    q.a_x *= 1.0 + delta;
    q.a_p *= 1.0 + delta;
    q.a_xp *= 1.0 + delta;
    q.b *= 1.0 + delta;
    q.c *= 1.0 + delta;
    q.d *= 1.0 + delta;
    return avqfi_two_mode_noiseless_raw(q);
  };
  return 2.0 * scaled(5e-5) - scaled(1e-4);
}

double avqfi_tmsv_noiseless(double r) {
  const double s2 = std::sinh(r) * std::sinh(r);
  return 4.0 * s2 * s2 + 4.0 * s2 + 2.0;
}

double qfi_sm_noisy_closed(const SingleModeProbeParams& p, double epsilon,
                           double eta, double theta) {
  check_params(p);
  check_phi_zero(p);
  if (epsilon <= 0.0)
    throw std::invalid_argument("the lossy closed form is valid for epsilon > 0");
  if (eta < 0.0 || eta > 1.0)
    throw std::invalid_argument("transmissivity must lie in [0, 1]");

  const double nu = p.nu, al = p.alpha;
  const double xx = p.xi_mag * std::cos(p.psi);
  const double xp = p.xi_mag * std::sin(p.psi);
  const double e4a = std::exp(4.0 * al), e2a = std::exp(2.0 * al);
  const double ch2a = std::cosh(2.0 * al), sh2a = std::sinh(2.0 * al);
  const double ch4a = std::cosh(4.0 * al);
  const double ch2e = std::cosh(2.0 * epsilon), sh2e = std::sinh(2.0 * epsilon);
  const double e4e = std::exp(4.0 * epsilon);
  const double c2t = std::cos(2.0 * theta), c4t = std::cos(4.0 * theta);
  const double s2t = std::sin(2.0 * theta), s4t = std::sin(4.0 * theta);

  const double n1 =
      (eta - 1.0) * (eta - 1.0) * eta * eta * std::exp(-4.0 * (al + epsilon)) *
      std::pow((e4a - 1.0) * eta * nu * (e4e + 1.0) * c2t +
                   4.0 * std::exp(2.0 * (al + epsilon)) * sh2e *
                       (eta * nu * ch2a - eta + 1.0),
               2);
  const double n2 =
      std::exp(-2.0 * al) * eta * eta *
      ((e4a - 1.0) * (e4a - 1.0) * eta * eta * nu * nu * c4t -
       2.0 * e4a * (eta * nu * (eta * nu * ch4a - 8.0 * (eta - 1.0) * ch2a) +
                    eta * (eta * (3.0 * nu * nu + 4.0) - 8.0) + 4.0));
  const double n3 =
      eta * eta *
      (-eta * (-2.0 * (e4a - 1.0) * eta * nu * s4t * xp * xx +
               (e4a - 1.0) * eta * nu * c4t * (xp - xx) * (xp + xx) +
               2.0 * e2a * (xp * xp + xx * xx) * (eta * nu * ch2a - eta + 1.0)) +
       2.0 * e2a * (eta - 1.0) * sh2e *
           (-c2t * xp * xp + 2.0 * s2t * xp * xx + c2t * xx * xx) +
       2.0 * e2a * (eta - 1.0) * ch2e * (xp * xp + xx * xx));
  const double d2 =
      2.0 * (e4a * (eta - 1.0) * eta * eta * nu * (eta + c2t * sh2e + ch2e) -
             e2a * (eta * (eta * (eta * (eta * nu * nu + eta - 2.0) + 2.0) - 2.0) +
                    2.0 * eta * (eta - 1.0) * (eta - 1.0) * ch2e + 2.0) +
             (eta - 1.0) * eta * eta * nu * (eta - c2t * sh2e + ch2e));
  const double d3 =
      e2a * (2.0 * (eta - 1.0) * eta *
                 (eta * nu * sh2a * c2t * sh2e + eta * nu * ch2a * (eta + ch2e) -
                  (eta - 1.0) * ch2e) -
             eta * eta * eta * eta * nu * nu -
             (eta - 1.0) * (eta - 1.0) * (eta * eta + 1.0));
  const double s =
      (e4a - 1.0) * (1.0 - eta) * eta * eta * nu * (e4e - 1.0) * c2t +
      2.0 * std::exp(2.0 * (al + epsilon)) *
          (2.0 * (1.0 - eta) * eta *
               (eta * nu * ch2a * (eta + ch2e) + (1.0 - eta) * ch2e) +
           eta * eta * eta * eta * nu * nu +
           (1.0 - eta) * (1.0 - eta) * (eta * eta + 1.0));
  const double d1 = s * s / (2.0 * std::exp(4.0 * (al + epsilon))) - 2.0;

  auto safe = [](double num, double den) { return num == 0.0 ? 0.0 : num / den; };
  return safe(n1, d1) + safe(n2, d2) + safe(n3, d3);
}

double avqfi_sm_noisy(const SingleModeProbeParams& p, double epsilon, double eta,
                      int nodes) {
  check_nodes(nodes);
  double sum = 0.0;
  for (int i = 0; i < nodes; ++i)
    sum += qfi_sm_noisy_closed(p, epsilon, eta, two_pi * i / nodes);
  return sum / nodes;
}

NoiselessBounds avqfi_bounds_noiseless(double n_a) {
  if (n_a < 0.0)
    throw std::invalid_argument("photon number must be >= 0");
  const double w = 2.0 * n_a + 1.0;
  NoiselessBounds b;
  b.max = 4.0 * n_a * n_a + 4.0 * n_a + 2.0;
  b.min = 4.0 * w * w / (1.0 + w * w);
  b.coherent = 2.0 * w;
  return b;
}

}  // namespace gqm
