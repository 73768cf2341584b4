#include "gqm/sweep.hpp"

#include "gqm/avqfi.hpp"
#include "gqm/qfi.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

namespace gqm {

namespace {

constexpr int kScanPoints = 32;     // coarse grid resolution in t
constexpr double kRatioTol = 1e-4;  // golden-section bracket width target

/// Family member at displacement fraction t: the photon budget n_a is split
/// as |xi|^2 = 2 n_a t against squeezing cosh(2 alpha) = 2 n_a + 1 - 2 n_a t,
/// with the orientation (nu = 1, phi = 0, psi = pi/2) that maximizes the
/// direction average at every split.
SingleModeProbeParams family_params(double n_a, double t) {
  const double cosh2a = std::max(1.0, 2.0 * n_a + 1.0 - 2.0 * n_a * t);
  const double alpha = 0.5 * std::acosh(cosh2a);
  const double xi_mag = std::sqrt(std::max(0.0, 2.0 * n_a * t));
  return {1.0, alpha, 0.0, xi_mag, std::numbers::pi / 2.0};
}

double family_avqfi(double n_a, double t, double eta, double epsilon, int nodes) {
  const SingleModeProbeParams p = family_params(n_a, t);
  if (eta == 1.0) {
    const GaussianState st = from_single_mode_params(p);
    return avqfi_sm_noiseless(st.gamma, p.xi_mag);
  }
  return avqfi_sm_noisy(p, epsilon, eta, nodes);
}

}  // namespace

RatioOptimum optimize_displacement_ratio(double n_a, double eta, double epsilon,
                                         int nodes) {
  if (!(n_a >= 0.0))
    throw std::invalid_argument("photon number must be >= 0");
  if (!(eta >= 0.0 && eta <= 1.0))
    throw std::invalid_argument("eta must lie in [0, 1]");
  if (eta > 0.0 && eta < 1.0 && !(epsilon > 0.0))
    throw std::invalid_argument("epsilon must be > 0 for lossy encodings");
  if (eta == 0.0) return {0.0, 0.0};  // every probe encodes to the vacuum
  if (n_a == 0.0)    // the family degenerates to the vacuum alone
    return {0.0, family_avqfi(0.0, 0.0, eta, epsilon, nodes)};

  const auto objective = [&](double t) {
    return family_avqfi(n_a, t, eta, epsilon, nodes);
  };

  std::array<double, kScanPoints + 1> scan{};
  int best_i = 0;
  for (int i = 0; i <= kScanPoints; ++i) {
    scan[i] = objective(static_cast<double>(i) / kScanPoints);
    if (scan[i] > scan[best_i]) best_i = i;
  }

  double lo = std::max(0.0, static_cast<double>(best_i - 1) / kScanPoints);
  double hi = std::min(1.0, static_cast<double>(best_i + 1) / kScanPoints);
  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = hi - invphi * (hi - lo);
  double x2 = lo + invphi * (hi - lo);
  double f1 = objective(x1);
  double f2 = objective(x2);
  while (hi - lo > kRatioTol) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + invphi * (hi - lo);
      f2 = objective(x2);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - invphi * (hi - lo);
      f1 = objective(x1);
    }
  }
  const double mid = 0.5 * (lo + hi);

  RatioOptimum best{static_cast<double>(best_i) / kScanPoints, scan[best_i]};
  const auto consider = [&](double t, double f) {
    if (f > best.avqfi) best = {t, f};
  };
  consider(mid, objective(mid));
  consider(0.0, scan.front());  // pure squeezing
  consider(1.0, scan.back());   // pure displacement
  return best;
}

double avqfi_tmsv_reference(double n_or_total, double eta, double epsilon,
                            ComparisonMode mode, int nodes, bool* regularized) {
  if (regularized) *regularized = false;
  if (!(n_or_total >= 0.0))
    throw std::invalid_argument("photon budget must be >= 0");
  if (!(eta >= 0.0 && eta <= 1.0))
    throw std::invalid_argument("eta must lie in [0, 1]");
  const double per_mode =
      mode == ComparisonMode::fixed_N ? n_or_total / 2.0 : n_or_total;
  const double r = std::asinh(std::sqrt(per_mode));
  if (eta == 1.0) return avqfi_tmsv_noiseless(r);
  if (eta == 0.0) return 0.0;
  const AvqfiResult res =
      avqfi_numeric(tmsv(r), epsilon, eta, ThetaPrior::uniform(), nodes);
  if (regularized) *regularized = res.regularized;
  return res.mean;
}

double relative_increase(double n_or_total, double eta, double epsilon,
                         ComparisonMode mode, int nodes) {
  if (eta == 0.0) return 0.0;
  // The single-mode probe always carries the full stated budget in its one
  // mode; only the two-mode reference depends on the comparison convention.
  const RatioOptimum opt =
      optimize_displacement_ratio(n_or_total, eta, epsilon, nodes);
  const double tm = avqfi_tmsv_reference(n_or_total, eta, epsilon, mode, nodes);
  if (!(opt.avqfi > 0.0)) return 0.0;
  return (tm - opt.avqfi) / opt.avqfi;
}

ThetaBand theta_band(const GaussianState& probe, double epsilon, double eta,
                     int nodes) {
  if (nodes < 1) throw std::invalid_argument("nodes must be >= 1");
  ThetaBand band;
  double sum = 0.0;
  for (int i = 0; i < nodes; ++i) {
    const double theta = 2.0 * std::numbers::pi * i / nodes;
    const double h = qfi_auto(probe, {epsilon, theta, eta}).value;
    if (i == 0) {
      band.min = h;
      band.max = h;
    } else {
      band.min = std::min(band.min, h);
      band.max = std::max(band.max, h);
    }
    sum += h;
  }
  band.mean = sum / nodes;
  return band;
}

std::vector<SweepRecord> run_sweep(const SweepSpec& spec) {
  if (spec.n_axis.count < 1 || spec.eta_axis.count < 1)
    throw std::invalid_argument("axis counts must be >= 1");
  if (!(spec.n_axis.lo >= 0.0) || !(spec.n_axis.hi >= spec.n_axis.lo))
    throw std::invalid_argument("photon axis must satisfy 0 <= lo <= hi");
  if (!(spec.eta_axis.lo >= 0.0) || !(spec.eta_axis.hi <= 1.0) ||
      !(spec.eta_axis.hi >= spec.eta_axis.lo))
    throw std::invalid_argument("eta axis must satisfy 0 <= lo <= hi <= 1");
  if (!(spec.epsilon > 0.0))
    throw std::invalid_argument("epsilon must be > 0");
  if (spec.nodes < 16 || spec.nodes % 2 != 0)
    throw std::invalid_argument("nodes must be even and >= 16");

  std::vector<SweepRecord> out;
  out.reserve(static_cast<std::size_t>(spec.n_axis.count) * spec.eta_axis.count);
  for (int i = 0; i < spec.n_axis.count; ++i) {
    const double n = spec.n_axis.value(i);
    for (int j = 0; j < spec.eta_axis.count; ++j) {
      const double eta = spec.eta_axis.value(j);
      SweepRecord rec;
      rec.n = n;
      rec.eta = eta;
      rec.epsilon = spec.epsilon;
      if (eta == 0.0) {
        rec.flags = "fully-lossy";
        out.push_back(std::move(rec));
        continue;
      }
      try {
        const RatioOptimum opt =
            optimize_displacement_ratio(n, eta, spec.epsilon, spec.nodes);
        bool reg = false;
        const double tm = avqfi_tmsv_reference(n, eta, spec.epsilon, spec.mode,
                                               spec.nodes, &reg);
        rec.optimal_ratio = opt.ratio;
        rec.avqfi_single_opt = opt.avqfi;
        rec.avqfi_tmsv = tm;
        rec.increase = opt.avqfi > 0.0 ? (tm - opt.avqfi) / opt.avqfi : 0.0;
        if (reg) rec.flags = "regularized";
      } catch (const std::exception& e) {
        rec = SweepRecord{};
        rec.n = n;
        rec.eta = eta;
        rec.epsilon = spec.epsilon;
        rec.flags = std::string("error:") + e.what();
      }
      out.push_back(std::move(rec));
    }
  }
  return out;
}

}  // namespace gqm
