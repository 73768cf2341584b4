// Command-line front end: QFI / direction-averaged QFI for squeezing-strength
// estimation with Gaussian probes, probe samplers, and comparison sweeps.
#include "gqm/avqfi.hpp"
#include "gqm/gaussian.hpp"
#include "gqm/qfi.hpp"
#include "gqm/sampler.hpp"
#include "gqm/sweep.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace gqm;

constexpr double kOracleTol = 1e-5;

/// 12 significant digits, locale-independent scientific notation.
std::string fmt(double v) {
  char buf[48];
  const auto res =
      std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::scientific, 11);
  return std::string(buf, res.ptr);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_output(const std::string& out_path, const std::string& content) {
  if (out_path.empty()) {
    std::cout << content;
    return;
  }
  std::ofstream f(out_path, std::ios::binary);
  if (!f) throw std::invalid_argument("cannot open output file: " + out_path);
  f << content;
}

double parse_double(const std::string& tok) {
  std::size_t pos = 0;
  const double v = std::stod(tok, &pos);
  while (pos < tok.size() && std::isspace(static_cast<unsigned char>(tok[pos])))
    ++pos;
  if (pos != tok.size())
    throw std::invalid_argument("not a number: '" + tok + "'");
  return v;
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, sep)) out.push_back(tok);
  return out;
}

/// Commas and newlines inside the flags column would break the row schema.
std::string sanitize_csv_field(std::string s) {
  for (char& ch : s)
    if (ch == ',' || ch == '\n' || ch == '\r') ch = ' ';
  return s;
}

struct ProbeOpts {
  std::string state;
  double tmsv_r = 0.0;
  std::string probe;
  CLI::Option* state_opt = nullptr;
  CLI::Option* tmsv_opt = nullptr;
  CLI::Option* probe_opt = nullptr;
};

void add_probe_options(CLI::App* cmd, ProbeOpts& o) {
  o.state_opt = cmd->add_option(
      "--state", o.state,
      "probe state: inline JSON if it starts with '{', else a JSON file path");
  o.tmsv_opt = cmd->add_option(
      "--tmsv", o.tmsv_r, "two-mode squeezed vacuum probe with parameter r");
  o.probe_opt = cmd->add_option(
      "--probe", o.probe, "single-mode probe as 'nu,alpha,phi,xi_mag,psi'");
}

GaussianState load_probe(const ProbeOpts& o) {
  const int given = (o.state_opt->count() > 0 ? 1 : 0) +
                    (o.tmsv_opt->count() > 0 ? 1 : 0) +
                    (o.probe_opt->count() > 0 ? 1 : 0);
  if (given != 1)
    throw std::invalid_argument(
        "provide exactly one probe source: --state, --tmsv or --probe");
  if (o.state_opt->count() > 0) {
    const auto first = o.state.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && o.state[first] == '{')
      return state_from_json(o.state);
    return state_from_json(read_file(o.state));
  }
  if (o.tmsv_opt->count() > 0) return tmsv(o.tmsv_r);
  const std::vector<std::string> parts = split(o.probe, ',');
  if (parts.size() != 5)
    throw std::invalid_argument(
        "--probe needs 5 comma-separated values: nu,alpha,phi,xi_mag,psi");
  return from_single_mode_params({parse_double(parts[0]), parse_double(parts[1]),
                                  parse_double(parts[2]), parse_double(parts[3]),
                                  parse_double(parts[4])});
}

ThetaPrior load_prior(const std::string& spec) {
  if (spec.empty() || spec == "uniform") return ThetaPrior::uniform();
  std::istringstream in(read_file(spec));
  std::vector<double> density;
  double x = 0.0;
  while (in >> x) density.push_back(x);
  if (density.empty())
    throw std::invalid_argument("prior file has no values: " + spec);
  return ThetaPrior::tabulated(std::move(density));
}

/// Canonical parameters of a single-mode state; the rotation phi is folded
/// into the closed-form frame as theta -> theta + phi, psi -> psi + phi.
SingleModeProbeParams extract_params(const GaussianState& st) {
  const Matrix& g = st.gamma;
  const double det = g(0, 0) * g(1, 1) - g(0, 1) * g(1, 0);
  const double nu = std::sqrt(std::max(1.0, det));
  const double cosh2a = std::max(1.0, (g(0, 0) + g(1, 1)) / (2.0 * nu));
  const double alpha = 0.5 * std::acosh(cosh2a);
  Eigen::SelfAdjointEigenSolver<Matrix> es(g);
  const Vector major = es.eigenvectors().col(1);  // largest eigenvalue
  const double phi = -std::atan2(major(1), major(0));
  const double xi_mag = st.xi.norm();
  const double psi = xi_mag > 0.0 ? std::atan2(st.xi(1), st.xi(0)) : 0.0;
  return {nu, alpha, phi, xi_mag, psi};
}

struct EncodingOpts {
  double epsilon = 0.5;
  double theta = 0.0;
  double eta = 1.0;
  int nodes = 256;
};

struct OutputOpts {
  std::string out;
  std::string format = "json";
};

double rel_dev(double a, double b) {
  return std::fabs(a - b) / std::max(1.0, std::fabs(b));
}

// ---------------------------------------------------------------- qfi ----

double qfi_oracle_deviation(const GaussianState& probe, const EncodingParams& enc,
                            double engine_value, std::string& method) {
  if (probe.mode_count == 1) {
    const SingleModeProbeParams p = extract_params(probe);
    const SingleModeProbeParams frame{p.nu, p.alpha, 0.0, p.xi_mag, p.psi + p.phi};
    if (enc.eta == 1.0) {
      method = "single_mode_closed_form";
      return rel_dev(qfi_sm_noiseless_theta(frame, enc.theta + p.phi),
                     engine_value);
    }
    if (enc.epsilon > 0.0) {
      method = "single_mode_closed_form";
      return rel_dev(
          qfi_sm_noisy_closed(frame, enc.epsilon, enc.eta, enc.theta + p.phi),
          engine_value);
    }
    method = "none";
    return 0.0;
  }
  if (enc.eta == 1.0) {
    method = "finite_difference_cross_check";
    const QfiResult fd =
        qfi_two_mode(probe, enc, DerivativeMode::finite_difference);
    return rel_dev(fd.value, engine_value);
  }
  method = "none";  // lossy two-mode values have no independent reference
  return 0.0;
}

int run_qfi(const ProbeOpts& po, const EncodingOpts& eo, const OutputOpts& oo,
            bool oracle) {
  const GaussianState probe = load_probe(po);
  const EncodingParams enc{eo.epsilon, eo.theta, eo.eta};
  const QfiResult r = qfi_auto(probe, enc);

  double deviation = 0.0;
  std::string method = "none";
  if (oracle) deviation = qfi_oracle_deviation(probe, enc, r.value, method);

  if (oo.format == "json") {
    nlohmann::json j{{"value", r.value},
                     {"term_covariance", r.term_covariance},
                     {"term_eigenvalues", r.term_eigenvalues},
                     {"term_displacement", r.term_displacement},
                     {"regularized", r.regularized}};
    if (oracle) {
      j["oracle_deviation"] = deviation;
      j["oracle_method"] = method;
    }
    write_output(oo.out, j.dump(2) + "\n");
  } else {
    std::string s =
        "value,term_covariance,term_eigenvalues,term_displacement,regularized\n";
    s += fmt(r.value) + "," + fmt(r.term_covariance) + "," +
         fmt(r.term_eigenvalues) + "," + fmt(r.term_displacement) + "," +
         (r.regularized ? "1" : "0") + "\n";
    write_output(oo.out, s);
  }
  if (oracle && deviation > kOracleTol) {
    std::cerr << "warning: oracle deviation " << fmt(deviation)
              << " exceeds " << fmt(kOracleTol) << "\n";
    return 4;
  }
  return 0;
}

// -------------------------------------------------------------- avqfi ----

double avqfi_oracle_deviation(const GaussianState& probe, const EncodingOpts& eo,
                              const ThetaPrior& prior, double engine_mean,
                              std::string& method) {
  if (!prior.is_uniform) {
    method = "none";  // closed forms average uniformly
    return 0.0;
  }
  if (probe.mode_count == 1) {
    if (eo.eta == 1.0) {
      method = "single_mode_closed_form";
      return rel_dev(avqfi_sm_noiseless(probe.gamma, probe.xi.norm()),
                     engine_mean);
    }
    if (eo.epsilon > 0.0) {
      const SingleModeProbeParams p = extract_params(probe);
      method = "single_mode_closed_form";
      return rel_dev(avqfi_sm_noisy({p.nu, p.alpha, 0.0, p.xi_mag, p.psi + p.phi},
                                    eo.epsilon, eo.eta, eo.nodes),
                     engine_mean);
    }
    method = "none";
    return 0.0;
  }
  if (eo.eta == 1.0) {
    method = "two_mode_closed_form";
    return rel_dev(avqfi_two_mode_noiseless(standard_form(probe).params),
                   engine_mean);
  }
  method = "doubled_nodes";
  const AvqfiResult fine = avqfi_numeric(probe, eo.epsilon, eo.eta,
                                         ThetaPrior::uniform(), 2 * eo.nodes);
  return rel_dev(fine.mean, engine_mean);
}

int run_avqfi(const ProbeOpts& po, const EncodingOpts& eo, const OutputOpts& oo,
              const std::string& prior_spec, bool oracle) {
  const GaussianState probe = load_probe(po);
  const ThetaPrior prior = load_prior(prior_spec);
  const AvqfiResult r = avqfi_numeric(probe, eo.epsilon, eo.eta, prior, eo.nodes);

  double deviation = 0.0;
  std::string method = "none";
  if (oracle)
    deviation = avqfi_oracle_deviation(probe, eo, prior, r.mean, method);

  if (oo.format == "json") {
    nlohmann::json j{{"mean", r.mean},
                     {"variance", r.variance},
                     {"min_theta", r.min_theta},
                     {"max_theta", r.max_theta},
                     {"quadrature_nodes", r.quadrature_nodes},
                     {"method", r.method},
                     {"regularized", r.regularized}};
    if (oracle) {
      j["oracle_deviation"] = deviation;
      j["oracle_method"] = method;
    }
    write_output(oo.out, j.dump(2) + "\n");
  } else {
    std::string s =
        "mean,variance,min_theta,max_theta,quadrature_nodes,method,regularized\n";
    s += fmt(r.mean) + "," + fmt(r.variance) + "," + fmt(r.min_theta) + "," +
         fmt(r.max_theta) + "," + std::to_string(r.quadrature_nodes) + "," +
         r.method + "," + (r.regularized ? "1" : "0") + "\n";
    write_output(oo.out, s);
  }
  if (oracle && deviation > kOracleTol) {
    std::cerr << "warning: oracle deviation " << fmt(deviation)
              << " exceeds " << fmt(kOracleTol) << "\n";
    return 4;
  }
  return 0;
}

// ------------------------------------------------------------- sample ----

int run_sample(double n_a, long long count, std::uint64_t seed, bool pure,
               const EncodingOpts& eo, const OutputOpts& oo) {
  if (count < 0) throw std::invalid_argument("count must be >= 0");
  SeededRng rng(seed);
  nlohmann::json arr = nlohmann::json::array();
  std::string csv = "index,nu,alpha,phi,xi_mag,psi,avqfi\n";
  for (long long i = 0; i < count; ++i) {
    const SingleModeProbeParams p =
        pure ? sample_pure_params(n_a, rng) : sample_mixed_params(n_a, rng);
    double av = 0.0;
    if (eo.eta == 1.0) {
      const GaussianState st = from_single_mode_params(p);
      av = avqfi_sm_noiseless(st.gamma, p.xi_mag);
    } else {
      av = avqfi_sm_noisy({p.nu, p.alpha, 0.0, p.xi_mag, p.psi + p.phi},
                          eo.epsilon, eo.eta, eo.nodes);
    }
    if (oo.format == "json") {
      arr.push_back({{"index", i},
                     {"nu", p.nu},
                     {"alpha", p.alpha},
                     {"phi", p.phi},
                     {"xi_mag", p.xi_mag},
                     {"psi", p.psi},
                     {"avqfi", av}});
    } else {
      csv += std::to_string(i) + "," + fmt(p.nu) + "," + fmt(p.alpha) + "," +
             fmt(p.phi) + "," + fmt(p.xi_mag) + "," + fmt(p.psi) + "," +
             fmt(av) + "\n";
    }
  }
  write_output(oo.out, oo.format == "json" ? arr.dump(2) + "\n" : csv);
  return 0;
}

// -------------------------------------------------------------- sweep ----

SweepAxis parse_axis(const std::string& text) {
  const std::vector<std::string> parts = split(text, ':');
  if (parts.size() == 1) {
    const double v = parse_double(parts[0]);
    return {v, v, 1};
  }
  if (parts.size() != 3)
    throw std::invalid_argument("range must be 'lo:hi:count' or a single value: " +
                                text);
  SweepAxis axis;
  axis.lo = parse_double(parts[0]);
  axis.hi = parse_double(parts[1]);
  std::size_t pos = 0;
  axis.count = std::stoi(parts[2], &pos);
  if (pos != parts[2].size())
    throw std::invalid_argument("range count must be an integer: " + text);
  if (axis.count < 1)
    throw std::invalid_argument("range count must be >= 1: " + text);
  return axis;
}

int run_sweep_cmd(const std::string& n_range, const std::string& n_total_range,
                  const std::string& eta_range, CLI::Option* n_opt,
                  CLI::Option* n_total_opt, CLI::Option* mode_opt,
                  const std::string& mode_str, const EncodingOpts& eo,
                  const OutputOpts& oo) {
  const bool has_na = n_opt->count() > 0;
  const bool has_nt = n_total_opt->count() > 0;
  if (has_na == has_nt)
    throw std::invalid_argument("provide exactly one of --n-a or --n-total");
  ComparisonMode mode = has_nt ? ComparisonMode::fixed_N : ComparisonMode::fixed_nA;
  if (mode_opt->count() > 0) {
    const ComparisonMode flagged = mode_str == "fixed_N" ? ComparisonMode::fixed_N
                                                         : ComparisonMode::fixed_nA;
    if (flagged != mode)
      throw std::invalid_argument(
          "--mode conflicts with the photon-range flag used");
  }

  SweepSpec spec;
  spec.n_axis = parse_axis(has_na ? n_range : n_total_range);
  spec.eta_axis = parse_axis(eta_range);
  spec.epsilon = eo.epsilon;
  spec.mode = mode;
  spec.nodes = eo.nodes;
  const std::vector<SweepRecord> rows = run_sweep(spec);

  const std::string n_col = mode == ComparisonMode::fixed_N ? "N" : "n_A";
  if (oo.format == "json") {
    nlohmann::json arr = nlohmann::json::array();
    for (const SweepRecord& r : rows) {
      arr.push_back({{n_col, r.n},
                     {"eta", r.eta},
                     {"epsilon", r.epsilon},
                     {"optimal_ratio", r.optimal_ratio},
                     {"avqfi_single_opt", r.avqfi_single_opt},
                     {"avqfi_tmsv", r.avqfi_tmsv},
                     {"increase", r.increase},
                     {"flags", r.flags}});
    }
    write_output(oo.out, arr.dump(2) + "\n");
  } else {
    std::string csv = n_col +
        ",eta,epsilon,optimal_ratio,avqfi_single_opt,avqfi_tmsv,increase,flags\n";
    for (const SweepRecord& r : rows) {
      csv += fmt(r.n) + "," + fmt(r.eta) + "," + fmt(r.epsilon) + "," +
             fmt(r.optimal_ratio) + "," + fmt(r.avqfi_single_opt) + "," +
             fmt(r.avqfi_tmsv) + "," + fmt(r.increase) + "," +
             sanitize_csv_field(r.flags) + "\n";
    }
    write_output(oo.out, csv);
  }
  return 0;
}

// ------------------------------------------------------------- verify ----

int run_verify(std::uint64_t seed, int count) {
  if (count < 1) throw std::invalid_argument("count must be >= 1");
  constexpr double two_pi = 2.0 * std::numbers::pi;
  SeededRng rng(seed);
  double worst = 0.0;
  const auto report = [&](const char* name, double dev, int cases) {
    std::cout << "check " << name << ": max deviation " << fmt(dev) << " over "
              << cases << " cases\n";
    worst = std::max(worst, dev);
  };

  {  // determinant identity behind the passive-partner independence
    double d = 0.0;
    for (int i = 0; i < count; ++i) {
      const SingleModeProbeParams p =
          sample_mixed_params(0.5 + 2.0 * rng.uniform(), rng);
      const GaussianState st = from_single_mode_params(p);
      const EncodingParams enc{0.1 + 0.9 * rng.uniform(),
                               rng.uniform(0.0, two_pi),
                               0.1 + 0.85 * rng.uniform()};
      d = std::max(d, verify_single_mode_identity(st, enc));
    }
    report("determinant_identity", d, count);
  }

  {  // lossy closed form against the finite-difference engine
    double d = 0.0;
    for (int i = 0; i < count; ++i) {
      const SingleModeProbeParams p =
          sample_mixed_params(0.5 + 2.0 * rng.uniform(), rng);
      const GaussianState st = from_single_mode_params(p);
      const double eps = 0.1 + 0.9 * rng.uniform();
      const double eta = 0.1 + 0.85 * rng.uniform();
      const double theta = rng.uniform(0.0, two_pi);
      const double engine = qfi_single_mode(st, {eps, theta, eta}).value;
      const double closed = qfi_sm_noisy_closed(
          {p.nu, p.alpha, 0.0, p.xi_mag, p.psi + p.phi}, eps, eta,
          theta + p.phi);
      d = std::max(d, rel_dev(closed, engine));
    }
    report("lossy_closed_form", d, count);
  }

  {  // noiseless two-mode closed form against quadrature
    const int cases = std::min(count, 8);
    double d = 0.0;
    for (int i = 0; i < cases; ++i) {
      const GaussianState st = sample_two_mode_pure(1.0 + 3.0 * rng.uniform(), rng);
      const double closed = avqfi_two_mode_noiseless(standard_form(st).params);
      const double quad =
          avqfi_numeric(st, 0.5, 1.0, ThetaPrior::uniform(), 256).mean;
      d = std::max(d, rel_dev(closed, quad));
    }
    report("two_mode_closed_form", d, cases);
  }

  {  // direction variance closed form against quadrature
    double d = 0.0;
    for (int i = 0; i < count; ++i) {
      SingleModeProbeParams p = sample_mixed_params(0.5 + 2.0 * rng.uniform(), rng);
      p.phi = 0.0;  // closed form is stated in the phi = 0 frame
      const GaussianState st = from_single_mode_params(p);
      const AvqfiResult a =
          avqfi_numeric(st, 0.5, 1.0, ThetaPrior::uniform(), 256);
      d = std::max(d, rel_dev(qfi_variance_noiseless(p), a.variance));
    }
    report("direction_variance", d, count);
  }

  {  // two-mode squeezed vacuum average against the regularized engine
    double d = 0.0;
    const double rs[] = {0.3, std::asinh(1.0), 1.2};
    for (const double r : rs) {
      const double closed = avqfi_tmsv_noiseless(r);
      const double quad =
          avqfi_numeric(tmsv(r), 0.5, 1.0, ThetaPrior::uniform(), 64).mean;
      d = std::max(d, rel_dev(closed, quad));
    }
    report("tmsv_average", d, 3);
  }

  if (worst > kOracleTol) {
    std::cout << "verify: WARN max deviation " << fmt(worst) << " exceeds "
              << fmt(kOracleTol) << "\n";
    return 4;
  }
  std::cout << "verify: OK\n";
  return 0;
}

void add_encoding_options(CLI::App* cmd, EncodingOpts& eo, bool with_theta) {
  cmd->add_option("--epsilon", eo.epsilon, "squeezing strength being estimated")
      ->capture_default_str();
  if (with_theta)
    cmd->add_option("--theta", eo.theta, "encoding direction")
        ->capture_default_str();
  cmd->add_option("--eta", eo.eta, "loss transmissivity in [0, 1]")
      ->capture_default_str();
  cmd->add_option("--nodes", eo.nodes, "direction-quadrature node count")
      ->capture_default_str();
}

void add_output_options(CLI::App* cmd, OutputOpts& oo) {
  cmd->add_option("--out", oo.out, "output file (default: stdout)");
  cmd->add_option("--format", oo.format, "output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Quantum Fisher information for squeezing-strength estimation with "
      "Gaussian probes"};
  app.require_subcommand(1);

  // qfi
  CLI::App* qfi_cmd =
      app.add_subcommand("qfi", "QFI of a probe at a fixed encoding direction");
  ProbeOpts qfi_probe;
  EncodingOpts qfi_enc;
  OutputOpts qfi_out;
  bool qfi_oracle = false;
  add_probe_options(qfi_cmd, qfi_probe);
  add_encoding_options(qfi_cmd, qfi_enc, true);
  add_output_options(qfi_cmd, qfi_out);
  qfi_cmd->add_flag("--oracle", qfi_oracle,
                    "cross-check against an independent evaluation");

  // avqfi
  CLI::App* avqfi_cmd = app.add_subcommand(
      "avqfi", "direction-averaged QFI of a probe");
  ProbeOpts avqfi_probe;
  EncodingOpts avqfi_enc;
  OutputOpts avqfi_out;
  std::string avqfi_prior = "uniform";
  bool avqfi_oracle = false;
  add_probe_options(avqfi_cmd, avqfi_probe);
  add_encoding_options(avqfi_cmd, avqfi_enc, false);
  add_output_options(avqfi_cmd, avqfi_out);
  avqfi_cmd
      ->add_option("--prior", avqfi_prior,
                   "'uniform' or a file of direction-density values on a "
                   "uniform grid over [0, 2pi)")
      ->capture_default_str();
  avqfi_cmd->add_flag("--oracle", avqfi_oracle,
                      "cross-check against an independent evaluation");

  // sample
  CLI::App* sample_cmd = app.add_subcommand(
      "sample", "draw random single-mode probes at fixed photon number");
  double sample_n_a = 0.0;
  long long sample_count = 0;
  std::uint64_t sample_seed = 0;
  bool sample_pure = false;
  EncodingOpts sample_enc;
  OutputOpts sample_out;
  sample_out.format = "csv";
  sample_cmd->add_option("--n-a", sample_n_a, "mean photon number of each probe")
      ->required();
  sample_cmd->add_option("--count", sample_count, "number of probes to draw")
      ->required();
  sample_cmd->add_option("--seed", sample_seed, "RNG seed")
      ->capture_default_str();
  sample_cmd->add_flag("--pure", sample_pure,
                       "draw pure probes only (default: mixed)");
  add_encoding_options(sample_cmd, sample_enc, false);
  add_output_options(sample_cmd, sample_out);

  // sweep
  CLI::App* sweep_cmd = app.add_subcommand(
      "sweep", "optimal single-mode probe vs two-mode reference over a grid");
  std::string sweep_n, sweep_n_total, sweep_eta, sweep_mode;
  EncodingOpts sweep_enc;
  sweep_enc.epsilon = 1.0;
  OutputOpts sweep_out;
  sweep_out.format = "csv";
  CLI::Option* sweep_n_opt = sweep_cmd->add_option(
      "--n-a", sweep_n, "per-mode photon axis as 'lo:hi:count' or one value");
  CLI::Option* sweep_nt_opt = sweep_cmd->add_option(
      "--n-total", sweep_n_total,
      "total photon axis as 'lo:hi:count' or one value");
  sweep_cmd
      ->add_option("--eta", sweep_eta,
                   "transmissivity axis as 'lo:hi:count' or one value")
      ->required();
  CLI::Option* sweep_mode_opt =
      sweep_cmd->add_option("--mode", sweep_mode, "photon-budget convention")
          ->check(CLI::IsMember({"fixed_nA", "fixed_N"}));
  sweep_cmd->add_option("--epsilon", sweep_enc.epsilon, "encoding strength")
      ->capture_default_str();
  sweep_cmd->add_option("--nodes", sweep_enc.nodes, "quadrature node count")
      ->capture_default_str();
  add_output_options(sweep_cmd, sweep_out);

  // verify
  CLI::App* verify_cmd = app.add_subcommand(
      "verify", "run the closed-form / engine cross-check suite");
  std::uint64_t verify_seed = 1;
  int verify_count = 20;
  verify_cmd->add_option("--seed", verify_seed, "RNG seed")
      ->capture_default_str();
  verify_cmd->add_option("--count", verify_count, "cases per check")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (qfi_cmd->parsed())
      return run_qfi(qfi_probe, qfi_enc, qfi_out, qfi_oracle);
    if (avqfi_cmd->parsed())
      return run_avqfi(avqfi_probe, avqfi_enc, avqfi_out, avqfi_prior,
                       avqfi_oracle);
    if (sample_cmd->parsed())
      return run_sample(sample_n_a, sample_count, sample_seed, sample_pure,
                        sample_enc, sample_out);
    if (sweep_cmd->parsed())
      return run_sweep_cmd(sweep_n, sweep_n_total, sweep_eta, sweep_n_opt,
                           sweep_nt_opt, sweep_mode_opt, sweep_mode, sweep_enc,
                           sweep_out);
    if (verify_cmd->parsed()) return run_verify(verify_seed, verify_count);
  } catch (const rank_change_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
