// Command-line front end: NF sweeps, clone sweeps, phase scans, crossing
// searches, and Monte-Carlo cross-checks, all emitted as CSV.

#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "cvamp/amplifier_nf.hpp"
#include "cvamp/csv.hpp"
#include "cvamp/experiment_chain.hpp"
#include "cvamp/metrics.hpp"
#include "cvamp/sampler.hpp"

namespace {

using namespace cvamp;

std::string default_out(const std::string& name) {
  const char* dir = std::getenv("CVAMP_OUT_DIR");
  return (dir != nullptr ? std::string(dir) + "/" : std::string()) + name;
}

// Config-file support: a `--config file` flag on any subcommand reads
// `key = value` lines (one per line, `#` comments) and splices them in as
// synthesized `--key=value` flags. Keys already given on the command line
// are skipped, so explicit flags win.
std::vector<std::string> expand_config(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  std::string path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) {
      path = args[i + 1];
    } else if (args[i].rfind("--config=", 0) == 0) {
      path = args[i].substr(9);
    }
  }
  if (path.empty()) return args;

  std::ifstream in(path);
  if (!in) {
    throw CLI::FileError::Missing(path);
  }
  auto trim = [](std::string s) {
    const auto b = s.find_first_not_of(" \t\r");
    const auto e = s.find_last_not_of(" \t\r");
    return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
  };
  std::string line;
  while (std::getline(in, line)) {
    if (const auto hash = line.find('#'); hash != std::string::npos) {
      line.erase(hash);
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) continue;
    const std::string flag = "--" + key;
    const bool given = std::any_of(
        args.begin(), args.end(), [&flag](const std::string& a) {
          return a == flag || a.rfind(flag + "=", 0) == 0;
        });
    if (!given) args.push_back(flag + "=" + value);
  }
  return args;
}

std::vector<double> linspace(double lo, double hi, int steps) {
  std::vector<double> xs;
  xs.reserve(steps);
  for (int i = 0; i < steps; ++i) {
    xs.push_back(steps == 1 ? lo : lo + (hi - lo) * i / (steps - 1));
  }
  return xs;
}

// Provenance: the effective option set, after config file and flags.
void echo_config(const CLI::App* cmd) {
  std::cerr << "# effective config [" << cmd->get_name() << "]\n";
  for (const auto* opt : cmd->get_options()) {
    if (opt->get_name() == "--help") continue;
    std::cerr << "# " << opt->get_name() << " = "
              << (opt->count() > 0 ? opt->as<std::string>()
                                   : opt->get_default_str())
              << "\n";
  }
}

struct SourceFlags {
  double squeezing_db = 4.3;
  double antisqueezing_db = 0.0;  // 0 = pure (1/v_sq)
  bool antisqueezing_set = false;

  SourceModel model() const {
    SourceModel src;
    src.v_sq = from_db(-squeezing_db);
    src.v_as = antisqueezing_set ? from_db(antisqueezing_db) : 1.0 / src.v_sq;
    if (!src.physical()) {
      throw std::invalid_argument(
          "unphysical source: v_sq * v_as = " +
          std::to_string(src.v_sq * src.v_as) + " < 1");
    }
    return src;
  }
};

struct LossFlags {
  double eta = 1.0;
  double window_t = 1.0;
  int windows = 0;
  double polarizer_t = 1.0;

  void apply(ChainConfig& cfg) const {
    cfg.detector_efficiency = eta;
    cfg.window_transmission = window_t;
    cfg.window_count = windows;
    cfg.polarizer_transmission = polarizer_t;
  }
};

void add_config_flag(CLI::App* cmd, std::string& path) {
  cmd->add_option("--config", path,
                  "Read options from a key = value file; flags win");
}

void add_source_flags(CLI::App* cmd, SourceFlags& f) {
  cmd->add_option("--squeezing-db", f.squeezing_db,
                  "Source squeezing in dB (noise reduction, positive)")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--antisqueezing-db", f.antisqueezing_db,
                  "Source antisqueezing in dB; omitted means a pure source")
      ->each([&f](const std::string&) { f.antisqueezing_set = true; });
}

void add_loss_flags(CLI::App* cmd, LossFlags& f) {
  cmd->add_option("--eta", f.eta, "Detector efficiency")
      ->check(CLI::Range(1e-6, 1.0))
      ->capture_default_str();
  cmd->add_option("--window-t", f.window_t, "Transmission per cell window")
      ->check(CLI::Range(1e-6, 1.0))
      ->capture_default_str();
  cmd->add_option("--windows", f.windows, "Number of cell windows per beam")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  cmd->add_option("--polarizer-t", f.polarizer_t, "Polarizer transmission")
      ->check(CLI::Range(1e-6, 1.0))
      ->capture_default_str();
}

int run_nf(double gain_min, double gain_max, int steps, double eta,
           const std::string& out) {
  CsvWriter csv({"gain", "nf_ideal", "nf_detector", "nf_simulated",
                 "nf_ideal_db", "nf_detector_db"});
  for (const NfRow& row : nf_sweep(linspace(gain_min, gain_max, steps), eta)) {
    csv.add_row({row.gain, row.ideal, row.with_detector, row.simulated,
                 to_db(row.ideal), to_db(row.with_detector)});
  }
  csv.write(out);
  return 0;
}

int run_clone_sweep(const SourceFlags& source, const LossFlags& loss,
                    double gain_min, double gain_max, int steps,
                    const std::string& out) {
  ChainConfig base;
  base.source = source.model();
  loss.apply(base);
  CsvWriter csv({"gain", "I", "g_insep", "E12", "E21", "inseparable", "epr"});
  for (const SweepRow& row :
       clone_sweep(base, linspace(gain_min, gain_max, steps))) {
    csv.add_row({format_number(row.gain), format_number(row.inseparability),
                 format_number(row.g_insep), format_number(row.e12),
                 format_number(row.e21), row.inseparable ? "1" : "0",
                 row.epr_entangled ? "1" : "0"});
  }
  csv.write(out);
  return 0;
}

int run_phase_scan(const SourceFlags& source, const LossFlags& loss,
                   double gain, double transmission, double g, int points,
                   const std::string& out) {
  ChainConfig cfg;
  cfg.source = source.model();
  loss.apply(cfg);
  cfg.gain = gain;
  cfg.transmission = transmission;
  std::vector<double> thetas;
  thetas.reserve(points);
  for (int i = 0; i < points; ++i) thetas.push_back(2.0 * M_PI * i / points);

  CsvWriter csv({"theta", "var_minus_db", "var_plus_db"});
  for (const PhaseScanPoint& p : phase_scan(cfg, g, thetas)) {
    csv.add_row({p.theta, to_db(p.var_minus), to_db(p.var_plus)});
  }
  csv.write(out);
  return 0;
}

int run_find_crossing(const SourceFlags& source, const LossFlags& loss,
                      const std::string& metric) {
  ChainConfig base;
  base.source = source.model();
  loss.apply(base);
  const CrossingMetric m = metric == "insep" ? CrossingMetric::Inseparability
                                             : CrossingMetric::Epr12;
  const std::optional<double> g_star = find_crossing(base, m);
  if (g_star) {
    std::cout << "G* = " << format_number(*g_star) << "\n";
  } else {
    std::cout << "no crossing\n";
  }
  return 0;
}

int run_sample_check(const std::string& scenario, std::uint64_t seed,
                     int shots, const SourceFlags& source, double gain,
                     const std::string& out) {
  GaussianState state = vacuum(1);
  if (scenario == "tmsv") {
    state = build_source(source.model());
  } else if (scenario == "chain") {
    state = run_chain(ideal_chain(source.model(), gain));
  }

  const Eigen::MatrixXd samples =
      sample_quadratures(state, {seed, shots, 1024});
  const int n_blocks = 50;
  const int block = shots / n_blocks;

  struct Check {
    std::string name;
    double analytic;
  };
  std::vector<Check> checks;
  if (scenario == "vacuum") {
    checks.push_back({"var_x", 1.0});
  } else {
    checks.push_back({"I", inseparability(state, 0, 1).inseparability});
    checks.push_back({"E12", epr(state, 0, 1).e12});
  }

  auto evaluate = [&](const std::string& name, const GaussianState& s) {
    if (name == "var_x") return quad_variance(s, 0, Quadrature::X);
    if (name == "I") return inseparability(s, 0, 1).inseparability;
    return epr(s, 0, 1).e12;
  };

  CsvWriter csv({"metric", "analytic", "empirical", "stderr", "status"});
  bool all_pass = true;
  for (const Check& c : checks) {
    Eigen::VectorXd values(n_blocks);
    for (int b = 0; b < n_blocks; ++b) {
      const MeanCov mc =
          empirical_covariance(samples.middleRows(b * block, block));
      GaussianState s;
      s.mean = mc.mean;
      s.cov = mc.cov;
      values(b) = evaluate(c.name, s);
    }
    const double empirical = values.mean();
    const double spread =
        (values.array() - empirical).square().sum() / (n_blocks - 1);
    const double se = std::sqrt(spread / n_blocks);
    const bool pass = std::abs(empirical - c.analytic) < 5.0 * se;
    all_pass = all_pass && pass;
    csv.add_row({c.name, format_number(c.analytic), format_number(empirical),
                 format_number(se), pass ? "PASS" : "FAIL"});
    std::cout << c.name << ": analytic " << format_number(c.analytic)
              << ", empirical " << format_number(empirical) << " +- "
              << format_number(se) << " -> " << (pass ? "PASS" : "FAIL")
              << "\n";
  }
  if (!out.empty()) csv.write(out);
  return all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Gaussian quantum-optics simulator: quantum-limited "
               "amplification and cloning of two-mode squeezed states"};
  app.require_subcommand(1);

  // nf
  auto* nf = app.add_subcommand("nf", "Noise-figure sweep over gain");
  std::string config_path;
  add_config_flag(nf, config_path);
  double nf_gmin = 1.0, nf_gmax = 5.0, nf_eta = 1.0;
  int nf_steps = 9;
  std::string nf_out = default_out("nf.csv");
  nf->add_option("--gain-min", nf_gmin)->check(CLI::Range(1.0, 1e9))->capture_default_str();
  nf->add_option("--gain-max", nf_gmax)->check(CLI::Range(1.0, 1e9))->capture_default_str();
  nf->add_option("--steps", nf_steps)->check(CLI::PositiveNumber)->capture_default_str();
  nf->add_option("--eta", nf_eta)->check(CLI::Range(1e-6, 1.0))->capture_default_str();
  nf->add_option("--out", nf_out)->capture_default_str();

  // clone-sweep
  auto* sweep = app.add_subcommand(
      "clone-sweep", "Entanglement metrics vs gain at unity gain-loss");
  add_config_flag(sweep, config_path);
  SourceFlags sweep_src;
  LossFlags sweep_loss;
  double sw_gmin = 1.0, sw_gmax = 4.0;
  int sw_steps = 31;
  std::string sweep_out = default_out("clone_sweep.csv");
  add_source_flags(sweep, sweep_src);
  add_loss_flags(sweep, sweep_loss);
  sweep->add_option("--gain-min", sw_gmin)->check(CLI::Range(1.0, 1e9))->capture_default_str();
  sweep->add_option("--gain-max", sw_gmax)->check(CLI::Range(1.0, 1e9))->capture_default_str();
  sweep->add_option("--steps", sw_steps)->check(CLI::PositiveNumber)->capture_default_str();
  sweep->add_option("--out", sweep_out)->capture_default_str();

  // phase-scan
  auto* scan = app.add_subcommand(
      "phase-scan", "Joint-quadrature variances vs homodyne phase");
  add_config_flag(scan, config_path);
  SourceFlags scan_src;
  LossFlags scan_loss;
  double scan_gain = 1.0, scan_t = -1.0, scan_g = 1.0;
  int scan_points = 360;
  std::string scan_out = default_out("phase_scan.csv");
  add_source_flags(scan, scan_src);
  add_loss_flags(scan, scan_loss);
  scan->add_option("--gain", scan_gain)->check(CLI::Range(1.0, 1e9))->capture_default_str();
  scan->add_option("--transmission", scan_t,
                   "Attenuator transmission; negative means 1/gain")
      ->capture_default_str();
  scan->add_option("--g", scan_g, "Electronic gain of the joint quadratures")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  scan->add_option("--points", scan_points)->check(CLI::PositiveNumber)->capture_default_str();
  scan->add_option("--out", scan_out)->capture_default_str();

  // find-crossing
  auto* crossing = app.add_subcommand(
      "find-crossing", "Gain at which a metric loses entanglement");
  add_config_flag(crossing, config_path);
  SourceFlags cross_src;
  LossFlags cross_loss;
  std::string cross_metric = "insep";
  add_source_flags(crossing, cross_src);
  add_loss_flags(crossing, cross_loss);
  crossing->add_option("--metric", cross_metric)
      ->check(CLI::IsMember({"insep", "epr12"}))
      ->capture_default_str();

  // sample-check
  auto* sample = app.add_subcommand(
      "sample-check", "Monte-Carlo cross-check of the analytic metrics");
  add_config_flag(sample, config_path);
  SourceFlags sample_src;
  std::string sample_scenario = "vacuum";
  std::uint64_t sample_seed = 0;
  int sample_shots = 1000000;
  double sample_gain = 2.0;
  std::string sample_out;
  sample->add_option("--scenario", sample_scenario)
      ->check(CLI::IsMember({"vacuum", "tmsv", "chain"}))
      ->capture_default_str();
  sample->add_option("--seed", sample_seed)->capture_default_str();
  sample->add_option("--shots", sample_shots)
      ->check(CLI::Range(100, 100000000))
      ->capture_default_str();
  sample->add_option("--gain", sample_gain)->check(CLI::Range(1.0, 1e9))->capture_default_str();
  add_source_flags(sample, sample_src);
  sample->add_option("--out", sample_out, "Optional CSV of the comparison");

  try {
    std::vector<std::string> args = expand_config(argc, argv);
    std::reverse(args.begin(), args.end());
    app.parse(std::move(args));
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*nf) {
      if (nf_gmin > nf_gmax) {
        throw std::invalid_argument("gain-min must be <= gain-max");
      }
      echo_config(nf);
      return run_nf(nf_gmin, nf_gmax, nf_steps, nf_eta, nf_out);
    }
    if (*sweep) {
      if (sw_gmin > sw_gmax) {
        throw std::invalid_argument("gain-min must be <= gain-max");
      }
      echo_config(sweep);
      return run_clone_sweep(sweep_src, sweep_loss, sw_gmin, sw_gmax,
                             sw_steps, sweep_out);
    }
    if (*scan) {
      echo_config(scan);
      return run_phase_scan(scan_src, scan_loss, scan_gain, scan_t, scan_g,
                            scan_points, scan_out);
    }
    if (*crossing) {
      echo_config(crossing);
      return run_find_crossing(cross_src, cross_loss, cross_metric);
    }
    if (*sample) {
      echo_config(sample);
      return run_sample_check(sample_scenario, sample_seed, sample_shots,
                              sample_src, sample_gain, sample_out);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
