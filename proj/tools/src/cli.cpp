#include "sqkd/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <thread>

#include "sqkd/analysis.hpp"
#include "sqkd/attack_oracle.hpp"
#include "sqkd/errors.hpp"
#include "sqkd/mub.hpp"
#include "sqkd/report.hpp"
#include "sqkd/sim.hpp"

namespace sqkd {
namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct CurveFlags {
  int d = 3;
  int mubs = 3;
  std::string scenario = "dependent";
  std::string convention = "per-outcome";
  std::string lambda_entropy = "pair";

  RateConfig config() const {
    RateConfig c;
    c.dim = d;
    c.n_mubs = mubs;
    c.scenario = parse_scenario(scenario);
    c.convention = parse_convention(convention);
    c.options.lambda_entropy = parse_lambda_entropy(lambda_entropy);
    return c;
  }
};

void add_curve_flags(CLI::App* cmd, CurveFlags& f) {
  cmd->add_option("--d", f.d, "Dimension (3 or 4)")->capture_default_str();
  cmd->add_option("--mubs", f.mubs, "Number of bases including the computational one")->capture_default_str();
  cmd->add_option("--scenario", f.scenario, "dependent | independent")->capture_default_str();
  cmd->add_option("--convention", f.convention, "per-outcome | total-split")->capture_default_str();
  cmd->add_option("--lambda-entropy", f.lambda_entropy, "pair | binary-sum")->capture_default_str();
}

std::string one_line(std::string text) {
  std::replace(text.begin(), text.end(), '\n', ' ');
  return text;
}

// Sends fn's output to path, or to out when path is empty.
void emit(const std::string& path, std::ostream& out, const std::function<void(std::ostream&)>& fn) {
  if (path.empty()) {
    fn(out);
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw UsageError("cannot open output file " + path);
  fn(file);
  if (!file) throw UsageError("failed writing " + path);
}

std::vector<double> parse_range(const std::string& text) {
  std::vector<double> parts;
  std::stringstream in(text);
  std::string piece;
  while (std::getline(in, piece, ':')) {
    try {
      std::size_t used = 0;
      parts.push_back(std::stod(piece, &used));
      if (used != piece.size()) throw std::invalid_argument(piece);
    } catch (const std::exception&) {
      throw UsageError("bad number '" + piece + "' in --q range");
    }
  }
  if (parts.size() != 3) throw UsageError("--q expects start:stop:step");
  return parts;
}

std::vector<ThresholdResult> all_thresholds(const RateConfig& base) {
  std::vector<ThresholdResult> out;
  for (auto [d, n] : supported_configurations()) {
    for (Scenario s : {Scenario::kDependent, Scenario::kIndependent}) {
      RateConfig c = base;
      c.dim = d;
      c.n_mubs = n;
      c.scenario = s;
      out.push_back(find_threshold(c));
    }
  }
  return out;
}

std::vector<ThresholdResult> thresholds_for_dim(const std::vector<ThresholdResult>& all, int d) {
  std::vector<ThresholdResult> out;
  std::copy_if(all.begin(), all.end(), std::back_inserter(out),
               [d](const ThresholdResult& r) { return r.config.dim == d; });
  return out;
}

std::vector<Curve> figure_curves(const RateConfig& base, int d, std::span<const double> grid) {
  std::vector<Curve> curves;
  for (Scenario s : {Scenario::kDependent, Scenario::kIndependent}) {
    for (auto [dim, n] : supported_configurations()) {
      if (dim != d) continue;
      RateConfig c = base;
      c.dim = d;
      c.n_mubs = n;
      c.scenario = s;
      std::string label = std::to_string(n) + " MUBs " + std::string(to_string(s));
      curves.push_back(Curve{label, sweep(c, grid)});
    }
  }
  return curves;
}

void write_curves_csv(std::ostream& out, std::span<const Curve> curves) {
  out << kSweepHeader << '\n';
  for (const auto& c : curves) write_sweep_csv(out, c.rows, false);
}

void write_conformance(std::ostream& out) {
  out << "lambda_entropy,convention,d,n_mubs,scenario,q_star,paper_reference,abs_diff,within_0.005\n";
  for (LambdaEntropy reading : {LambdaEntropy::kPair, LambdaEntropy::kBinarySum}) {
    for (MubConvention conv : {MubConvention::kPerOutcome, MubConvention::kTotalSplit}) {
      RateConfig base;
      base.convention = conv;
      base.options.lambda_entropy = reading;
      for (const auto& res : all_thresholds(base)) {
        const auto ref = reference_threshold(res.config.dim, res.config.n_mubs, res.config.scenario);
        const double diff = ref ? std::abs(res.q_star - *ref) : 0.0;
        out << to_string(reading) << ',' << to_string(conv) << ',' << res.config.dim << ','
            << res.config.n_mubs << ',' << to_string(res.config.scenario) << ',' << format_double(res.q_star)
            << ',' << (ref ? format_double(*ref) : "") << ',' << (ref ? format_double(diff) : "") << ','
            << (ref && diff <= 0.005 ? "yes" : "no") << '\n';
      }
    }
  }
}

void write_mub_check(std::ostream& out, int only_d, double& worst) {
  out << "d,basis_a,basis_b,max_deviation\n";
  for (int d : {3, 4}) {
    if (only_d != 0 && only_d != d) continue;
    const MubFamily family = mubs_for_dim(d);
    for (std::size_t i = 0; i < family.bases.size(); ++i) {
      worst = std::max(worst, orthonormality_deviation(family.bases[i]));
      for (std::size_t j = i + 1; j < family.bases.size(); ++j) {
        const double dev = verify_unbiased(family.bases[i], family.bases[j]);
        worst = std::max(worst, dev);
        out << d << ',' << to_string(family.bases[i].label) << ',' << to_string(family.bases[j].label) << ','
            << format_double(dev) << '\n';
      }
    }
  }
}

void write_verify_algebra(std::ostream& out, std::span<const double> qs) {
  out << "d,n_mubs,Q,unitarity_residual,symmetry_spread,t_identity_residual,bound,true_overlap_sum,slack,"
         "entropy_margin\n";
  for (auto [d, n] : supported_configurations()) {
    const MubFamily family = mubs_for_dim(d).prefix(n);
    for (double q : qs) {
      const AttackIsometry attack = depolarizing_isometry(d, q);
      double unitarity = isometry_residual(attack);
      for (const Basis& b : family.bases) unitarity = std::max(unitarity, eve_overlaps(attack, b).unitarity_residual);
      const double spread = eve_overlaps(attack, family.bases.front()).params.spread;
      const TIdentityCheck tid = check_t_identity(d, n, attack);
      const BoundCheck bound = check_overlap_bound(d, n, q);
      out << d << ',' << n << ',' << format_double(q) << ',' << format_double(unitarity) << ','
          << format_double(spread) << ',' << format_double(tid.residual) << ','
          << format_double(bound.bound.x_or_w) << ',' << format_double(bound.truth.real_sum) << ','
          << format_double(bound.slack) << ',' << format_double(bound.entropy_margin) << '\n';
    }
  }
}

void write_simulation(std::ostream& out, const ProtocolConfig& cfg, const ProtocolResult& res) {
  const EmpiricalStats& s = res.stats;
  out << "rounds=" << cfg.rounds << " seed=" << cfg.seed << " resend=" << s.resend_rounds
      << " reflect=" << s.reflect_rounds << '\n';
  out << "a,b,c,count\n";
  for (int a = 0; a < s.dim; ++a) {
    for (int b = 0; b < s.dim; ++b) {
      for (int c = 0; c < s.dim; ++c) out << a << ',' << b << ',' << c << ',' << s.n(a, b, c) << '\n';
    }
  }
  out << "basis,errors,trials\n";
  for (const auto& [label, table] : s.mub_counts) {
    std::uint64_t errors = 0, trials = 0;
    for (int i = 0; i < s.dim; ++i) {
      for (int j = 0; j < s.dim; ++j) {
        const std::uint64_t k = table[static_cast<std::size_t>(i * s.dim + j)];
        trials += k;
        if (i != j) errors += k;
      }
    }
    out << to_string(label) << ',' << errors << ',' << trials << '\n';
  }
  write_breakdown(out, res.key_rate);
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Key-rate bounds, thresholds and simulation for qudit semi-quantum key distribution", "sqkd"};
  app.require_subcommand(1);

  CurveFlags kr_flags;
  double kr_q = 0.0;
  auto* keyrate_cmd = app.add_subcommand("keyrate", "Evaluate one key rate and print every intermediate");
  add_curve_flags(keyrate_cmd, kr_flags);
  keyrate_cmd->add_option("--q", kr_q, "Noise parameter Q")->required();

  CurveFlags sw_flags;
  std::string sw_range, sw_format = "csv", sw_out;
  unsigned sw_threads = 1;
  auto* sweep_cmd = app.add_subcommand("sweep", "Key rate over a Q grid");
  add_curve_flags(sweep_cmd, sw_flags);
  sweep_cmd->add_option("--q", sw_range, "start:stop:step")->required();
  sweep_cmd->add_option("--format", sw_format, "csv | svg")->check(CLI::IsMember({"csv", "svg"}));
  sweep_cmd->add_option("--out", sw_out, "Output file (default stdout)");
  sweep_cmd->add_option("--threads", sw_threads, "Worker threads")->check(CLI::PositiveNumber);

  CurveFlags th_flags;
  bool th_all = false;
  std::string th_out;
  auto* threshold_cmd = app.add_subcommand("threshold", "First zero crossing of the key rate");
  add_curve_flags(threshold_cmd, th_flags);
  threshold_cmd->add_flag("--all", th_all, "Every supported configuration in table layout");
  threshold_cmd->add_option("--out", th_out, "Output file (default stdout)");

  CurveFlags sim_flags;
  ProtocolConfig sim_cfg;
  std::string sim_out;
  auto* simulate_cmd = app.add_subcommand("simulate", "Monte Carlo run of the protocol");
  add_curve_flags(simulate_cmd, sim_flags);
  simulate_cmd->add_option("--q", sim_cfg.q, "Noise parameter Q")->required();
  simulate_cmd->add_option("--rounds", sim_cfg.rounds, "Protocol rounds")->capture_default_str();
  simulate_cmd->add_option("--seed", sim_cfg.seed, "RNG seed")->capture_default_str();
  simulate_cmd->add_option("--threads", sim_cfg.threads, "Worker threads")->check(CLI::PositiveNumber);
  simulate_cmd->add_option("--prob-reflect", sim_cfg.prob_reflect, "Probability that Bob reflects")
      ->capture_default_str();
  simulate_cmd->add_option("--out", sim_out, "Output file (default stdout)");

  int mc_d = 0;
  auto* mub_cmd = app.add_subcommand("mub-check", "Orthonormality and unbiasedness of the built-in bases");
  mub_cmd->add_option("--d", mc_d, "Restrict to one dimension (3 or 4)");

  std::vector<double> va_qs{0.0, 0.01, 0.02, 0.03, 0.05};
  std::string va_out;
  auto* verify_cmd = app.add_subcommand("verify-algebra", "Check the bound algebra against explicit attacks");
  verify_cmd->add_option("--q", va_qs, "Noise values")->delimiter(',');
  verify_cmd->add_option("--out", va_out, "Output file (default stdout)");

  std::string rp_dir;
  std::string rp_convention = "per-outcome", rp_lambda = "pair";
  auto* reproduce_cmd = app.add_subcommand("reproduce", "Write threshold tables, figure curves and conformance CSVs");
  reproduce_cmd->add_option("--out-dir", rp_dir, "Directory for the CSV and SVG files")->required();
  reproduce_cmd->add_option("--convention", rp_convention, "per-outcome | total-split")->capture_default_str();
  reproduce_cmd->add_option("--lambda-entropy", rp_lambda, "pair | binary-sum")->capture_default_str();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: usage: " << one_line(e.what()) << '\n';
    return kExitUsage;
  }

  try {
    if (keyrate_cmd->parsed()) {
      const RateConfig c = kr_flags.config();
      write_breakdown(out, key_rate(c.model(kr_q), c.n_mubs, c.options));
    } else if (sweep_cmd->parsed()) {
      const RateConfig c = sw_flags.config();
      const auto r = parse_range(sw_range);
      const std::vector<double> grid = make_grid(r[0], r[1], r[2]);
      const std::vector<SweepRow> rows = sweep(c, grid, sw_threads);
      emit(sw_out, out, [&](std::ostream& os) {
        if (sw_format == "csv") {
          write_sweep_csv(os, rows);
        } else {
          const std::vector<Curve> curves{Curve{std::to_string(c.n_mubs) + " MUBs", rows}};
          write_svg(os, curves, "d = " + std::to_string(c.dim) + ", " + std::string(to_string(c.scenario)));
        }
      });
    } else if (threshold_cmd->parsed()) {
      const RateConfig c = th_flags.config();
      const std::vector<ThresholdResult> results = th_all ? all_thresholds(c) : std::vector{find_threshold(c)};
      emit(th_out, out, [&](std::ostream& os) { write_threshold_csv(os, results); });
    } else if (simulate_cmd->parsed()) {
      const RateConfig c = sim_flags.config();
      sim_cfg.dim = c.dim;
      sim_cfg.n_mubs = c.n_mubs;
      sim_cfg.scenario = c.scenario;
      const ProtocolResult res = run_protocol(sim_cfg);
      emit(sim_out, out, [&](std::ostream& os) { write_simulation(os, sim_cfg, res); });
    } else if (mub_cmd->parsed()) {
      if (mc_d != 0 && mc_d != 3 && mc_d != 4) throw UsageError("--d must be 3 or 4");
      double worst = 0.0;
      write_mub_check(out, mc_d, worst);
      if (worst > 1e-12) {
        err << "error: verification-failed: max deviation " << format_double(worst) << '\n';
        return kExitNumeric;
      }
    } else if (verify_cmd->parsed()) {
      emit(va_out, out, [&](std::ostream& os) { write_verify_algebra(os, va_qs); });
    } else if (reproduce_cmd->parsed()) {
      namespace fs = std::filesystem;
      fs::create_directories(rp_dir);
      RateConfig base;
      base.convention = parse_convention(rp_convention);
      base.options.lambda_entropy = parse_lambda_entropy(rp_lambda);
      const fs::path dir(rp_dir);
      const std::vector<ThresholdResult> all = all_thresholds(base);
      emit((dir / "table1_thresholds.csv").string(), out,
           [&](std::ostream& os) { write_threshold_csv(os, thresholds_for_dim(all, 3)); });
      emit((dir / "table3_thresholds.csv").string(), out,
           [&](std::ostream& os) { write_threshold_csv(os, thresholds_for_dim(all, 4)); });
      const std::vector<double> grid = make_grid(0.0, 0.1, 0.001);
      for (int d : {3, 4}) {
        const std::vector<Curve> curves = figure_curves(base, d, grid);
        const std::string stem = d == 3 ? "fig1_qutrit" : "fig2_ququart";
        emit((dir / (stem + ".csv")).string(), out, [&](std::ostream& os) { write_curves_csv(os, curves); });
        emit((dir / (stem + ".svg")).string(), out,
             [&](std::ostream& os) { write_svg(os, curves, "key rate, d = " + std::to_string(d)); });
      }
      emit((dir / "conformance.csv").string(), out, write_conformance);
      out << "wrote " << dir.string() << '\n';
    }
  } catch (const UsageError& e) {
    err << "error: usage: " << one_line(e.what()) << '\n';
    return kExitUsage;
  } catch (const DomainError& e) {
    err << "error: domain: " << one_line(e.what()) << '\n';
    return kExitUsage;
  } catch (const NoPositiveRateError& e) {
    err << "error: no-positive-rate: " << one_line(e.what()) << '\n';
    return kExitNumeric;
  } catch (const InsufficientDataError& e) {
    err << "error: insufficient-data: " << one_line(e.what()) << '\n';
    return kExitNumeric;
  } catch (const NumericFailure& e) {
    err << "error: numeric: " << one_line(e.what()) << '\n';
    return kExitNumeric;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: usage: " << one_line(e.what()) << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: internal: " << one_line(e.what()) << '\n';
    return kExitNumeric;
  }
  return kExitOk;
}

}  // namespace sqkd
