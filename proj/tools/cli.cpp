#include "cli.hpp"

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ntas/errors.hpp"
#include "ntas/sweeps.hpp"
#include "ntas/validation.hpp"

namespace ntas::cli {

namespace {

struct SharedFlags {
  std::string scheme = "both";
  std::vector<int> n_list;
  int n_t = 2;
  int n_r = 3;
  std::string snr_db = "0:30:1";
  std::optional<double> rate;
  std::optional<double> gamma_o;
  std::uint64_t trials = 1'000'000;
  std::uint64_t seed = mc::SimSettings{}.master_seed;
  std::uint64_t partition_width = mc::SimSettings{}.partition_width;
  unsigned workers = 0;
  std::optional<double> omega;
  std::optional<double> b1;
  std::optional<double> b2;
  std::string out;
  std::string format;
};

std::vector<Scheme> parse_schemes(const std::string& s) {
  if (s == "both") return {Scheme::TasMrc, Scheme::TasSc};
  return {parse_scheme(s)};
}

SweepSpec to_spec(const SharedFlags& f) {
  SweepSpec spec;
  spec.schemes = parse_schemes(f.scheme);
  spec.n_list = f.n_list;
  spec.n_t = f.n_t;
  spec.n_r = f.n_r;
  spec.grid = SnrGrid::parse(f.snr_db);
  if (f.rate) {
    const auto q = OutageQuery::rate(*f.rate);
    spec.rate = f.rate;
    spec.gamma_o = q.gamma_o();
  } else {
    spec.gamma_o = OutageQuery::threshold(f.gamma_o.value_or(1.0)).gamma_o();
  }
  spec.settings.trials = f.trials;
  spec.settings.master_seed = f.seed;
  spec.settings.partition_width = f.partition_width;
  spec.settings.workers = f.workers;
  spec.omega = f.omega;
  spec.b1 = f.b1;
  spec.b2 = f.b2;
  spec.validate();
  return spec;
}

// Writes `body` to --out when given, otherwise to `out`.
template <class Body>
void emit(const std::string& path, std::ostream& out, Body body) {
  if (path.empty()) {
    body(out);
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw std::runtime_error("cannot open output file '" + path + "'");
  body(file);
  file.flush();
  if (!file) throw std::runtime_error("failed writing output file '" + path + "'");
}

void add_common(CLI::App* sub, SharedFlags& f) {
  sub->add_option("--scheme", f.scheme, "tas-mrc, tas-sc or both")
      ->check(CLI::IsMember({"tas-mrc", "tas-sc", "both"}))
      ->capture_default_str();
  sub->add_option("--n", f.n_list, "cascade orders, comma separated")->delimiter(',');
  sub->add_option("--nt", f.n_t, "transmit antennas")->capture_default_str();
  sub->add_option("--nr", f.n_r, "receive antennas")->capture_default_str();
  sub->add_option("--format", f.format, "output format")->check(CLI::IsMember({"csv", "json"}));
  sub->add_option("--out", f.out, "output path (default stdout)");
}

void add_sweep(CLI::App* sub, SharedFlags& f) {
  add_common(sub, f);
  sub->add_option("--snr-db", f.snr_db, "mean SNR grid start:stop:step in dB")->capture_default_str();
  auto* rate = sub->add_option("--rate", f.rate, "target rate R; threshold 2^R - 1");
  auto* go = sub->add_option("--gamma-o", f.gamma_o, "linear outage threshold (default 1)");
  rate->excludes(go);
  sub->add_option("--trials", f.trials, "Monte-Carlo trials (0 = analytics only)")->capture_default_str();
  sub->add_option("--seed", f.seed, "master seed")->capture_default_str();
  sub->add_option("--partition-width", f.partition_width, "trials per scheduling partition")->capture_default_str();
  sub->add_option("--workers", f.workers, "worker threads (0 = all cores)")->capture_default_str();
  sub->add_option("--omega", f.omega, "calibration factor on beta (overrides per-scheme default)");
  sub->add_option("--b1", f.b1, "TAS/MRC moment weighting coefficient");
  sub->add_option("--b2", f.b2, "TAS/SC moment weighting coefficient");
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Outage and amount-of-fading analysis of TAS/MRC and TAS/SC over cascaded Rayleigh channels", "ntas"};
  app.set_config("--config", "", "TOML/INI configuration file; flags override file values");
  app.require_subcommand(1);

  SharedFlags params_flags;
  params_flags.n_list = {1, 2, 3, 4, 5};
  auto* params = app.add_subcommand("params", "fading severity, diversity order and coding gain table");
  add_common(params, params_flags);

  SharedFlags outage_flags;
  outage_flags.n_list = {2, 3, 4, 5};
  auto* outage_cmd = app.add_subcommand("outage-sweep", "analytic, asymptotic and simulated outage vs mean SNR");
  add_sweep(outage_cmd, outage_flags);

  SharedFlags af_flags;
  af_flags.n_list = {2, 3, 4, 5, 6};
  af_flags.n_r = 2;
  auto* af_cmd = app.add_subcommand("af-sweep", "amount of fading: closed form, bound, quadrature oracle, simulation");
  add_sweep(af_cmd, af_flags);

  SharedFlags val_flags;
  bool skip_determinism = false;
  auto* validate = app.add_subcommand("validate", "run the acceptance checklist; exit 2 on failure");
  validate->add_option("--trials", val_flags.trials, "Monte-Carlo trials")->capture_default_str();
  validate->add_option("--seed", val_flags.seed, "master seed")->capture_default_str();
  validate->add_option("--partition-width", val_flags.partition_width, "trials per scheduling partition")
      ->capture_default_str();
  validate->add_option("--workers", val_flags.workers, "worker threads (0 = all cores)")->capture_default_str();
  validate->add_option("--omega", val_flags.omega, "TAS/MRC calibration used in the simulation check");
  validate->add_option("--out", val_flags.out, "report path (default stdout)");
  validate->add_flag("--skip-determinism", skip_determinism, "do not re-run for the determinism criterion");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << "ntas: " << e.what() << "\n";
    return kUsageError;
  }

  try {
    if (params->parsed()) {
      const auto rows = cmd_params(params_flags.n_list, params_flags.n_t, params_flags.n_r,
                                   parse_schemes(params_flags.scheme));
      emit(params_flags.out, out, [&](std::ostream& os) {
        if (params_flags.format == "json") {
          write_params_json(os, rows);
        } else if (params_flags.format == "csv") {
          os << "scheme,n,n_t,n_r,m,omega,a,d,cg_printed,cg_extracted\n";
          for (const auto& r : rows) {
            os << to_string(r.scheme) << ',' << r.n << ',' << r.n_t << ',' << r.n_r << ',' << format_double(r.m)
               << ',' << format_double(r.omega) << ',' << format_double(r.a) << ',' << format_double(r.diversity)
               << ',' << format_double(r.cg_printed) << ',' << format_double(r.cg_extracted) << "\n";
          }
        } else {
          write_params_table(os, rows);
        }
      });
      return kSuccess;
    }
    if (outage_cmd->parsed()) {
      const SweepSpec spec = to_spec(outage_flags);
      const auto rows = run_outage_sweep(spec);
      const auto fmt = parse_format(outage_flags.format.empty() ? "csv" : outage_flags.format);
      emit(outage_flags.out, out, [&](std::ostream& os) { write_outage(os, spec, rows, fmt); });
      return kSuccess;
    }
    if (af_cmd->parsed()) {
      const SweepSpec spec = to_spec(af_flags);
      const auto rows = run_af_sweep(spec);
      const auto fmt = parse_format(af_flags.format.empty() ? "csv" : af_flags.format);
      emit(af_flags.out, out, [&](std::ostream& os) { write_af(os, spec, rows, fmt); });
      return kSuccess;
    }
    if (validate->parsed()) {
      ValidationOptions opts;
      opts.settings.trials = val_flags.trials;
      opts.settings.master_seed = val_flags.seed;
      opts.settings.partition_width = val_flags.partition_width;
      opts.settings.workers = val_flags.workers;
      opts.mrc_omega = val_flags.omega;
      opts.check_determinism = !skip_determinism;
      const ValidationReport report = run_validation(opts);
      emit(val_flags.out, out, [&](std::ostream& os) { os << serialize(report) << "\n"; });
      for (const auto& c : report.criteria) {
        err << (c.pass ? "PASS" : (c.gating ? "FAIL" : "WARN")) << "  [" << c.id << "] " << c.name << "\n";
      }
      return report.all_pass ? kSuccess : kValidationFailure;
    }
  } catch (const ConvergenceError& e) {
    err << "ntas: numerical non-convergence: " << e.what() << "\n";
    return kNonConvergence;
  } catch (const NonPhysicalError& e) {
    err << "ntas: numerical failure: " << e.what() << "\n";
    return kNonConvergence;
  } catch (const std::logic_error& e) {
    // DomainError, CoefficientLookupError and other argument problems.
    err << "ntas: " << e.what() << "\n";
    return kUsageError;
  } catch (const std::exception& e) {
    err << "ntas: " << e.what() << "\n";
    return kUsageError;
  }
  return kUsageError;
}

}  // namespace ntas::cli
