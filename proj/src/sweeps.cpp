#include "ntas/sweeps.hpp"

#include <charconv>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <string>

#include "ntas/errors.hpp"

namespace ntas {

namespace {

using json = nlohmann::ordered_json;

double parse_number(std::string_view s, std::string_view what) {
  double v = 0.0;
  const auto* first = s.data();
  const auto* last = s.data() + s.size();
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last) {
    throw DomainError("invalid " + std::string(what) + " '" + std::string(s) + "'");
  }
  return v;
}

std::string opt_field(const std::optional<double>& v) { return v ? format_double(*v) : std::string(); }

void write_header(std::ostream& os, std::string_view command, const SweepSpec& spec) {
  os << "# ntas " << command << "\n# config: " << spec.resolved().dump() << "\n";
}

}  // namespace

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

SnrGrid SnrGrid::parse(std::string_view text) {
  const auto c1 = text.find(':');
  const auto c2 = c1 == std::string_view::npos ? c1 : text.find(':', c1 + 1);
  if (c2 == std::string_view::npos) {
    throw DomainError("SNR grid must be start:stop:step, got '" + std::string(text) + "'");
  }
  SnrGrid g{parse_number(text.substr(0, c1), "grid start"), parse_number(text.substr(c1 + 1, c2 - c1 - 1), "grid stop"),
            parse_number(text.substr(c2 + 1), "grid step")};
  g.validate();
  return g;
}

void SnrGrid::validate() const {
  if (!(start_db < stop_db)) throw DomainError("SNR grid: start must be < stop");
  if (!(step_db > 0.0)) throw DomainError("SNR grid: step must be > 0");
}

std::vector<double> SnrGrid::values_db() const {
  validate();
  std::vector<double> out;
  const auto count = static_cast<long>(std::floor((stop_db - start_db) / step_db + 1e-9));
  for (long i = 0; i <= count; ++i) {
    // Snap to 1e-9 dB so grids like 0:1:0.1 print cleanly.
    out.push_back(std::round((start_db + static_cast<double>(i) * step_db) * 1e9) / 1e9);
  }
  return out;
}

OutputFormat parse_format(std::string_view text) {
  if (text == "csv") return OutputFormat::Csv;
  if (text == "json") return OutputFormat::Json;
  throw DomainError("unknown format '" + std::string(text) + "' (expected csv or json)");
}

void SweepSpec::validate() const {
  if (schemes.empty()) throw DomainError("no scheme selected");
  if (n_list.empty()) throw DomainError("n list must not be empty");
  for (int n : n_list) CascadeOrder{n};
  if (n_t < 1 || n_r < 1) throw DomainError("antenna counts must be >= 1");
  grid.validate();
  if (!(gamma_o > 0.0)) throw DomainError("outage threshold must be > 0");
  if (omega && !(*omega > 0.0)) throw DomainError("omega must be > 0");
  if (settings.partition_width < 1) throw DomainError("partition width must be >= 1");
}

ChannelConfig SweepSpec::config_for(int n, double mean_snr) const {
  ChannelConfig cfg{CascadeOrder{n}, n_t, n_r, mean_snr, omega};
  cfg.validate();
  return cfg;
}

json SweepSpec::resolved() const {
  json j;
  json sch = json::array();
  json omegas = json::object();
  const ChannelConfig probe{CascadeOrder{1}, n_t, n_r, 1.0, omega};
  for (Scheme s : schemes) {
    sch.push_back(std::string(to_string(s)));
    omegas[std::string(to_string(s))] = probe.omega_for(s);
  }
  j["schemes"] = sch;
  j["n"] = n_list;
  j["n_t"] = n_t;
  j["n_r"] = n_r;
  j["snr_db"] = {{"start", grid.start_db}, {"stop", grid.stop_db}, {"step", grid.step_db}};
  j["gamma_o"] = gamma_o;
  j["rate"] = rate ? json(*rate) : json(nullptr);
  j["omega"] = omegas;
  json coeffs = json::object();
  for (int n : n_list) {
    json c;
    try {
      const auto d = default_weighting(CascadeOrder{n});
      c = {{"b1", b1.value_or(d.b1)}, {"b2", b2.value_or(d.b2)}};
    } catch (const CoefficientLookupError&) {
      c = {{"b1", b1 ? json(*b1) : json(nullptr)}, {"b2", b2 ? json(*b2) : json(nullptr)}};
    }
    coeffs[std::to_string(n)] = c;
  }
  j["weighting"] = coeffs;
  j["trials"] = settings.trials;
  j["seed"] = settings.master_seed;
  j["partition_width"] = settings.partition_width;
  return j;
}

std::vector<ParamsRow> cmd_params(const std::vector<int>& n_list, int n_t, int n_r, const std::vector<Scheme>& schemes) {
  if (n_list.empty()) throw DomainError("n list must not be empty");
  if (n_t < 1 || n_r < 1) throw DomainError("antenna counts must be >= 1");
  std::vector<ParamsRow> rows;
  for (Scheme s : schemes) {
    for (int n : n_list) {
      const ChannelConfig cfg{CascadeOrder{n}, n_t, n_r, 1.0, std::nullopt};
      const FadingParams fp = fading_params(cfg.n);
      const CodingGain cg = coding_gain(s, cfg);
      rows.push_back({s, n, n_t, n_r, fp.m, fp.omega, fp.m * n_r, diversity_order(s, cfg), cg.printed, cg.extracted});
    }
  }
  return rows;
}

void write_params_table(std::ostream& os, const std::vector<ParamsRow>& rows) {
  os << std::left << std::setw(8) << "scheme" << std::right << std::setw(4) << "n" << std::setw(5) << "n_t"
     << std::setw(5) << "n_r" << std::setw(10) << "m" << std::setw(10) << "Omega" << std::setw(10) << "a"
     << std::setw(10) << "d" << std::setw(14) << "cg_printed" << std::setw(14) << "cg_extracted"
     << std::setw(12) << "cg_pr_dB" << std::setw(12) << "cg_ex_dB" << "\n";
  for (const auto& r : rows) {
    os << std::left << std::setw(8) << to_string(r.scheme) << std::right << std::setw(4) << r.n << std::setw(5)
       << r.n_t << std::setw(5) << r.n_r << std::fixed << std::setprecision(4) << std::setw(10) << r.m
       << std::setw(10) << r.omega << std::setw(10) << r.a << std::setw(10) << r.diversity
       << std::defaultfloat << std::setprecision(6) << std::setw(14) << r.cg_printed << std::setw(14)
       << r.cg_extracted << std::fixed << std::setprecision(2) << std::setw(12) << linear_to_db(r.cg_printed)
       << std::setw(12) << linear_to_db(r.cg_extracted) << std::defaultfloat << "\n";
  }
}

void write_params_json(std::ostream& os, const std::vector<ParamsRow>& rows) {
  json arr = json::array();
  for (const auto& r : rows) {
    arr.push_back({{"scheme", to_string(r.scheme)},
                   {"n", r.n},
                   {"n_t", r.n_t},
                   {"n_r", r.n_r},
                   {"m", r.m},
                   {"omega", r.omega},
                   {"a", r.a},
                   {"d", r.diversity},
                   {"cg_printed", r.cg_printed},
                   {"cg_extracted", r.cg_extracted}});
  }
  os << json{{"rows", arr}}.dump(2) << "\n";
}

std::vector<OutageRow> run_outage_sweep(const SweepSpec& spec) {
  spec.validate();
  const std::vector<double> grid_db = spec.grid.values_db();
  std::vector<double> grid_lin;
  for (double db : grid_db) grid_lin.push_back(db_to_linear(db));
  const auto query = OutageQuery::threshold(spec.gamma_o);

  std::vector<OutageRow> rows;
  for (Scheme s : spec.schemes) {
    for (int n : spec.n_list) {
      const ChannelConfig base = spec.config_for(n, 1.0);
      std::vector<mc::EmpiricalEstimate> empirical;
      if (spec.settings.trials > 0) {
        empirical = mc::empirical_outage_sweep(s, base, spec.gamma_o, grid_lin, spec.settings);
      }
      for (std::size_t i = 0; i < grid_db.size(); ++i) {
        const ChannelConfig cfg = base.with_mean_snr(grid_lin[i]);
        OutageRow r{s, n, spec.n_t, spec.n_r, grid_db[i], spec.gamma_o, outage(s, query, cfg),
                    outage_asymptotic(s, query, cfg).probability, std::nullopt, false};
        if (!empirical.empty()) {
          r.mc = empirical[i];
          r.low_confidence = empirical[i].value < 10.0 / static_cast<double>(spec.settings.trials);
        }
        rows.push_back(r);
      }
    }
  }
  return rows;
}

void write_outage(std::ostream& os, const SweepSpec& spec, const std::vector<OutageRow>& rows, OutputFormat fmt) {
  if (fmt == OutputFormat::Json) {
    json arr = json::array();
    for (const auto& r : rows) {
      json row{{"scheme", to_string(r.scheme)},
               {"n", r.n},
               {"n_t", r.n_t},
               {"n_r", r.n_r},
               {"snr_db", r.snr_db},
               {"gamma_o", r.gamma_o},
               {"p_out_analytic", r.p_out_analytic},
               {"p_out_asymptotic", r.p_out_asymptotic}};
      row["p_out_mc"] = r.mc ? json(r.mc->value) : json(nullptr);
      row["ci_low"] = r.mc ? json(r.mc->ci95_low) : json(nullptr);
      row["ci_high"] = r.mc ? json(r.mc->ci95_high) : json(nullptr);
      row["trials"] = spec.settings.trials;
      row["seed"] = spec.settings.master_seed;
      row["low_confidence"] = r.low_confidence;
      arr.push_back(row);
    }
    os << json{{"command", "outage-sweep"}, {"config", spec.resolved()}, {"rows", arr}}.dump(2) << "\n";
    return;
  }
  write_header(os, "outage-sweep", spec);
  os << kOutageColumns << "\n";
  for (const auto& r : rows) {
    os << to_string(r.scheme) << ',' << r.n << ',' << r.n_t << ',' << r.n_r << ',' << format_double(r.snr_db) << ','
       << format_double(r.gamma_o) << ',' << format_double(r.p_out_analytic) << ','
       << format_double(r.p_out_asymptotic) << ',';
    if (r.mc) {
      os << format_double(r.mc->value) << ',' << format_double(r.mc->ci95_low) << ','
         << format_double(r.mc->ci95_high);
    } else {
      os << ",,";
    }
    os << ',' << spec.settings.trials << ',' << spec.settings.master_seed << ',' << (r.low_confidence ? 1 : 0)
       << "\n";
  }
}

std::vector<AfRow> run_af_sweep(const SweepSpec& spec) {
  spec.validate();
  const double mean_snr = db_to_linear(spec.grid.start_db);
  std::vector<AfRow> rows;
  for (Scheme s : spec.schemes) {
    for (int n : spec.n_list) {
      WeightingCoefficients w{};
      if (spec.b1 && spec.b2) {
        w = {*spec.b1, *spec.b2};
      } else {
        try {
          w = default_weighting(CascadeOrder{n});
        } catch (const CoefficientLookupError&) {
          throw CoefficientLookupError("af-sweep: no tabulated " +
                                       std::string(spec.b1 ? "b2" : spec.b2 ? "b1" : "b1/b2") +
                                       " for n=" + std::to_string(n) +
                                       " (tabulated for n in 2..6); supply --b1 and --b2");
        }
        if (spec.b1) w.b1 = *spec.b1;
        if (spec.b2) w.b2 = *spec.b2;
      }
      const ChannelConfig cfg = spec.config_for(n, mean_snr);
      AfRow r{s, n, spec.n_t, spec.n_r, w.b1, w.b2, std::nullopt, {}, std::nullopt, af_oracle(s, cfg), std::nullopt};
      try {
        r.af_closed = amount_of_fading(s, cfg, w);
      } catch (const NonPhysicalError& e) {
        r.af_closed_error = e.what();
      }
      if (s == Scheme::TasMrc) r.af_bound = af_bound_tas_mrc(cfg);
      if (spec.settings.trials > 0) r.af_mc = mc::estimate_moments_af(s, cfg, spec.settings).af;
      rows.push_back(r);
    }
  }
  return rows;
}

void write_af(std::ostream& os, const SweepSpec& spec, const std::vector<AfRow>& rows, OutputFormat fmt) {
  if (fmt == OutputFormat::Json) {
    json arr = json::array();
    for (const auto& r : rows) {
      json row{{"scheme", to_string(r.scheme)}, {"n", r.n}, {"n_t", r.n_t}, {"n_r", r.n_r}, {"b1", r.b1}, {"b2", r.b2}};
      row["af_closed"] = r.af_closed ? json(*r.af_closed) : json(nullptr);
      if (!r.af_closed_error.empty()) row["af_closed_error"] = r.af_closed_error;
      row["af_bound"] = r.af_bound ? json(*r.af_bound) : json(nullptr);
      row["af_oracle"] = r.af_oracle;
      row["af_mc"] = r.af_mc ? json(r.af_mc->value) : json(nullptr);
      row["ci_low"] = r.af_mc ? json(r.af_mc->ci95_low) : json(nullptr);
      row["ci_high"] = r.af_mc ? json(r.af_mc->ci95_high) : json(nullptr);
      arr.push_back(row);
    }
    os << json{{"command", "af-sweep"}, {"config", spec.resolved()}, {"rows", arr}}.dump(2) << "\n";
    return;
  }
  write_header(os, "af-sweep", spec);
  os << kAfColumns << "\n";
  for (const auto& r : rows) {
    os << to_string(r.scheme) << ',' << r.n << ',' << r.n_t << ',' << r.n_r << ',' << format_double(r.b1) << ','
       << format_double(r.b2) << ',' << opt_field(r.af_closed) << ',' << opt_field(r.af_bound) << ','
       << format_double(r.af_oracle) << ',';
    if (r.af_mc) {
      os << format_double(r.af_mc->value) << ',' << format_double(r.af_mc->ci95_low) << ','
         << format_double(r.af_mc->ci95_high);
    } else {
      os << ",,";
    }
    os << "\n";
  }
}

}  // namespace ntas
