#include "ntas/validation.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>

#include "ntas/errors.hpp"
#include "ntas/moments.hpp"
#include "ntas/oracles.hpp"
#include "ntas/specfun.hpp"

namespace ntas {

namespace {

std::string num(double v, int digits = 6) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*g", digits, v);
  return buf;
}

std::string db(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.2f dB", v);
  return buf;
}

CriterionResult make(std::string id, std::string name) {
  CriterionResult c;
  c.id = std::move(id);
  c.name = std::move(name);
  return c;
}

void finish(CriterionResult& c) { c.pass = c.failures.empty(); }

std::string label(Scheme s, int n, int nt, int nr) {
  return std::string(to_string(s)) + " n=" + std::to_string(n) + " " + std::to_string(nt) + "x" + std::to_string(nr);
}

ChannelConfig unit_config(int n, int nt, int nr, double omega) {
  return ChannelConfig{CascadeOrder{n}, nt, nr, 1.0, omega};
}

// 1. Special-function accuracy against the 50-digit series.
CriterionResult check_specfun() {
  auto c = make("1", "reg_lower_gamma within 1e-10 of 50-digit series oracle on 200 (a,x) pairs, < 1 s");
  const double xs[] = {0.0, 0.1, 0.5, 1.0, 3.0, 7.0, 15.0, 30.0, 60.0, 100.0};
  std::vector<std::pair<double, double>> pairs;
  for (int i = 0; i < 20; ++i) {
    const double a = 0.5 + 24.5 * i / 19.0;
    for (double x : xs) pairs.emplace_back(a, x);
  }
  const auto t0 = std::chrono::steady_clock::now();
  double worst = 0.0;
  for (const auto& [a, x] : pairs) {
    const double err = std::abs(specfun::reg_lower_gamma(a, x) - oracles::reg_lower_gamma_series50(a, x));
    worst = std::max(worst, err);
    if (err > 1e-10) c.failures.push_back("a=" + num(a) + " x=" + num(x) + " error " + num(err));
  }
  const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (elapsed >= 1.0) c.failures.push_back("runtime exceeded 1 s");
  c.details.push_back(std::to_string(pairs.size()) + " pairs, max abs error " + num(worst, 3));
  finish(c);
  return c;
}

// 2. Simulation consistency of the post-processing CDFs.
CriterionResult check_simulation_consistency(const ValidationOptions& opts, std::vector<ValidationPoint>& points) {
  auto c = make("2", "Monte-Carlo vs closed-form outage, 2x3, n=2..5, P_out in [1e-3, 0.5]: rel err <= 20% or in 95% CI");
  const double mrc_omega = opts.mrc_omega.value_or(kDefaultMrcOmega);
  std::vector<double> grid_db;
  for (int i = 0; i <= 40; ++i) grid_db.push_back(static_cast<double>(i));
  std::vector<double> grid_lin;
  for (double d : grid_db) grid_lin.push_back(db_to_linear(d));
  const auto query = OutageQuery::threshold(1.0);

  for (Scheme s : {Scheme::TasMrc, Scheme::TasSc}) {
    for (int n = 2; n <= 5; ++n) {
      const ChannelConfig base = unit_config(n, 2, 3, s == Scheme::TasMrc ? mrc_omega : 1.0);
      const auto emp = mc::empirical_outage_sweep(s, base, 1.0, grid_lin, opts.settings);
      int checked = 0;
      double worst = 0.0;
      for (std::size_t i = 0; i < grid_db.size(); ++i) {
        const ChannelConfig cfg = base.with_mean_snr(grid_lin[i]);
        const double analytic = outage(s, query, cfg);
        if (analytic < 1e-3 || analytic > 0.5) continue;
        ValidationPoint p;
        p.scheme = std::string(to_string(s));
        p.n = n;
        p.n_t = 2;
        p.n_r = 3;
        p.snr_db = grid_db[i];
        p.analytic = analytic;
        p.asymptotic = outage_asymptotic(s, query, cfg).probability;
        p.empirical = emp[i].value;
        p.ci_low = emp[i].ci95_low;
        p.ci_high = emp[i].ci95_high;
        p.rel_error = std::abs(p.empirical - analytic) / analytic;
        p.pass = p.rel_error <= 0.20 || (analytic >= p.ci_low && analytic <= p.ci_high);
        worst = std::max(worst, p.rel_error);
        ++checked;
        if (!p.pass) {
          c.failures.push_back(label(s, n, 2, 3) + " at " + db(p.snr_db) + ": analytic " + num(analytic) +
                               " empirical " + num(p.empirical) + " rel err " + num(p.rel_error, 3));
        }
        points.push_back(p);
      }
      c.details.push_back(label(s, n, 2, 3) + " omega=" + num(base.omega_for(s)) + ": " + std::to_string(checked) +
                          " points, worst rel err " + num(worst, 3));
    }
  }
  finish(c);
  return c;
}

// 3. Required-SNR levels at P_out = 1e-4.
std::pair<CriterionResult, CriterionResult> check_required_snr() {
  auto gaps = make("3", "TAS/MRC 2x3 omega=1.176 required-SNR gaps n=2->3->4->5 equal 5.0/4.5/3.9 dB +-0.5 dB");
  auto abs_levels = make("3b", "[assumption gamma_o=1] absolute required SNR 8/13/17.5/21.4 dB +-1.0 dB");
  abs_levels.gating = false;
  const double reference_levels[] = {8.0, 13.0, 17.5, 21.4};
  const double reference_gaps[] = {5.0, 4.5, 3.9};
  const auto query = OutageQuery::threshold(1.0);
  double levels[4];
  for (int n = 2; n <= 5; ++n) {
    levels[n - 2] = linear_to_db(required_snr(Scheme::TasMrc, 1e-4, query, unit_config(n, 2, 3, kDefaultMrcOmega)));
    const double dev = levels[n - 2] - reference_levels[n - 2];
    const std::string line = "n=" + std::to_string(n) + ": " + db(levels[n - 2]) + " (target " +
                             db(reference_levels[n - 2]) + ", deviation " + db(dev) + ")";
    abs_levels.details.push_back(line);
    if (std::abs(dev) > 1.0) abs_levels.failures.push_back(line);
  }
  for (int i = 0; i < 3; ++i) {
    const double gap = levels[i + 1] - levels[i];
    const std::string line = "n=" + std::to_string(i + 2) + "->" + std::to_string(i + 3) + ": gap " + db(gap) +
                             " (target " + db(reference_gaps[i]) + ")";
    gaps.details.push_back(line);
    if (std::abs(gap - reference_gaps[i]) > 0.5) gaps.failures.push_back(line);
  }
  finish(gaps);
  finish(abs_levels);
  return {gaps, abs_levels};
}

// 4. High-SNR slope equals the diversity order.
CriterionResult check_diversity_slope() {
  auto c = make("4", "fitted slope over the decade below P_out=1e-6 within 5% of d=mN/n; asymptote slope exact");
  const auto query = OutageQuery::threshold(1.0);
  for (Scheme s : {Scheme::TasMrc, Scheme::TasSc}) {
    for (auto [nt, nr] : {std::pair{2, 3}, std::pair{2, 2}}) {
      for (int n = 2; n <= 4; ++n) {
        const ChannelConfig base = unit_config(n, nt, nr, 1.0);
        const double d = diversity_order(s, base);
        const double start_db = linear_to_db(required_snr(s, 1e-6, query, base));
        // Least squares of log10 P on log10 γ̄ over 11 points spanning one decade.
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        constexpr int kPoints = 11;
        for (int i = 0; i < kPoints; ++i) {
          const double x = (start_db + i) / 10.0;
          const double y = log_postproc_cdf(s, 1.0, base.with_mean_snr(std::pow(10.0, x))) / std::log(10.0);
          sx += x;
          sy += y;
          sxx += x * x;
          sxy += x * y;
        }
        const double slope = -(kPoints * sxy - sx * sy) / (kPoints * sxx - sx * sx);
        const double rel = std::abs(slope - d) / d;
        auto log10_asym = [&](double mean_db) {
          const auto f = outage_asymptotic(s, query, base.with_mean_snr(db_to_linear(mean_db))).form;
          return (f.log_coefficient + f.diversity * std::log(f.z)) / std::log(10.0);
        };
        const double asym_slope = -(log10_asym(start_db + 10.0) - log10_asym(start_db));
        const double asym_rel = std::abs(asym_slope - d) / d;
        const std::string line = label(s, n, nt, nr) + ": d=" + num(d, 5) + " fitted " + num(slope, 5) + " (rel " +
                                 num(rel, 3) + "), asymptote " + num(asym_slope, 15);
        c.details.push_back(line);
        if (rel > 0.05 || asym_rel > 1e-12) c.failures.push_back(line);
      }
    }
  }
  finish(c);
  return c;
}

// 5. Asymptote versus full formula at P_out = 1e-7.
CriterionResult check_asymptote_ratio() {
  auto c = make("5", "asymptotic/full outage in [0.9, 1.1] where full = 1e-7, both schemes, n=2..4, 2x3, omega=1");
  const auto query = OutageQuery::threshold(1.0);
  for (Scheme s : {Scheme::TasMrc, Scheme::TasSc}) {
    for (int n = 2; n <= 4; ++n) {
      const ChannelConfig base = unit_config(n, 2, 3, 1.0);
      const double snr = required_snr(s, 1e-7, query, base);
      const ChannelConfig cfg = base.with_mean_snr(snr);
      const double ratio = outage_asymptotic(s, query, cfg).probability / outage(s, query, cfg);
      const std::string line = label(s, n, 2, 3) + " at " + db(linear_to_db(snr)) + ": ratio " + num(ratio, 5);
      c.details.push_back(line);
      if (ratio < 0.9 || ratio > 1.1) c.failures.push_back(line);
    }
  }
  finish(c);
  return c;
}

// 6. Closed-form AF anchors.
CriterionResult check_af_anchors() {
  auto c = make("6", "AF anchors: af_siso(1)=1/m; af_simo(1,nR)=af_siso(1)/nR; n=2 trade-off and compact form within 15%");
  const CascadeOrder one{1};
  const CascadeOrder two{2};
  const double m1 = fading_params(one).m;
  const double siso1 = af_siso(one);
  c.details.push_back("af_siso(1) = " + num(siso1, 12) + ", 1/m = " + num(1.0 / m1, 12));
  if (std::abs(siso1 - 1.0 / m1) > 1e-12) c.failures.push_back("af_siso(1) != 1/m(1)");
  for (int nr = 1; nr <= 4; ++nr) {
    const double v = af_simo(one, nr);
    if (std::abs(v - siso1 / nr) > 1e-12) c.failures.push_back("af_simo(1," + std::to_string(nr) + ") != af_siso(1)/n_R");
  }
  const double siso2 = af_siso(two);
  for (int nr : {2, 3}) {
    const double simo = af_simo(two, nr);
    const double trade = siso2 / nr;
    const double compact = std::pow(2.5, 2.0 / nr) - 1.0;
    const double rel_trade = std::abs(simo - trade) / trade;
    const double rel_compact = std::abs(simo - compact) / compact;
    const std::string line = "n=2 n_R=" + std::to_string(nr) + ": af_simo " + num(simo) + " vs af_siso/n_R " +
                             num(trade) + " (rel " + num(rel_trade, 3) + "), vs 2.5^{2/n_R}-1 " + num(compact) +
                             " (rel " + num(rel_compact, 3) + ")";
    c.details.push_back(line);
    if (rel_trade > 0.15 || rel_compact > 0.15) c.failures.push_back(line);
  }
  finish(c);
  return c;
}

// 7. AF against simulation, 2x2, n = 2..6 with tabulated weights.
CriterionResult check_af_figure(const ValidationOptions& opts) {
  auto c = make("7", "AF 2x2 n=2..6: increasing in n (closed form and MC), MRC < SC (both, disjoint CIs), closed <= 1.10 MC");
  std::vector<std::optional<double>> closed[2];
  std::vector<mc::EmpiricalEstimate> sim[2];
  const Scheme schemes[2] = {Scheme::TasMrc, Scheme::TasSc};
  for (int si = 0; si < 2; ++si) {
    for (int n = 2; n <= 6; ++n) {
      const ChannelConfig cfg{CascadeOrder{n}, 2, 2, 10.0, 1.0};
      const auto w = default_weighting(cfg.n);
      std::optional<double> af;
      try {
        af = amount_of_fading(schemes[si], cfg, w);
      } catch (const NonPhysicalError& e) {
        c.failures.push_back(label(schemes[si], n, 2, 2) + ": closed form non-physical (" + e.what() + ")");
      }
      closed[si].push_back(af);
      sim[si].push_back(mc::estimate_moments_af(schemes[si], cfg, opts.settings).af);
      const auto& e = sim[si].back();
      c.details.push_back(label(schemes[si], n, 2, 2) + ": closed " + (af ? num(*af) : std::string("n/a")) + ", MC " +
                          num(e.value) + " [" + num(e.ci95_low) + ", " + num(e.ci95_high) + "]");
      if (af && *af > 1.10 * e.value) {
        c.failures.push_back(label(schemes[si], n, 2, 2) + ": closed form " + num(*af) + " exceeds 1.10 x MC " +
                             num(e.value));
      }
    }
  }
  for (int si = 0; si < 2; ++si) {
    for (std::size_t i = 1; i < 5; ++i) {
      const std::string where = std::string(to_string(schemes[si])) + " n=" + std::to_string(i + 1) + "->" +
                                std::to_string(i + 2);
      if (closed[si][i] && closed[si][i - 1] && !(*closed[si][i] > *closed[si][i - 1])) {
        c.failures.push_back(where + ": closed-form AF not increasing");
      }
      if (!(sim[si][i].value > sim[si][i - 1].value)) c.failures.push_back(where + ": MC AF not increasing");
    }
  }
  for (std::size_t i = 0; i < 5; ++i) {
    const std::string where = "n=" + std::to_string(i + 2);
    if (closed[0][i] && closed[1][i] && !(*closed[0][i] < *closed[1][i])) {
      c.failures.push_back(where + ": closed-form AF of tas-mrc not below tas-sc");
    }
    if (!(sim[0][i].ci95_high < sim[1][i].ci95_low)) {
      c.failures.push_back(where + ": MC AF CIs of tas-mrc and tas-sc overlap or are misordered");
    }
  }
  finish(c);
  return c;
}

// 8. Weighted moment sums versus the quadrature oracle.
CriterionResult check_moment_oracle() {
  auto c = make("8", "closed-form moments l=1,2 within 25% of quadrature oracle, 2x2 n=2..6; fail if > 20% of points exceed");
  int checked = 0;
  int exceeded = 0;
  for (Scheme s : {Scheme::TasMrc, Scheme::TasSc}) {
    for (int n = 2; n <= 6; ++n) {
      const ChannelConfig cfg{CascadeOrder{n}, 2, 2, 10.0, 1.0};
      const auto w = default_weighting(cfg.n);
      for (int l = 1; l <= 2; ++l) {
        ++checked;
        const double oracle = moment_oracle(l, s, cfg);
        std::string line = label(s, n, 2, 2) + " l=" + std::to_string(l) + ": oracle " + num(oracle);
        bool bad = false;
        try {
          const double v = moment(s, l, cfg, w);
          const double rel = std::abs(v - oracle) / oracle;
          line += ", closed " + num(v) + " (rel " + num(rel, 3) + ")";
          bad = rel > 0.25;
        } catch (const NonPhysicalError&) {
          line += ", closed form non-physical";
          bad = true;
        }
        c.details.push_back(line);
        if (bad) {
          ++exceeded;
          c.details.back() += " [exceeds]";
        }
      }
    }
  }
  c.details.push_back(std::to_string(exceeded) + " of " + std::to_string(checked) + " points exceed 25%");
  if (exceeded * 5 > checked) {
    c.failures.push_back(std::to_string(exceeded) + " of " + std::to_string(checked) +
                         " points exceed tolerance (limit 20%)");
  }
  finish(c);
  return c;
}

// 9. Rayleigh base case against 1 - e^{-γ/γ̄}.
CriterionResult check_base_case(const ValidationOptions& opts) {
  auto c = make("9", "n=1 1x1 empirical CDF within 4 standard errors of 1-exp(-g/gbar) at 20 points");
  const ChannelConfig cfg{CascadeOrder{1}, 1, 1, 1.0, 1.0};
  std::vector<double> grid;
  for (int i = 0; i < 20; ++i) grid.push_back(0.01 * std::pow(500.0, i / 19.0));
  const auto emp = mc::empirical_cdf(Scheme::TasSc, cfg, opts.settings, grid);
  double worst = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double exact = -std::expm1(-grid[i]);
    const double se = std::sqrt(exact * (1.0 - exact) / static_cast<double>(opts.settings.trials));
    const double z = std::abs(emp[i].value - exact) / se;
    worst = std::max(worst, z);
    if (z > 4.0) c.failures.push_back("g=" + num(grid[i]) + ": " + num(z, 3) + " standard errors");
  }
  c.details.push_back("worst deviation " + num(worst, 3) + " standard errors");
  finish(c);
  return c;
}

ValidationReport run_core(const ValidationOptions& opts) {
  ValidationReport r;
  r.criteria.push_back(check_specfun());
  r.criteria.push_back(check_simulation_consistency(opts, r.points));
  auto [gaps, levels] = check_required_snr();
  r.criteria.push_back(gaps);
  r.criteria.push_back(levels);
  r.criteria.push_back(check_diversity_slope());
  r.criteria.push_back(check_asymptote_ratio());
  r.criteria.push_back(check_af_anchors());
  r.criteria.push_back(check_af_figure(opts));
  r.criteria.push_back(check_moment_oracle());
  r.criteria.push_back(check_base_case(opts));
  for (const auto& p : r.points) {
    ++r.summary.points_checked;
    if (p.pass) ++r.summary.points_passed;
    r.summary.worst_rel_error = std::max(r.summary.worst_rel_error, p.rel_error);
  }
  return r;
}

}  // namespace

void to_json(nlohmann::json& j, const ValidationPoint& p) {
  j = nlohmann::json{{"scheme", p.scheme},       {"n", p.n},
                     {"n_t", p.n_t},             {"n_r", p.n_r},
                     {"snr_db", p.snr_db},       {"analytic", p.analytic},
                     {"asymptotic", p.asymptotic}, {"empirical", p.empirical},
                     {"ci_low", p.ci_low},       {"ci_high", p.ci_high},
                     {"rel_error", p.rel_error}, {"pass", p.pass}};
}

void from_json(const nlohmann::json& j, ValidationPoint& p) {
  j.at("scheme").get_to(p.scheme);
  j.at("n").get_to(p.n);
  j.at("n_t").get_to(p.n_t);
  j.at("n_r").get_to(p.n_r);
  j.at("snr_db").get_to(p.snr_db);
  j.at("analytic").get_to(p.analytic);
  j.at("asymptotic").get_to(p.asymptotic);
  j.at("empirical").get_to(p.empirical);
  j.at("ci_low").get_to(p.ci_low);
  j.at("ci_high").get_to(p.ci_high);
  j.at("rel_error").get_to(p.rel_error);
  j.at("pass").get_to(p.pass);
}

void to_json(nlohmann::json& j, const CriterionResult& c) {
  j = nlohmann::json{{"id", c.id},           {"name", c.name},       {"pass", c.pass},
                     {"gating", c.gating},   {"details", c.details}, {"failures", c.failures}};
}

void from_json(const nlohmann::json& j, CriterionResult& c) {
  j.at("id").get_to(c.id);
  j.at("name").get_to(c.name);
  j.at("pass").get_to(c.pass);
  j.at("gating").get_to(c.gating);
  j.at("details").get_to(c.details);
  j.at("failures").get_to(c.failures);
}

void to_json(nlohmann::json& j, const ValidationReport& r) {
  j = nlohmann::json{{"all_pass", r.all_pass},
                     {"criteria", r.criteria},
                     {"points", r.points},
                     {"summary",
                      {{"worst_rel_error", r.summary.worst_rel_error},
                       {"points_checked", r.summary.points_checked},
                       {"points_passed", r.summary.points_passed}}}};
}

void from_json(const nlohmann::json& j, ValidationReport& r) {
  j.at("all_pass").get_to(r.all_pass);
  j.at("criteria").get_to(r.criteria);
  j.at("points").get_to(r.points);
  const auto& s = j.at("summary");
  s.at("worst_rel_error").get_to(r.summary.worst_rel_error);
  s.at("points_checked").get_to(r.summary.points_checked);
  s.at("points_passed").get_to(r.summary.points_passed);
}

std::string serialize(const ValidationReport& r) { return nlohmann::json(r).dump(2); }

ValidationReport run_validation(const ValidationOptions& opts) {
  opts.settings.validate();
  ValidationReport report = run_core(opts);

  auto det = make("10", "identical seed, different worker count and partition width: byte-identical report");
  if (opts.check_determinism) {
    ValidationOptions alt = opts;
    alt.settings.workers = opts.settings.workers == 1 ? 4 : 1;
    alt.settings.partition_width = opts.settings.partition_width == mc::kReductionBlock ? 5 * mc::kReductionBlock
                                                                                        : mc::kReductionBlock;
    const ValidationReport again = run_core(alt);
    det.details.push_back("re-ran criteria 1-9 with an alternate worker count and partition width");
    if (serialize(again) != serialize(report)) det.failures.push_back("reports differ");
  } else {
    det.details.push_back("skipped");
    det.gating = false;
  }
  finish(det);
  report.criteria.push_back(det);

  report.all_pass = std::all_of(report.criteria.begin(), report.criteria.end(),
                                [](const CriterionResult& c) { return c.pass || !c.gating; });
  return report;
}

}  // namespace ntas
