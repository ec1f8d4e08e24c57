#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "ntas/moments.hpp"
#include "ntas/montecarlo.hpp"
#include "ntas/schemes.hpp"

namespace ntas {

/// Inclusive dB grid start:stop:step.
struct SnrGrid {
  double start_db = 0.0;
  double stop_db = 30.0;
  double step_db = 1.0;

  static SnrGrid parse(std::string_view text);
  void validate() const;
  std::vector<double> values_db() const;
};

enum class OutputFormat { Csv, Json };
OutputFormat parse_format(std::string_view text);

/// Parameterization shared by the outage and amount-of-fading sweeps.
struct SweepSpec {
  std::vector<Scheme> schemes{Scheme::TasMrc, Scheme::TasSc};
  std::vector<int> n_list{2, 3, 4, 5};
  int n_t = 2;
  int n_r = 3;
  SnrGrid grid{};
  double gamma_o = 1.0;
  std::optional<double> rate;
  mc::SimSettings settings{};  ///< trials == 0 selects analytics-only output
  std::optional<double> omega;  ///< overrides the per-scheme default calibration
  std::optional<double> b1;
  std::optional<double> b2;

  void validate() const;
  ChannelConfig config_for(int n, double mean_snr) const;
  /// Fully resolved configuration, including defaulted values.
  nlohmann::ordered_json resolved() const;
};

struct ParamsRow {
  Scheme scheme;
  int n;
  int n_t;
  int n_r;
  double m;
  double omega;
  double a;
  double diversity;
  double cg_printed;
  double cg_extracted;
};

std::vector<ParamsRow> cmd_params(const std::vector<int>& n_list, int n_t, int n_r,
                                  const std::vector<Scheme>& schemes = {Scheme::TasMrc, Scheme::TasSc});
void write_params_table(std::ostream& os, const std::vector<ParamsRow>& rows);
void write_params_json(std::ostream& os, const std::vector<ParamsRow>& rows);

struct OutageRow {
  Scheme scheme;
  int n;
  int n_t;
  int n_r;
  double snr_db;
  double gamma_o;
  double p_out_analytic;
  double p_out_asymptotic;
  std::optional<mc::EmpiricalEstimate> mc;
  bool low_confidence = false;
};

std::vector<OutageRow> run_outage_sweep(const SweepSpec& spec);
void write_outage(std::ostream& os, const SweepSpec& spec, const std::vector<OutageRow>& rows, OutputFormat fmt);

struct AfRow {
  Scheme scheme;
  int n;
  int n_t;
  int n_r;
  double b1;
  double b2;
  std::optional<double> af_closed;  ///< empty when the moment series is non-physical
  std::string af_closed_error;
  std::optional<double> af_bound;   ///< TAS/MRC only
  double af_oracle;
  std::optional<mc::EmpiricalEstimate> af_mc;
};

/// AF sweep at mean SNR equal to the grid start (AF does not depend on it).
std::vector<AfRow> run_af_sweep(const SweepSpec& spec);
void write_af(std::ostream& os, const SweepSpec& spec, const std::vector<AfRow>& rows, OutputFormat fmt);

/// Shortest decimal representation that parses back to the same double.
std::string format_double(double v);

inline constexpr std::string_view kOutageColumns =
    "scheme,n,n_t,n_r,snr_db,gamma_o,p_out_analytic,p_out_asymptotic,p_out_mc,ci_low,ci_high,trials,seed,"
    "low_confidence";
inline constexpr std::string_view kAfColumns =
    "scheme,n,n_t,n_r,b1,b2,af_closed,af_bound,af_oracle,af_mc,ci_low,ci_high";

}  // namespace ntas
