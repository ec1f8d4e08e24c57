#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "ntas/montecarlo.hpp"
#include "ntas/schemes.hpp"

namespace ntas {

/// One Monte-Carlo-versus-closed-form comparison point.
struct ValidationPoint {
  std::string scheme;
  int n = 0;
  int n_t = 0;
  int n_r = 0;
  double snr_db = 0.0;
  double analytic = 0.0;
  double asymptotic = 0.0;
  double empirical = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
  double rel_error = 0.0;
  bool pass = false;

  friend bool operator==(const ValidationPoint&, const ValidationPoint&) = default;
};

/// Outcome of one acceptance criterion. `gating` criteria decide the exit
/// status; non-gating entries are assumption-tagged reports.
struct CriterionResult {
  std::string id;
  std::string name;
  bool pass = false;
  bool gating = true;
  std::vector<std::string> details;
  std::vector<std::string> failures;

  friend bool operator==(const CriterionResult&, const CriterionResult&) = default;
};

struct ValidationSummary {
  double worst_rel_error = 0.0;
  int points_checked = 0;
  int points_passed = 0;

  friend bool operator==(const ValidationSummary&, const ValidationSummary&) = default;
};

struct ValidationReport {
  std::vector<CriterionResult> criteria;
  std::vector<ValidationPoint> points;
  ValidationSummary summary;
  bool all_pass = false;

  friend bool operator==(const ValidationReport&, const ValidationReport&) = default;
};

void to_json(nlohmann::json& j, const ValidationPoint& p);
void from_json(const nlohmann::json& j, ValidationPoint& p);
void to_json(nlohmann::json& j, const CriterionResult& c);
void from_json(const nlohmann::json& j, CriterionResult& c);
void to_json(nlohmann::json& j, const ValidationReport& r);
void from_json(const nlohmann::json& j, ValidationReport& r);

struct ValidationOptions {
  mc::SimSettings settings{};
  /// Overrides the TAS/MRC calibration in the simulation-consistency check.
  std::optional<double> mrc_omega;
  /// Re-run with a different worker count and partition width and compare bytes.
  bool check_determinism = true;
};

/// Runs the acceptance checklist.
ValidationReport run_validation(const ValidationOptions& opts);

/// Canonical serialization used for the determinism comparison.
std::string serialize(const ValidationReport& r);

}  // namespace ntas
