#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

namespace qrenyi {

struct Violation {
  std::int64_t trial;
  double lhs;
  double rhs;
  double gap;
};

/// Outcome of a seeded property suite. `pass` holds exactly when
/// `violations` is empty; `max_gap` is the largest signed relative gap seen
/// (clamped below at 0), so a passing run still shows how close it came.
struct VerificationReport {
  std::string suite;
  nlohmann::json params = nlohmann::json::object();
  std::int64_t trials = 0;
  std::uint64_t seed = 0;
  double tolerance = 0.0;
  std::vector<Violation> violations;
  double max_gap = 0.0;
  bool pass = true;

  nlohmann::json to_json() const;
  /// Key-sorted, compact, shortest round-trip decimals; byte-identical for
  /// identical reports.
  std::string to_canonical_json() const;
};

/// Folds several reports into one with the common schema. Per-part results
/// are listed under params["parts"].
VerificationReport merge_reports(const std::string& suite, const std::vector<VerificationReport>& parts);

/// Signed relative excess of a claim `lhs <= rhs`: positive when violated,
/// scaled by max(|lhs|, |rhs|).
double gap_le(double lhs, double rhs);
/// Same for a claim `lhs >= rhs`.
double gap_ge(double lhs, double rhs);

class ReportBuilder {
 public:
  ReportBuilder(std::string suite, std::int64_t trials, std::uint64_t seed, double tolerance);

  nlohmann::json& params() { return report_.params; }
  double tolerance() const { return report_.tolerance; }

  /// Records one check; it is a violation when gap > tolerance.
  void record(std::int64_t trial, double lhs, double rhs, double gap);

  VerificationReport finish() &&;

 private:
  VerificationReport report_;
};

}  // namespace qrenyi
