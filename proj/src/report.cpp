#include "qrenyi/report.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace qrenyi {

namespace {

double scale_of(double lhs, double rhs) {
  return std::max({std::abs(lhs), std::abs(rhs), std::numeric_limits<double>::min()});
}

}  // namespace

double gap_le(double lhs, double rhs) {
  if (std::isnan(lhs) || std::isnan(rhs)) return std::numeric_limits<double>::infinity();
  if (lhs == rhs) return 0.0;
  return (lhs - rhs) / scale_of(lhs, rhs);
}

double gap_ge(double lhs, double rhs) { return gap_le(rhs, lhs); }

nlohmann::json VerificationReport::to_json() const {
  nlohmann::json violations_json = nlohmann::json::array();
  for (const auto& v : violations)
    violations_json.push_back({{"trial", v.trial}, {"lhs", v.lhs}, {"rhs", v.rhs}, {"gap", v.gap}});
  return {{"suite", suite},       {"params", params},     {"trials", trials},
          {"seed", seed},         {"tolerance", tolerance}, {"violations", violations_json},
          {"max_gap", max_gap},   {"pass", pass}};
}

std::string VerificationReport::to_canonical_json() const { return to_json().dump(); }

VerificationReport merge_reports(const std::string& suite, const std::vector<VerificationReport>& parts) {
  VerificationReport merged;
  merged.suite = suite;
  nlohmann::json part_summaries = nlohmann::json::object();
  for (const auto& part : parts) {
    merged.trials = std::max(merged.trials, part.trials);
    merged.seed = part.seed;
    merged.tolerance = std::max(merged.tolerance, part.tolerance);
    merged.max_gap = std::max(merged.max_gap, part.max_gap);
    merged.pass = merged.pass && part.pass;
    merged.violations.insert(merged.violations.end(), part.violations.begin(), part.violations.end());
    part_summaries[part.suite] = {{"params", part.params},
                                  {"trials", part.trials},
                                  {"tolerance", part.tolerance},
                                  {"violations", part.violations.size()},
                                  {"max_gap", part.max_gap},
                                  {"pass", part.pass}};
  }
  std::stable_sort(merged.violations.begin(), merged.violations.end(),
                   [](const Violation& a, const Violation& b) { return a.trial < b.trial; });
  merged.params["parts"] = std::move(part_summaries);
  return merged;
}

ReportBuilder::ReportBuilder(std::string suite, std::int64_t trials, std::uint64_t seed, double tolerance) {
  report_.suite = std::move(suite);
  report_.trials = trials;
  report_.seed = seed;
  report_.tolerance = tolerance;
}

void ReportBuilder::record(std::int64_t trial, double lhs, double rhs, double gap) {
  if (std::isnan(gap)) gap = std::numeric_limits<double>::infinity();
  report_.max_gap = std::max(report_.max_gap, gap);
  if (gap > report_.tolerance) report_.violations.push_back({trial, lhs, rhs, gap});
}

VerificationReport ReportBuilder::finish() && {
  std::stable_sort(report_.violations.begin(), report_.violations.end(),
                   [](const Violation& a, const Violation& b) { return a.trial < b.trial; });
  report_.pass = report_.violations.empty();
  return std::move(report_);
}

}  // namespace qrenyi
