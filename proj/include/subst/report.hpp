#pragma once

#include <optional>
#include <string>
#include <vector>

#include "subst/core.hpp"

namespace subst {

struct ReportOptions {
  bool timings = false;                // include per-stage timings
  std::vector<std::string> skip;       // stage names to skip
  std::optional<long long> power_bound;  // k_max override for enumerations
  long long cap_window = 64;           // member-shift enumeration length cap
};

// Exit status derived from a finished report.
enum class ReportStatus { Ok, HypothesisNotMet, Error };

struct AnalysisResult {
  std::string json;   // stable, deterministic serialization
  std::string text;   // human-readable rendering
  ReportStatus status = ReportStatus::Ok;
};

AnalysisResult analyze(const Morphism& m, const ReportOptions& opt = {});

}  // namespace subst
