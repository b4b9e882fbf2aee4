#pragma once

#include <string>

#include <json.hpp>

#include "mutamatic/strategy.hpp"

namespace mutamatic {

using Json = nlohmann::ordered_json;

inline constexpr int kReportSchemaVersion = 1;

// (optimised - baseline) / baseline, in percent. Positive means the
// optimisation's per-run execution is slower than the baseline's.
// Throws EngineError(EmptyDenominator) when baseline is not positive.
double compute_overhead(double baseline_exec, double optimised_exec);

// baseline / optimised. Throws EngineError(EmptyDenominator) when
// optimised is not positive.
double compute_speedup(double baseline_total, double optimised_total);

Json census_json(const MutantCensus& census);
Json phases_json(const PhaseLedger& phases);
Json verdicts_json(const std::vector<Verdict>& verdicts);

// Full per-run block: options echo, census, verdict counts, scores,
// phases, decoupling factor, per-mutant records, diagnostics.
Json strategy_result_json(const StrategyResult& r);

// Copy of the report with every wall-clock-derived member removed: keys
// ending in "_seconds" and the "cost_model", "speedups" and "overheads"
// blocks. What remains is deterministic run to run.
Json strip_timing(const Json& j);

// Plain-text rendering of a report produced by the CLI; derived from the
// JSON alone.
std::string human_summary(const Json& report);

}  // namespace mutamatic
