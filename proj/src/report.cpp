#include "mutamatic/report.hpp"

#include <sstream>

#include "mutamatic/costmodel.hpp"
#include "mutamatic/errors.hpp"

namespace mutamatic {

double compute_overhead(double baseline_exec, double optimised_exec) {
    if (baseline_exec <= 0)
        throw EngineError(ErrorKind::EmptyDenominator,
                          "overhead needs a positive baseline execution time");
    return (optimised_exec - baseline_exec) / baseline_exec * 100.0;
}

double compute_speedup(double baseline_total, double optimised_total) {
    if (optimised_total <= 0)
        throw EngineError(ErrorKind::EmptyDenominator,
                          "speedup needs a positive optimised total time");
    return baseline_total / optimised_total;
}

Json census_json(const MutantCensus& census) {
    Json j;
    j["generated"] = census.generated;
    j["excluded_const"] = census.excluded_const;
    j["considered"] = census.considered;
    j["valid"] = census.valid;
    j["invalid_type"] = census.invalid_type;
    j["by_operator"] = {{"ror", census.by_kind[0]},
                        {"aor", census.by_kind[1]},
                        {"lcr", census.by_kind[2]}};
    return j;
}

Json phases_json(const PhaseLedger& phases) {
    Json j;
    j["generate_seconds"] = phases.generate_seconds;
    j["detect_seconds"] = phases.detect_seconds;
    j["compile_seconds"] = phases.compile_seconds;
    j["execute_seconds"] = phases.execute_seconds;
    j["fork_seconds"] = phases.fork_seconds;
    j["compiles"] = phases.compiles;
    j["detect_runs"] = phases.detect_runs;
    j["test_executions"] = phases.test_executions;
    j["forks"] = phases.forks;
    j["detect_steps"] = phases.detect_steps;
    j["execute_steps"] = phases.execute_steps;
    j["guard_steps"] = phases.guard_steps;
    return j;
}

Json verdicts_json(const std::vector<Verdict>& verdicts) {
    Json arr = Json::array();
    for (const Verdict& v : verdicts) {
        Json j;
        j["id"] = v.mutant_id;
        j["outcome"] = outcome_name(v.outcome);
        if (!v.killing_test.empty()) j["killing_test"] = v.killing_test;
        j["executed_tests"] = v.executed_tests;
        if (!v.note.empty()) j["note"] = v.note;
        arr.push_back(std::move(j));
    }
    return arr;
}

Json strategy_result_json(const StrategyResult& r) {
    Json j;
    j["strategy"] = strategy_name(r.strategy);
    j["encoding"] = encoding_name(r.encoding);
    j["tests_total"] = r.tests_total;
    j["census"] = census_json(r.census);

    Json counts;
    int valid = 0;
    for (const char* name : {"killed", "survived", "timed_out", "unreachable", "invalid"})
        counts[name] = 0;
    for (const Verdict& v : r.verdicts) {
        const char* name = outcome_name(v.outcome);
        counts[name] = counts[name].get<int>() + 1;
        if (v.outcome != Outcome::Invalid) ++valid;
    }
    j["verdict_counts"] = counts;
    if (valid > 0) {
        Score off = mutation_score(r, false);
        Score on = mutation_score(r, true);
        j["mutation_score"] = off.value;
        j["mutation_score_timed_out_as_killed"] = on.value;
    } else {
        j["mutation_score"] = nullptr;
        j["mutation_score_timed_out_as_killed"] = nullptr;
    }

    try {
        j["decoupling_factor"] = decoupling_factor(r.reach_tests, r.tests_total);
    } catch (const EngineError&) {
        j["decoupling_factor"] = nullptr;
    }
    j["pre_gate_seconds"] = r.pre_gate_seconds;
    j["phases"] = phases_json(r.phases);
    j["verdicts"] = verdicts_json(r.verdicts);
    j["diagnostics"] = r.diagnostics;
    return j;
}

Json strip_timing(const Json& j) {
    if (j.is_object()) {
        Json out = Json::object();
        for (const auto& [key, value] : j.items()) {
            if (key.size() > 8 && key.compare(key.size() - 8, 8, "_seconds") == 0) continue;
            if (key == "cost_model" || key == "speedups" || key == "overheads") continue;
            out[key] = strip_timing(value);
        }
        return out;
    }
    if (j.is_array()) {
        Json out = Json::array();
        for (const auto& value : j) out.push_back(strip_timing(value));
        return out;
    }
    return j;
}

namespace {

std::string fixed(double v, int digits = 3) {
    std::ostringstream os;
    os.setf(std::ios::fixed);
    os.precision(digits);
    os << v;
    return os.str();
}

void summarize_strategy(std::ostringstream& out, const Json& s, const std::string& indent) {
    out << indent << s.value("strategy", std::string("?"));
    if (s.contains("encoding")) out << " (" << s["encoding"].get<std::string>() << ")";
    out << "\n";
    if (s.contains("verdict_counts")) {
        const Json& c = s["verdict_counts"];
        out << indent << "  killed " << c.value("killed", 0) << ", survived "
            << c.value("survived", 0) << ", timed out " << c.value("timed_out", 0)
            << ", unreachable " << c.value("unreachable", 0) << ", invalid "
            << c.value("invalid", 0) << "\n";
    }
    if (s.contains("mutation_score") && s["mutation_score"].is_number())
        out << indent << "  mutation score " << fixed(s["mutation_score"].get<double>())
            << " (timed-out as killed: "
            << fixed(s["mutation_score_timed_out_as_killed"].get<double>()) << ")\n";
    if (s.contains("phases")) {
        const Json& p = s["phases"];
        out << indent << "  compiles " << p.value("compiles", 0) << ", test executions "
            << p.value("test_executions", 0) << ", forks " << p.value("forks", 0)
            << ", steps " << p.value("execute_steps", uint64_t{0}) << "\n";
    }
    if (s.contains("decoupling_factor") && s["decoupling_factor"].is_number())
        out << indent << "  decoupling factor "
            << fixed(s["decoupling_factor"].get<double>()) << "\n";
}

}  // namespace

std::string human_summary(const Json& report) {
    std::ostringstream out;
    if (report.contains("corpus")) out << "corpus: " << report["corpus"].get<std::string>() << "\n";
    if (report.contains("entries")) {
        for (const Json& entry : report["entries"]) {
            out << entry.value("name", std::string("?"));
            if (entry.contains("census")) {
                const Json& c = entry["census"];
                out << ": " << c.value("generated", 0) << " mutants ("
                    << c.value("valid", 0) << " valid, " << c.value("invalid_type", 0)
                    << " invalid, " << c.value("excluded_const", 0) << " const-excluded)";
            }
            if (entry.contains("mutants_per_lopc") && entry["mutants_per_lopc"].is_number())
                out << ", " << fixed(entry["mutants_per_lopc"].get<double>(), 2)
                    << " mutants/LOPC";
            out << "\n";
            if (entry.contains("strategies"))
                for (const Json& s : entry["strategies"]) summarize_strategy(out, s, "  ");
            else if (entry.contains("result"))
                summarize_strategy(out, entry["result"], "  ");
        }
    }
    if (report.contains("verdicts_equal"))
        out << "verdict equality across strategies: "
            << (report["verdicts_equal"].get<bool>() ? "yes" : "NO") << "\n";
    if (report.contains("speedups")) {
        out << "speedups vs unoptimised (wall time):\n";
        for (const auto& [name, value] : report["speedups"].items())
            if (value.is_number()) out << "  " << name << ": " << fixed(value.get<double>(), 2) << "x\n";
    }
    if (report.contains("cost_model") && report["cost_model"].contains("predicted")) {
        out << "cost model predicted vs measured (seconds):\n";
        const Json& cm = report["cost_model"];
        for (const auto& [name, value] : cm["predicted"].items()) {
            out << "  " << name << ": " << fixed(value.get<double>(), 4);
            if (cm.contains("measured") && cm["measured"].contains(name))
                out << " vs " << fixed(cm["measured"][name].get<double>(), 4);
            out << "\n";
        }
    }
    return out.str();
}

}  // namespace mutamatic
