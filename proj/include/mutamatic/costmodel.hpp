#pragma once

#include <map>
#include <string>
#include <vector>

namespace mutamatic {

// Unit times and counts feeding the four expected-cost estimators. Times
// are seconds; the per-mutant and per-suite-run values are representative
// means, since early stop makes individual runs vary.
struct CostModelInputs {
    double t_mutant_generation = 0;
    double t_compilation = 0;           // one mutant compile
    double t_test_suite_execution = 0;  // one suite run, plain program
    double t_schemata_compilation = 0;
    double t_schemata_test_suite_execution = 0;
    double t_split_stream_compilation = 0;
    double t_split_stream_test_suite_execution = 0;
    int reachable_mutants = 0;
    int unreachable_mutants = 0;
    int invalid_mutants = 0;
    double decoupling_factor = 1.0;  // in (0, 1]
};

// Every mutant pays a compile; every valid one pays a suite run.
double estimate_unoptimised(const CostModelInputs& in);

// One compile for all mutants; every valid one still pays a suite run.
double estimate_schemata(const CostModelInputs& in);

// One compile plus one suite run for reach detection, then one compile and
// per-mutant suite runs scaled down to the reaching fraction.
double estimate_reachable_schemata(const CostModelInputs& in);

// One compile; forks resume mid-trace, costing about half a suite run per
// reached mutant.
double estimate_split_stream(const CostModelInputs& in);

// Mean over reachable mutants of |T(m)| / |T|: the fraction of the suite a
// reachable mutant actually needs. Throws EngineError(NoReachableMutants)
// when no mutant is reached or the suite is empty.
double decoupling_factor(const std::map<int, std::vector<std::string>>& reach_tests,
                         int tests_total);

}  // namespace mutamatic
