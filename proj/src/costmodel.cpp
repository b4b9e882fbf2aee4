#include "mutamatic/costmodel.hpp"

#include "mutamatic/errors.hpp"

namespace mutamatic {

namespace {

void validate(const CostModelInputs& in) {
    bool times_ok = in.t_mutant_generation >= 0 && in.t_compilation >= 0 &&
                    in.t_test_suite_execution >= 0 && in.t_schemata_compilation >= 0 &&
                    in.t_schemata_test_suite_execution >= 0 &&
                    in.t_split_stream_compilation >= 0 &&
                    in.t_split_stream_test_suite_execution >= 0;
    bool counts_ok =
        in.reachable_mutants >= 0 && in.unreachable_mutants >= 0 && in.invalid_mutants >= 0;
    bool df_ok = in.decoupling_factor > 0 && in.decoupling_factor <= 1.0;
    if (!times_ok || !counts_ok || !df_ok)
        throw EngineError(ErrorKind::ConfigError,
                          "cost model inputs must have non-negative times and counts and a "
                          "decoupling factor in (0, 1]");
}

}  // namespace

double estimate_unoptimised(const CostModelInputs& in) {
    validate(in);
    int considered = in.reachable_mutants + in.unreachable_mutants + in.invalid_mutants;
    int valid = in.reachable_mutants + in.unreachable_mutants;
    return in.t_mutant_generation + in.t_compilation * considered +
           in.t_test_suite_execution * valid;
}

double estimate_schemata(const CostModelInputs& in) {
    validate(in);
    int valid = in.unreachable_mutants + in.reachable_mutants;
    return in.t_mutant_generation + in.t_schemata_compilation +
           in.t_schemata_test_suite_execution * valid;
}

double estimate_reachable_schemata(const CostModelInputs& in) {
    validate(in);
    double detection = in.t_schemata_compilation + in.t_schemata_test_suite_execution;
    return in.t_mutant_generation + detection + in.t_schemata_compilation +
           in.t_schemata_test_suite_execution * in.reachable_mutants * in.decoupling_factor;
}

double estimate_split_stream(const CostModelInputs& in) {
    validate(in);
    return in.t_mutant_generation + in.t_split_stream_compilation +
           in.t_split_stream_test_suite_execution * in.reachable_mutants *
               in.decoupling_factor / 2.0;
}

double decoupling_factor(const std::map<int, std::vector<std::string>>& reach_tests,
                         int tests_total) {
    if (tests_total <= 0 || reach_tests.empty())
        throw EngineError(ErrorKind::NoReachableMutants,
                          "decoupling factor needs at least one reached mutant and one test");
    double sum = 0;
    for (const auto& [id, tests] : reach_tests)
        sum += static_cast<double>(tests.size()) / static_cast<double>(tests_total);
    return sum / static_cast<double>(reach_tests.size());
}

}  // namespace mutamatic
