#include <doctest.h>

#include "mutamatic/costmodel.hpp"
#include "mutamatic/errors.hpp"

using namespace mutamatic;

namespace {

CostModelInputs worked_example() {
    CostModelInputs in;
    in.t_mutant_generation = 1;
    in.t_compilation = 10;
    in.t_test_suite_execution = 2;
    in.t_schemata_compilation = 12;
    in.t_schemata_test_suite_execution = 2.5;
    in.t_split_stream_compilation = 13;
    in.t_split_stream_test_suite_execution = 2.5;
    in.reachable_mutants = 3;
    in.unreachable_mutants = 1;
    in.invalid_mutants = 1;
    in.decoupling_factor = 0.25;
    return in;
}

}  // namespace

TEST_CASE("estimators reproduce the worked examples exactly") {
    CostModelInputs in = worked_example();
    CHECK(estimate_unoptimised(in) == 1 + 10 * 5 + 2 * 4);
    CHECK(estimate_schemata(in) == 1 + 12 + 2.5 * 4);

    in.reachable_mutants = 4;
    CHECK(estimate_reachable_schemata(in) == 1 + 14.5 + 12 + 2.5 * 4 * 0.25);
    CHECK(estimate_split_stream(in) == 15.25);
}

TEST_CASE("estimators degenerate sensibly at zero") {
    CostModelInputs in = worked_example();
    in.reachable_mutants = 0;
    in.unreachable_mutants = 0;
    in.invalid_mutants = 0;
    CHECK(estimate_unoptimised(in) == in.t_mutant_generation);
    CHECK(estimate_schemata(in) == in.t_mutant_generation + in.t_schemata_compilation);
    CHECK(estimate_split_stream(in) ==
          in.t_mutant_generation + in.t_split_stream_compilation);
}

TEST_CASE("estimators are linear in the mutant counts") {
    CostModelInputs in = worked_example();
    double base1 = estimate_unoptimised(in);
    double base2 = estimate_schemata(in);
    int delta = in.reachable_mutants;
    in.reachable_mutants *= 2;
    CHECK(estimate_unoptimised(in) - base1 ==
          doctest::Approx((in.t_compilation + in.t_test_suite_execution) * delta));
    CHECK(estimate_schemata(in) - base2 ==
          doctest::Approx(in.t_schemata_test_suite_execution * delta));
}

TEST_CASE("estimators reject malformed inputs") {
    CostModelInputs in = worked_example();
    in.decoupling_factor = 0;
    CHECK_THROWS_AS(estimate_reachable_schemata(in), EngineError);
    in = worked_example();
    in.t_compilation = -1;
    CHECK_THROWS_AS(estimate_unoptimised(in), EngineError);
    in = worked_example();
    in.invalid_mutants = -2;
    CHECK_THROWS_AS(estimate_schemata(in), EngineError);
}

TEST_CASE("decoupling factor averages the reached fraction") {
    std::map<int, std::vector<std::string>> reach;
    reach[1] = {"a"};
    reach[2] = {"a", "b", "c"};
    CHECK(decoupling_factor(reach, 4) == doctest::Approx((0.25 + 0.75) / 2));

    reach[1] = {"a", "b", "c", "d"};
    reach[2] = {"a", "b", "c", "d"};
    CHECK(decoupling_factor(reach, 4) == doctest::Approx(1.0));

    CHECK_THROWS_AS(decoupling_factor({}, 4), EngineError);
    CHECK_THROWS_AS(decoupling_factor(reach, 0), EngineError);
}
