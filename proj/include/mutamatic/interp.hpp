#pragma once

#include <chrono>
#include <map>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "mutamatic/program.hpp"
#include "mutamatic/schemata.hpp"

namespace mutamatic {

enum class RunStatus { Pass, Fail, TimedOut, InputExhausted };

const char* run_status_name(RunStatus s);

// Two limits guard every run: a deterministic semantic step budget and a
// wall clock ceiling as a backstop. Guard dispatch overhead is tracked
// separately and never counts against the step budget, so a mutant times
// out under one strategy exactly when it times out under the others.
struct Budget {
    uint64_t max_steps = 10'000;
    double max_seconds = 10.0;
};

using Value = std::variant<std::monostate, int64_t, double, bool, std::string>;

// Outcome of one fork spawned during a split run.
struct ForkRecord {
    int mutant_id = 0;
    RunStatus status = RunStatus::Pass;
    uint64_t steps_total = 0;     // prefix plus continuation, budget view
    uint64_t steps_executed = 0;  // continuation only, work actually done
    double seconds = 0;           // wall time driving the continuation
    std::string output;           // full transcript incl. the shared prefix
    std::string message;
};

struct RunResult {
    RunStatus status = RunStatus::Pass;
    std::string message;
    std::string output;
    uint64_t steps = 0;        // semantic steps, identical across encodings
    uint64_t guard_steps = 0;  // chain comparisons and dispatches
    std::vector<int> reached_mutants;  // instrumented runs only, ascending
    std::vector<ForkRecord> forks;     // split runs only, fork order
};

struct ExecSpec {
    const ProgramUnit* unit = nullptr;
    const SchemataProgram* schemata = nullptr;  // null when running a plain tree
    int64_t selector = 0;
    const TestCase* test = nullptr;
    Budget budget;
    bool instrument = false;  // record which guard sites fire
    bool split = false;       // fork at first evaluation of unexecuted mutants
    std::set<int> executed;   // split: mutant ids that must not fork again
};

// Explicit-state tree walker. All run state lives in copyable values, so
// copying the machine is a snapshot and a copy resumes bit-identically.
// Forks are exactly that: a copy with a different selector driven to
// completion, then dropped.
class Machine {
public:
    explicit Machine(const ExecSpec& spec);

    bool done() const { return finished_; }
    void step();
    void run_to_end() {
        while (!finished_) step();
    }

    RunStatus status() const { return status_; }
    uint64_t semantic_steps() const { return steps_; }
    uint64_t guard_step_count() const { return guard_steps_; }
    const std::string& output() const { return output_; }

    RunResult result() const;

private:
    enum class FrameKind { Node, CallBody, RunSeq };

    struct Frame {
        FrameKind kind = FrameKind::Node;
        const AstNode* node = nullptr;
        int phase = 0;
        std::vector<Value> vals;
    };

    // Scopes hold a handful of names, so a linear scan over contiguous
    // pairs beats a node-based map, and a snapshot copies plain vectors
    // instead of rebuilding trees. Names point into the AST (or the
    // schemata program), which outlives every machine.
    struct Binding {
        const std::string* name = nullptr;
        Value value;
    };

    struct Scope {
        std::vector<Binding> vars;
    };

    struct CallCtx {
        std::vector<Scope> scopes;
    };

    // Static context, outlives the machine.
    const ProgramUnit* unit_;
    const SchemataProgram* schemata_;
    const TestCase* test_;
    Budget budget_;
    bool instrument_ = false;
    bool split_ = false;
    bool in_fork_ = false;
    int64_t selector_ = 0;
    std::chrono::steady_clock::time_point deadline_;

    // Run state; everything here is value-copied by a snapshot.
    std::vector<std::pair<const AstNode*, bool>> items_;  // (node, is test body)
    std::vector<Frame> frames_;
    std::vector<Binding> globals_;
    std::vector<CallCtx> calls_;
    std::string output_;
    size_t input_pos_ = 0;
    uint64_t steps_ = 0;
    uint64_t guard_steps_ = 0;
    std::set<int> reached_sites_;
    std::set<int> executed_;
    std::vector<ForkRecord> forks_;
    bool finished_ = false;
    RunStatus status_ = RunStatus::Pass;
    std::string message_;

    void fail(std::string message);
    void timeout();
    void push_node(const AstNode* node);
    void complete(bool has_value, Value value);
    void on_site(const AstNode& node);
    Value* find_var(const std::string& name);
    void bind_var(const std::string& name, Value value);
    void bind_global(const std::string& name, Value value);
    Value coerce(Type target, Value v);
    void step_node(Frame& frame);
    void step_call(Frame& frame);
    void do_return(Value v);
    void apply_binary(const AstNode& node, const Value& lhs, const Value& rhs);
};

struct TimedRun {
    RunResult result;
    double seconds = 0.0;
};

TimedRun run_test(const ExecSpec& spec);

}  // namespace mutamatic
