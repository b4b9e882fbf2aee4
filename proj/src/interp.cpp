#include "mutamatic/interp.hpp"

#include <algorithm>
#include <limits>
#include <utility>

#include "mutamatic/errors.hpp"

namespace mutamatic {

const char* run_status_name(RunStatus s) {
    switch (s) {
        case RunStatus::Pass: return "pass";
        case RunStatus::Fail: return "fail";
        case RunStatus::TimedOut: return "timed_out";
        case RunStatus::InputExhausted: return "input_exhausted";
    }
    return "?";
}

namespace {

bool is_int(const Value& v) { return std::holds_alternative<int64_t>(v); }
int64_t as_int(const Value& v) { return std::get<int64_t>(v); }

double numeric(const Value& v) {
    if (is_int(v)) return static_cast<double>(std::get<int64_t>(v));
    return std::get<double>(v);
}

// Two's-complement wraparound keeps runaway arithmetic mutants deterministic
// instead of undefined.
int64_t wrap_add(int64_t a, int64_t b) {
    return static_cast<int64_t>(static_cast<uint64_t>(a) + static_cast<uint64_t>(b));
}
int64_t wrap_sub(int64_t a, int64_t b) {
    return static_cast<int64_t>(static_cast<uint64_t>(a) - static_cast<uint64_t>(b));
}
int64_t wrap_mul(int64_t a, int64_t b) {
    return static_cast<int64_t>(static_cast<uint64_t>(a) * static_cast<uint64_t>(b));
}

}  // namespace

Machine::Machine(const ExecSpec& spec)
    : unit_(spec.schemata ? &spec.schemata->unit : spec.unit),
      schemata_(spec.schemata),
      test_(spec.test),
      budget_(spec.budget),
      instrument_(spec.instrument),
      split_(spec.split),
      selector_(spec.selector),
      executed_(spec.executed) {
    deadline_ = std::chrono::steady_clock::now() +
                std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                    std::chrono::duration<double>(budget_.max_seconds));
    if (schemata_) bind_global(schemata_->selector_name, Value{selector_});
    for (const AstNode* g : unit_->globals)
        if (!g->guard) items_.push_back({g, false});
    items_.push_back({test_->body, true});
    frames_.push_back(Frame{FrameKind::RunSeq, nullptr, 0, {}});
}

void Machine::fail(std::string message) {
    finished_ = true;
    status_ = RunStatus::Fail;
    message_ = std::move(message);
}

void Machine::timeout() {
    finished_ = true;
    status_ = RunStatus::TimedOut;
    message_ = "budget exhausted";
}

void Machine::push_node(const AstNode* node) {
    if (finished_) return;
    if (!node->guard) {
        ++steps_;
        if (steps_ > budget_.max_steps) {
            timeout();
            return;
        }
        if ((steps_ & 0x7FF) == 0 && std::chrono::steady_clock::now() > deadline_) {
            timeout();
            return;
        }
    } else if (node->kind == NodeKind::BinaryOp && node->op == BinOp::Eq) {
        ++guard_steps_;  // one chain comparison
    } else if (node->kind == NodeKind::Select) {
        ++guard_steps_;  // one table dispatch
    }
    frames_.push_back(Frame{FrameKind::Node, node, 0, {}});
    if (node->reach_site >= 0) on_site(*node);
}

void Machine::complete(bool has_value, Value value) {
    frames_.pop_back();
    if (frames_.empty()) {
        finished_ = true;
        return;
    }
    if (has_value) frames_.back().vals.push_back(std::move(value));
}

void Machine::on_site(const AstNode& node) {
    if (!schemata_) return;
    int site_index = node.reach_site;
    if (instrument_) reached_sites_.insert(site_index);
    if (!split_ || in_fork_) return;
    const SiteInfo& site = schemata_->sites.at(static_cast<size_t>(site_index));
    for (int id : site.mutant_ids) {
        if (executed_.count(id)) continue;
        executed_.insert(id);
        uint64_t prefix = steps_;
        Machine fork(*this);
        fork.in_fork_ = true;
        fork.split_ = false;
        fork.selector_ = id;
        fork.bind_global(schemata_->selector_name, Value{static_cast<int64_t>(id)});
        fork.forks_.clear();
        // Time the continuation drive alone; the snapshot copy above is
        // dispatch machinery, like guard steps, not resumed execution.
        auto fork_start = std::chrono::steady_clock::now();
        fork.run_to_end();
        ForkRecord rec;
        rec.mutant_id = id;
        rec.status = fork.status_;
        rec.steps_total = fork.steps_;
        rec.steps_executed = fork.steps_ - prefix;
        rec.seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - fork_start).count();
        rec.output = fork.output_;
        rec.message = fork.message_;
        forks_.push_back(std::move(rec));
    }
}

Value* Machine::find_var(const std::string& name) {
    if (!calls_.empty()) {
        auto& scopes = calls_.back().scopes;
        for (auto it = scopes.rbegin(); it != scopes.rend(); ++it)
            for (auto b = it->vars.rbegin(); b != it->vars.rend(); ++b)
                if (b->name == &name || *b->name == name) return &b->value;
    }
    for (Binding& b : globals_)
        if (b.name == &name || *b.name == name) return &b.value;
    return nullptr;
}

void Machine::bind_var(const std::string& name, Value value) {
    if (calls_.empty()) {
        bind_global(name, std::move(value));
        return;
    }
    auto& vars = calls_.back().scopes.back().vars;
    for (Binding& b : vars)
        if (b.name == &name || *b.name == name) {
            b.value = std::move(value);
            return;
        }
    vars.push_back(Binding{&name, std::move(value)});
}

void Machine::bind_global(const std::string& name, Value value) {
    for (Binding& b : globals_)
        if (b.name == &name || *b.name == name) {
            b.value = std::move(value);
            return;
        }
    globals_.push_back(Binding{&name, std::move(value)});
}

Value Machine::coerce(Type target, Value v) {
    if (target == Type::Float && is_int(v)) return Value{static_cast<double>(as_int(v))};
    return v;
}

void Machine::step() {
    if (finished_) return;
    Frame& frame = frames_.back();
    switch (frame.kind) {
        case FrameKind::RunSeq: {
            size_t i = static_cast<size_t>(frame.phase);
            if (i >= items_.size()) {
                complete(false, {});
                return;
            }
            auto [node, is_test_body] = items_[i];
            ++frame.phase;
            if (is_test_body) calls_.push_back(CallCtx{});
            push_node(node);
            return;
        }
        case FrameKind::CallBody: {
            if (frame.phase == 0) {
                frame.phase = 1;
                push_node(&fn_body(*frame.node));
                return;
            }
            const AstNode* fn = frame.node;
            if (fn->decl_type == Type::Void) {
                calls_.pop_back();
                complete(true, Value{});
            } else {
                fail("function '" + fn->name + "' finished without returning a value");
            }
            return;
        }
        case FrameKind::Node:
            step_node(frame);
            return;
    }
}

// All handlers follow one rule: finish every touch of `frame` before the
// push_node / complete call that may grow or shrink the frame stack.
void Machine::step_node(Frame& frame) {
    const AstNode& n = *frame.node;
    switch (n.kind) {
        case NodeKind::Literal: {
            Value v = std::visit([](const auto& x) { return Value{x}; }, n.literal);
            complete(true, std::move(v));
            return;
        }
        case NodeKind::VarRef: {
            Value* v = find_var(n.name);
            if (!v) {
                fail("variable '" + n.name + "' used before initialization");
                return;
            }
            Value copy = *v;
            complete(true, std::move(copy));
            return;
        }
        case NodeKind::UnaryOp: {
            if (frame.phase == 0) {
                frame.phase = 1;
                push_node(&n.child(0));
                return;
            }
            Value v = std::move(frame.vals[0]);
            if (n.uop == UnOp::Neg) {
                if (is_int(v))
                    complete(true, Value{wrap_sub(0, as_int(v))});
                else
                    complete(true, Value{-std::get<double>(v)});
            } else {
                complete(true, Value{!std::get<bool>(v)});
            }
            return;
        }
        case NodeKind::BinaryOp: {
            if (n.op == BinOp::LogAnd || n.op == BinOp::LogOr) {
                if (frame.phase == 0) {
                    frame.phase = 1;
                    push_node(&n.child(0));
                    return;
                }
                if (frame.phase == 1) {
                    bool lhs = std::get<bool>(frame.vals[0]);
                    if (n.op == BinOp::LogAnd && !lhs) {
                        complete(true, Value{false});
                        return;
                    }
                    if (n.op == BinOp::LogOr && lhs) {
                        complete(true, Value{true});
                        return;
                    }
                    frame.phase = 2;
                    push_node(&n.child(1));
                    return;
                }
                Value v = std::move(frame.vals[1]);
                complete(true, std::move(v));
                return;
            }
            if (frame.phase == 0) {
                frame.phase = 1;
                push_node(&n.child(0));
                return;
            }
            if (frame.phase == 1) {
                frame.phase = 2;
                push_node(&n.child(1));
                return;
            }
            apply_binary(n, frame.vals[0], frame.vals[1]);
            return;
        }
        case NodeKind::Ternary: {
            if (frame.phase == 0) {
                frame.phase = 1;
                push_node(&n.child(0));
                return;
            }
            if (frame.phase == 1) {
                frame.phase = 2;
                bool cond = std::get<bool>(frame.vals[0]);
                push_node(cond ? &n.child(1) : &n.child(2));
                return;
            }
            Value v = std::move(frame.vals[1]);
            complete(true, std::move(v));
            return;
        }
        case NodeKind::Select: {
            if (frame.phase == 0) {
                frame.phase = 1;
                push_node(&n.child(0));
                return;
            }
            if (frame.phase == 1) {
                frame.phase = 2;
                int64_t key = std::get<int64_t>(frame.vals[0]);
                const AstNode* chosen = n.children.back().get();
                for (size_t i = 0; i < n.case_labels.size(); ++i) {
                    if (n.case_labels[i] == key) {
                        chosen = n.children[1 + i].get();
                        break;
                    }
                }
                push_node(chosen);
                return;
            }
            Value v = std::move(frame.vals[1]);
            complete(true, std::move(v));
            return;
        }
        case NodeKind::Call:
            step_call(frame);
            return;
        case NodeKind::Return: {
            if (frame.phase == 0) {
                frame.phase = 1;
                push_node(&n.child(0));
                return;
            }
            Value v = std::move(frame.vals[0]);
            do_return(std::move(v));
            return;
        }
        case NodeKind::VarDecl: {
            if (frame.phase == 0) {
                frame.phase = 1;
                push_node(&n.child(0));
                return;
            }
            Value v = coerce(n.decl_type, std::move(frame.vals[0]));
            bind_var(n.name, std::move(v));
            complete(false, {});
            return;
        }
        case NodeKind::Assign: {
            if (frame.phase == 0) {
                frame.phase = 1;
                push_node(&n.child(0));
                return;
            }
            Value v = coerce(n.type, std::move(frame.vals[0]));
            Value* slot = find_var(n.name);
            if (!slot) {
                fail("variable '" + n.name + "' used before initialization");
                return;
            }
            *slot = std::move(v);
            complete(false, {});
            return;
        }
        case NodeKind::ExprStmt: {
            if (frame.phase == 0) {
                frame.phase = 1;
                push_node(&n.child(0));
                return;
            }
            complete(false, {});
            return;
        }
        case NodeKind::AssertStmt: {
            if (frame.phase == 0) {
                frame.phase = 1;
                push_node(&n.child(0));
                return;
            }
            if (std::get<bool>(frame.vals[0])) {
                complete(false, {});
                return;
            }
            auto [line, col] = unit_->sources.line_col(n.span.file, n.span.begin);
            fail("assertion failed at " + unit_->sources.file(n.span.file).path + ":" +
                 std::to_string(line) + ":" + std::to_string(col));
            return;
        }
        case NodeKind::Block: {
            size_t count = n.children.size();
            if (frame.phase == 0) calls_.back().scopes.emplace_back();
            if (static_cast<size_t>(frame.phase) < count) {
                int i = frame.phase;
                ++frame.phase;
                push_node(&n.child(i));
                return;
            }
            calls_.back().scopes.pop_back();
            complete(false, {});
            return;
        }
        case NodeKind::If: {
            if (frame.phase == 0) {
                frame.phase = 1;
                push_node(&n.child(0));
                return;
            }
            if (frame.phase == 1) {
                frame.phase = 2;
                bool cond = std::get<bool>(frame.vals[0]);
                if (cond) {
                    push_node(&n.child(1));
                    return;
                }
                if (n.children.size() == 3) {
                    push_node(&n.child(2));
                    return;
                }
                complete(false, {});
                return;
            }
            complete(false, {});
            return;
        }
        case NodeKind::While: {
            if (frame.phase == 0) {
                frame.phase = 1;
                push_node(&n.child(0));
                return;
            }
            bool cond = std::get<bool>(frame.vals[0]);
            frame.vals.clear();
            if (!cond) {
                complete(false, {});
                return;
            }
            frame.phase = 0;
            push_node(&n.child(1));
            return;
        }
        default:
            fail("internal: node kind is not executable");
            return;
    }
}

void Machine::step_call(Frame& frame) {
    const AstNode& n = *frame.node;
    const int argc = static_cast<int>(n.children.size());
    if (frame.phase < argc) {
        int i = frame.phase;
        ++frame.phase;
        push_node(&n.child(i));
        return;
    }
    if (frame.phase == argc) {
        if (n.name == "print") {
            output_ += std::get<std::string>(frame.vals[0]);
            output_ += '\n';
            complete(true, Value{});
            return;
        }
        if (n.name == "readInput") {
            if (input_pos_ < test_->fixture.size()) {
                complete(true, Value{test_->fixture[input_pos_++]});
            } else if (in_fork_) {
                finished_ = true;
                status_ = RunStatus::InputExhausted;
                message_ = "readInput: fixture exhausted";
            } else {
                fail("readInput: fixture exhausted");
            }
            return;
        }
        auto it = unit_->functions.find(n.name);
        if (it == unit_->functions.end()) {
            fail("call to unknown function '" + n.name + "'");
            return;
        }
        const AstNode* fn = it->second;
        CallCtx ctx;
        ctx.scopes.emplace_back();
        for (size_t i = 0; i < param_count(*fn); ++i) {
            const AstNode& p = fn->child(i);
            ctx.scopes.back().vars.push_back(Binding{&p.name, coerce(p.decl_type, std::move(frame.vals[i]))});
        }
        ++frame.phase;
        calls_.push_back(std::move(ctx));
        frames_.push_back(Frame{FrameKind::CallBody, fn, 0, {}});
        return;
    }
    Value v = std::move(frame.vals.back());
    complete(true, std::move(v));
}

void Machine::do_return(Value v) {
    size_t j = frames_.size();
    while (j > 0 && frames_[j - 1].kind != FrameKind::CallBody) --j;
    if (j == 0) {
        fail("internal: return outside a function");
        return;
    }
    const AstNode* fn = frames_[j - 1].node;
    Value coerced = coerce(fn->decl_type, std::move(v));
    frames_.resize(j - 1);
    calls_.pop_back();
    frames_.back().vals.push_back(std::move(coerced));
}

void Machine::apply_binary(const AstNode& n, const Value& lhs, const Value& rhs) {
    constexpr int64_t kIntMin = std::numeric_limits<int64_t>::min();
    switch (n.op) {
        case BinOp::Add:
            if (std::holds_alternative<std::string>(lhs)) {
                complete(true, Value{std::get<std::string>(lhs) + std::get<std::string>(rhs)});
                return;
            }
            [[fallthrough]];
        case BinOp::Sub:
        case BinOp::Mul: {
            if (is_int(lhs) && is_int(rhs)) {
                int64_t a = as_int(lhs), b = as_int(rhs);
                int64_t r = n.op == BinOp::Add   ? wrap_add(a, b)
                            : n.op == BinOp::Sub ? wrap_sub(a, b)
                                                 : wrap_mul(a, b);
                complete(true, Value{r});
            } else {
                double a = numeric(lhs), b = numeric(rhs);
                double r = n.op == BinOp::Add ? a + b : n.op == BinOp::Sub ? a - b : a * b;
                complete(true, Value{r});
            }
            return;
        }
        case BinOp::Div: {
            if (is_int(lhs) && is_int(rhs)) {
                int64_t b = as_int(rhs);
                if (b == 0) {
                    fail("division by zero");
                    return;
                }
                int64_t a = as_int(lhs);
                if (a == kIntMin && b == -1) {
                    complete(true, Value{a});
                    return;
                }
                complete(true, Value{a / b});
            } else {
                double b = numeric(rhs);
                if (b == 0.0) {
                    fail("division by zero");
                    return;
                }
                complete(true, Value{numeric(lhs) / b});
            }
            return;
        }
        case BinOp::Mod: {
            int64_t b = as_int(rhs);
            if (b == 0) {
                fail("modulo by zero");
                return;
            }
            int64_t a = as_int(lhs);
            if (a == kIntMin && b == -1) {
                complete(true, Value{int64_t{0}});
                return;
            }
            complete(true, Value{a % b});
            return;
        }
        case BinOp::Lt:
        case BinOp::Le:
        case BinOp::Gt:
        case BinOp::Ge: {
            bool r;
            if (is_int(lhs) && is_int(rhs)) {
                int64_t a = as_int(lhs), b = as_int(rhs);
                r = n.op == BinOp::Lt   ? a < b
                    : n.op == BinOp::Le ? a <= b
                    : n.op == BinOp::Gt ? a > b
                                        : a >= b;
            } else {
                double a = numeric(lhs), b = numeric(rhs);
                r = n.op == BinOp::Lt   ? a < b
                    : n.op == BinOp::Le ? a <= b
                    : n.op == BinOp::Gt ? a > b
                                        : a >= b;
            }
            complete(true, Value{r});
            return;
        }
        case BinOp::Eq:
        case BinOp::Ne: {
            bool eq;
            if (std::holds_alternative<std::string>(lhs))
                eq = std::get<std::string>(lhs) == std::get<std::string>(rhs);
            else if (std::holds_alternative<bool>(lhs))
                eq = std::get<bool>(lhs) == std::get<bool>(rhs);
            else if (is_int(lhs) && is_int(rhs))
                eq = as_int(lhs) == as_int(rhs);
            else
                eq = numeric(lhs) == numeric(rhs);
            complete(true, Value{n.op == BinOp::Eq ? eq : !eq});
            return;
        }
        case BinOp::BitAnd:
        case BinOp::BitOr: {
            if (std::holds_alternative<bool>(lhs)) {
                bool a = std::get<bool>(lhs), b = std::get<bool>(rhs);
                complete(true, Value{n.op == BinOp::BitAnd ? (a && b) : (a || b)});
            } else {
                int64_t a = as_int(lhs), b = as_int(rhs);
                complete(true, Value{n.op == BinOp::BitAnd ? (a & b) : (a | b)});
            }
            return;
        }
        case BinOp::LogAnd:
        case BinOp::LogOr:
            fail("internal: short-circuit operator reached apply_binary");
            return;
    }
    fail("internal: unknown binary operator");
}

RunResult Machine::result() const {
    RunResult r;
    r.status = status_;
    r.message = message_;
    r.output = output_;
    r.steps = steps_;
    r.guard_steps = guard_steps_;
    if (schemata_) {
        std::set<int> ids;
        for (int site : reached_sites_)
            for (int id : schemata_->sites.at(static_cast<size_t>(site)).mutant_ids)
                ids.insert(id);
        r.reached_mutants.assign(ids.begin(), ids.end());
    }
    r.forks = forks_;
    return r;
}

TimedRun run_test(const ExecSpec& spec) {
    if (spec.schemata && spec.selector != 0) {
        const auto& ids = spec.schemata->embedded_ids;
        if (!std::binary_search(ids.begin(), ids.end(), spec.selector))
            throw EngineError(ErrorKind::SelectorUnknown,
                              "selector " + std::to_string(spec.selector) +
                                  " matches no guard site");
    }
    auto t0 = std::chrono::steady_clock::now();
    Machine m(spec);
    m.run_to_end();
    auto t1 = std::chrono::steady_clock::now();
    TimedRun out;
    out.result = m.result();
    out.seconds = std::chrono::duration<double>(t1 - t0).count();
    return out;
}

}  // namespace mutamatic
