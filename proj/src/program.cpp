#include "mutamatic/program.hpp"

#include <algorithm>

#include <nlohmann/json.hpp>

#include "mutamatic/errors.hpp"
#include "mutamatic/parser.hpp"
#include "mutamatic/typecheck.hpp"

namespace mutamatic {

namespace {

void index_unit(ProgramUnit& unit,
                const std::map<std::string, std::vector<std::string>>& fixtures) {
    for (const auto& decl : unit.root->children) {
        switch (decl->kind) {
            case NodeKind::FunctionDecl:
                unit.functions.emplace(decl->name, decl.get());
                break;
            case NodeKind::VarDecl:
                unit.globals.push_back(decl.get());
                break;
            case NodeKind::TestDecl: {
                TestCase tc;
                tc.name = decl->name;
                tc.body = &decl->child(0);
                auto it = fixtures.find(decl->name);
                if (it != fixtures.end()) tc.fixture = it->second;
                unit.tests.push_back(std::move(tc));
                break;
            }
            default:
                break;
        }
    }
}

// Operator anchors of the production code in canonical order.
void collect_anchors(const AstNode& node, std::vector<const AstNode*>& out) {
    if (node.kind == NodeKind::BinaryOp) out.push_back(&node);
    for (const auto& c : node.children) collect_anchors(*c, out);
}

const AstNode* find_anchor(const AstNode& node, const SourceSpan& anchor) {
    if (node.kind == NodeKind::BinaryOp && node.op_span == anchor) return &node;
    for (const auto& c : node.children)
        if (const AstNode* found = find_anchor(*c, anchor)) return found;
    return nullptr;
}

}  // namespace

ProgramUnit compile_unit(const std::vector<NamedSource>& production,
                         const std::vector<NamedSource>& tests,
                         const std::map<std::string, std::vector<std::string>>& fixtures) {
    ProgramUnit unit;
    unit.root = make_node(NodeKind::Program, {0, 0, 0});

    auto absorb = [&unit](const NamedSource& src, bool is_production) {
        uint32_t id = unit.sources.add(src.path, src.text);
        if (is_production) unit.production_files.push_back(id);
        ParseResult parsed = parse_file(unit.sources, id);
        for (auto& d : parsed.diagnostics) unit.diagnostics.push_back(std::move(d));
        if (parsed.program)
            for (auto& decl : parsed.program->children)
                unit.root->children.push_back(std::move(decl));
    };

    for (const auto& src : production) absorb(src, true);
    for (const auto& src : tests) absorb(src, false);

    if (!has_errors(unit.diagnostics)) {
        auto type_diags = type_check(*unit.root);
        for (auto& d : type_diags) unit.diagnostics.push_back(std::move(d));
    }
    if (!has_errors(unit.diagnostics)) index_unit(unit, fixtures);
    return unit;
}

Validity check_mutant_validity(const ProgramUnit& unit, const Mutant& mutant) {
    const AstNode* node = find_anchor(*unit.root, mutant.anchor);
    if (!node)
        throw EngineError(ErrorKind::AnchorNotFound,
                          "no operator anchor at " + unit.sources.file(mutant.anchor.file).path +
                              " offset " + std::to_string(mutant.anchor.begin));
    if (node->const_ctx) return Validity::ExcludedConst;
    Type lhs = node->child(0).type;
    Type rhs = node->child(1).type;
    return binary_result_type(mutant.replacement, lhs, rhs) ? Validity::Valid
                                                            : Validity::InvalidType;
}

std::vector<Mutant> generate_mutants(const ProgramUnit& unit,
                                     const std::vector<MutationKind>& enabled) {
    bool want[3] = {false, false, false};
    for (MutationKind k : enabled) want[static_cast<int>(k)] = true;

    std::vector<const AstNode*> anchors;
    for (const auto& decl : unit.root->children) {
        if (decl->kind == NodeKind::TestDecl) continue;  // tests are not mutated
        collect_anchors(*decl, anchors);
    }
    std::stable_sort(anchors.begin(), anchors.end(),
                     [&unit](const AstNode* a, const AstNode* b) {
                         const std::string& pa = unit.sources.file(a->op_span.file).path;
                         const std::string& pb = unit.sources.file(b->op_span.file).path;
                         if (pa != pb) return pa < pb;
                         return a->op_span.begin < b->op_span.begin;
                     });

    std::vector<Mutant> mutants;
    for (const AstNode* anchor : anchors) {
        MutationKind kind;
        if (!mutation_kind_of(anchor->op, kind) || !want[static_cast<int>(kind)]) continue;
        for (BinOp replacement : replacements_for(anchor->op)) {
            Mutant m;
            m.id = static_cast<int>(mutants.size()) + 1;
            m.kind = kind;
            m.anchor = anchor->op_span;
            m.original = anchor->op;
            m.replacement = replacement;
            if (anchor->const_ctx) {
                m.validity = Validity::ExcludedConst;
            } else {
                Type lhs = anchor->child(0).type;
                Type rhs = anchor->child(1).type;
                m.validity = binary_result_type(replacement, lhs, rhs) ? Validity::Valid
                                                                       : Validity::InvalidType;
            }
            mutants.push_back(m);
        }
    }
    return mutants;
}

std::string apply_mutant_text(const ProgramUnit& unit, const Mutant& mutant, uint32_t file) {
    if (mutant.anchor.file != file)
        throw EngineError(ErrorKind::AnchorNotFound, "mutant anchor lies in a different file");
    const AstNode* node = find_anchor(*unit.root, mutant.anchor);
    if (!node)
        throw EngineError(ErrorKind::AnchorNotFound,
                          "no operator anchor at " + unit.sources.file(file).path + " offset " +
                              std::to_string(mutant.anchor.begin));
    // Parenthesize the host expression and both operands so the spliced
    // operator keeps the grouping of the mutated tree even when the
    // replacement binds tighter or looser than the original in source form.
    const std::string& original = unit.sources.file(file).text;
    const SourceSpan& lhs = node->child(0).span;
    const SourceSpan& rhs = node->child(1).span;
    std::string mutated = original.substr(0, node->span.begin);
    mutated += "((";
    mutated += original.substr(lhs.begin, lhs.end - lhs.begin);
    mutated += ") ";
    mutated += binop_text(mutant.replacement);
    mutated += " (";
    mutated += original.substr(rhs.begin, rhs.end - rhs.begin);
    mutated += "))";
    mutated += original.substr(node->span.end);
    return mutated;
}

std::string mutants_to_jsonl(const ProgramUnit& unit, const std::vector<Mutant>& mutants) {
    std::string out;
    for (const Mutant& m : mutants) {
        nlohmann::ordered_json j;
        j["id"] = m.id;
        j["kind"] = mutation_kind_name(m.kind);
        j["file"] = unit.sources.file(m.anchor.file).path;
        j["begin"] = m.anchor.begin;
        j["end"] = m.anchor.end;
        j["original"] = binop_text(m.original);
        j["replacement"] = binop_text(m.replacement);
        j["validity"] = validity_name(m.validity);
        out += j.dump();
        out += '\n';
    }
    return out;
}

}  // namespace mutamatic
