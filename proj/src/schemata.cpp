#include "mutamatic/schemata.hpp"

#include <algorithm>

#include "mutamatic/errors.hpp"
#include "mutamatic/typecheck.hpp"

namespace mutamatic {

const char* encoding_name(Encoding e) {
    return e == Encoding::TernaryChain ? "ternary" : "switch";
}

namespace {

struct SpanKey {
    uint32_t file, begin, end;
    auto operator<=>(const SpanKey&) const = default;
};

SpanKey key_of(const SourceSpan& s) { return {s.file, s.begin, s.end}; }

struct Builder {
    const ProgramUnit& unit;
    Encoding encoding;
    std::string selector;
    std::map<SpanKey, std::vector<Mutant>> by_anchor;  // valid mutants only
    SchemataProgram out;

    void reject_selector_collisions(const AstNode& node) {
        bool declares = node.kind == NodeKind::VarDecl || node.kind == NodeKind::ParamDecl ||
                        node.kind == NodeKind::FunctionDecl;
        if (declares && node.name == selector)
            throw EngineError(ErrorKind::BuildError,
                              "program already declares the selector name '" + selector + "'");
        for (const auto& c : node.children) reject_selector_collisions(*c);
    }

    AstPtr guard_literal(int64_t v) {
        auto lit = make_node(NodeKind::Literal, {});
        lit->literal = v;
        lit->type = Type::Int;
        lit->guard = true;
        return lit;
    }

    AstPtr selector_ref() {
        auto ref = make_node(NodeKind::VarRef, {});
        ref->name = selector;
        ref->type = Type::Int;
        ref->guard = true;
        return ref;
    }

    AstPtr guard_compare(int mutant_id) {
        auto cmp = make_node(NodeKind::BinaryOp, {});
        cmp->op = BinOp::Eq;
        cmp->type = Type::Bool;
        cmp->guard = true;
        cmp->children.push_back(selector_ref());
        cmp->children.push_back(guard_literal(mutant_id));
        return cmp;
    }

    // The replacement expression for one mutant at its anchor: the anchor
    // node with the operator swapped. Children were already rewritten, so
    // nested guard chains ride along inside the arm.
    AstPtr make_arm(const AstNode& anchor, const Mutant& m) {
        auto arm = clone(anchor);
        arm->op = m.replacement;
        arm->guard = false;
        arm->reach_site = -1;
        auto arm_type = binary_result_type(m.replacement, arm->child(0).type, arm->child(1).type);
        if (!arm_type || *arm_type != anchor.type)
            throw EngineError(ErrorKind::EncodingError,
                              "replacement '" + std::string(binop_text(m.replacement)) +
                                  "' changes the expression type at mutant " +
                                  std::to_string(m.id));
        arm->type = *arm_type;
        return arm;
    }

    int register_site(const SourceSpan& anchor, const std::vector<Mutant>& group) {
        SiteInfo site;
        site.anchor = anchor;
        for (const Mutant& m : group) site.mutant_ids.push_back(m.id);
        int index = static_cast<int>(out.sites.size());
        out.sites.push_back(std::move(site));
        for (const Mutant& m : group) out.site_of_mutant[m.id] = index;
        return index;
    }

    // Ternary encoding: rewrite bottom-up so inner anchors become chains
    // before outer arms clone them. Ascending mutant id from the outside
    // in; the original expression is the final arm.
    AstPtr rewrite_ternary(AstPtr node) {
        for (auto& c : node->children) c = rewrite_ternary(std::move(c));
        if (node->kind != NodeKind::BinaryOp) return node;
        auto found = by_anchor.find(key_of(node->op_span));
        if (found == by_anchor.end()) return node;
        const std::vector<Mutant>& group = found->second;

        int site = register_site(node->op_span, group);
        Type result_type = node->type;
        SourceSpan span = node->span;
        const AstNode* anchor = node.get();  // stays valid across the moves below
        AstPtr chain = std::move(node);
        for (auto it = group.rbegin(); it != group.rend(); ++it) {
            auto shell = make_node(NodeKind::Ternary, span);
            shell->type = result_type;
            shell->guard = true;
            shell->children.push_back(guard_compare(it->id));
            shell->children.push_back(make_arm(*anchor, *it));
            shell->children.push_back(std::move(chain));
            chain = std::move(shell);
        }
        chain->reach_site = site;
        return chain;
    }

    void collect_group_anchors(const AstNode& node, std::vector<const AstNode*>& anchors) {
        if (node.kind == NodeKind::BinaryOp && by_anchor.count(key_of(node.op_span)))
            anchors.push_back(&node);
        for (const auto& c : node.children) collect_group_anchors(*c, anchors);
    }

    void mark_reach_sites(AstNode& node) {
        if (node.kind == NodeKind::BinaryOp) {
            auto found = by_anchor.find(key_of(node.op_span));
            if (found != by_anchor.end()) {
                auto site = out.site_of_mutant.find(found->second.front().id);
                node.reach_site = site->second;
            }
        }
        for (auto& c : node.children) mark_reach_sites(*c);
    }

    void replace_op_at(AstNode& node, const Mutant& m, bool& done) {
        if (node.kind == NodeKind::BinaryOp && key_of(node.op_span) == key_of(m.anchor)) {
            auto arm_type =
                binary_result_type(m.replacement, node.child(0).type, node.child(1).type);
            if (!arm_type || *arm_type != node.type)
                throw EngineError(ErrorKind::EncodingError,
                                  "replacement '" + std::string(binop_text(m.replacement)) +
                                      "' changes the expression type at mutant " +
                                      std::to_string(m.id));
            node.op = m.replacement;
            done = true;
            return;
        }
        for (auto& c : node.children) {
            replace_op_at(*c, m, done);
            if (done) return;
        }
    }

    // Switch encoding: one flat dispatch per statement expression. Every
    // case holds the whole expression with exactly one mutant applied;
    // the default arm is the original with reach markers on its anchors.
    AstPtr rewrite_switch_root(AstPtr root) {
        std::vector<const AstNode*> anchors;
        collect_group_anchors(*root, anchors);
        if (anchors.empty()) return root;

        std::vector<Mutant> mutants_here;
        for (const AstNode* a : anchors) {
            const auto& group = by_anchor.at(key_of(a->op_span));
            register_site(a->op_span, group);
            mutants_here.insert(mutants_here.end(), group.begin(), group.end());
        }
        std::sort(mutants_here.begin(), mutants_here.end(),
                  [](const Mutant& a, const Mutant& b) { return a.id < b.id; });

        auto select = make_node(NodeKind::Select, root->span);
        select->type = root->type;
        select->guard = true;
        select->children.push_back(selector_ref());
        for (const Mutant& m : mutants_here) {
            auto arm = clone(*root);
            bool done = false;
            replace_op_at(*arm, m, done);
            select->case_labels.push_back(m.id);
            select->children.push_back(std::move(arm));
        }
        mark_reach_sites(*root);
        select->children.push_back(std::move(root));
        return select;
    }

    void rewrite_switch_stmt(AstNode& stmt) {
        switch (stmt.kind) {
            case NodeKind::VarDecl:
            case NodeKind::Assign:
            case NodeKind::Return:
            case NodeKind::AssertStmt:
            case NodeKind::ExprStmt:
                stmt.children[0] = rewrite_switch_root(std::move(stmt.children[0]));
                break;
            case NodeKind::If:
            case NodeKind::While: {
                stmt.children[0] = rewrite_switch_root(std::move(stmt.children[0]));
                for (size_t i = 1; i < stmt.children.size(); ++i) rewrite_switch_stmt(stmt.child(i));
                break;
            }
            case NodeKind::Block:
                for (auto& c : stmt.children) rewrite_switch_stmt(*c);
                break;
            case NodeKind::FunctionDecl:
                rewrite_switch_stmt(*stmt.children.back());
                break;
            default:
                break;
        }
    }

    AstPtr selector_decl() {
        auto decl = make_node(NodeKind::VarDecl, {});
        decl->name = selector;
        decl->decl_type = Type::Int;
        decl->guard = true;
        decl->children.push_back(guard_literal(0));
        return decl;
    }

    SchemataProgram run(const std::vector<Mutant>& mutants) {
        reject_selector_collisions(*unit.root);
        for (const Mutant& m : mutants) {
            if (m.validity != Validity::Valid) continue;
            by_anchor[key_of(m.anchor)].push_back(m);
            out.embedded_ids.push_back(m.id);
        }
        std::sort(out.embedded_ids.begin(), out.embedded_ids.end());

        out.encoding = encoding;
        out.selector_name = selector;
        out.unit.sources = unit.sources;
        out.unit.production_files = unit.production_files;
        out.unit.root = make_node(NodeKind::Program, unit.root->span);
        out.unit.root->children.push_back(selector_decl());

        for (const auto& decl : unit.root->children) {
            AstPtr copy = clone(*decl);
            bool is_production = decl->kind != NodeKind::TestDecl;
            if (is_production && !by_anchor.empty()) {
                if (encoding == Encoding::TernaryChain)
                    copy = rewrite_ternary(std::move(copy));
                else
                    rewrite_switch_stmt(*copy);
            }
            out.unit.root->children.push_back(std::move(copy));
        }

        // Rebuild name tables over the rewritten tree.
        std::map<std::string, std::vector<std::string>> fixtures;
        for (const TestCase& t : unit.tests) fixtures[t.name] = t.fixture;
        for (const auto& decl : out.unit.root->children) {
            switch (decl->kind) {
                case NodeKind::FunctionDecl:
                    out.unit.functions.emplace(decl->name, decl.get());
                    break;
                case NodeKind::VarDecl:
                    out.unit.globals.push_back(decl.get());
                    break;
                case NodeKind::TestDecl: {
                    TestCase tc;
                    tc.name = decl->name;
                    tc.body = &decl->child(0);
                    auto it = fixtures.find(decl->name);
                    if (it != fixtures.end()) tc.fixture = it->second;
                    out.unit.tests.push_back(std::move(tc));
                    break;
                }
                default:
                    break;
            }
        }
        return std::move(out);
    }
};

}  // namespace

SchemataProgram build_schemata(const ProgramUnit& unit, const std::vector<Mutant>& mutants,
                               Encoding encoding) {
    Builder builder{unit, encoding, "MNR", {}, {}};
    return builder.run(mutants);
}

}  // namespace mutamatic
