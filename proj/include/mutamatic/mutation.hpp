#pragma once

#include <string>
#include <vector>

#include "mutamatic/ast.hpp"

namespace mutamatic {

// Operator categories:
//   ROR relational  < <= > >= == !=   each replaced by the other five
//   AOR arithmetic  + - * / %         each replaced by the other four
//   LCR connector   && <-> ||  & <-> | one inverse replacement each
enum class MutationKind { ROR, AOR, LCR };

const char* mutation_kind_name(MutationKind k);

enum class Validity { Valid, InvalidType, ExcludedConst };

const char* validity_name(Validity v);

// One candidate fault: replace the operator token at `anchor` with
// `replacement`. Ids are dense, 1-based, and assigned in canonical order:
// file path, then anchor position, then replacement table order.
struct Mutant {
    int id = 0;
    MutationKind kind = MutationKind::AOR;
    SourceSpan anchor;  // the operator token itself
    BinOp original = BinOp::Add;
    BinOp replacement = BinOp::Add;
    Validity validity = Validity::Valid;
};

inline const std::vector<MutationKind> kAllMutationKinds = {
    MutationKind::ROR, MutationKind::AOR, MutationKind::LCR};

// The category an operator belongs to, if any.
bool mutation_kind_of(BinOp op, MutationKind& kind_out);

// Replacement operators for one original, in table order.
std::vector<BinOp> replacements_for(BinOp op);

struct MutantCensus {
    int generated = 0;
    int considered = 0;      // generated minus const-context exclusions
    int valid = 0;
    int invalid_type = 0;
    int excluded_const = 0;
    int by_kind[3] = {0, 0, 0};  // generated per MutationKind
};

MutantCensus census_of(const std::vector<Mutant>& mutants);

}  // namespace mutamatic
