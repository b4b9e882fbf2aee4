#include "mutamatic/mutation.hpp"

namespace mutamatic {

const char* mutation_kind_name(MutationKind k) {
    switch (k) {
        case MutationKind::ROR: return "ROR";
        case MutationKind::AOR: return "AOR";
        case MutationKind::LCR: return "LCR";
    }
    return "?";
}

const char* validity_name(Validity v) {
    switch (v) {
        case Validity::Valid: return "valid";
        case Validity::InvalidType: return "invalid_type";
        case Validity::ExcludedConst: return "excluded_const";
    }
    return "?";
}

namespace {

const BinOp kArithmetic[] = {BinOp::Add, BinOp::Sub, BinOp::Mul, BinOp::Div, BinOp::Mod};
const BinOp kRelational[] = {BinOp::Lt, BinOp::Le, BinOp::Gt, BinOp::Ge, BinOp::Eq, BinOp::Ne};

template <size_t N>
bool contains(const BinOp (&table)[N], BinOp op) {
    for (BinOp t : table)
        if (t == op) return true;
    return false;
}

}  // namespace

bool mutation_kind_of(BinOp op, MutationKind& kind_out) {
    if (contains(kArithmetic, op)) {
        kind_out = MutationKind::AOR;
        return true;
    }
    if (contains(kRelational, op)) {
        kind_out = MutationKind::ROR;
        return true;
    }
    switch (op) {
        case BinOp::LogAnd:
        case BinOp::LogOr:
        case BinOp::BitAnd:
        case BinOp::BitOr:
            kind_out = MutationKind::LCR;
            return true;
        default:
            return false;
    }
}

std::vector<BinOp> replacements_for(BinOp op) {
    std::vector<BinOp> out;
    if (contains(kArithmetic, op)) {
        for (BinOp candidate : kArithmetic)
            if (candidate != op) out.push_back(candidate);
        return out;
    }
    if (contains(kRelational, op)) {
        for (BinOp candidate : kRelational)
            if (candidate != op) out.push_back(candidate);
        return out;
    }
    switch (op) {
        case BinOp::LogAnd: out.push_back(BinOp::LogOr); break;
        case BinOp::LogOr: out.push_back(BinOp::LogAnd); break;
        case BinOp::BitAnd: out.push_back(BinOp::BitOr); break;
        case BinOp::BitOr: out.push_back(BinOp::BitAnd); break;
        default: break;
    }
    return out;
}

MutantCensus census_of(const std::vector<Mutant>& mutants) {
    MutantCensus c;
    for (const Mutant& m : mutants) {
        ++c.generated;
        ++c.by_kind[static_cast<int>(m.kind)];
        switch (m.validity) {
            case Validity::Valid:
                ++c.considered;
                ++c.valid;
                break;
            case Validity::InvalidType:
                ++c.considered;
                ++c.invalid_type;
                break;
            case Validity::ExcludedConst:
                ++c.excluded_const;
                break;
        }
    }
    return c;
}

}  // namespace mutamatic
