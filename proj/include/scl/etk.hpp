#pragma once

#include "scl/semiring.hpp"

#include <memory>
#include <string>
#include <vector>

namespace scl {

// Terms and quantifier-free formulas of the existential theory over (+, ·, constants).
struct Term;
using TermP = std::shared_ptr<const Term>;
struct Term {
    enum class Op { var, cnst, add, mul } op;
    std::string var;
    Value c;
    TermP l, r;
};

struct EtkNode;
using EtkFormula = std::shared_ptr<const EtkNode>;
struct EtkNode {
    enum class Op { eq, neq, leq, nleq, truth, land, lor } op;
    TermP a, b;         // atoms
    bool value = true;  // truth
    EtkFormula l, r;    // connectives
};

namespace t {
TermP var(const std::string& x);
TermP cnst(const Value& c);
TermP add(TermP a, TermP b);
TermP mul(TermP a, TermP b);
EtkFormula atom(EtkNode::Op op, TermP a, TermP b);
EtkFormula truth(bool v);
EtkFormula land(EtkFormula a, EtkFormula b);
EtkFormula lor(EtkFormula a, EtkFormula b);
}  // namespace t

struct EtkSentence {
    SemiringId id = SemiringId::natural;
    std::vector<std::string> vars;  // existential prefix
    EtkFormula matrix;
};

std::string to_string(const TermP& t);
std::string to_string(const EtkFormula& f);
std::string to_string(const EtkSentence& s);
bool uses_leq(const EtkFormula& f);

}  // namespace scl
