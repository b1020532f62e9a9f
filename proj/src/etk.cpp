#include "scl/etk.hpp"

namespace scl {

namespace t {
TermP var(const std::string& x) { return std::make_shared<const Term>(Term{Term::Op::var, x, {}, nullptr, nullptr}); }
TermP cnst(const Value& c) { return std::make_shared<const Term>(Term{Term::Op::cnst, "", c, nullptr, nullptr}); }
TermP add(TermP a, TermP b) {
    return std::make_shared<const Term>(Term{Term::Op::add, "", {}, std::move(a), std::move(b)});
}
TermP mul(TermP a, TermP b) {
    return std::make_shared<const Term>(Term{Term::Op::mul, "", {}, std::move(a), std::move(b)});
}
EtkFormula atom(EtkNode::Op op, TermP a, TermP b) {
    return std::make_shared<const EtkNode>(EtkNode{op, std::move(a), std::move(b), true, nullptr, nullptr});
}
EtkFormula truth(bool v) {
    return std::make_shared<const EtkNode>(EtkNode{EtkNode::Op::truth, nullptr, nullptr, v, nullptr, nullptr});
}
EtkFormula land(EtkFormula a, EtkFormula b) {
    return std::make_shared<const EtkNode>(EtkNode{EtkNode::Op::land, nullptr, nullptr, true, std::move(a), std::move(b)});
}
EtkFormula lor(EtkFormula a, EtkFormula b) {
    return std::make_shared<const EtkNode>(EtkNode{EtkNode::Op::lor, nullptr, nullptr, true, std::move(a), std::move(b)});
}
}  // namespace t

std::string to_string(const TermP& x) {
    switch (x->op) {
        case Term::Op::var: return x->var;
        case Term::Op::cnst: return to_literal(x->c);
        case Term::Op::add: return "(" + to_string(x->l) + " + " + to_string(x->r) + ")";
        default: return "(" + to_string(x->l) + " * " + to_string(x->r) + ")";
    }
}

std::string to_string(const EtkFormula& f) {
    switch (f->op) {
        case EtkNode::Op::truth: return f->value ? "true" : "false";
        case EtkNode::Op::land: return "(" + to_string(f->l) + " & " + to_string(f->r) + ")";
        case EtkNode::Op::lor: return "(" + to_string(f->l) + " | " + to_string(f->r) + ")";
        case EtkNode::Op::eq: return to_string(f->a) + " = " + to_string(f->b);
        case EtkNode::Op::neq: return to_string(f->a) + " != " + to_string(f->b);
        case EtkNode::Op::leq: return to_string(f->a) + " <= " + to_string(f->b);
        default: return to_string(f->a) + " !<= " + to_string(f->b);
    }
}

std::string to_string(const EtkSentence& s) {
    std::string out;
    for (auto& x : s.vars) out += "exists " + x + " . ";
    return out + to_string(s.matrix);
}

bool uses_leq(const EtkFormula& f) {
    switch (f->op) {
        case EtkNode::Op::leq:
        case EtkNode::Op::nleq: return true;
        case EtkNode::Op::land:
        case EtkNode::Op::lor: return uses_leq(f->l) || uses_leq(f->r);
        default: return false;
    }
}

}  // namespace scl
