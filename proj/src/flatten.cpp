#include "scl/reductions.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace scl {

namespace {

bool is_pure(const Formula& x) {
    switch (x->kind) {
        case Kind::Prop:
        case Kind::NegProp:
        case Kind::Const: return true;
        case Kind::And:
        case Kind::Or: return is_pure(x->l) && is_pure(x->r);
        default: return false;
    }
}

// Always 0 or 1.
bool is_boolean(Kind k) {
    return k == Kind::AndB || k == Kind::OrB || k == Kind::ImpB || k == Kind::NotB || k == Kind::Eq ||
           k == Kind::Leq || k == Kind::Neq || k == Kind::NLeq;
}

// Boolean-valued subterms reachable through + and * only.
void collect(const Formula& x, std::vector<Formula>& out) {
    if (is_boolean(x->kind)) {
        for (auto& p : out)
            if (p.get() == x.get()) return;
        out.push_back(x);
    } else if (x->kind == Kind::And || x->kind == Kind::Or) {
        collect(x->l, out);
        collect(x->r, out);
    }
}

// Cap on Boolean subterms split inside one arithmetic context.
constexpr size_t kMaxSplit = 12;

class Flattener {
public:
    explicit Flattener(SemiringId id) : id_(id), zero_(f::constant(Value::zero(id))), one_(f::constant(Value::one(id))) {}

    // Flat formula that is nonzero exactly when x is.
    Formula nz(const Formula& x) { return go(x, false); }

private:
    static bool is_const(const Formula& x) { return x->kind == Kind::Const; }
    Formula truth(bool b) const { return b ? one_ : zero_; }

    Formula mk_and(const Formula& a, const Formula& b) const {
        if (is_const(a)) return a->c.is_zero() ? zero_ : b;
        if (is_const(b)) return b->c.is_zero() ? zero_ : a;
        return f::and_b(a, b);
    }
    Formula mk_or(const Formula& a, const Formula& b) const {
        if (is_const(a)) return a->c.is_zero() ? b : one_;
        if (is_const(b)) return b->c.is_zero() ? a : one_;
        return f::or_b(a, b);
    }

    // go(x, false) is nonzero iff x != 0; go(x, true) is nonzero iff x = 0.
    Formula go(const Formula& x, bool negate) {
        switch (x->kind) {
            case Kind::Const: return truth(x->c.is_zero() == negate);
            case Kind::Prop:
            case Kind::NegProp: return negate ? f::eq(x, zero_) : x;
            case Kind::AndB:
                return negate ? mk_or(go(x->l, true), go(x->r, true)) : mk_and(go(x->l, false), go(x->r, false));
            case Kind::OrB:
                return negate ? mk_and(go(x->l, true), go(x->r, true)) : mk_or(go(x->l, false), go(x->r, false));
            case Kind::ImpB:
                return negate ? mk_and(go(x->l, false), go(x->r, true)) : mk_or(go(x->l, true), go(x->r, false));
            case Kind::NotB: return go(x->l, !negate);
            case Kind::Eq: return compare(Kind::Eq, x->l, x->r, negate);
            case Kind::Leq: return compare(Kind::Leq, x->l, x->r, negate);
            case Kind::Neq: return compare(Kind::Eq, x->l, x->r, !negate);
            case Kind::NLeq: return compare(Kind::Leq, x->l, x->r, !negate);
            case Kind::And:
            case Kind::Or:
                if (is_pure(x)) return negate ? f::eq(x, zero_) : x;
                return compare(Kind::Eq, x, zero_, !negate);
            default: throw DomainError("flatten: not a propositional formula");
        }
    }

    Formula subst(const Formula& x, const std::map<const Node*, bool>& val) const {
        auto it = val.find(x.get());
        if (it != val.end()) return truth(it->second);
        if (x->kind == Kind::And) return f::land(subst(x->l, val), subst(x->r, val));
        if (x->kind == Kind::Or) return f::lor(subst(x->l, val), subst(x->r, val));
        return x;
    }

    static Value fold(const Formula& x) {
        if (x->kind == Kind::Const) return x->c;
        if (x->kind == Kind::And) return mul(fold(x->l), fold(x->r));
        return add(fold(x->l), fold(x->r));
    }
    static bool closed(const Formula& x) {
        if (x->kind == Kind::Const) return true;
        if (x->kind == Kind::And || x->kind == Kind::Or) return closed(x->l) && closed(x->r);
        return false;
    }

    Formula atom(Kind rel, const Formula& a, const Formula& b, bool negate) const {
        if (closed(a) && closed(b)) {
            Value va = fold(a), vb = fold(b);
            bool holds = rel == Kind::Eq ? va == vb : leq(va, vb);
            return truth(holds != negate);
        }
        if (rel == Kind::Eq) return negate ? f::neq(a, b) : f::eq(a, b);
        return negate ? f::nleq(a, b) : f::leq(a, b);
    }

    // Splits on the Boolean-valued subterms of both sides.
    Formula compare(Kind rel, const Formula& a, const Formula& b, bool negate) {
        std::vector<Formula> bs;
        collect(a, bs);
        collect(b, bs);
        if (bs.empty()) return atom(rel, a, b, negate);
        if (bs.size() > kMaxSplit) throw DomainError("flatten: unsupported nesting (too many Boolean subterms in one comparison)");
        std::vector<Formula> pos, neg;
        for (auto& p : bs) {
            pos.push_back(go(p, false));
            neg.push_back(go(p, true));
        }
        Formula out = zero_;
        for (size_t mask = 0; mask < (size_t(1) << bs.size()); ++mask) {
            std::map<const Node*, bool> val;
            Formula cond = one_;
            for (size_t i = 0; i < bs.size(); ++i) {
                bool bit = (mask >> i) & 1;
                val[bs[i].get()] = bit;
                cond = mk_and(cond, bit ? pos[i] : neg[i]);
            }
            out = mk_or(out, mk_and(cond, atom(rel, subst(a, val), subst(b, val), negate)));
        }
        return out;
    }

    SemiringId id_;
    Formula zero_, one_;
};

bool flat_leaf(const Formula& x) {
    switch (x->kind) {
        case Kind::Eq:
        case Kind::Leq:
        case Kind::Neq:
        case Kind::NLeq: return is_pure(x->l) && is_pure(x->r);
        case Kind::NotB: return is_pure(x->l);
        default: return is_pure(x);
    }
}

}  // namespace

Formula flatten(const Formula& phi, SemiringId id) { return Flattener(id).nz(phi); }

bool is_flat(const Formula& phi) {
    switch (phi->kind) {
        case Kind::AndB:
        case Kind::OrB:
        case Kind::And:
        case Kind::Or: return is_flat(phi->l) && is_flat(phi->r);
        default: return flat_leaf(phi);
    }
}

namespace {

struct EtkBuilder {
    SemiringId id;
    const std::map<Literal, std::string>& g;

    TermP term(const Formula& x) const {
        switch (x->kind) {
            case Kind::Prop: return t::var(g.at({x->name, false}));
            case Kind::NegProp: return t::var(g.at({x->name, true}));
            case Kind::Const: return t::cnst(x->c);
            case Kind::And: return t::mul(term(x->l), term(x->r));
            default: return t::add(term(x->l), term(x->r));
        }
    }

    EtkFormula formula(const Formula& x) const {
        const TermP zero = t::cnst(Value::zero(id));
        switch (x->kind) {
            // Outside comparisons positivity makes the semiring connectives classical.
            case Kind::AndB:
            case Kind::And: return t::land(formula(x->l), formula(x->r));
            case Kind::OrB:
            case Kind::Or: return t::lor(formula(x->l), formula(x->r));
            case Kind::Const: return t::truth(!x->c.is_zero());
            case Kind::Eq: return t::atom(EtkNode::Op::eq, term(x->l), term(x->r));
            case Kind::Neq: return t::atom(EtkNode::Op::neq, term(x->l), term(x->r));
            case Kind::Leq: return t::atom(EtkNode::Op::leq, term(x->l), term(x->r));
            case Kind::NLeq: return t::atom(EtkNode::Op::nleq, term(x->l), term(x->r));
            case Kind::NotB: return t::atom(EtkNode::Op::eq, term(x->l), zero);
            default: return t::atom(EtkNode::Op::neq, term(x), zero);
        }
    }
};

}  // namespace

EtkArtifact sat_to_etk(const Formula& flat_phi, SemiringId id, const std::vector<Value>& X) {
    if (!is_flat(flat_phi)) throw DomainError("sat_to_etk: formula is not flat");
    if (!profile(id).positive) throw DomainError("sat_to_etk: needs a positive semiring");
    for (auto& c : constants(flat_phi))
        if (!c.is_zero() && !c.is_one() && std::find(X.begin(), X.end(), c) == X.end())
            throw DomainError("sat_to_etk: constant " + to_literal(c) + " outside X");
    EtkArtifact art;
    art.X = X;
    art.sentence.id = id;
    // Both signs of every proposition get a variable, whether or not the formula uses them.
    std::set<std::string> seen;
    for (auto& [name, neg] : pl_literals(flat_phi)) {
        if (!seen.insert(name).second) continue;
        for (bool n : {false, true}) {
            std::string var = (n ? "xn_" : "x_") + name;
            art.g[{name, n}] = var;
            art.sentence.vars.push_back(var);
        }
    }
    art.sentence.matrix = EtkBuilder{id, art.g}.formula(flat_phi);
    art.uses_leq = uses_leq(art.sentence.matrix);
    if (art.uses_leq && !profile(id).ordered) throw DomainError("sat_to_etk: order atoms over an unordered semiring");
    return art;
}

PLAssignment etk_to_assignment(const EtkArtifact& art, const std::vector<Value>& valuation) {
    if (valuation.size() != art.sentence.vars.size()) throw DomainError("valuation length does not match the prefix");
    std::map<std::string, size_t> index;
    for (size_t i = 0; i < art.sentence.vars.size(); ++i) index[art.sentence.vars[i]] = i;
    PLAssignment s;
    s.id = art.sentence.id;
    for (auto& [lit, var] : art.g) s.set(lit.name, lit.negated, valuation[index.at(var)]);
    return s;
}

}  // namespace scl
