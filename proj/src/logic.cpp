#include "scl/logic.hpp"

#include <algorithm>
#include <functional>

namespace scl {

bool is_sugar(Kind k) { return k >= Kind::NotB; }

bool is_comparison(Kind k) {
    return k == Kind::Eq || k == Kind::Leq || k == Kind::Neq || k == Kind::NLeq || k == Kind::NotB;
}

namespace f {
namespace {
Formula mk(Kind k, Formula l = nullptr, Formula r = nullptr) {
    auto n = std::make_shared<Node>();
    n->kind = k;
    n->l = std::move(l);
    n->r = std::move(r);
    return n;
}
Formula named(Kind k, const std::string& name, std::vector<std::string> vars = {}) {
    auto n = std::make_shared<Node>();
    n->kind = k;
    n->name = name;
    n->vars = std::move(vars);
    return n;
}
}  // namespace

Formula prop(const std::string& p) { return named(Kind::Prop, p); }
Formula neg_prop(const std::string& p) { return named(Kind::NegProp, p); }
Formula constant(const Value& v) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Const;
    n->c = v;
    return n;
}
Formula land(Formula a, Formula b) { return mk(Kind::And, std::move(a), std::move(b)); }
Formula lor(Formula a, Formula b) { return mk(Kind::Or, std::move(a), std::move(b)); }
Formula eq(Formula a, Formula b) { return mk(Kind::Eq, std::move(a), std::move(b)); }
Formula leq(Formula a, Formula b) { return mk(Kind::Leq, std::move(a), std::move(b)); }
Formula var_eq(const std::string& x, const std::string& y) { return named(Kind::VarEq, "", {x, y}); }
Formula var_neq(const std::string& x, const std::string& y) { return named(Kind::VarNeq, "", {x, y}); }
Formula atom(const std::string& rel, std::vector<std::string> args) { return named(Kind::Atom, rel, std::move(args)); }
Formula neg_atom(const std::string& rel, std::vector<std::string> args) {
    return named(Kind::NegAtom, rel, std::move(args));
}
Formula exists(const std::string& x, Formula body) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Exists;
    n->name = x;
    n->l = std::move(body);
    return n;
}
Formula forall(const std::string& x, Formula body) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Forall;
    n->name = x;
    n->l = std::move(body);
    return n;
}
Formula exists(const std::vector<std::string>& xs, Formula body) {
    for (auto it = xs.rbegin(); it != xs.rend(); ++it) body = exists(*it, body);
    return body;
}
Formula forall(const std::vector<std::string>& xs, Formula body) {
    for (auto it = xs.rbegin(); it != xs.rend(); ++it) body = forall(*it, body);
    return body;
}
Formula so_exists(const std::string& rel, int arity, Formula body) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::SOExists;
    n->name = rel;
    n->arity = arity;
    n->l = std::move(body);
    return n;
}
Formula not_b(Formula a) { return mk(Kind::NotB, std::move(a)); }
Formula or_b(Formula a, Formula b) { return mk(Kind::OrB, std::move(a), std::move(b)); }
Formula and_b(Formula a, Formula b) { return mk(Kind::AndB, std::move(a), std::move(b)); }
Formula imp_b(Formula a, Formula b) { return mk(Kind::ImpB, std::move(a), std::move(b)); }
Formula neq(Formula a, Formula b) { return mk(Kind::Neq, std::move(a), std::move(b)); }
Formula nleq(Formula a, Formula b) { return mk(Kind::NLeq, std::move(a), std::move(b)); }

namespace {
Formula fold(const std::vector<Formula>& xs, const Formula& unit, Formula (*op)(Formula, Formula)) {
    if (xs.empty()) return unit;
    // Balanced fold keeps the tree shallow for large conjunctions.
    std::vector<Formula> cur = xs;
    while (cur.size() > 1) {
        std::vector<Formula> nxt;
        for (size_t i = 0; i + 1 < cur.size(); i += 2) nxt.push_back(op(cur[i], cur[i + 1]));
        if (cur.size() % 2) nxt.push_back(cur.back());
        cur.swap(nxt);
    }
    return cur[0];
}
}  // namespace

Formula all_b(const std::vector<Formula>& xs, SemiringId id) { return fold(xs, constant(Value::one(id)), and_b); }
Formula any_b(const std::vector<Formula>& xs, SemiringId id) { return fold(xs, constant(Value::zero(id)), or_b); }
Formula all(const std::vector<Formula>& xs, SemiringId id) { return fold(xs, constant(Value::one(id)), land); }
Formula any(const std::vector<Formula>& xs, SemiringId id) { return fold(xs, constant(Value::zero(id)), lor); }
}  // namespace f

bool equal(const Formula& a, const Formula& b) {
    if (a == b) return true;
    if (!a || !b) return false;
    if (a->kind != b->kind || a->name != b->name || a->vars != b->vars || a->arity != b->arity) return false;
    if (a->kind == Kind::Const && a->c != b->c) return false;
    return equal(a->l, b->l) && equal(a->r, b->r);
}

size_t size(const Formula& a) { return a ? 1 + size(a->l) + size(a->r) : 0; }

std::set<std::string> free_vars(const Formula& a) {
    std::set<std::string> out;
    std::function<void(const Formula&, std::vector<std::string>&)> go = [&](const Formula& n,
                                                                           std::vector<std::string>& bound) {
        if (!n) return;
        auto isbound = [&](const std::string& x) { return std::find(bound.begin(), bound.end(), x) != bound.end(); };
        switch (n->kind) {
            case Kind::VarEq:
            case Kind::VarNeq:
            case Kind::Atom:
            case Kind::NegAtom:
                for (auto& x : n->vars)
                    if (!isbound(x)) out.insert(x);
                return;
            case Kind::Exists:
            case Kind::Forall:
                bound.push_back(n->name);
                go(n->l, bound);
                bound.pop_back();
                return;
            default:
                go(n->l, bound);
                go(n->r, bound);
        }
    };
    std::vector<std::string> bound;
    go(a, bound);
    return out;
}

std::vector<std::pair<std::string, bool>> pl_literals(const Formula& a) {
    std::vector<std::pair<std::string, bool>> out;
    std::set<std::pair<std::string, bool>> seen;
    std::function<void(const Formula&)> go = [&](const Formula& n) {
        if (!n) return;
        if (n->kind == Kind::Prop || n->kind == Kind::NegProp) {
            std::pair<std::string, bool> lit{n->name, n->kind == Kind::NegProp};
            if (seen.insert(lit).second) out.push_back(lit);
            return;
        }
        go(n->l);
        go(n->r);
    };
    go(a);
    return out;
}

std::vector<Value> constants(const Formula& a) {
    std::vector<Value> out;
    std::function<void(const Formula&)> go = [&](const Formula& n) {
        if (!n) return;
        if (n->kind == Kind::Const) out.push_back(n->c);
        go(n->l);
        go(n->r);
    };
    go(a);
    return out;
}

Formula desugar(const Formula& a, SemiringId id) {
    if (!a) return a;
    const Formula zero = f::constant(Value::zero(id));
    auto ne0 = [&](Formula x) { return f::eq(f::eq(x, zero), zero); };
    Formula l = desugar(a->l, id), r = desugar(a->r, id);
    switch (a->kind) {
        case Kind::NotB: return f::eq(l, zero);
        case Kind::OrB: return ne0(f::lor(ne0(l), ne0(r)));
        case Kind::AndB: return ne0(f::land(ne0(l), ne0(r)));
        case Kind::ImpB: return ne0(f::lor(f::eq(l, zero), ne0(r)));
        case Kind::Neq: return f::eq(f::eq(l, r), zero);
        case Kind::NLeq: return f::leq(f::leq(l, r), zero);
        default: break;
    }
    if (l == a->l && r == a->r) return a;
    auto n = std::make_shared<Node>(*a);
    n->l = l;
    n->r = r;
    return n;
}

int Vocabulary::arity(const std::string& r) const {
    for (auto& [n, k] : rels)
        if (n == r) return k;
    return -1;
}

void Vocabulary::add(const std::string& r, int k) {
    if (has(r)) {
        if (arity(r) != k) throw DomainError("relation " + r + " redeclared with another arity");
        return;
    }
    rels.emplace_back(r, k);
}

ESOSentence to_eso(const Formula& a) {
    ESOSentence s;
    Formula cur = a;
    while (cur && cur->kind == Kind::SOExists) {
        s.prefix.emplace_back(cur->name, cur->arity);
        cur = cur->l;
    }
    s.matrix = cur;
    return s;
}

Formula from_eso(const ESOSentence& s) {
    Formula cur = s.matrix;
    for (auto it = s.prefix.rbegin(); it != s.prefix.rend(); ++it) cur = f::so_exists(it->first, it->second, cur);
    return cur;
}

namespace {

void check(const Formula& n, Layer layer, const SemiringProfile& prof, const Vocabulary* voc, bool in_prefix,
           std::vector<std::string>& diags) {
    if (!n) {
        diags.push_back("null subformula");
        return;
    }
    const bool fo_kind = n->kind == Kind::VarEq || n->kind == Kind::VarNeq || n->kind == Kind::Atom ||
                         n->kind == Kind::NegAtom || n->kind == Kind::Exists || n->kind == Kind::Forall;
    if (layer == Layer::PL && fo_kind) diags.push_back("first-order construct in a propositional formula");
    if (layer != Layer::PL && (n->kind == Kind::Prop || n->kind == Kind::NegProp))
        diags.push_back("proposition '" + n->name + "' in a first-order formula");
    switch (n->kind) {
        case Kind::Const:
            if (n->c.id() != prof.id)
                diags.push_back(std::string("constant from ") + semiring_name(n->c.id()) + " in a formula over " +
                                semiring_name(prof.id));
            break;
        case Kind::Leq:
        case Kind::NLeq:
            if (!prof.ordered) diags.push_back("comparison <= needs an ordered semiring");
            break;
        case Kind::Atom:
        case Kind::NegAtom:
            if (voc) {
                int k = voc->arity(n->name);
                if (k < 0)
                    diags.push_back("unknown relation '" + n->name + "'");
                else if (k != static_cast<int>(n->vars.size()))
                    diags.push_back("arity mismatch: " + n->name + " declared with arity " + std::to_string(k) +
                                    ", used with " + std::to_string(n->vars.size()));
            }
            break;
        case Kind::SOExists:
            if (layer != Layer::ESO || !in_prefix)
                diags.push_back("prefix-only: second-order quantifier over '" + n->name +
                                "' must stand in the leading prefix");
            check(n->l, layer, prof, voc, in_prefix, diags);
            return;
        default: break;
    }
    if (n->l) check(n->l, layer, prof, voc, false, diags);
    if (n->r) check(n->r, layer, prof, voc, false, diags);
}

}  // namespace

std::vector<std::string> validate(const Formula& a, Layer layer, const SemiringProfile& prof, const Vocabulary* voc) {
    std::vector<std::string> diags;
    if (layer == Layer::ESO) {
        ESOSentence s = to_eso(a);
        Vocabulary full = voc ? *voc : Vocabulary{};
        for (auto& [r, k] : s.prefix) {
            if (voc && voc->has(r)) diags.push_back("quantified relation '" + r + "' clashes with the vocabulary");
            full.rels.emplace_back(r, k);
        }
        check(a, layer, prof, voc ? &full : nullptr, true, diags);
        if (!free_vars(a).empty()) diags.push_back("ESO sentence has free variables");
        return diags;
    }
    check(a, layer, prof, voc, false, diags);
    return diags;
}

std::vector<std::string> validate(const ESOSentence& s, SemiringId id, const Vocabulary& voc) {
    return validate(from_eso(s), Layer::ESO, profile(id), &voc);
}

const Value* PLAssignment::find(const std::string& p, bool negated) const {
    auto it = values.find({p, negated});
    return it == values.end() ? nullptr : &it->second;
}

PLAssignment PLAssignment::model_defining(SemiringId id, const std::map<std::string, Value>& pos) {
    PLAssignment s;
    s.id = id;
    for (auto& [p, v] : pos) {
        s.set(p, false, v);
        s.set(p, true, v.is_zero() ? Value::one(id) : Value::zero(id));
    }
    return s;
}

KInterpretation::KInterpretation(SemiringId id, int n, Vocabulary voc) : id_(id), n_(n) {
    if (n < 0) throw DomainError("negative domain size");
    for (auto& [r, k] : voc.rels) add_relation(r, k);
}

KInterpretation KInterpretation::ordered(SemiringId id, int n, Vocabulary voc) {
    KInterpretation pi(id, n, std::move(voc));
    if (!pi.voc_.has(kLess)) pi.add_relation(kLess, 2);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            bool lt = i < j;
            pi.set(kLess, {i, j}, false, lt ? Value::one(id) : Value::zero(id));
            pi.set(kLess, {i, j}, true, lt ? Value::zero(id) : Value::one(id));
        }
    return pi;
}

void KInterpretation::add_relation(const std::string& r, int k) {
    if (k < 0) throw DomainError("negative arity");
    voc_.add(r, k);
    if (rels_.count(r)) return;
    size_t cnt = 1;
    for (int i = 0; i < k; ++i) cnt *= static_cast<size_t>(n_);
    Rel rel{k, std::vector<Value>(cnt, Value::zero(id_)), std::vector<Value>(cnt, Value::zero(id_))};
    rels_.emplace(r, std::move(rel));
}

const KInterpretation::Rel& KInterpretation::rel(const std::string& r) const {
    auto it = rels_.find(r);
    if (it == rels_.end()) throw DomainError("unknown relation '" + r + "'");
    return it->second;
}

KInterpretation::Rel& KInterpretation::rel(const std::string& r) {
    auto it = rels_.find(r);
    if (it == rels_.end()) throw DomainError("unknown relation '" + r + "'");
    return it->second;
}

size_t KInterpretation::code(const Rel& r, const std::vector<int>& t) const {
    if (static_cast<int>(t.size()) != r.arity) throw DomainError("tuple length does not match arity");
    size_t c = 0;
    for (int x : t) {
        if (x < 0 || x >= n_) throw DomainError("domain index out of range");
        c = c * static_cast<size_t>(n_) + static_cast<size_t>(x);
    }
    return c;
}

const Value& KInterpretation::get(const std::string& r, const std::vector<int>& tuple, bool negated) const {
    const Rel& R = rel(r);
    size_t c = code(R, tuple);
    return negated ? R.neg[c] : R.pos[c];
}

void KInterpretation::set(const std::string& r, const std::vector<int>& tuple, bool negated, const Value& v) {
    if (v.id() != id_) throw DomainError("fact value from another semiring");
    Rel& R = rel(r);
    size_t c = code(R, tuple);
    (negated ? R.neg[c] : R.pos[c]) = v;
}

const std::vector<Value>& KInterpretation::facts(const std::string& r, bool negated) const {
    const Rel& R = rel(r);
    return negated ? R.neg : R.pos;
}

std::vector<Value>& KInterpretation::facts(const std::string& r, bool negated) {
    Rel& R = rel(r);
    return negated ? R.neg : R.pos;
}

size_t KInterpretation::tuple_count(const std::string& r) const { return rel(r).pos.size(); }

std::vector<int> KInterpretation::decode_tuple(const std::string& r, size_t c) const {
    const Rel& R = rel(r);
    std::vector<int> t(static_cast<size_t>(R.arity));
    for (int i = R.arity - 1; i >= 0; --i) {
        t[static_cast<size_t>(i)] = static_cast<int>(c % static_cast<size_t>(n_));
        c /= static_cast<size_t>(n_);
    }
    return t;
}

bool KInterpretation::is_ordered() const {
    if (!voc_.has(kLess) || voc_.arity(kLess) != 2) return false;
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j) {
            const Value& v = get(kLess, {i, j}, false);
            if (i < j ? !v.is_one() : !v.is_zero()) return false;
        }
    return true;
}

bool KInterpretation::is_model_defining() const {
    for (auto& [name, R] : rels_)
        for (size_t i = 0; i < R.pos.size(); ++i)
            if (R.pos[i].is_zero() == R.neg[i].is_zero()) return false;
    return true;
}

bool operator==(const KInterpretation& a, const KInterpretation& b) {
    if (a.id_ != b.id_ || a.n_ != b.n_ || a.voc_.rels != b.voc_.rels) return false;
    for (auto& [name, R] : a.rels_) {
        auto it = b.rels_.find(name);
        if (it == b.rels_.end() || R.pos != it->second.pos || R.neg != it->second.neg) return false;
    }
    return true;
}

}  // namespace scl
