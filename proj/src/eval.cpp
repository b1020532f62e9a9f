#include "scl/eval.hpp"

#include "scl/search.hpp"

#include <algorithm>

namespace scl {

namespace {

Value truth(bool b, SemiringId id) { return b ? Value::one(id) : Value::zero(id); }

Value pl(const Node* n, const PLAssignment& s, SemiringId id) {
    switch (n->kind) {
        case Kind::Prop:
        case Kind::NegProp: {
            const Value* v = s.find(n->name, n->kind == Kind::NegProp);
            if (!v)
                throw DomainError("assignment misses literal " + std::string(n->kind == Kind::NegProp ? "~" : "") +
                                  n->name);
            if (v->id() != id) throw DomainError("assignment value from another semiring");
            return *v;
        }
        case Kind::Const: return n->c;
        case Kind::And: {
            Value a = pl(n->l.get(), s, id);
            if (a.is_zero()) return a;
            return mul(a, pl(n->r.get(), s, id));
        }
        case Kind::Or: return add(pl(n->l.get(), s, id), pl(n->r.get(), s, id));
        case Kind::Eq: return truth(pl(n->l.get(), s, id) == pl(n->r.get(), s, id), id);
        case Kind::Leq: return truth(leq(pl(n->l.get(), s, id), pl(n->r.get(), s, id)), id);
        case Kind::Neq: return truth(pl(n->l.get(), s, id) != pl(n->r.get(), s, id), id);
        case Kind::NLeq: return truth(!leq(pl(n->l.get(), s, id), pl(n->r.get(), s, id)), id);
        case Kind::NotB: return truth(pl(n->l.get(), s, id).is_zero(), id);
        case Kind::AndB:
            if (pl(n->l.get(), s, id).is_zero()) return Value::zero(id);
            return truth(!pl(n->r.get(), s, id).is_zero(), id);
        case Kind::OrB:
            if (!pl(n->l.get(), s, id).is_zero()) return Value::one(id);
            return truth(!pl(n->r.get(), s, id).is_zero(), id);
        case Kind::ImpB:
            if (pl(n->l.get(), s, id).is_zero()) return Value::one(id);
            return truth(!pl(n->r.get(), s, id).is_zero(), id);
        default: throw DomainError("first-order construct in a propositional formula");
    }
}

}  // namespace

Value eval_pl(const Formula& phi, const PLAssignment& s, SemiringId id) { return pl(phi.get(), s, id); }

FOProgram::FOProgram(const Formula& phi, const KInterpretation& pi, const std::vector<std::string>& free)
    : n_(pi.domain()), id_(pi.id()), zero_(Value::zero(pi.id())), one_(Value::one(pi.id())) {
    std::vector<std::pair<std::string, int>> scope;
    for (auto& x : free) scope.emplace_back(x, nslots_++);
    nfree_ = nslots_;
    root_ = compile(phi, pi, scope);
}

int FOProgram::compile(const Formula& phi, const KInterpretation& pi,
                       std::vector<std::pair<std::string, int>>& scope) {
    auto lookup = [&](const std::string& x) {
        for (auto it = scope.rbegin(); it != scope.rend(); ++it)
            if (it->first == x) return it->second;
        throw DomainError("unassigned free variable '" + x + "'");
    };
    N node;
    node.kind = phi->kind;
    switch (phi->kind) {
        case Kind::Prop:
        case Kind::NegProp: throw DomainError("proposition in a first-order formula");
        case Kind::SOExists: throw DomainError("prefix-only: second-order quantifier inside a formula");
        case Kind::Const:
            if (phi->c.id() != id_) throw DomainError("constant from another semiring");
            node.c = phi->c;
            break;
        case Kind::VarEq:
        case Kind::VarNeq:
            for (auto& x : phi->vars) node.args.push_back(lookup(x));
            break;
        case Kind::Atom:
        case Kind::NegAtom: {
            int k = pi.vocabulary().arity(phi->name);
            if (k < 0) throw DomainError("unknown relation '" + phi->name + "'");
            if (k != static_cast<int>(phi->vars.size())) throw DomainError("arity mismatch at " + phi->name);
            for (auto& x : phi->vars) node.args.push_back(lookup(x));
            node.facts = &pi.facts(phi->name, phi->kind == Kind::NegAtom);
            break;
        }
        case Kind::Exists:
        case Kind::Forall: {
            node.slot = nslots_++;
            scope.emplace_back(phi->name, node.slot);
            node.a = compile(phi->l, pi, scope);
            scope.pop_back();
            break;
        }
        default:
            node.a = compile(phi->l, pi, scope);
            if (phi->r) node.b = compile(phi->r, pi, scope);
    }
    nodes_.push_back(std::move(node));
    return static_cast<int>(nodes_.size()) - 1;
}

Value FOProgram::run(const std::vector<int>& free_values) const {
    if (static_cast<int>(free_values.size()) != nfree_) throw DomainError("wrong number of free-variable values");
    std::vector<int> env(static_cast<size_t>(nslots_), 0);
    for (size_t i = 0; i < free_values.size(); ++i) {
        if (free_values[i] < 0 || free_values[i] >= n_) throw DomainError("assignment outside the domain");
        env[i] = free_values[i];
    }
    return eval(root_, env);
}

Value FOProgram::eval(int i, std::vector<int>& env) const {
    const N& n = nodes_[static_cast<size_t>(i)];
    auto t = [&](bool b) { return b ? one_ : zero_; };
    switch (n.kind) {
        case Kind::Const: return n.c;
        case Kind::VarEq: return t(env[n.args[0]] == env[n.args[1]]);
        case Kind::VarNeq: return t(env[n.args[0]] != env[n.args[1]]);
        case Kind::Atom:
        case Kind::NegAtom: {
            size_t c = 0;
            for (int s : n.args) c = c * static_cast<size_t>(n_) + static_cast<size_t>(env[s]);
            return (*n.facts)[c];
        }
        case Kind::And: {
            Value a = eval(n.a, env);
            if (a.is_zero()) return a;
            return mul(a, eval(n.b, env));
        }
        case Kind::Or: return add(eval(n.a, env), eval(n.b, env));
        case Kind::Eq: return t(eval(n.a, env) == eval(n.b, env));
        case Kind::Leq: return t(leq(eval(n.a, env), eval(n.b, env)));
        case Kind::Neq: return t(eval(n.a, env) != eval(n.b, env));
        case Kind::NLeq: return t(!leq(eval(n.a, env), eval(n.b, env)));
        case Kind::NotB: return t(eval(n.a, env).is_zero());
        case Kind::AndB:
            if (eval(n.a, env).is_zero()) return zero_;
            return t(!eval(n.b, env).is_zero());
        case Kind::OrB:
            if (!eval(n.a, env).is_zero()) return one_;
            return t(!eval(n.b, env).is_zero());
        case Kind::ImpB:
            if (eval(n.a, env).is_zero()) return one_;
            return t(!eval(n.b, env).is_zero());
        case Kind::Exists: {
            Value acc = zero_;
            for (int a = 0; a < n_; ++a) {
                env[n.slot] = a;
                acc = add(acc, eval(n.a, env));
            }
            return acc;
        }
        case Kind::Forall: {
            Value acc = one_;
            for (int a = 0; a < n_; ++a) {
                env[n.slot] = a;
                acc = mul(acc, eval(n.a, env));
                if (acc.is_zero()) break;
            }
            return acc;
        }
        default: throw DomainError("unexpected node in compiled formula");
    }
}

Value eval_fo(const Formula& phi, const KInterpretation& pi, const FOAssignment& s) {
    std::vector<std::string> names;
    std::vector<int> vals;
    for (auto& [x, a] : s) {
        names.push_back(x);
        vals.push_back(a);
    }
    for (auto& x : free_vars(phi))
        if (!s.count(x)) throw DomainError("unassigned free variable '" + x + "'");
    return FOProgram(phi, pi, names).run(vals);
}

KInterpretation extend_with(const KInterpretation& pi, const std::vector<std::pair<std::string, int>>& prefix) {
    KInterpretation ext = pi;
    for (auto& [r, k] : prefix) {
        if (pi.vocabulary().has(r)) throw DomainError("quantified relation '" + r + "' is already in the vocabulary");
        ext.add_relation(r, k);
    }
    return ext;
}

EsoResult eval_eso(const ESOSentence& phi, const KInterpretation& pi, const EsoWitness& mode) {
    KInterpretation ext = extend_with(pi, phi.prefix);
    const Vocabulary& wv = mode.extension.vocabulary();
    if (wv.rels.size() != phi.prefix.size()) throw DomainError("witness does not match the quantifier prefix");
    if (mode.extension.domain() != pi.domain() || mode.extension.id() != pi.id())
        throw DomainError("witness over another domain or semiring");
    for (auto& [r, k] : phi.prefix) {
        if (wv.arity(r) != k) throw DomainError("witness lacks relation " + r + "/" + std::to_string(k));
        ext.facts(r, false) = mode.extension.facts(r, false);
        ext.facts(r, true) = mode.extension.facts(r, true);
    }
    EsoResult res;
    res.candidates = 1;
    Value v = FOProgram(phi.matrix, ext).run();
    res.value = v.is_zero() ? Value::zero(pi.id()) : Value::one(pi.id());
    return res;
}

namespace {

struct FactSlot {
    std::string rel;
    size_t index;
    bool negated;
};

class EsoWorker {
public:
    EsoWorker(const ESOSentence& phi, const KInterpretation& pi, const std::vector<FactSlot>& slots,
              const EsoExhaustive& mode)
        : ext_(extend_with(pi, phi.prefix)), slots_(slots), mode_(mode), zero_(Value::zero(pi.id())),
          one_(Value::one(pi.id())) {
        prog_.emplace(phi.matrix, ext_);
        for (auto& s : slots_) targets_.push_back(&ext_.facts(s.rel, s.negated)[s.index]);
        radix_ = mode.model_defining01 ? 2 : mode.universe.size();
        digits_.assign(slots_.size(), 0);
    }

    uint64_t scan(uint64_t lo, uint64_t hi, const std::atomic<uint64_t>& best) {
        decode(lo);
        for (uint64_t i = lo; i < hi; ++i) {
            if (i >= best.load(std::memory_order_relaxed)) return kNoHit;
            if (!prog_->run().is_zero()) return i;
            increment();
        }
        return kNoHit;
    }

    KInterpretation certificate(uint64_t i, const ESOSentence& phi) {
        decode(i);
        KInterpretation out(ext_.id(), ext_.domain(), Vocabulary{phi.prefix});
        for (auto& [r, k] : phi.prefix) {
            out.facts(r, false) = ext_.facts(r, false);
            out.facts(r, true) = ext_.facts(r, true);
        }
        return out;
    }

private:
    void write(size_t pos) {
        if (mode_.model_defining01) {
            bool on = digits_[pos] == 1;
            *targets_[pos] = on ? one_ : zero_;
            ext_.facts(slots_[pos].rel, true)[slots_[pos].index] = on ? zero_ : one_;
        } else {
            *targets_[pos] = mode_.universe[digits_[pos]];
        }
    }
    void decode(uint64_t i) {
        for (size_t p = slots_.size(); p-- > 0;) {
            digits_[p] = static_cast<size_t>(i % radix_);
            i /= radix_;
            write(p);
        }
    }
    void increment() {
        for (size_t p = slots_.size(); p-- > 0;) {
            if (++digits_[p] < radix_) {
                write(p);
                return;
            }
            digits_[p] = 0;
            write(p);
        }
    }

    KInterpretation ext_;
    std::optional<FOProgram> prog_;
    const std::vector<FactSlot>& slots_;
    const EsoExhaustive& mode_;
    Value zero_, one_;
    std::vector<Value*> targets_;
    std::vector<size_t> digits_;
    uint64_t radix_ = 1;
};

}  // namespace

EsoResult eval_eso(const ESOSentence& phi, const KInterpretation& pi, const EsoExhaustive& mode) {
    const SemiringId id = pi.id();
    if (!mode.model_defining01) {
        if (mode.universe.empty()) throw DomainError("exhaustive mode needs a non-empty universe");
        bool has0 = false, has1 = false;
        for (auto& v : mode.universe) {
            if (v.id() != id) throw DomainError("universe value from another semiring");
            has0 |= v.is_zero();
            has1 |= v.is_one();
        }
        if (!has0 || !has1) throw DomainError("exhaustive universe must contain 0 and 1");
    }
    std::vector<FactSlot> slots;
    KInterpretation probe = extend_with(pi, phi.prefix);
    for (auto& [r, k] : phi.prefix) {
        size_t cnt = probe.tuple_count(r);
        for (size_t i = 0; i < cnt; ++i) {
            slots.push_back({r, i, false});
            if (!mode.model_defining01) slots.push_back({r, i, true});
        }
    }
    const uint64_t radix = mode.model_defining01 ? 2 : mode.universe.size();
    uint64_t total = 1;
    EsoResult res;
    for (size_t i = 0; i < slots.size(); ++i) {
        if (total > mode.max_candidates / radix) {
            res.outcome = EsoResult::Outcome::bound_exceeded;
            res.value = Value::zero(id);
            return res;
        }
        total *= radix;
    }
    if (total > mode.max_candidates) {
        res.outcome = EsoResult::Outcome::bound_exceeded;
        res.value = Value::zero(id);
        return res;
    }
    auto make = [&] { return EsoWorker(phi, pi, slots, mode); };
    uint64_t hit;
    if (mode.parallel) {
        hit = parallel_first_hit(total, 256, make);
    } else {
        EsoWorker w = make();
        std::atomic<uint64_t> best{kNoHit};
        hit = w.scan(0, total, best);
    }
    res.candidates = hit == kNoHit ? total : hit + 1;
    res.value = hit == kNoHit ? Value::zero(id) : Value::one(id);
    if (hit != kNoHit) res.certificate = make().certificate(hit, phi);
    return res;
}

}  // namespace scl
