#include "scl/solvers.hpp"

#include "scl/search.hpp"

#include <atomic>
#include <map>

namespace scl {

const char* outcome_name(SearchOutcome o) {
    switch (o) {
        case SearchOutcome::found: return "found";
        case SearchOutcome::none_within_bounds: return "none-within-bounds";
        default: return "bound-exceeded";
    }
}

namespace {

void check_universe(const std::vector<Value>& u, SemiringId id) {
    if (u.empty()) throw DomainError("search universe must be non-empty");
    for (auto& v : u)
        if (v.id() != id) throw DomainError("universe value from another semiring");
}

// PL formula compiled to slot lookups.
class PLProgram {
public:
    PLProgram(SemiringId id, const std::map<Literal, int>& slots) : id_(id), slots_(slots) {}

    int add(const Formula& phi) {
        P p;
        p.kind = phi->kind;
        switch (phi->kind) {
            case Kind::Prop:
            case Kind::NegProp: p.slot = slots_.at({phi->name, phi->kind == Kind::NegProp}); break;
            case Kind::Const:
                if (phi->c.id() != id_) throw DomainError("constant from another semiring");
                p.c = phi->c;
                break;
            case Kind::And:
            case Kind::Or:
            case Kind::Eq:
            case Kind::Leq:
            case Kind::Neq:
            case Kind::NLeq:
            case Kind::AndB:
            case Kind::OrB:
            case Kind::ImpB:
                p.a = add(phi->l);
                p.b = add(phi->r);
                break;
            case Kind::NotB: p.a = add(phi->l); break;
            default: throw DomainError("first-order construct in a propositional formula");
        }
        if (p.slot > max_slot_) max_slot_ = p.slot;
        nodes_.push_back(std::move(p));
        return static_cast<int>(nodes_.size()) - 1;
    }

    // Largest slot read below node i.
    int max_slot(int i) const {
        const P& p = nodes_[static_cast<size_t>(i)];
        int m = p.slot;
        if (p.a >= 0) m = std::max(m, max_slot(p.a));
        if (p.b >= 0) m = std::max(m, max_slot(p.b));
        return m;
    }

    Value eval(int i, const std::vector<Value>& v) const {
        const P& p = nodes_[static_cast<size_t>(i)];
        auto t = [&](bool b) { return b ? Value::one(id_) : Value::zero(id_); };
        switch (p.kind) {
            case Kind::Prop:
            case Kind::NegProp: return v[static_cast<size_t>(p.slot)];
            case Kind::Const: return p.c;
            case Kind::And: {
                Value a = eval(p.a, v);
                if (a.is_zero()) return a;
                return mul(a, eval(p.b, v));
            }
            case Kind::Or: return scl::add(eval(p.a, v), eval(p.b, v));
            case Kind::Eq: return t(eval(p.a, v) == eval(p.b, v));
            case Kind::Leq: return t(leq(eval(p.a, v), eval(p.b, v)));
            case Kind::Neq: return t(eval(p.a, v) != eval(p.b, v));
            case Kind::NLeq: return t(!leq(eval(p.a, v), eval(p.b, v)));
            case Kind::NotB: return t(eval(p.a, v).is_zero());
            case Kind::AndB: return t(!eval(p.a, v).is_zero() && !eval(p.b, v).is_zero());
            case Kind::OrB: return t(!eval(p.a, v).is_zero() || !eval(p.b, v).is_zero());
            case Kind::ImpB: return t(eval(p.a, v).is_zero() || !eval(p.b, v).is_zero());
            default: throw DomainError("unexpected node");
        }
    }

private:
    struct P {
        Kind kind;
        int a = -1, b = -1, slot = -1;
        Value c;
    };
    SemiringId id_;
    const std::map<Literal, int>& slots_;
    std::vector<P> nodes_;
    int max_slot_ = -1;
};

void split_conjuncts(const Formula& phi, bool positive, std::vector<Formula>& out) {
    if (phi->kind == Kind::AndB || (positive && phi->kind == Kind::And)) {
        split_conjuncts(phi->l, positive, out);
        split_conjuncts(phi->r, positive, out);
    } else {
        out.push_back(phi);
    }
}

struct SatProblem {
    SemiringId id;
    std::vector<Literal> lits;
    std::map<Literal, int> slots;
    std::optional<PLProgram> prog;
    int root = -1;
    std::vector<std::vector<int>> due;  // due[d]: conjunct roots completed by slot d; index L holds constant ones
    const std::vector<Value>* universe = nullptr;

    SatProblem(const Formula& phi, SemiringId sid, const std::vector<Value>& u) : id(sid), universe(&u) {
        for (auto& [name, neg] : pl_literals(phi)) {
            Literal l{name, neg};
            slots.emplace(l, static_cast<int>(lits.size()));
            lits.push_back(l);
        }
        prog.emplace(id, slots);
        root = prog->add(phi);
        std::vector<Formula> parts;
        split_conjuncts(phi, profile(id).positive, parts);
        due.assign(lits.size() + 1, {});
        for (auto& c : parts) {
            int r = prog->add(c);
            int m = prog->max_slot(r);
            due[m < 0 ? lits.size() : static_cast<size_t>(m)].push_back(r);
        }
    }
    bool ok_at(size_t d, const std::vector<Value>& v) const {
        for (int r : due[d])
            if (prog->eval(r, v).is_zero()) return false;
        return true;
    }
    PLAssignment assignment(const std::vector<Value>& v) const {
        PLAssignment s;
        s.id = id;
        for (size_t i = 0; i < lits.size(); ++i) s.values[lits[i]] = v[i];
        return s;
    }
};

struct SatWorker {
    const SatProblem& pb;
    size_t prefix;
    uint64_t cap;
    std::atomic<uint64_t>& visited;
    std::atomic<bool>& exceeded;
    std::vector<Value> vals;

    SatWorker(const SatProblem& p, size_t pre, uint64_t c, std::atomic<uint64_t>& vis, std::atomic<bool>& ex)
        : pb(p), prefix(pre), cap(c), visited(vis), exceeded(ex), vals(p.lits.size()) {}

    bool tick() {
        if (visited.fetch_add(1, std::memory_order_relaxed) + 1 > cap) {
            exceeded = true;
            return false;
        }
        return true;
    }

    bool dfs(size_t d) {
        if (exceeded.load(std::memory_order_relaxed)) return false;
        if (d == vals.size()) return !pb.prog->eval(pb.root, vals).is_zero();
        for (auto& u : *pb.universe) {
            vals[d] = u;
            if (!tick()) return false;
            if (pb.ok_at(d, vals) && dfs(d + 1)) return true;
        }
        return false;
    }

    // Fixes the first `prefix` literals from index i, then searches the rest.
    bool solve(uint64_t i) {
        const size_t U = pb.universe->size();
        std::vector<size_t> digits(prefix);
        for (size_t p = prefix; p-- > 0;) {
            digits[p] = static_cast<size_t>(i % U);
            i /= U;
        }
        for (size_t p = 0; p < prefix; ++p) {
            vals[p] = (*pb.universe)[digits[p]];
            if (!tick()) return false;
            if (!pb.ok_at(p, vals)) return false;
        }
        return dfs(prefix);
    }

    uint64_t scan(uint64_t lo, uint64_t hi, const std::atomic<uint64_t>& best) {
        for (uint64_t i = lo; i < hi; ++i) {
            if (i >= best.load(std::memory_order_relaxed) || exceeded) return kNoHit;
            if (solve(i)) return i;
        }
        return kNoHit;
    }
};

}  // namespace

SatResult sat_bruteforce(const Formula& phi, SemiringId id, const SearchBudget& b) {
    check_universe(b.universe, id);
    SatProblem pb(phi, id, b.universe);
    SatResult res;
    if (!pb.ok_at(pb.lits.size(), std::vector<Value>(pb.lits.size()))) {
        res.candidates = 1;
        return res;
    }
    if (pb.lits.empty()) {
        res.candidates = 1;
        if (!pb.prog->eval(pb.root, {}).is_zero()) {
            res.outcome = SearchOutcome::found;
            res.assignment = pb.assignment({});
        }
        return res;
    }
    // Enough prefix tasks to keep every thread busy.
    size_t prefix = 0;
    uint64_t tasks = 1;
    if (b.parallel)
        while (prefix < pb.lits.size() && tasks < 256) {
            tasks *= b.universe.size();
            ++prefix;
        }
    std::atomic<uint64_t> visited{0};
    std::atomic<bool> exceeded{false};
    auto make = [&] { return SatWorker(pb, prefix, b.max_candidates, visited, exceeded); };
    uint64_t hit;
    if (b.parallel) {
        hit = parallel_first_hit(tasks, 1, make);
    } else {
        std::atomic<uint64_t> best{kNoHit};
        hit = make().scan(0, 1, best);
    }
    res.candidates = visited.load();
    if (hit != kNoHit) {
        // Replay the winning task serially to recover its assignment.
        std::atomic<uint64_t> v2{0};
        std::atomic<bool> e2{false};
        SatWorker w(pb, prefix, UINT64_MAX, v2, e2);
        if (!w.solve(hit)) throw DomainError("internal: sat replay diverged");
        res.outcome = SearchOutcome::found;
        res.assignment = pb.assignment(w.vals);
        if (eval_pl(phi, *res.assignment, id).is_zero()) throw DomainError("internal: certificate does not check");
    } else if (exceeded) {
        res.outcome = SearchOutcome::bound_exceeded;
    }
    return res;
}

SatResult sat_enumerate(const Formula& phi, SemiringId id, const SearchBudget& b) {
    check_universe(b.universe, id);
    SatResult res;
    std::vector<Literal> lits;
    for (auto& [name, neg] : pl_literals(phi)) lits.push_back({name, neg});
    const size_t U = b.universe.size();
    std::vector<size_t> digits(lits.size(), 0);
    PLAssignment s;
    s.id = id;
    for (auto& l : lits) s.values[l] = b.universe[0];
    while (true) {
        if (++res.candidates > b.max_candidates) {
            res.outcome = SearchOutcome::bound_exceeded;
            return res;
        }
        if (!eval_pl(phi, s, id).is_zero()) {
            res.outcome = SearchOutcome::found;
            res.assignment = s;
            return res;
        }
        size_t p = lits.size();
        while (p > 0) {
            --p;
            if (++digits[p] < U) {
                s.values[lits[p]] = b.universe[digits[p]];
                break;
            }
            digits[p] = 0;
            s.values[lits[p]] = b.universe[0];
            if (p == 0) return res;
        }
        if (lits.empty()) return res;
    }
}

namespace {

Value eval_term(const TermP& t, const std::vector<std::string>& vars, const std::vector<Value>& vals) {
    switch (t->op) {
        case Term::Op::var:
            for (size_t i = 0; i < vars.size(); ++i)
                if (vars[i] == t->var) return vals[i];
            throw DomainError("unbound variable '" + t->var + "'");
        case Term::Op::cnst: return t->c;
        case Term::Op::add: return add(eval_term(t->l, vars, vals), eval_term(t->r, vars, vals));
        default: return mul(eval_term(t->l, vars, vals), eval_term(t->r, vars, vals));
    }
}

}  // namespace

bool eval_etk(const EtkFormula& f, const std::vector<std::string>& vars, const std::vector<Value>& vals,
              SemiringId id) {
    (void)id;
    switch (f->op) {
        case EtkNode::Op::truth: return f->value;
        case EtkNode::Op::land: return eval_etk(f->l, vars, vals, id) && eval_etk(f->r, vars, vals, id);
        case EtkNode::Op::lor: return eval_etk(f->l, vars, vals, id) || eval_etk(f->r, vars, vals, id);
        case EtkNode::Op::eq: return eval_term(f->a, vars, vals) == eval_term(f->b, vars, vals);
        case EtkNode::Op::neq: return eval_term(f->a, vars, vals) != eval_term(f->b, vars, vals);
        case EtkNode::Op::leq: return leq(eval_term(f->a, vars, vals), eval_term(f->b, vars, vals));
        default: return !leq(eval_term(f->a, vars, vals), eval_term(f->b, vars, vals));
    }
}

namespace {

struct EtkWorker {
    const EtkSentence& s;
    const std::vector<Value>& u;
    std::vector<Value> vals;
    void decode(uint64_t i) {
        for (size_t p = vals.size(); p-- > 0;) {
            vals[p] = u[i % u.size()];
            i /= u.size();
        }
    }
    uint64_t scan(uint64_t lo, uint64_t hi, const std::atomic<uint64_t>& best) {
        for (uint64_t i = lo; i < hi; ++i) {
            if (i >= best.load(std::memory_order_relaxed)) return kNoHit;
            decode(i);
            if (eval_etk(s.matrix, s.vars, vals, s.id)) return i;
        }
        return kNoHit;
    }
};

}  // namespace

EtkResult etk_bounded(const EtkSentence& s, const SearchBudget& b) {
    check_universe(b.universe, s.id);
    EtkResult res;
    uint64_t total = 1;
    for (size_t i = 0; i < s.vars.size(); ++i) {
        if (total > b.max_candidates / b.universe.size()) {
            res.outcome = SearchOutcome::bound_exceeded;
            return res;
        }
        total *= b.universe.size();
    }
    if (total > b.max_candidates) {
        res.outcome = SearchOutcome::bound_exceeded;
        return res;
    }
    auto make = [&] { return EtkWorker{s, b.universe, std::vector<Value>(s.vars.size())}; };
    uint64_t hit;
    if (b.parallel) {
        hit = parallel_first_hit(total, 512, make);
    } else {
        std::atomic<uint64_t> best{kNoHit};
        hit = make().scan(0, total, best);
    }
    res.candidates = hit == kNoHit ? total : hit + 1;
    if (hit != kNoHit) {
        EtkWorker w = make();
        w.decode(hit);
        res.outcome = SearchOutcome::found;
        res.valuation = w.vals;
    }
    return res;
}

EquivalenceResult k_equivalence_sample(const Formula& phi, const Formula& psi,
                                       const std::vector<KInterpretation>& samples) {
    EquivalenceResult r;
    for (size_t i = 0; i < samples.size(); ++i) {
        Value a = eval_fo(phi, samples[i]), b = eval_fo(psi, samples[i]);
        if (a != b) {
            r.equivalent = false;
            r.counterexample = i;
            r.left = a;
            r.right = b;
            return r;
        }
    }
    return r;
}

}  // namespace scl
