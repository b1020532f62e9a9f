#include "scl/reductions.hpp"

#include <algorithm>
#include <cstdlib>
#include <optional>

namespace scl {

namespace {

using Vars = std::vector<std::string>;

Vars cat(const Vars& a, const Vars& b) {
    Vars out = a;
    out.insert(out.end(), b.begin(), b.end());
    return out;
}
Vars cat(const Vars& a, const std::string& d, const Vars& u) { return cat(cat(a, {d}), u); }

// Order-definable helpers; every formula here is 0/1-valued.
class Fo {
public:
    Fo(SemiringId id, int z) : id_(id), z_(z) {}

    std::string fresh(const std::string& p) { return p + std::to_string(counter_++); }
    Vars tuple(const std::string& p, int k) {
        Vars v;
        std::string base = fresh(p);
        for (int i = 0; i < k; ++i) v.push_back(base + "_" + std::to_string(i));
        return v;
    }
    Vars tup() { return tuple("u", z_); }

    Formula one() const { return f::constant(Value::one(id_)); }
    Formula zero() const { return f::constant(Value::zero(id_)); }
    Formula is1(Formula a) const { return f::eq(std::move(a), one()); }
    Formula is0(Formula a) const { return f::eq(std::move(a), zero()); }
    Formula all(const std::vector<Formula>& xs) const { return f::all_b(xs, id_); }
    Formula any(const std::vector<Formula>& xs) const { return f::any_b(xs, id_); }

    Formula lt(const std::string& a, const std::string& b) { return f::atom(kLess, {a, b}); }
    Formula is_min(const std::string& x) {
        auto w = fresh("w");
        return f::forall(w, f::not_b(lt(w, x)));
    }
    Formula is_max(const std::string& x) {
        auto w = fresh("w");
        return f::forall(w, f::not_b(lt(x, w)));
    }
    Formula succ1(const std::string& a, const std::string& b) {
        auto w = fresh("w");
        return f::and_b(lt(a, b), f::forall(w, f::not_b(f::and_b(lt(a, w), lt(w, b)))));
    }
    // x is the k-th element of the order (k = 0 is the least).
    Formula elem(int k, const std::string& x) {
        if (k == 0) return is_min(x);
        auto w = fresh("w");
        return f::exists(w, f::and_b(elem(k - 1, w), succ1(w, x)));
    }
    Formula teq(const Vars& u, const Vars& v) {
        std::vector<Formula> xs;
        for (size_t i = 0; i < u.size(); ++i) xs.push_back(f::var_eq(u[i], v[i]));
        return all(xs);
    }
    Formula tlt(const Vars& u, const Vars& v) {
        std::vector<Formula> alts;
        for (size_t i = 0; i < u.size(); ++i) {
            std::vector<Formula> xs;
            for (size_t j = 0; j < i; ++j) xs.push_back(f::var_eq(u[j], v[j]));
            xs.push_back(lt(u[i], v[i]));
            alts.push_back(all(xs));
        }
        return any(alts);
    }
    Formula tmin(const Vars& u) {
        std::vector<Formula> xs;
        for (auto& a : u) xs.push_back(is_min(a));
        return all(xs);
    }
    Formula tmax(const Vars& u) {
        std::vector<Formula> xs;
        for (auto& a : u) xs.push_back(is_max(a));
        return all(xs);
    }
    // v = u + 1 as base-|A| numerals; false at the maximum.
    Formula succ(const Vars& u, const Vars& v) {
        std::vector<Formula> alts;
        for (size_t i = 0; i < u.size(); ++i) {
            std::vector<Formula> xs;
            for (size_t j = 0; j < i; ++j) xs.push_back(f::var_eq(u[j], v[j]));
            xs.push_back(succ1(u[i], v[i]));
            for (size_t j = i + 1; j < u.size(); ++j) {
                xs.push_back(is_max(u[j]));
                xs.push_back(is_min(v[j]));
            }
            alts.push_back(all(xs));
        }
        return any(alts);
    }
    Formula succ_sat(const Vars& u, const Vars& v) { return f::or_b(succ(u, v), f::and_b(tmax(u), teq(u, v))); }
    // u = (a0, ..., a0, x) for some x.
    Formula low(const Vars& u) {
        std::vector<Formula> xs;
        for (size_t i = 0; i + 1 < u.size(); ++i) xs.push_back(is_min(u[i]));
        return all(xs);
    }
    // u is the numeral of the domain size n.
    Formula is_n(const Vars& u) {
        Vars y = tup();
        return f::exists(y, all({low(y), is_max(y.back()), succ(y, u)}));
    }

    // Signed positions (d, u): d = a1 for u >= 0, d = a0 for -u.
    Formula pos_nonneg(const std::string& d) { return elem(1, d); }
    Formula pos_neg(const std::string& d) { return is_min(d); }
    Formula valid(const std::string& d, const Vars& u) {
        return f::or_b(pos_nonneg(d), f::and_b(pos_neg(d), f::not_b(tmin(u))));
    }
    // (d, u) is the fixed position l; |l| >= 2 is reached by successor steps from +-1.
    Formula at(const std::string& d, const Vars& u, long l) {
        if (std::labs(l) <= 1) {
            std::vector<Formula> xs{l >= 0 ? pos_nonneg(d) : pos_neg(d), low(u)};
            xs.push_back(elem(static_cast<int>(std::labs(l)), u.back()));
            return all(xs);
        }
        Vars v = tup();
        std::string e = fresh("d");
        Formula prev = at(e, v, l > 0 ? l - 1 : l + 1);
        Formula step = l > 0 ? pos_succ(e, v, d, u, false) : pos_succ(d, u, e, v, false);
        return f::exists(cat({e}, v), f::and_b(prev, step));
    }
    // (d2, v) = (d, u) + 1, optionally saturating at the largest position.
    Formula pos_succ(const std::string& d, const Vars& u, const std::string& d2, const Vars& v, bool saturate) {
        Vars one_t = tup();
        Formula u_is_one = f::exists(one_t, f::and_b(tmin(one_t), succ(one_t, u)));
        return any({all({pos_nonneg(d), pos_nonneg(d2), saturate ? succ_sat(u, v) : succ(u, v)}),
                    all({pos_neg(d), pos_nonneg(d2), u_is_one, tmin(v)}),
                    all({pos_neg(d), pos_neg(d2), succ(v, u), f::not_b(u_is_one)})});
    }
    // (d2, v) = (d, u) - 1, saturating at the smallest position.
    Formula pos_pred(const std::string& d, const Vars& u, const std::string& d2, const Vars& v) {
        Formula is_least = f::and_b(pos_neg(d), tmax(u));
        return f::or_b(pos_succ(d2, v, d, u, false),
                       all({is_least, f::var_eq(d, d2), teq(u, v)}));
    }

private:
    SemiringId id_;
    int z_;
    int counter_ = 0;
};

std::string qname(int s) { return "Q" + std::to_string(s); }

}  // namespace

FaginArtifact fagin_compile(const Machine& m, int z) {
    require_valid(m);
    if (z < 1) throw DomainError("exponent z must be at least 1");
    const SemiringId id = m.id;
    const int N = m.size();
    int K = 1;  // output readout uses positions -1 and 1
    for (int s = 1; s <= N; ++s)
        if (m.node(s).kind == NodeKind::branch) K = std::max(K, 2);
    K = std::max(K, m.max_index());

    Fo fo(id, z);
    auto V = [&](const Vars& t, const std::string& d, const Vars& u) { return f::atom("V", cat(t, d, u)); };
    auto Q = [&](int s, const Vars& t) { return f::atom(qname(s), t); };

    std::vector<Formula> clauses;

    // Start in node 1, end in node N with an accepting tape.
    {
        Vars t = fo.tup();
        clauses.push_back(f::forall(t, f::imp_b(fo.tmin(t), fo.is1(Q(1, t)))));
    }
    {
        Vars t = fo.tup(), u = fo.tup();
        std::string d = fo.fresh("d");
        Formula readout = f::forall(
            cat({d}, u), fo.all({f::imp_b(fo.at(d, u, 1), f::not_b(fo.is0(V(t, d, u)))),
                                 f::imp_b(fo.at(d, u, -1), fo.is1(V(t, d, u)))}));
        clauses.push_back(f::forall(t, f::imp_b(fo.tmax(t), f::and_b(fo.is1(Q(N, t)), readout))));
    }
    // One node at a time.
    {
        Vars t = fo.tup();
        std::vector<Formula> xs;
        for (int s = 1; s <= N; ++s)
            for (int s2 = 1; s2 <= N; ++s2)
                if (s2 != s) xs.push_back(f::imp_b(fo.is1(Q(s, t)), fo.is0(Q(s2, t))));
        clauses.push_back(f::forall(t, fo.all(xs)));
    }
    // Cells outside the signed-position encoding stay 0.
    {
        Vars t = fo.tup(), u = fo.tup();
        std::string d = fo.fresh("d");
        clauses.push_back(f::forall(cat(t, d, u), f::imp_b(f::not_b(fo.valid(d, u)), fo.is0(V(t, d, u)))));
    }
    // Initial tape.
    {
        Vars t = fo.tup();
        std::string d0 = fo.fresh("d"), d1 = fo.fresh("d");
        auto V0 = [&](const std::string& d, const Vars& u) { return V(t, d, u); };
        std::vector<Formula> init;
        {
            Vars y = fo.tup(), u = fo.tup();
            init.push_back(f::forall(
                cat(y, u), f::imp_b(f::and_b(fo.low(y), fo.succ(y, u)),
                                    f::and_b(f::eq(V0(d1, u), f::atom("I", {y.back()})), fo.is1(V0(d0, u))))));
        }
        {
            Vars u = fo.tup();
            init.push_back(f::forall(u, f::imp_b(fo.tmin(u), fo.is0(V0(d1, u)))));
        }
        {
            Vars u = fo.tup(), v = fo.tup();
            init.push_back(f::forall(cat(u, v), f::imp_b(f::and_b(fo.is_n(u), fo.succ(u, v)), fo.is0(V0(d0, v)))));
        }
        {
            // Markers sit at -(n+2), -(n+3), ...; a 0 marker ends the block and zeroes its guess cell.
            Vars v = fo.tup(), a = fo.tup(), b = fo.tup(), w = fo.tup(), w2 = fo.tup();
            Formula marker_range =
                f::exists(cat(a, b), fo.all({fo.is_n(a), fo.succ(a, b), fo.tlt(b, v)}));
            Formula body = fo.all({
                f::or_b(fo.is0(V0(d0, v)), fo.is1(V0(d0, v))),
                f::imp_b(fo.is0(V0(d0, v)),
                         f::forall(w, f::imp_b(fo.succ(v, w), fo.is0(V0(d0, w))))),
                f::imp_b(fo.is0(V0(d0, v)),
                         f::forall(w2, f::imp_b(fo.succ(w2, v), fo.is0(V0(d1, w2))))),
            });
            init.push_back(f::forall(v, f::imp_b(marker_range, body)));
        }
        {
            // The largest positive cell has no marker; it holds a guess value only below n + 1.
            Vars u = fo.tup(), a = fo.tup();
            Formula beyond_n = f::exists(a, f::and_b(fo.is_n(a), f::or_b(fo.teq(a, u), fo.tlt(a, u))));
            init.push_back(f::forall(u, f::imp_b(f::and_b(fo.tmax(u), beyond_n), fo.is0(V0(d1, u)))));
        }
        Formula ctx = f::forall(cat(t, {d0, d1}), f::imp_b(fo.all({fo.tmin(t), fo.is_min(d0), fo.elem(1, d1)}),
                                                           fo.all(init)));
        clauses.push_back(ctx);
    }
    // Steps.
    {
        Vars t = fo.tup(), t2 = fo.tup();
        auto next = [&](int s) { return fo.is1(Q(s, t2)); };
        auto frame_except = [&](std::optional<long> target, Formula value) {
            Vars u = fo.tup();
            std::string d = fo.fresh("d");
            Formula same = f::eq(V(t2, d, u), V(t, d, u));
            Formula body = target ? f::and_b(f::imp_b(fo.at(d, u, *target), f::eq(V(t2, d, u), value)),
                                             f::imp_b(f::not_b(fo.at(d, u, *target)), same))
                                  : same;
            return f::forall(cat({d}, u), f::imp_b(fo.valid(d, u), body));
        };
        // Value of the cell at fixed position l at time t, as a term: exactly one summand survives.
        auto cell = [&](long l) {
            Vars u = fo.tup();
            std::string d = fo.fresh("d");
            return f::exists(cat({d}, u), f::land(fo.at(d, u, l), V(t, d, u)));
        };
        std::vector<Formula> per_node;
        for (int s = 1; s <= N; ++s) {
            const MNode& nd = m.node(s);
            Formula body;
            switch (nd.kind) {
                case NodeKind::input:
                    body = f::and_b(next(nd.next), frame_except(std::nullopt, nullptr));
                    break;
                case NodeKind::output: body = f::and_b(next(s), frame_except(std::nullopt, nullptr)); break;
                case NodeKind::add:
                    body = f::and_b(next(nd.next), frame_except(nd.i, f::lor(cell(nd.j), cell(nd.k))));
                    break;
                case NodeKind::mul:
                    body = f::and_b(next(nd.next), frame_except(nd.i, f::land(cell(nd.j), cell(nd.k))));
                    break;
                case NodeKind::constant:
                    body = f::and_b(next(nd.next), frame_except(nd.i, f::constant(nd.c)));
                    break;
                case NodeKind::branch: {
                    Formula a = cell(1), b = cell(2);
                    Formula low = nd.rel == Rel::eq ? f::eq(a, b) : f::leq(a, b);
                    Formula high = nd.rel == Rel::eq ? f::neq(a, b) : f::nleq(a, b);
                    body = fo.all({frame_except(std::nullopt, nullptr), f::imp_b(low, next(nd.neg)),
                                   f::imp_b(high, next(nd.pos))});
                    break;
                }
                case NodeKind::shiftl:
                case NodeKind::shiftr: {
                    Vars u = fo.tup(), v = fo.tup();
                    std::string d = fo.fresh("d"), d2 = fo.fresh("d");
                    Formula rel = nd.kind == NodeKind::shiftl ? fo.pos_succ(d, u, d2, v, true) : fo.pos_pred(d, u, d2, v);
                    Formula moved = f::forall(
                        cat(cat({d}, u), d2, v),
                        f::imp_b(f::and_b(fo.valid(d, u), rel), f::eq(V(t2, d, u), V(t, d2, v))));
                    body = f::and_b(next(nd.next), moved);
                    break;
                }
            }
            per_node.push_back(f::imp_b(fo.is1(Q(s, t)), body));
        }
        clauses.push_back(f::forall(
            cat(t, t2), f::imp_b(f::and_b(f::not_b(fo.tmax(t)), fo.succ(t, t2)), fo.all(per_node))));
    }

    FaginArtifact art;
    art.z = z;
    art.K = K;
    art.N = N;
    art.vocabulary.add("I", 1);
    art.vocabulary.add(kLess, 2);
    art.sentence.prefix.push_back({"V", 2 * z + 1});
    for (int s = 1; s <= N; ++s) art.sentence.prefix.push_back({qname(s), z});
    art.sentence.matrix = fo.all(clauses);
    return art;
}

KInterpretation fagin_input(SemiringId id, const std::vector<Value>& x) {
    Vocabulary voc;
    voc.add("I", 1);
    KInterpretation pi = KInterpretation::ordered(id, static_cast<int>(x.size()), voc);
    for (size_t i = 0; i < x.size(); ++i) {
        pi.set("I", {static_cast<int>(i)}, false, x[i]);
        pi.set("I", {static_cast<int>(i)}, true, x[i].is_zero() ? Value::one(id) : Value::zero(id));
    }
    return pi;
}

namespace {

long ipow(long b, int e) {
    long r = 1;
    for (int i = 0; i < e; ++i) r *= b;
    return r;
}

}  // namespace

int fagin_max_guess(int n, int z) {
    const long R = ipow(n, z) - 1;
    // Guess cell n+k needs its marker at -(n+1+k).
    return static_cast<int>(std::max(0L, R - n - 1));
}

BoundedRun fagin_bounded_run(const Machine& m, const std::vector<Value>& x, const std::vector<Value>& g, int z) {
    const int n = static_cast<int>(x.size());
    const long R = ipow(n, z) - 1;
    const long T = R;
    const Value one = Value::one(m.id), zero = Value::zero(m.id);
    std::map<long, Value> tape;
    auto put = [&](long p, const Value& v) {
        if (p < -R || p > R) return;
        if (v.is_zero())
            tape.erase(p);
        else
            tape[p] = v;
    };
    auto get = [&](long p) -> Value {
        auto it = tape.find(p);
        return it == tape.end() ? zero : it->second;
    };
    for (long i = 1; i <= n; ++i) {
        put(i, x[static_cast<size_t>(i - 1)]);
        put(-i, one);
    }
    for (long k = 1; k <= static_cast<long>(g.size()); ++k) {
        if (n + 1 + k > R) throw DomainError("guess does not fit the bounded tape");
        put(n + k, g[static_cast<size_t>(k - 1)]);
        put(-(n + 1 + k), one);
    }
    BoundedRun r;
    int node = 1;
    r.nodes.push_back(node);
    r.tape.push_back(tape);
    for (long t = 0; t < T; ++t) {
        const MNode& nd = m.node(node);
        switch (nd.kind) {
            case NodeKind::output: break;
            case NodeKind::input: node = nd.next; break;
            case NodeKind::add:
                put(nd.i, add(get(nd.j), get(nd.k)));
                node = nd.next;
                break;
            case NodeKind::mul:
                put(nd.i, mul(get(nd.j), get(nd.k)));
                node = nd.next;
                break;
            case NodeKind::constant:
                put(nd.i, nd.c);
                node = nd.next;
                break;
            case NodeKind::branch: {
                Value a = get(1), b = get(2);
                node = (nd.rel == Rel::eq ? a == b : leq(a, b)) ? nd.neg : nd.pos;
                break;
            }
            case NodeKind::shiftl:
            case NodeKind::shiftr: {
                std::map<long, Value> old = tape;
                tape.clear();
                auto oldget = [&](long p) -> Value {
                    auto it = old.find(p);
                    return it == old.end() ? zero : it->second;
                };
                for (long p = -R; p <= R; ++p) {
                    long src = nd.kind == NodeKind::shiftl ? std::min(p + 1, R) : std::max(p - 1, -R);
                    put(p, oldget(src));
                }
                node = nd.next;
                break;
            }
        }
        r.nodes.push_back(node);
        r.tape.push_back(tape);
    }
    r.halted = m.node(node).kind == NodeKind::output;
    r.accepted = r.halted && get(-1).is_one() && !get(1).is_zero();
    return r;
}

KInterpretation fagin_witness(const Machine& m, int z, const KInterpretation& pi, const std::vector<Value>& guess) {
    const int n = pi.domain();
    const SemiringId id = m.id;
    std::vector<Value> x;
    for (int i = 0; i < n; ++i) x.push_back(pi.get("I", {i}, false));
    BoundedRun run = fagin_bounded_run(m, x, guess, z);
    if (!run.halted) throw DomainError("contract violation: run does not halt within n^z - 1 steps");

    Vocabulary voc;
    voc.add("V", 2 * z + 1);
    for (int s = 1; s <= m.size(); ++s) voc.add(qname(s), z);
    KInterpretation w(id, n, voc);
    const Value one = Value::one(id), zero = Value::zero(id);
    auto digits = [&](long v, int k) {
        std::vector<int> d(static_cast<size_t>(k));
        for (int i = k - 1; i >= 0; --i) {
            d[static_cast<size_t>(i)] = static_cast<int>(v % n);
            v /= n;
        }
        return d;
    };
    auto setmd = [&](const std::string& r, const std::vector<int>& tup, const Value& v) {
        w.set(r, tup, false, v);
        w.set(r, tup, true, v.is_zero() ? one : zero);
    };
    // Every fact starts model-defining with value 0.
    for (auto& [r, k] : voc.rels) {
        auto& neg = w.facts(r, true);
        std::fill(neg.begin(), neg.end(), one);
    }
    const long R = static_cast<long>(run.tape.size()) - 1;
    for (long t = 0; t <= R; ++t) {
        std::vector<int> tt = digits(t, z);
        setmd(qname(run.nodes[static_cast<size_t>(t)]), tt, one);
        for (auto& [p, v] : run.tape[static_cast<size_t>(t)]) {
            std::vector<int> tup = tt;
            tup.push_back(p >= 0 ? 1 : 0);
            for (int d : digits(std::labs(p), z)) tup.push_back(d);
            setmd("V", tup, v);
        }
    }
    return w;
}

}  // namespace scl
