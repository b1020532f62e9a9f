#include "scl/reductions.hpp"

#include "scl/eval.hpp"

#include <algorithm>

namespace scl {

namespace {

std::string pos_name(int p) { return p < 0 ? "n" + std::to_string(-p) : std::to_string(p); }

}  // namespace

CookArtifact cook_compile(const Machine& m, const std::vector<Value>& x, int T) {
    require_valid(m);
    const int n = static_cast<int>(x.size());
    if (T < n) throw DomainError("step bound T must be at least the input length");
    for (auto& xi : x)
        if (xi.id() != m.id) throw DomainError("input value from another semiring");
    const SemiringId id = m.id;
    const int N = m.size();
    // Cells farther out than T + K cannot reach the readable positions within T steps.
    const int K = std::max(2, m.max_index());
    const int W = T + K;

    CookArtifact art;
    art.id = id;
    art.T = T;
    art.n = n;
    art.W = W;
    art.N = N;
    for (int t = 0; t <= T; ++t) {
        for (int p = -W; p <= W; ++p) art.v[{t, p}] = "v" + std::to_string(t) + "_" + pos_name(p);
        for (int s = 1; s <= N; ++s) art.q[{t, s}] = "q" + std::to_string(t) + "_" + std::to_string(s);
    }
    auto V = [&](int t, int p) { return f::prop(art.v.at({t, p})); };
    auto Q = [&](int t, int s) { return f::prop(art.q.at({t, s})); };
    auto c = [&](const Value& v) { return f::constant(v); };
    const Formula zero = c(Value::zero(id)), one = c(Value::one(id));
    auto is0 = [&](Formula a) { return f::eq(std::move(a), zero); };
    auto is1 = [&](Formula a) { return f::eq(std::move(a), one); };

    std::vector<Formula> parts;

    // Initial tape: input, unary length block, separator, guess cells guarded by their markers.
    parts.push_back(is0(V(0, 0)));
    for (int i = 1; i <= n; ++i) {
        parts.push_back(f::eq(V(0, i), c(x[static_cast<size_t>(i - 1)])));
        parts.push_back(is1(V(0, -i)));
    }
    parts.push_back(is0(V(0, -(n + 1))));
    for (int p = n + 2; p <= T; ++p) {
        parts.push_back(f::or_b(is0(V(0, -p)), is1(V(0, -p))));
        parts.push_back(f::imp_b(is0(V(0, -p)), is0(V(0, -(p + 1)))));
        parts.push_back(f::imp_b(is0(V(0, -p)), is0(V(0, p - 1))));
    }
    for (int p = std::max(n + 1, T); p <= W; ++p) parts.push_back(is0(V(0, p)));
    for (int p = std::max(n + 2, T + 1); p <= W; ++p) parts.push_back(is0(V(0, -p)));

    parts.push_back(is1(Q(0, 1)));
    for (int s = 2; s <= N; ++s) parts.push_back(is0(Q(0, s)));

    auto only_node = [&](int t) {
        for (int s = 1; s <= N; ++s) {
            parts.push_back(f::or_b(is0(Q(t, s)), is1(Q(t, s))));
            for (int s2 = 1; s2 <= N; ++s2)
                if (s2 != s) parts.push_back(f::imp_b(Q(t, s), is0(Q(t, s2))));
        }
    };
    only_node(0);

    for (int t = 0; t < T; ++t) {
        // Node transitions first so the next q's precede the next v's in search order.
        for (int s = 1; s <= N; ++s) {
            const MNode& nd = m.node(s);
            if (nd.kind == NodeKind::output) {
                parts.push_back(f::imp_b(Q(t, s), Q(t + 1, s)));
            } else if (nd.kind == NodeKind::branch) {
                Formula low = nd.rel == Rel::eq ? f::eq(V(t, 1), V(t, 2)) : f::leq(V(t, 1), V(t, 2));
                Formula high = nd.rel == Rel::eq ? f::neq(V(t, 1), V(t, 2)) : f::nleq(V(t, 1), V(t, 2));
                parts.push_back(f::imp_b(Q(t, s), f::imp_b(low, Q(t + 1, nd.neg))));
                parts.push_back(f::imp_b(Q(t, s), f::imp_b(high, Q(t + 1, nd.pos))));
            } else {
                parts.push_back(f::imp_b(Q(t, s), Q(t + 1, nd.next)));
            }
        }
        only_node(t + 1);
        for (int p = -W; p <= W; ++p) {
            for (int s = 1; s <= N; ++s) {
                const MNode& nd = m.node(s);
                Formula rhs;
                switch (nd.kind) {
                    case NodeKind::shiftl: rhs = p + 1 <= W ? V(t, p + 1) : zero; break;
                    case NodeKind::shiftr: rhs = p - 1 >= -W ? V(t, p - 1) : zero; break;
                    case NodeKind::add:
                        rhs = p == nd.i ? f::lor(V(t, nd.j), V(t, nd.k)) : V(t, p);
                        break;
                    case NodeKind::mul:
                        rhs = p == nd.i ? f::land(V(t, nd.j), V(t, nd.k)) : V(t, p);
                        break;
                    case NodeKind::constant: rhs = p == nd.i ? c(nd.c) : V(t, p); break;
                    default: rhs = V(t, p);
                }
                parts.push_back(f::imp_b(Q(t, s), f::eq(V(t + 1, p), rhs)));
            }
        }
    }

    parts.push_back(Q(T, N));
    parts.push_back(f::neq(V(T, 1), zero));
    parts.push_back(is1(V(T, -1)));

    // Left-nested chain keeps the conjuncts in construction order for the search.
    Formula phi = parts.front();
    for (size_t i = 1; i < parts.size(); ++i) phi = f::and_b(phi, parts[i]);
    art.formula = phi;
    return art;
}

std::vector<Value> cook_decode_guess(const CookArtifact& art, const PLAssignment& s) {
    auto get = [&](int p) -> const Value& {
        const Value* v = s.find(art.v.at({0, p}), false);
        if (!v) throw DomainError("contract violation: assignment lacks " + art.v.at({0, p}));
        return *v;
    };
    if (eval_pl(art.formula, s, art.id).is_zero())
        throw DomainError("contract violation: assignment does not satisfy the formula");
    std::vector<Value> g;
    for (int p = art.n + 2; p <= art.T && get(-p).is_one(); ++p) g.push_back(get(p - 1));
    return g;
}

}  // namespace scl
