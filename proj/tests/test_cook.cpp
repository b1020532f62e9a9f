#include "gen.hpp"
#include "scl/eval.hpp"
#include "scl/reductions.hpp"
#include "scl/solvers.hpp"

#include <doctest.h>

using namespace scl;

namespace {
const SemiringId N = SemiringId::natural;
Value nat(int k) { return Value::natural(k); }

Machine eq_guess() {
    Machine m;
    m.name = "eqguess";
    MNode in, b, c, out;
    in.kind = NodeKind::input;
    in.next = 2;
    b.kind = NodeKind::branch;
    b.neg = 4;
    b.pos = 3;
    c.kind = NodeKind::constant;
    c.i = 1;
    c.c = nat(0);
    c.next = 4;
    m.nodes = {in, b, c, out};
    return m;
}

// Assignment read off a simulated run: frames after halting repeat the final one.
std::optional<PLAssignment> from_run(const CookArtifact& art, const Machine& m, const std::vector<Value>& x,
                                     const std::vector<Value>& g) {
    std::vector<std::pair<int, std::map<long, Value>>> frames;
    auto r = gen::simulate(m, x, g, static_cast<uint64_t>(art.T),
                           [&](int node, const std::map<long, Value>& tape) { frames.emplace_back(node, tape); });
    if (!r.halted) return std::nullopt;
    PLAssignment s;
    s.id = art.id;
    const Value zero = Value::zero(art.id), one = Value::one(art.id);
    for (int t = 0; t <= art.T; ++t) {
        auto& [node, tape] = frames[std::min<size_t>(static_cast<size_t>(t), frames.size() - 1)];
        for (int p = -art.W; p <= art.W; ++p) s.set(art.v.at({t, p}), false, tape.count(p) ? tape.at(p) : zero);
        for (int q = 1; q <= art.N; ++q) s.set(art.q.at({t, q}), false, q == node ? one : zero);
    }
    return s;
}
}  // namespace

TEST_CASE("guess pipeline example") {
    auto art = cook_compile(eq_guess(), {nat(2)}, 6);
    SearchBudget b{{nat(0), nat(1), nat(2)}};
    auto r = sat_bruteforce(art.formula, N, b);
    REQUIRE(r.outcome == SearchOutcome::found);
    CHECK(cook_decode_guess(art, *r.assignment) == std::vector<Value>{nat(2)});

    SearchBudget small{{nat(0), nat(1)}};
    CHECK(sat_bruteforce(art.formula, N, small).outcome == SearchOutcome::none_within_bounds);
}

TEST_CASE("argument checks") {
    CHECK_THROWS_AS(cook_compile(eq_guess(), {nat(1), nat(2)}, 1), DomainError);
    auto art = cook_compile(eq_guess(), {nat(2)}, 4);
    PLAssignment empty;
    CHECK_THROWS_AS(cook_decode_guess(art, empty), DomainError);
}

TEST_CASE("runs become satisfying assignments exactly when they accept") {
    gen::Rng rng(51);
    for (SemiringId id : {SemiringId::natural, SemiringId::boolean, SemiringId::tropical}) {
        auto sample = gen::sample6(id);
        gen::MachineGen mg{id, sample};
        for (int i = 0; i < 40; ++i) {
            Machine m = mg(rng, gen::uniform(rng, 3, 6));
            std::vector<Value> x;
            for (int k = gen::uniform(rng, 0, 2); k > 0; --k) x.push_back(gen::pick(rng, sample));
            int T = static_cast<int>(x.size()) + gen::uniform(rng, 1, 4);
            auto art = cook_compile(m, x, T);
            int max_guess = T - static_cast<int>(x.size()) - 1;
            std::vector<Value> g;
            for (int k = gen::uniform(rng, 0, max_guess); k > 0; --k) g.push_back(gen::pick(rng, sample));
            auto s = from_run(art, m, x, g);
            if (!s) continue;
            bool acc = gen::simulate(m, x, g, static_cast<uint64_t>(T)).accepted;
            INFO(semiring_name(id));
            CHECK(!eval_pl(art.formula, *s, id).is_zero() == acc);
            if (acc) CHECK(cook_decode_guess(art, *s) == g);
        }
    }
}

TEST_CASE("satisfiable exactly when some short guess is accepted") {
    gen::Rng rng(52);
    std::vector<Value> u{Value::boolean(false), Value::boolean(true)};
    gen::MachineGen mg{SemiringId::boolean, u};
    mg.max_index = 1;
    for (int i = 0; i < 25; ++i) {
        Machine m = mg(rng, gen::uniform(rng, 3, 5));
        std::vector<Value> x{gen::pick(rng, u)};
        const int T = 3;
        bool want = false;
        gen::each_guess(u, T - 2, [&](const std::vector<Value>& g) {
            want = gen::simulate(m, x, g, T).accepted;
            return want;
        });
        auto art = cook_compile(m, x, T);
        auto r = sat_bruteforce(art.formula, SemiringId::boolean, SearchBudget{u});
        REQUIRE(r.outcome != SearchOutcome::bound_exceeded);
        CHECK((r.outcome == SearchOutcome::found) == want);
        if (r.assignment) CHECK(gen::simulate(m, x, cook_decode_guess(art, *r.assignment), T).accepted);
    }
}
