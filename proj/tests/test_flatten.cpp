#include "gen.hpp"
#include "scl/eval.hpp"
#include "scl/reductions.hpp"
#include "scl/solvers.hpp"

#include <doctest.h>

using namespace scl;

namespace {
const SemiringId N = SemiringId::natural;
Value nat(int k) { return Value::natural(k); }

std::vector<PLAssignment> all_assignments(const Formula& phi, SemiringId id, const std::vector<Value>& u) {
    auto lits = pl_literals(phi);
    std::vector<PLAssignment> out;
    std::vector<size_t> d(lits.size(), 0);
    for (;;) {
        PLAssignment s;
        s.id = id;
        for (size_t i = 0; i < lits.size(); ++i) s.set(lits[i].first, lits[i].second, u[d[i]]);
        out.push_back(s);
        int p = static_cast<int>(lits.size()) - 1;
        while (p >= 0 && ++d[static_cast<size_t>(p)] == u.size()) d[static_cast<size_t>(p--)] = 0;
        if (p < 0) return out;
    }
}
}  // namespace

TEST_CASE("flatness") {
    auto p = f::prop("p"), q = f::prop("q");
    CHECK(is_flat(f::land(f::eq(p, q), f::or_b(f::leq(p, q), f::not_b(q)))));
    CHECK(is_flat(f::lor(p, f::land(q, f::constant(nat(2))))));
    CHECK_FALSE(is_flat(f::eq(f::eq(p, q), f::constant(nat(0)))));
    CHECK(is_flat(f::lor(p, f::eq(p, q))));
    CHECK_FALSE(is_flat(f::eq(p, f::lor(p, f::eq(p, q)))));
    auto nested = f::eq(f::lor(p, f::neq(p, q)), f::constant(nat(1)));
    auto flat = flatten(nested, N);
    CHECK(is_flat(flat));
}

TEST_CASE("flatten preserves support on every assignment") {
    gen::Rng rng(71);
    int done = 0;
    for (SemiringId id : all_semirings()) {
        auto sample = gen::sample6(id);
        std::vector<Value> u(sample.begin(), sample.begin() + std::min<size_t>(3, sample.size()));
        gen::PLGen g{id, {"p", "q"}, {sample.back()}};
        for (int i = 0; i < 60; ++i) {
            Formula phi = g(rng, 3);
            Formula flat;
            try {
                flat = flatten(phi, id);
            } catch (const DomainError&) {
                continue;
            }
            ++done;
            INFO(semiring_name(id));
            CHECK(is_flat(flat));
            for (auto& s : all_assignments(phi, id, u)) {
                // The flat formula may mention fewer literals; missing ones cannot matter.
                CHECK(eval_pl(flat, s, id).is_zero() == gen::oracle_pl(phi, s, id).is_zero());
            }
        }
    }
    CHECK(done > 200);
}

TEST_CASE("existential theory translation") {
    auto p = f::prop("p"), q = f::prop("q");
    auto phi = f::land(f::eq(p, f::constant(nat(2))), f::or_b(f::leq(q, p), f::not_b(f::neg_prop("p"))));
    auto art = sat_to_etk(phi, N, {nat(2)});
    CHECK(art.uses_leq);
    CHECK(art.sentence.vars.size() == 4);  // both signs of p and q
    CHECK(art.g.at({"p", false}) == "x_p");
    CHECK(art.g.at({"p", true}) == "xn_p");
    auto r = etk_bounded(art.sentence, SearchBudget{{nat(0), nat(1), nat(2)}});
    REQUIRE(r.outcome == SearchOutcome::found);
    auto s = etk_to_assignment(art, r.valuation);
    CHECK(*s.find("p", false) == nat(2));
    CHECK_FALSE(eval_pl(phi, s, N).is_zero());

    CHECK_THROWS_AS(sat_to_etk(f::eq(f::eq(p, q), f::constant(nat(0))), N, {}), DomainError);
    CHECK_THROWS_AS(sat_to_etk(f::eq(p, f::constant(nat(7))), N, {nat(2)}), DomainError);
}

TEST_CASE("translation preserves satisfiability over a finite universe") {
    gen::Rng rng(72);
    int sat = 0, unsat = 0;
    for (SemiringId id : {N, SemiringId::tropical, SemiringId::boolean, SemiringId::rational}) {
        auto sample = gen::sample6(id);
        std::vector<Value> u(sample.begin(), sample.begin() + std::min<size_t>(3, sample.size()));
        std::vector<Value> X{u.back()};
        gen::PLGen g{id, {"p", "q"}, X};
        for (int i = 0; i < 50; ++i) {
            Formula flat;
            try {
                flat = flatten(g(rng, 3), id);
            } catch (const DomainError&) {
                continue;
            }
            bool want = false;
            for (auto& s : all_assignments(flat, id, u))
                if (!gen::oracle_pl(flat, s, id).is_zero()) want = true;
            auto art = sat_to_etk(flat, id, X);
            auto r = etk_bounded(art.sentence, SearchBudget{u});
            INFO(semiring_name(id), " ", to_string(art.sentence));
            CHECK((r.outcome == SearchOutcome::found) == want);
            ++(want ? sat : unsat);
            if (r.outcome == SearchOutcome::found)
                CHECK_FALSE(eval_pl(flat, etk_to_assignment(art, r.valuation), id).is_zero());
        }
    }
    CHECK(sat > 20);
    CHECK(unsat > 5);
}
