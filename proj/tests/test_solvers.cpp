#include "gen.hpp"
#include "scl/solvers.hpp"

#include <doctest.h>

using namespace scl;

namespace {
const SemiringId N = SemiringId::natural;
Value nat(int k) { return Value::natural(k); }

// First satisfying assignment, first literal most significant.
std::optional<PLAssignment> first_model(const Formula& phi, SemiringId id, const std::vector<Value>& u) {
    auto lits = pl_literals(phi);
    std::vector<size_t> d(lits.size(), 0);
    for (;;) {
        PLAssignment s;
        s.id = id;
        for (size_t i = 0; i < lits.size(); ++i) s.set(lits[i].first, lits[i].second, u[d[i]]);
        if (!gen::oracle_pl(phi, s, id).is_zero()) return s;
        int p = static_cast<int>(lits.size()) - 1;
        while (p >= 0 && ++d[static_cast<size_t>(p)] == u.size()) d[static_cast<size_t>(p--)] = 0;
        if (p < 0) return std::nullopt;
    }
}

Value term_value(const TermP& t, const std::map<std::string, Value>& env, SemiringId id) {
    switch (t->op) {
        case Term::Op::var: return env.at(t->var);
        case Term::Op::cnst: return t->c;
        case Term::Op::add: return add(term_value(t->l, env, id), term_value(t->r, env, id));
        default: return mul(term_value(t->l, env, id), term_value(t->r, env, id));
    }
}

bool holds(const EtkFormula& f, const std::map<std::string, Value>& env, SemiringId id) {
    switch (f->op) {
        case EtkNode::Op::truth: return f->value;
        case EtkNode::Op::land: return holds(f->l, env, id) && holds(f->r, env, id);
        case EtkNode::Op::lor: return holds(f->l, env, id) || holds(f->r, env, id);
        case EtkNode::Op::eq: return term_value(f->a, env, id) == term_value(f->b, env, id);
        case EtkNode::Op::neq: return !(term_value(f->a, env, id) == term_value(f->b, env, id));
        case EtkNode::Op::leq: return leq(term_value(f->a, env, id), term_value(f->b, env, id));
        default: return !leq(term_value(f->a, env, id), term_value(f->b, env, id));
    }
}

TermP rand_term(gen::Rng& r, int depth, const std::vector<std::string>& vars, const std::vector<Value>& consts) {
    if (depth <= 0 || gen::coin(r, 0.4))
        return gen::coin(r, 0.75) ? t::var(gen::pick(r, vars)) : t::cnst(gen::pick(r, consts));
    auto a = rand_term(r, depth - 1, vars, consts), b = rand_term(r, depth - 1, vars, consts);
    return gen::coin(r) ? t::add(a, b) : t::mul(a, b);
}

EtkFormula rand_etk(gen::Rng& r, int depth, const std::vector<std::string>& vars, const std::vector<Value>& consts) {
    if (depth <= 0 || gen::coin(r, 0.3)) {
        static const EtkNode::Op ops[] = {EtkNode::Op::eq, EtkNode::Op::neq, EtkNode::Op::leq, EtkNode::Op::nleq};
        return t::atom(ops[gen::uniform(r, 0, 3)], rand_term(r, 2, vars, consts), rand_term(r, 2, vars, consts));
    }
    auto a = rand_etk(r, depth - 1, vars, consts), b = rand_etk(r, depth - 1, vars, consts);
    return gen::coin(r) ? t::land(a, b) : t::lor(a, b);
}
}  // namespace

TEST_CASE("sat examples") {
    auto p = f::prop("p"), q = f::prop("q");
    auto three = f::constant(nat(3));
    auto phi = f::land(f::land(f::leq(f::lor(p, q), f::land(p, q)), f::leq(three, p)), f::leq(three, q));
    SearchBudget b{{nat(0), nat(1), nat(2), nat(3)}};
    auto r = sat_bruteforce(phi, N, b);
    REQUIRE(r.outcome == SearchOutcome::found);
    CHECK(*r.assignment->find("p", false) == nat(3));
    CHECK(*r.assignment->find("q", false) == nat(3));
    auto psi = f::eq(f::lor(p, q), f::land(p, q));
    auto rp = sat_bruteforce(psi, N, b);
    REQUIRE(rp.outcome == SearchOutcome::found);  // p = q = 0 and p = q = 2 both work
    CHECK(*rp.assignment->find("p", false) == nat(0));
    auto none = sat_bruteforce(f::land(f::eq(p, f::constant(nat(1))), f::eq(p, f::constant(nat(0)))), N, b);
    CHECK(none.outcome == SearchOutcome::none_within_bounds);
    b.max_candidates = 3;
    CHECK(sat_bruteforce(phi, N, b).outcome == SearchOutcome::bound_exceeded);
}

TEST_CASE("sat solvers agree with plain enumeration") {
    gen::Rng rng(41);
    for (SemiringId id : all_semirings()) {
        auto sample = gen::sample6(id);
        std::vector<Value> u(sample.begin(), sample.begin() + std::min<size_t>(3, sample.size()));
        gen::PLGen g{id, {"p", "q", "r"}, sample};
        for (int i = 0; i < 60; ++i) {
            Formula phi = g(rng, 3);
            auto want = first_model(phi, id, u);
            SearchBudget b{u};
            auto par = sat_bruteforce(phi, id, b);
            b.parallel = false;
            auto ser = sat_bruteforce(phi, id, b);
            auto en = sat_enumerate(phi, id, b);
            INFO(semiring_name(id));
            CHECK((par.outcome == SearchOutcome::found) == want.has_value());
            CHECK((ser.outcome == SearchOutcome::found) == want.has_value());
            CHECK((en.outcome == SearchOutcome::found) == want.has_value());
            if (want) {
                CHECK(*par.assignment == *want);
                CHECK(*ser.assignment == *want);
                CHECK(*en.assignment == *want);
            }
        }
    }
}

TEST_CASE("existential theory search agrees with brute force") {
    gen::Rng rng(42);
    for (SemiringId id : {SemiringId::natural, SemiringId::tropical, SemiringId::rational}) {
        auto sample = gen::sample6(id);
        std::vector<Value> u(sample.begin(), sample.begin() + 4);
        std::vector<std::string> vars{"a", "b", "c"};
        for (int i = 0; i < 60; ++i) {
            EtkSentence s{id, vars, rand_etk(rng, 3, vars, sample)};
            std::optional<std::vector<Value>> want;
            gen::each_guess(u, 3, [&](const std::vector<Value>& g) {
                if (g.size() != 3) return false;
                std::map<std::string, Value> env{{"a", g[0]}, {"b", g[1]}, {"c", g[2]}};
                if (holds(s.matrix, env, id)) want = g;
                return want.has_value();
            });
            SearchBudget b{u};
            auto par = etk_bounded(s, b);
            b.parallel = false;
            auto ser = etk_bounded(s, b);
            INFO(to_string(s));
            CHECK((par.outcome == SearchOutcome::found) == want.has_value());
            CHECK((ser.outcome == SearchOutcome::found) == want.has_value());
            if (want) {
                CHECK(par.valuation == *want);
                CHECK(ser.valuation == *want);
                CHECK(eval_etk(s.matrix, vars, *want, id));
            }
        }
    }
}

TEST_CASE("equivalence on samples") {
    Vocabulary voc;
    voc.add("R", 1);
    std::vector<KInterpretation> samples;
    for (int k = 0; k < 4; ++k) {
        KInterpretation pi(N, 2, voc);
        pi.set("R", {0}, false, nat(k));
        pi.set("R", {1}, false, nat(1));
        samples.push_back(pi);
    }
    auto ex = f::exists("x", f::atom("R", {"x"}));
    auto fa = f::forall("x", f::atom("R", {"x"}));
    auto ex2 = f::exists("y", f::atom("R", {"y"}));
    CHECK(k_equivalence_sample(ex, ex2, samples).equivalent);
    auto r = k_equivalence_sample(ex, fa, samples);
    CHECK_FALSE(r.equivalent);
    REQUIRE(r.counterexample);
    CHECK(*r.counterexample == 0);  // 0 + 1 against 0 * 1
    CHECK(r.left == nat(1));
    CHECK(r.right == nat(0));
}
