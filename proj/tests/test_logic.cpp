#include "gen.hpp"
#include "scl/logic.hpp"

#include <doctest.h>

using namespace scl;

namespace {
const SemiringId N = SemiringId::natural;
Formula c(int k) { return f::constant(Value::natural(k)); }
bool has(const std::vector<std::string>& diags, const std::string& needle) {
    for (auto& d : diags)
        if (d.find(needle) != std::string::npos) return true;
    return false;
}
}  // namespace

TEST_CASE("desugar rewrites") {
    auto p = f::prop("p"), q = f::prop("q");
    CHECK(equal(desugar(f::not_b(p), N), f::eq(p, c(0))));
    CHECK(equal(desugar(f::land(p, q), N), f::land(p, q)));
    CHECK(equal(desugar(f::neq(p, q), N), f::eq(f::eq(p, q), c(0))));
    CHECK(equal(desugar(f::nleq(p, q), N), f::leq(f::leq(p, q), c(0))));
    auto ne0 = [&](Formula x) { return f::eq(f::eq(x, c(0)), c(0)); };
    CHECK(equal(desugar(f::or_b(p, q), N), ne0(f::lor(ne0(p), ne0(q)))));
    CHECK(equal(desugar(f::and_b(p, q), N), ne0(f::land(ne0(p), ne0(q)))));
    CHECK(equal(desugar(f::imp_b(p, q), N), ne0(f::lor(f::eq(p, c(0)), ne0(q)))));
}

TEST_CASE("desugar is idempotent and leaves no sugar") {
    gen::Rng rng(7);
    gen::PLGen g{N, {"p", "q", "r"}, {Value::natural(2)}};
    std::function<bool(const Formula&)> core = [&](const Formula& x) -> bool {
        if (!x) return true;
        return !is_sugar(x->kind) && core(x->l) && core(x->r);
    };
    for (int i = 0; i < 200; ++i) {
        Formula phi = g(rng, 4);
        Formula d = desugar(phi, N);
        CHECK(core(d));
        CHECK(equal(desugar(d, N), d));
    }
}

TEST_CASE("free variables and literals") {
    auto phi = f::exists("x", f::land(f::atom("R", {"x", "y"}), f::var_eq("y", "z")));
    CHECK(free_vars(phi) == std::set<std::string>{"y", "z"});
    auto psi = f::land(f::prop("q"), f::lor(f::neg_prop("p"), f::prop("q")));
    auto lits = pl_literals(psi);
    REQUIRE(lits.size() == 2);
    CHECK(lits[0] == std::pair<std::string, bool>{"q", false});
    CHECK(lits[1] == std::pair<std::string, bool>{"p", true});
}

TEST_CASE("validate") {
    Vocabulary voc;
    voc.add("R", 3);
    auto bad_arity = f::exists("x", f::exists("y", f::atom("R", {"x", "y"})));
    CHECK(has(validate(bad_arity, Layer::FO, N, &voc), "arity"));

    auto nested = f::exists("x", f::eq(f::so_exists("P", 1, f::atom("P", {"x"})), c(1)));
    CHECK(has(validate(nested, Layer::ESO, N, &voc), "prefix-only"));

    SemiringProfile unordered = profile(N);
    unordered.ordered = false;
    CHECK(has(validate(f::leq(f::prop("p"), f::prop("q")), Layer::PL, unordered), "ordered"));
    CHECK(validate(f::leq(f::prop("p"), f::prop("q")), Layer::PL, SemiringId::polynomial).empty());

    ESOSentence open{{{"P", 1}}, f::atom("P", {"x"})};
    CHECK(has(validate(open, N, voc), "free variables"));
    ESOSentence clash{{{"R", 3}}, f::constant(Value::natural(1))};
    CHECK(has(validate(clash, N, voc), "clashes"));
}

TEST_CASE("eso prefix split") {
    auto m = f::exists("x", f::atom("P", {"x"}));
    auto phi = f::so_exists("P", 1, f::so_exists("Q", 2, m));
    ESOSentence s = to_eso(phi);
    REQUIRE(s.prefix.size() == 2);
    CHECK(s.prefix[0] == std::pair<std::string, int>{"P", 1});
    CHECK(s.prefix[1] == std::pair<std::string, int>{"Q", 2});
    CHECK(equal(s.matrix, m));
    CHECK(equal(from_eso(s), phi));
}

TEST_CASE("interpretations") {
    Vocabulary voc;
    voc.add("R", 2);
    auto pi = KInterpretation::ordered(N, 3, voc);
    CHECK(pi.is_ordered());
    CHECK(pi.get(kLess, {0, 2}, false).is_one());
    CHECK(pi.get(kLess, {2, 0}, false).is_zero());
    CHECK(pi.tuple_count("R") == 9);
    CHECK(pi.decode_tuple("R", 5) == std::vector<int>{1, 2});
    pi.set("R", {1, 2}, false, Value::natural(4));
    CHECK(pi.facts("R", false)[5] == Value::natural(4));
    CHECK_FALSE(pi.is_model_defining());

    auto s = PLAssignment::model_defining(N, {{"p", Value::natural(0)}, {"q", Value::natural(2)}});
    CHECK(s.find("p", true)->is_one());
    CHECK(s.find("q", true)->is_zero());
}
