#include "gen.hpp"
#include "scl/text.hpp"

#include <doctest.h>

using namespace scl;

namespace {
const SemiringId N = SemiringId::natural;
Value nat(int k) { return Value::natural(k); }
}  // namespace

TEST_CASE("precedence") {
    auto p = f::prop("p"), q = f::prop("q");
    auto three = f::constant(nat(3));
    auto want = f::land(f::land(f::leq(f::lor(p, q), f::land(p, q)), f::leq(three, p)), f::leq(three, q));
    CHECK(equal(parse_formula("((p | q) <= (p & q)) & #3 <= p & #3 <= q", N), want));
    CHECK(equal(parse_formula("p | q & p", N), f::land(f::lor(p, q), p)));
    CHECK(equal(parse_formula("p -> q -> p", N), f::imp_b(p, f::imp_b(q, p))));
    CHECK(equal(parse_formula("p || q && p", N), f::or_b(p, f::and_b(q, p))));
    CHECK(equal(parse_formula("not p = q", N), f::eq(f::not_b(p), q)));
    CHECK(equal(parse_formula("not (p = q)", N), f::not_b(f::eq(p, q))));
    CHECK(equal(parse_formula("~p != #0", N), f::neq(f::neg_prop("p"), f::constant(nat(0)))));
    CHECK(equal(parse_formula("p !<= q % trailing comment", N), f::nleq(p, q)));
    CHECK_THROWS_AS(parse_formula("p = q = p", N), ParseError);
}

TEST_CASE("quantifiers") {
    auto r = [](std::vector<std::string> a) { return f::atom("R", std::move(a)); };
    CHECK(equal(parse_formula("exists x . R(x) & R(x)", N), f::exists("x", f::land(r({"x"}), r({"x"})))));
    CHECK(equal(parse_formula("exists x (R(x)) & R(y)", N, {"y"}),
                f::land(f::exists("x", r({"x"})), r({"y"}))));
    CHECK(equal(parse_formula("forall x y . x = y | !R(x, y)", N),
                f::forall(std::vector<std::string>{"x", "y"}, f::lor(f::var_eq("x", "y"), f::neg_atom("R", {"x", "y"})))));
    CHECK(equal(parse_formula("EXISTS P/1 . exists x . P(x)", N), f::so_exists("P", 1, f::exists("x", f::atom("P", {"x"})))));
    CHECK(equal(parse_formula("exists x . x != x", N), f::exists("x", f::var_neq("x", "x"))));
}

TEST_CASE("parse errors carry positions") {
    try {
        parse_formula("p &\n  (q | ", N);
        FAIL("parsed an incomplete formula");
    } catch (const ParseError& e) {
        CHECK(e.line == 2);
        CHECK(e.col >= 3);
    }
    CHECK_THROWS_AS(parse_formula("#inf", N), DomainError);
    CHECK_THROWS_AS(parse_formula("p q", N), ParseError);
}

TEST_CASE("printed formulas parse back") {
    gen::Rng rng(91);
    for (SemiringId id : all_semirings()) {
        gen::PLGen g{id, {"p", "q", "r2"}, gen::sample6(id)};
        for (int i = 0; i < 100; ++i) {
            Formula phi = g(rng, 4);
            INFO(print_formula(phi));
            CHECK(equal(parse_formula(print_formula(phi), id), phi));
        }
    }
    gen::FOGen fg{{{"E", 2}, {"U", 1}}};
    for (int i = 0; i < 100; ++i) {
        std::vector<std::string> scope;
        Formula phi = f::so_exists("S", 1, fg(rng, 4, scope));
        INFO(print_formula(phi));
        CHECK(equal(parse_formula(print_formula(phi), N), phi));
    }
}

TEST_CASE("machines") {
    const char* src = R"(machine eqguess semiring nat
node 1 input next=2
node 2 branch neg=4 pos=3 rel==
node 3 const i=1 c=#0 next=4
node 4 output
)";
    Machine m = parse_machine(src);
    CHECK(m.name == "eqguess");
    REQUIRE(m.size() == 4);
    CHECK(m.node(2).kind == NodeKind::branch);
    CHECK(m.node(2).neg == 4);
    CHECK(m.node(3).c == nat(0));
    CHECK(parse_machine(print_machine(m)) == m);

    gen::Rng rng(92);
    for (SemiringId id : all_semirings()) {
        gen::MachineGen mg{id, gen::sample6(id)};
        for (int i = 0; i < 20; ++i) {
            Machine r = mg(rng, gen::uniform(rng, 3, 8));
            CHECK(parse_machine(print_machine(r)) == r);
        }
    }
    CHECK_THROWS_AS(parse_machine("machine m semiring nat\nnode 1 input next=5\nnode 2 output\n"), DomainError);
    CHECK_THROWS_AS(parse_machine("machine m semiring nat\nnode 1 jump next=2\nnode 2 output\n"), ParseError);
    CHECK_THROWS_AS(parse_machine("machine m semiring nat\nnode 2 input next=1\nnode 1 output\n"), DomainError);
}

TEST_CASE("valuations") {
    auto v = parse_valuation("% comment\nsemiring nat\np = #3\n~p = #0\nq = #3\n~q = #0\n");
    CHECK(v.id == N);
    CHECK_FALSE(v.interp);
    CHECK(*v.pl.find("q", false) == nat(3));
    CHECK(parse_valuation(print_assignment(v.pl)).pl == v.pl);

    auto w = parse_valuation("semiring nat\ndomain 2\nrelation R/1\nR(0) = #2\nR(1) = #3\n");
    REQUIRE(w.interp);
    CHECK(w.interp->get("R", {1}, false) == nat(3));
    CHECK_FALSE(w.warnings.empty());  // negated facts were left out
    auto back = parse_valuation(print_interpretation(*w.interp));
    REQUIRE(back.interp);
    CHECK(*back.interp == *w.interp);
    CHECK(back.warnings.empty());

    auto o = parse_valuation("semiring bool\ndomain 3\nordered\n");
    REQUIRE(o.interp);
    CHECK(o.interp->is_ordered());

    CHECK_THROWS_AS(parse_valuation("semiring nat\ndomain 2\nrelation R/1\nR(5) = #1\n"), DomainError);
    CHECK_THROWS_AS(parse_valuation("semiring nat\np = #1\np = #2\n"), DomainError);
}

TEST_CASE("value lists") {
    auto xs = parse_values("#1, #0,#2", N);
    CHECK(xs == std::vector<Value>{nat(1), nat(0), nat(2)});
    CHECK(print_values(xs) == "#1, #0, #2");
    CHECK(parse_values("", N).empty());
    auto ps = parse_values("#poly{x + 1}, #poly{2*x*y}", SemiringId::polynomial);
    CHECK(ps.size() == 2);
    CHECK(parse_values(print_values(ps), SemiringId::polynomial) == ps);
}
