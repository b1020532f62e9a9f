// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.
#include "gen.hpp"
#include "scl/clock.hpp"
#include "scl/eval.hpp"
#include "scl/reductions.hpp"
#include "scl/solvers.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>

using namespace scl;

namespace {

Value nat(int k) { return Value::natural(k); }
const SemiringId B = SemiringId::boolean;
const SemiringId N = SemiringId::natural;

struct Outcome {
    bool pass = true;
    std::string detail;
};

// Records the first few mismatches.
struct Tally {
    int checked = 0, failed = 0;
    std::ostringstream notes;
    void check(bool ok, const std::string& what) {
        ++checked;
        if (ok) return;
        if (failed++ < 3) notes << " [" << what << "]";
    }
    Outcome done(const std::string& extra = "") const {
        std::ostringstream s;
        s << checked << " checks, " << failed << " mismatches" << extra << notes.str();
        return {failed == 0, s.str()};
    }
};

bool in(const std::vector<Value>& u, const Value& v) { return std::find(u.begin(), u.end(), v) != u.end(); }

std::vector<Value> range(int lo, int hi) {
    std::vector<Value> u;
    for (int k = lo; k <= hi; ++k) u.push_back(nat(k));
    return u;
}

Outcome c1_axioms() {
    Tally t;
    for (SemiringId id : all_semirings()) {
        auto rep = axiom_check(id, gen::sample6(id));
        t.check(rep.ok(), semiring_name(id) + std::string(": ") +
                              (rep.ok() ? "" : rep.violations.front().law));
        t.check(rep.positive, semiring_name(id) + std::string(" not positive"));
    }
    return t.done(", boolean sample has its 2 carrier elements only");
}

Outcome c2_example() {
    Tally t;
    auto p = f::prop("p"), q = f::prop("q");
    auto three = f::constant(nat(3));
    auto phi = f::land(f::land(f::leq(f::lor(p, q), f::land(p, q)), f::leq(three, p)), f::leq(three, q));
    auto psi = f::land(f::land(f::leq(f::land(p, q), f::lor(p, q)), f::leq(three, p)), f::leq(three, q));
    PLAssignment s;
    s.id = N;
    for (auto x : {"p", "q"}) {
        s.set(x, false, nat(3));
        s.set(x, true, nat(0));
    }
    t.check(eval_pl(phi, s, N) == nat(1), "phi under s");
    t.check(eval_pl(psi, s, N) == nat(0), "psi under s");
    auto r = sat_bruteforce(phi, N, SearchBudget{range(0, 3)});
    t.check(r.outcome == SearchOutcome::found && !eval_pl(phi, *r.assignment, N).is_zero(), "sat phi");
    if (r.assignment) {
        t.check(*r.assignment->find("p", false) == nat(3) && *r.assignment->find("q", false) == nat(3),
                "phi model p=q=3");
    }
    t.check(sat_bruteforce(psi, N, SearchBudget{range(0, 5)}).outcome == SearchOutcome::none_within_bounds,
            "psi none within {0..5}");
    return t.done();
}

KInterpretation boolean_structure(const gen::Structure& a, const Vocabulary& voc) {
    KInterpretation pi(B, a.n, voc);
    for (auto& [r, bits] : a.facts)
        for (size_t i = 0; i < bits.size(); ++i) {
            pi.facts(r, false)[i] = Value::boolean(bits[i]);
            pi.facts(r, true)[i] = Value::boolean(!bits[i]);
        }
    return pi;
}

Outcome c3_boolean() {
    gen::Rng rng(301);
    gen::FOGen g{{{"E", 2}, {"U", 1}, {"T", 3}}};
    Vocabulary voc;
    voc.add("E", 2);
    voc.add("U", 1);
    voc.add("T", 3);
    Tally t;
    for (int i = 0; i < 500; ++i) {
        gen::Structure a{gen::uniform(rng, 1, 4), {}};
        a.facts["E"].resize(static_cast<size_t>(a.n * a.n));
        a.facts["U"].resize(static_cast<size_t>(a.n));
        a.facts["T"].resize(static_cast<size_t>(a.n * a.n * a.n));
        for (auto& [r, bits] : a.facts)
            for (size_t k = 0; k < bits.size(); ++k) bits[k] = gen::coin(rng);
        std::vector<std::string> scope;
        Formula phi = g(rng, 5, scope);
        std::map<std::string, int> env;
        bool want = gen::tarski(phi, a, env);
        auto pi = boolean_structure(a, voc);
        t.check(pi.is_model_defining() && eval_fo(phi, pi).is_one() == want, "sentence " + std::to_string(i));
    }
    return t.done();
}

Outcome c4_feas() {
    const SemiringId Q = SemiringId::rational;
    Tally t;
    auto phi = gen::feas4(Q);
    KInterpretation prod(Q, 2, gen::feas4_vocabulary());
    prod.set("R2", {0, 1}, false, Value::rational(1));
    KInterpretation z(Q, 2, {});
    z.add_relation("Z", 1);
    t.check(eval_eso(phi, prod, EsoWitness{z}).value == Value::rational(1), "x1*x2 with Z = 0");
    KInterpretation one(Q, 2, gen::feas4_vocabulary());
    one.set("R0", {}, false, Value::rational(1));
    EsoExhaustive ex;
    ex.universe = default_universe(Q);
    auto r = eval_eso(phi, one, ex);
    t.check(r.outcome == EsoResult::Outcome::decided && r.value == Value::rational(0), "f = 1 exhaustive");
    return t.done();
}

// Every accepting run over u stays inside u, so the formula's variables can hold it.
bool accepting_runs_stay_in(const Machine& m, const std::vector<Value>& x, const std::vector<Value>& u, int max_len,
                            uint64_t budget) {
    bool ok = true;
    gen::each_guess(u, max_len, [&](const std::vector<Value>& g) {
        auto r = gen::simulate(m, x, g, budget);
        if (r.accepted)
            for (auto& v : r.seen)
                if (!in(u, v)) ok = false;
        return !ok;
    });
    return ok;
}

Outcome c5_cook() {
    gen::Rng rng(501);
    Tally t;
    int accepted = 0, skipped = 0;
    for (int i = 0; i < 50; ++i) {
        const SemiringId id = i % 2 ? N : B;
        const std::vector<Value> u = id == B ? std::vector<Value>{Value::boolean(false), Value::boolean(true)} : range(0, 3);
        gen::MachineGen mg{id, u};
        Machine m;
        std::vector<Value> x;
        int T;
        for (;;) {
            m = mg(rng, gen::uniform(rng, 3, 8));
            x.clear();
            for (int k = gen::uniform(rng, 0, 3); k > 0; --k) x.push_back(gen::pick(rng, u));
            T = gen::uniform(rng, static_cast<int>(x.size()) + 1, 8);
            if (accepting_runs_stay_in(m, x, u, T - static_cast<int>(x.size()) - 1, static_cast<uint64_t>(T))) break;
            ++skipped;
        }
        const int len = T - static_cast<int>(x.size()) - 1;
        auto nd = decide_nondet(m, x, u, len, static_cast<uint64_t>(T));
        auto art = cook_compile(m, x, T);
        auto r = sat_bruteforce(art.formula, id, SearchBudget{u});
        std::string tag = "instance " + std::to_string(i);
        t.check(r.outcome != SearchOutcome::bound_exceeded, tag + " bound exceeded");
        t.check((r.outcome == SearchOutcome::found) == nd.accepted, tag + " sat vs nondet");
        if (r.assignment) {
            auto g = cook_decode_guess(art, *r.assignment);
            t.check(decide(m, x, static_cast<uint64_t>(T), &g) == Decision::accepted, tag + " decoded guess");
        }
        accepted += nd.accepted;
    }
    return t.done(", " + std::to_string(accepted) + " accepting, " + std::to_string(skipped) +
                  " resampled for leaving the universe");
}

KInterpretation only_prefix(const KInterpretation& w, const ESOSentence& s) {
    KInterpretation out(w.id(), w.domain(), {});
    for (auto& [r, k] : s.prefix) {
        out.add_relation(r, k);
        out.facts(r, false) = w.facts(r, false);
        out.facts(r, true) = w.facts(r, true);
    }
    return out;
}

Outcome c6_fagin() {
    gen::Rng rng(601);
    Tally t;
    // Soundness: accepting bounded traces on n = 3, z = 2 (tape [-8, 8], guesses up to 4 cells).
    int sound = 0;
    while (sound < 20) {
        const SemiringId id = sound % 2 ? N : B;
        const std::vector<Value> u = id == B ? std::vector<Value>{Value::boolean(false), Value::boolean(true)} : range(0, 2);
        gen::MachineGen mg{id, u};
        mg.max_index = 4;
        Machine m = mg(rng, gen::uniform(rng, 3, 8));
        std::vector<Value> x{gen::pick(rng, u), gen::pick(rng, u), gen::pick(rng, u)};
        std::optional<std::vector<Value>> guess;
        gen::each_guess(u, fagin_max_guess(3, 2), [&](const std::vector<Value>& g) {
            if (fagin_bounded_run(m, x, g, 2).accepted) guess = g;
            return guess.has_value();
        });
        if (!guess) continue;
        auto art = fagin_compile(m, 2);
        auto pi = fagin_input(id, x);
        auto w = only_prefix(fagin_witness(m, 2, pi, *guess), art.sentence);
        t.check(eval_eso(art.sentence, pi, EsoWitness{w}).value.is_one(), "witness " + std::to_string(sound));
        ++sound;
    }
    // Micro completeness: n = 2, z = 1 gives 8 + 2N quantified facts, at most 20 for N <= 6.
    int yes = 0, no = 0;
    std::vector<Value> u{Value::boolean(false), Value::boolean(true)};
    gen::MachineGen mg{B, u};
    mg.branch = false;
    mg.max_index = 1;
    for (int i = 0; i < 12; ++i) {
        Machine m = mg(rng, gen::uniform(rng, 3, 6));
        std::vector<Value> x{gen::pick(rng, u), gen::pick(rng, u)};
        auto art = fagin_compile(m, 1);
        auto pi = fagin_input(B, x);
        bool want = fagin_bounded_run(m, x, {}, 1).accepted;
        EsoExhaustive ex;
        ex.model_defining01 = true;
        auto r = eval_eso(art.sentence, pi, ex);
        t.check(r.outcome == EsoResult::Outcome::decided && r.value.is_one() == want,
                "micro " + std::to_string(i));
        ++(want ? yes : no);
    }
    return t.done(", micro: " + std::to_string(yes) + " accepting, " + std::to_string(no) + " rejecting");
}

Machine looper(SemiringId id, int variant) {
    Machine m;
    m.id = id;
    m.name = "loop";
    MNode in;
    in.kind = NodeKind::input;
    in.next = 2;
    MNode br;
    br.kind = NodeKind::branch;
    br.neg = 2;
    br.pos = 3;
    if (variant % 2 == 0) {
        m.nodes = {in, br, MNode{}};  // spins while cells 1 and 2 agree
    } else {
        MNode sh;
        sh.kind = NodeKind::shiftl;
        sh.next = 2;
        br.neg = 3;
        br.pos = 4;  // drifts left until cells 1 and 2 differ
        m.nodes = {in, br, sh, MNode{}};
    }
    return m;
}

Outcome c7_clock() {
    gen::Rng rng(701);
    Tally t;
    ClockOptions opt{4, 12};
    int nonhalt = 0;
    for (int i = 0; i < 20; ++i) {
        const SemiringId id = i % 2 ? N : B;
        auto sample = gen::sample6(id);
        Machine m = i < 6 ? looper(id, i) : gen::MachineGen{id, sample}(rng, gen::uniform(rng, 3, 8));
        std::vector<uint64_t> poly{static_cast<uint64_t>(gen::uniform(rng, 2, 8)), static_cast<uint64_t>(gen::uniform(rng, 0, 3))};
        Machine w = wrap_with_clock(m, poly, opt);
        for (int n = 0; n <= 4; ++n) {
            const uint64_t tn = eval_poly(poly, static_cast<uint64_t>(n));
            const uint64_t bound = clock_step_bound(poly, opt, n);
            std::vector<std::vector<Value>> inputs;
            if (id == B) {
                for (int code = 0; code < (1 << n); ++code) {
                    std::vector<Value> x;
                    for (int k = 0; k < n; ++k) x.push_back(Value::boolean((code >> k) & 1));
                    inputs.push_back(x);
                }
            } else {
                for (int r = 0; r < 8; ++r) {
                    std::vector<Value> x;
                    for (int k = 0; k < n; ++k) x.push_back(gen::pick(rng, sample));
                    inputs.push_back(x);
                }
            }
            for (auto& x : inputs) {
                auto got = run(w, x, bound);
                auto want = gen::simulate(m, x, {}, tn);
                std::string tag = "machine " + std::to_string(i) + " n=" + std::to_string(n);
                t.check(got.halted, tag + " wrapped run exceeds its bound");
                nonhalt += !want.halted;
                if (want.halted)
                    t.check(got.output == want.output, tag + " output differs");
                else
                    t.check(got.output.empty(), tag + " timeout output");
            }
        }
    }
    return t.done(", " + std::to_string(nonhalt) + " inputs where the original exceeds t(n)");
}

Outcome c8_closure() {
    gen::Rng rng(801);
    Tally t;
    const std::vector<Value> X{nat(0), nat(1), nat(5)};
    gen::MachineGen mg{N, X};
    int made = 0, tries = 0, arith_steps = 0;
    while (made < 20) {
        ++tries;
        Machine m = mg(rng, gen::uniform(rng, 3, 8));
        std::vector<std::vector<Value>> inputs;
        for (int r = 0; r < 6; ++r) {
            std::vector<Value> x;
            for (int k = gen::uniform(rng, 0, 4); k > 0; --k) x.push_back(gen::pick(rng, X));
            inputs.push_back(x);
        }
        Monitors na;
        na.non_arithmetic = true;
        bool non_arith = true;
        for (auto& x : inputs) non_arith = non_arith && run_monitored(m, x, 200, na).violations.empty();
        if (!non_arith) continue;
        ++made;
        for (auto& x : inputs) {
            Monitors cl;
            cl.closure = X;
            auto r = run_monitored(m, x, 200, cl);
            t.check(r.violations.empty(), "closure report " + std::to_string(made));
            for (auto& v : r.run.output) t.check(in(X, v), "output outside X");
            auto tr = run(m, x, 200, true);
            for (auto& s : tr.trace) {
                auto k = m.node(s.node).kind;
                arith_steps += k == NodeKind::add || k == NodeKind::mul;
            }
        }
    }
    return t.done(", " + std::to_string(tries) + " samples drawn, " + std::to_string(arith_steps) +
                  " executed add/mul steps");
}

Outcome c9_flatten() {
    gen::Rng rng(901);
    Tally t;
    const auto u = range(0, 3);
    const std::vector<Value> X{nat(2), nat(3)};
    gen::PLGen g{N, {"p", "q", "r", "s"}, X};
    int sat = 0;
    for (int i = 0; i < 100; ++i) {
        Formula phi = g(rng, 3);
        std::string tag = "formula " + std::to_string(i);
        Formula flat;
        try {
            flat = flatten(phi, N);
        } catch (const DomainError& e) {
            t.check(false, tag + ": " + e.what());
            continue;
        }
        auto before = sat_bruteforce(phi, N, SearchBudget{u});
        auto after = sat_bruteforce(flat, N, SearchBudget{u});
        auto art = sat_to_etk(flat, N, X);
        auto etk = etk_bounded(art.sentence, SearchBudget{u});
        bool b = before.outcome == SearchOutcome::found;
        t.check(before.outcome != SearchOutcome::bound_exceeded && etk.outcome != SearchOutcome::bound_exceeded,
                tag + " bound exceeded");
        t.check(b == (after.outcome == SearchOutcome::found), tag + " flatten");
        t.check(b == (etk.outcome == SearchOutcome::found), tag + " etk");
        if (etk.outcome == SearchOutcome::found) {
            // Literals dropped by flattening cannot affect support; give them 0.
            auto model = etk_to_assignment(art, etk.valuation);
            for (auto& [name, neg] : pl_literals(phi))
                if (!model.find(name, neg)) model.set(name, neg, nat(0));
            t.check(!eval_pl(phi, model, N).is_zero(), tag + " recovered model");
        }
        sat += b;
    }
    return t.done(", " + std::to_string(sat) + " satisfiable");
}

void const_occurrences(const Formula& x, std::vector<Value>& out) {
    if (!x) return;
    if (x->kind == Kind::Const) out.push_back(x->c);
    const_occurrences(x->l, out);
    const_occurrences(x->r, out);
}

std::multiset<std::string> non_bits(const std::vector<Value>& xs) {
    std::multiset<std::string> s;
    for (auto& v : xs)
        if (!v.is_zero() && !v.is_one()) s.insert(to_literal(v));
    return s;
}

Outcome c10_encoding() {
    gen::Rng rng(1001);
    Tally t;
    auto ids = all_semirings();
    for (int i = 0; i < 200; ++i) {
        SemiringId id = ids[static_cast<size_t>(i) % ids.size()];
        auto sample = gen::sample6(id);
        std::string tag = semiring_name(id) + std::string(" #") + std::to_string(i);
        // Formula, assignment, and interpretation in turn.
        if (i % 3 == 0) {
            Formula phi = gen::PLGen{id, {"p", "q", "r"}, sample}(rng, 4);
            if (gen::coin(rng)) {
                std::vector<std::string> scope;
                phi = f::so_exists("S", 1, f::land(gen::FOGen{{{"E", 2}}}(rng, 3, scope), phi));
            }
            auto e = encode(phi, id);
            t.check(equal(decode_formula(e, id), phi), tag + " formula");
            std::vector<Value> cs;
            const_occurrences(phi, cs);
            t.check(non_bits(e) == non_bits(cs), tag + " formula constants");
        } else if (i % 3 == 1) {
            auto s = gen::random_assignment(rng, id, {"p", "q", "r", "s"}, sample);
            auto e = encode(s);
            t.check(decode_assignment(e, id) == s, tag + " assignment");
            std::vector<Value> vs;
            for (auto& [lit, v] : s.values) vs.push_back(v);
            t.check(non_bits(e) == non_bits(vs), tag + " assignment constants");
        } else {
            Vocabulary voc;
            voc.add("R", gen::uniform(rng, 0, 2));
            voc.add("S", 1);
            auto pi = gen::coin(rng) ? KInterpretation::ordered(id, gen::uniform(rng, 1, 3), voc)
                                     : KInterpretation(id, gen::uniform(rng, 1, 3), voc);
            std::vector<Value> vs;
            for (auto& [r, k] : pi.vocabulary().rels)
                for (bool neg : {false, true})
                    for (auto& v : pi.facts(r, neg)) {
                        if (r != kLess) v = gen::pick(rng, sample);
                        vs.push_back(v);
                    }
            auto e = encode(pi);
            t.check(decode_interpretation(e, id) == pi, tag + " interpretation");
            t.check(non_bits(e) == non_bits(vs), tag + " interpretation constants");
        }
    }
    return t.done();
}

}  // namespace

int main() {
    struct Criterion {
        const char* name;
        std::function<Outcome()> run;
    };
    const Criterion all[] = {
        {"semiring axiom suite", c1_axioms},
        {"worked examples", c2_example},
        {"Boolean correspondence", c3_boolean},
        {"4-FEAS check", c4_feas},
        {"Cook end-to-end", c5_cook},
        {"Fagin soundness + micro completeness", c6_fagin},
        {"clock wrapper", c7_clock},
        {"non-arithmetic closure", c8_closure},
        {"flatten + ETK chain", c9_flatten},
        {"encoding round-trip", c10_encoding},
    };
    int failures = 0;
    int k = 0;
    for (auto& c : all) {
        ++k;
        auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        failures += !o.pass;
        std::printf("criterion %d %s: %s (%s; %.2fs)\n", k, c.name, o.pass ? "PASS" : "FAIL", o.detail.c_str(), secs);
        std::fflush(stdout);
    }
    return failures ? 1 : 0;
}
