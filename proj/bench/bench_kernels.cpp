// Serial against parallel search kernels on instances that force a full scan.
#include "scl/eval.hpp"
#include "scl/machine.hpp"
#include "scl/solvers.hpp"

#include <benchmark/benchmark.h>

using namespace scl;

namespace {

Value nat(int k) { return Value::natural(k); }
const std::vector<Value> kU{nat(0), nat(1), nat(2), nat(3)};

// p1 + ... + pk = 100 has no solution over {0..3}.
Formula unsat_sum(int k) {
    Formula sum = f::prop("p1");
    for (int i = 2; i <= k; ++i) sum = f::lor(sum, f::prop("p" + std::to_string(i)));
    return f::eq(sum, f::constant(nat(100)));
}

void BM_sat(benchmark::State& st) {
    SearchBudget b{kU};
    b.parallel = st.range(0) != 0;
    Formula phi = unsat_sum(static_cast<int>(st.range(1)));
    for (auto _ : st) benchmark::DoNotOptimize(sat_bruteforce(phi, SemiringId::natural, b));
}
BENCHMARK(BM_sat)->ArgsProduct({{0, 1}, {6, 8}})->Unit(benchmark::kMillisecond);

// Writes 0 to cell 1 after checking the guess, so it never accepts.
Machine never_accepts() {
    Machine m;
    MNode in, sh, c, out;
    in.kind = NodeKind::input;
    in.next = 2;
    sh.kind = NodeKind::shiftl;
    sh.next = 3;
    c.kind = NodeKind::constant;
    c.i = 1;
    c.c = nat(0);
    c.next = 4;
    m.nodes = {in, sh, c, out};
    return m;
}

void BM_nondet(benchmark::State& st) {
    Machine m = never_accepts();
    const int len = static_cast<int>(st.range(1));
    for (auto _ : st) {
        if (st.range(0))
            benchmark::DoNotOptimize(decide_nondet(m, {nat(1)}, kU, len, 20, true));
        else
            benchmark::DoNotOptimize(decide_nondet_serial(m, {nat(1)}, kU, len, 20));
    }
}
BENCHMARK(BM_nondet)->ArgsProduct({{0, 1}, {6, 8}})->Unit(benchmark::kMillisecond);

// Constant polynomial 1 has no root: the exhaustive search visits every extension of Z.
void BM_eso(benchmark::State& st) {
    const SemiringId Q = SemiringId::rational;
    Vocabulary voc;
    voc.add("R0", 0);
    voc.add("R2", 2);
    KInterpretation pi(Q, static_cast<int>(st.range(1)), voc);
    pi.set("R0", {}, false, Value::rational(1));
    Formula sum = f::lor(f::atom("R0", {}),
                         f::exists(std::vector<std::string>{"y1", "y2"},
                                   f::land(f::atom("R2", {"y1", "y2"}), f::land(f::atom("Z", {"y1"}), f::atom("Z", {"y2"})))));
    ESOSentence phi{{{"Z", 1}}, f::eq(f::constant(Value::rational(0)), sum)};
    EsoExhaustive ex;
    ex.universe = default_universe(Q);
    ex.parallel = st.range(0) != 0;
    for (auto _ : st) benchmark::DoNotOptimize(eval_eso(phi, pi, ex));
}
BENCHMARK(BM_eso)->ArgsProduct({{0, 1}, {3, 4}})->Unit(benchmark::kMillisecond);

void BM_etk(benchmark::State& st) {
    const int k = static_cast<int>(st.range(1));
    EtkSentence s;
    s.id = SemiringId::natural;
    TermP sum;
    for (int i = 0; i < k; ++i) {
        s.vars.push_back("a" + std::to_string(i));
        TermP v = t::var(s.vars.back());
        sum = sum ? t::add(sum, t::mul(v, v)) : t::mul(v, v);
    }
    s.matrix = t::atom(EtkNode::Op::eq, sum, t::cnst(nat(1000)));
    SearchBudget b{kU};
    b.parallel = st.range(0) != 0;
    for (auto _ : st) benchmark::DoNotOptimize(etk_bounded(s, b));
}
BENCHMARK(BM_etk)->ArgsProduct({{0, 1}, {6, 8}})->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
