#include "scl/clock.hpp"

#include <algorithm>
#include <map>

namespace scl {

uint64_t eval_poly(const std::vector<uint64_t>& t, uint64_t n) {
    uint64_t v = 0;
    for (size_t d = t.size(); d-- > 0;) v = v * n + t[d];
    return v;
}

namespace {

// Emits nodes with symbolic jump targets, resolved at the end.
class Builder {
public:
    explicit Builder(SemiringId id) : id_(id) {}

    int label() { return next_label_++; }
    void bind(int l) { bound_[l] = here(); }
    int here() const { return static_cast<int>(code_.size()) + 2; }  // node 1 is the input node

    void cnst(long i, bool one) { cnst(i, one ? Value::one(id_) : Value::zero(id_)); }
    void cnst(long i, const Value& c) {
        MNode n;
        n.kind = NodeKind::constant;
        n.i = static_cast<int>(i);
        n.c = c;
        emit(n);
    }
    void arith(NodeKind k, long i, long j, long kk) {
        MNode n;
        n.kind = k;
        n.i = static_cast<int>(i);
        n.j = static_cast<int>(j);
        n.k = static_cast<int>(kk);
        emit(n);
    }
    void copy(long dst, long src) {
        if (dst == src) return;
        cnst(dst, false);
        arith(NodeKind::add, dst, src, dst);
    }
    void shift(bool left) {
        MNode n;
        n.kind = left ? NodeKind::shiftl : NodeKind::shiftr;
        emit(n);
    }
    // Branch ends the fall-through chain.
    void branch(Rel rel, int neg, int pos) {
        MNode n;
        n.kind = NodeKind::branch;
        n.rel = rel;
        n.neg = neg;
        n.pos = pos;
        code_.push_back(n);
    }
    // Unconditional jump: a branch with equal targets.
    void jump(int l) { branch(Rel::eq, l, l); }
    void halt() { jump(kOutput); }

    Machine finish(const std::string& name) {
        Machine m;
        m.name = name;
        m.id = id_;
        const int N = static_cast<int>(code_.size()) + 2;
        auto resolve = [&](int l) {
            if (l == kOutput) return N;
            return bound_.at(l);
        };
        MNode in;
        in.kind = NodeKind::input;
        in.next = 2;
        m.nodes.push_back(in);
        for (auto n : code_) {
            if (n.kind == NodeKind::branch) {
                n.neg = resolve(n.neg);
                n.pos = resolve(n.pos);
            } else {
                n.next = n.next ? resolve(n.next) : static_cast<int>(m.nodes.size()) + 2;
            }
            m.nodes.push_back(n);
        }
        m.nodes.push_back(MNode{});
        return m;
    }

    static constexpr int kOutput = -1;

private:
    void emit(MNode n) { code_.push_back(n); }

    SemiringId id_;
    std::vector<MNode> code_;
    std::map<int, int> bound_;
    int next_label_ = 1;
};

constexpr long kTemp = 1;  // branch scratch, 0 between simulated steps
constexpr long kSave = 3;  // holds coordinate 2 during a tick
constexpr long kBit0 = 5;  // counter bit d lives at kBit0 + 2d, least significant first

}  // namespace

namespace {
int counter_width(const std::vector<uint64_t>& t, int nmax) {
    uint64_t tmax = 0;
    for (int n = 0; n <= nmax; ++n) tmax = std::max(tmax, eval_poly(t, static_cast<uint64_t>(n)));
    int W = 1;
    while (W < 63 && (tmax >> W) != 0) ++W;
    return W;
}
}  // namespace

uint64_t clock_step_bound(const std::vector<uint64_t>& t, const ClockOptions& opt, int n) {
    const uint64_t nmax = static_cast<uint64_t>(std::max(0, opt.max_input));
    const uint64_t lmax = static_cast<uint64_t>(std::max(0, opt.max_output));
    const uint64_t W = static_cast<uint64_t>(counter_width(t, static_cast<int>(nmax)));
    // Length dispatch and spreading, one tick per simulated step plus the final one, output copy.
    const uint64_t setup = 11 * nmax + W + 20;
    const uint64_t tick = 8 * W + 20;
    const uint64_t finish = 12 * lmax + 40;
    return setup + (eval_poly(t, static_cast<uint64_t>(std::max(0, n))) + 1) * tick + finish;
}

Machine wrap_with_clock(const Machine& m, const std::vector<uint64_t>& t, const ClockOptions& opt) {
    require_valid(m);
    const int nmax = std::max(0, opt.max_input);
    const int lmax = std::max(0, opt.max_output);
    const int W = counter_width(t, nmax);
    const long top = kBit0 + 2L * (W - 1);

    Builder b(m.id);
    const int timeout = b.label();
    std::vector<int> tick(static_cast<size_t>(m.size() + 1));
    for (int v = 1; v <= m.size(); ++v) tick[static_cast<size_t>(v)] = b.label();
    const int finish = b.label();

    // Input length dispatch: after s right shifts coordinates 1, 2 show old -(s-1), old -(s-2).
    std::vector<int> spread(static_cast<size_t>(nmax + 1));
    for (auto& l : spread) l = b.label();
    const int too_long = b.label();
    b.shift(false);
    b.shift(false);
    for (int i = 1; i <= nmax + 1; ++i) {
        int cont = b.label();
        // i = 1: equal means n = 0. Otherwise unequal means n = i - 1.
        int found = b.label();
        if (i == 1)
            b.branch(Rel::eq, found, cont);
        else
            b.branch(Rel::eq, cont, found);
        b.bind(found);
        const int n = i == 1 ? 0 : i - 1;
        const int s = n == 0 ? 2 : n + 2;
        for (int k = 0; k < s; ++k) b.shift(true);
        b.jump(spread[static_cast<size_t>(n)]);
        b.bind(cont);
        if (i <= nmax) b.shift(false);
    }
    for (int k = 0; k < nmax + 2; ++k) b.shift(true);
    b.jump(too_long);
    b.bind(too_long);
    b.cnst(-1, false);
    b.halt();

    for (int n = 0; n <= nmax; ++n) {
        b.bind(spread[static_cast<size_t>(n)]);
        for (long i = n; i >= 1; --i) b.copy(2 * i, i);
        for (long i = 1; i <= n; i += 2) b.cnst(i, false);
        for (long i = 1; i <= n; ++i) {
            b.cnst(-2 * i, true);
            if (i % 2) b.cnst(-i, false);
        }
        const uint64_t tn = eval_poly(t, static_cast<uint64_t>(n));
        for (int d = 0; d < W; ++d)
            if ((tn >> d) & 1) b.cnst(kBit0 + 2L * d, true);
        b.jump(tick[1]);
    }

    b.bind(timeout);
    b.cnst(-1, false);
    b.halt();

    for (int v = 1; v <= m.size(); ++v) {
        const MNode& n = m.node(v);
        if (n.kind == NodeKind::output) {
            b.bind(tick[static_cast<size_t>(v)]);
            b.jump(finish);
            continue;
        }
        // Tick: coordinate 2 is parked in kSave so the branch can compare bits against 0.
        b.bind(tick[static_cast<size_t>(v)]);
        b.copy(kSave, 2);
        b.cnst(2, false);
        const int done = b.label();
        for (int d = 0; d < W; ++d) {
            const long bit = kBit0 + 2L * d;
            b.copy(kTemp, bit);
            int was0 = b.label(), was1 = b.label();
            b.branch(Rel::eq, was0, was1);
            b.bind(was1);
            b.cnst(bit, false);
            b.jump(done);
            b.bind(was0);
            b.cnst(bit, true);
            if (d + 1 == W) b.jump(timeout);
        }
        b.bind(done);
        b.copy(2, kSave);
        b.cnst(kSave, false);
        b.cnst(kTemp, false);

        switch (n.kind) {
            case NodeKind::input: b.jump(tick[static_cast<size_t>(n.next)]); break;
            case NodeKind::add:
            case NodeKind::mul:
                b.arith(n.kind, 2L * n.i, 2L * n.j, 2L * n.k);
                b.jump(tick[static_cast<size_t>(n.next)]);
                break;
            case NodeKind::constant:
                b.cnst(2L * n.i, n.c);
                b.jump(tick[static_cast<size_t>(n.next)]);
                break;
            case NodeKind::branch: {
                b.copy(kTemp, 2);
                b.copy(2, 4);
                int neg = b.label(), pos = b.label();
                b.branch(n.rel, neg, pos);
                b.bind(neg);
                b.copy(2, kTemp);
                b.cnst(kTemp, false);
                b.jump(tick[static_cast<size_t>(n.neg)]);
                b.bind(pos);
                b.copy(2, kTemp);
                b.cnst(kTemp, false);
                b.jump(tick[static_cast<size_t>(n.pos)]);
                break;
            }
            case NodeKind::shiftl:
                b.shift(true);
                b.shift(true);
                for (long p = top; p >= kBit0; p -= 2) b.copy(p, p - 2);
                b.cnst(kBit0 - 2, false);
                b.jump(tick[static_cast<size_t>(n.next)]);
                break;
            case NodeKind::shiftr:
                b.shift(false);
                b.shift(false);
                for (long p = kBit0; p <= top; p += 2) b.copy(p, p + 2);
                b.cnst(top + 2, false);
                b.jump(tick[static_cast<size_t>(n.next)]);
                break;
            case NodeKind::output: break;
        }
    }

    // Output length dispatch: an odd helper cell set to 1 sits next to each even marker.
    b.bind(finish);
    std::vector<int> emit_out(static_cast<size_t>(lmax + 1));
    for (auto& l : emit_out) l = b.label();
    b.cnst(-1, true);
    b.shift(false);
    b.shift(false);
    b.shift(false);
    long s = 3;
    for (int i = 1; i <= lmax + 1; ++i) {
        int cont = b.label(), found = b.label();
        b.branch(Rel::eq, cont, found);
        b.bind(found);
        for (long k = 0; k < s; ++k) b.shift(true);
        b.jump(emit_out[static_cast<size_t>(i - 1)]);
        b.bind(cont);
        if (i <= lmax) {
            b.cnst(0, true);
            b.shift(false);
            b.shift(false);
            s += 2;
        }
    }
    for (long k = 0; k < s; ++k) b.shift(true);
    b.cnst(-1, false);
    b.halt();
    for (int l = 0; l <= lmax; ++l) {
        b.bind(emit_out[static_cast<size_t>(l)]);
        for (long c = 1; c <= l; ++c) b.copy(c, 2 * c);
        for (long c = 1; c <= l; ++c) b.cnst(-c, true);
        b.cnst(-(l + 1), false);
        b.halt();
    }
    return b.finish(m.name + "_clocked");
}

}  // namespace scl
