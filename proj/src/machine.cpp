#include "scl/machine.hpp"

#include "scl/search.hpp"

#include <cstdlib>
#include <functional>
#include <set>
#include <sstream>

namespace scl {

std::vector<Value> Machine::constants() const {
    std::set<Value> s;
    for (auto& n : nodes)
        if (n.kind == NodeKind::constant) s.insert(n.c);
    return {s.begin(), s.end()};
}

int Machine::max_index() const {
    int k = 0;
    for (auto& n : nodes)
        if (n.kind == NodeKind::add || n.kind == NodeKind::mul || n.kind == NodeKind::constant)
            k = std::max({k, std::abs(n.i), n.kind == NodeKind::constant ? 0 : std::max(std::abs(n.j), std::abs(n.k))});
    return k;
}

std::vector<std::string> check_machine(const Machine& m) {
    std::vector<std::string> err;
    const int N = m.size();
    if (N < 2) {
        err.push_back("machine needs at least an input and an output node");
        return err;
    }
    auto in_range = [&](int r) { return r >= 1 && r <= N; };
    std::vector<std::vector<int>> adj(static_cast<size_t>(N + 1));
    auto edge = [&](int a, int b, const char* field) {
        if (!in_range(b)) {
            err.push_back("node " + std::to_string(a) + ": " + field + "=" + std::to_string(b) + " out of range");
            return;
        }
        adj[static_cast<size_t>(a)].push_back(b);
        adj[static_cast<size_t>(b)].push_back(a);
    };
    const bool ordered = profile(m.id).ordered;
    for (int a = 1; a <= N; ++a) {
        const MNode& n = m.node(a);
        std::string at = "node " + std::to_string(a) + ": ";
        if ((n.kind == NodeKind::input) != (a == 1)) err.push_back(at + "the input node must be node 1 and unique");
        if ((n.kind == NodeKind::output) != (a == N)) err.push_back(at + "the output node must be node N and unique");
        switch (n.kind) {
            case NodeKind::output: break;
            case NodeKind::branch:
                edge(a, n.neg, "neg");
                edge(a, n.pos, "pos");
                if (n.rel == Rel::leq && !ordered) err.push_back(at + "rel=<= needs an ordered semiring");
                break;
            case NodeKind::constant:
                if (n.c.id() != m.id) err.push_back(at + "constant from another semiring");
                edge(a, n.next, "next");
                break;
            default: edge(a, n.next, "next");
        }
    }
    std::vector<bool> seen(static_cast<size_t>(N + 1), false);
    std::vector<int> stack{1};
    seen[1] = true;
    while (!stack.empty()) {
        int a = stack.back();
        stack.pop_back();
        for (int b : adj[static_cast<size_t>(a)])
            if (!seen[static_cast<size_t>(b)]) {
                seen[static_cast<size_t>(b)] = true;
                stack.push_back(b);
            }
    }
    for (int a = 1; a <= N; ++a)
        if (!seen[static_cast<size_t>(a)]) err.push_back("node " + std::to_string(a) + " is disconnected");
    return err;
}

void require_valid(const Machine& m) {
    auto err = check_machine(m);
    if (!err.empty()) throw DomainError("invalid machine: " + err.front());
}

const Value& Tape::get(long i) const {
    auto it = phys_.find(i + offset_);
    return it == phys_.end() ? zero_ : it->second;
}

void Tape::set(long i, const Value& v) {
    if (v.is_zero())
        phys_.erase(i + offset_);
    else
        phys_[i + offset_] = v;
}

std::map<long, Value> Tape::cells() const {
    std::map<long, Value> out;
    for (auto& [p, v] : phys_) out.emplace(p - offset_, v);
    return out;
}

Tape init_input(SemiringId id, const std::vector<Value>& x, const std::vector<Value>* guess) {
    Tape t(id);
    const Value one = Value::one(id);
    const long n = static_cast<long>(x.size());
    for (long i = 1; i <= n; ++i) {
        if (x[static_cast<size_t>(i - 1)].id() != id) throw DomainError("input value from another semiring");
        t.set(i, x[static_cast<size_t>(i - 1)]);
        t.set(-i, one);
    }
    if (guess) {
        const long m = static_cast<long>(guess->size());
        for (long i = 1; i <= m; ++i) {
            if ((*guess)[static_cast<size_t>(i - 1)].id() != id) throw DomainError("guess value from another semiring");
            t.set(n + i, (*guess)[static_cast<size_t>(i - 1)]);
            t.set(-(n + 1 + i), one);
        }
    }
    return t;
}

std::vector<Value> read_output(const Tape& t) {
    std::vector<Value> out;
    for (long i = 1; t.get(-i).is_one(); ++i) out.push_back(t.get(i));
    return out;
}

std::string format_trace(const TraceStep& s) {
    std::string line = "t=" + std::to_string(s.t) + " node=" + std::to_string(s.node);
    if (s.write) line += " write@" + std::to_string(s.write->first) + "=" + to_literal(s.write->second);
    return line;
}

std::optional<std::pair<long, Value>> step(const Machine& m, Configuration& cfg) {
    const MNode& n = m.node(cfg.node);
    std::optional<std::pair<long, Value>> w;
    switch (n.kind) {
        case NodeKind::output: throw DomainError("contract violation: stepping a halted configuration");
        case NodeKind::input: cfg.node = n.next; break;
        case NodeKind::add:
        case NodeKind::mul: {
            Value v = n.kind == NodeKind::add ? add(cfg.tape.get(n.j), cfg.tape.get(n.k))
                                              : mul(cfg.tape.get(n.j), cfg.tape.get(n.k));
            cfg.tape.set(n.i, v);
            w.emplace(n.i, std::move(v));
            cfg.node = n.next;
            break;
        }
        case NodeKind::constant:
            cfg.tape.set(n.i, n.c);
            w.emplace(n.i, n.c);
            cfg.node = n.next;
            break;
        case NodeKind::branch: {
            const Value &a = cfg.tape.get(1), &b = cfg.tape.get(2);
            bool low = n.rel == Rel::eq ? a == b : leq(a, b);
            cfg.node = low ? n.neg : n.pos;
            break;
        }
        case NodeKind::shiftl:
            cfg.tape.shift_left();
            cfg.node = n.next;
            break;
        case NodeKind::shiftr:
            cfg.tape.shift_right();
            cfg.node = n.next;
            break;
    }
    ++cfg.steps;
    return w;
}

namespace {

template <class OnStep>
RunResult run_impl(const Machine& m, Tape tape, uint64_t budget, bool trace, OnStep on_step) {
    Configuration cfg{1, std::move(tape), 0};
    RunResult r;
    while (m.node(cfg.node).kind != NodeKind::output) {
        if (cfg.steps >= budget) {
            r.steps = cfg.steps;
            return r;
        }
        int at = cfg.node;
        auto w = step(m, cfg);
        if (trace) r.trace.push_back({cfg.steps, at, w});
        on_step(cfg, at, w);
    }
    r.halted = true;
    r.steps = cfg.steps;
    r.output = read_output(cfg.tape);
    r.accepted = !r.output.empty() && !r.output.front().is_zero();
    return r;
}

}  // namespace

RunResult run(const Machine& m, const std::vector<Value>& x, uint64_t budget, bool trace,
              const std::vector<Value>* guess) {
    return run_impl(m, init_input(m.id, x, guess), budget, trace, [](auto&, int, auto&) {});
}

const char* decision_name(Decision d) {
    switch (d) {
        case Decision::accepted: return "accepted";
        case Decision::rejected: return "rejected";
        default: return "budget-exhausted";
    }
}

Decision decide(const Machine& m, const std::vector<Value>& x, uint64_t budget, const std::vector<Value>* guess) {
    RunResult r = run(m, x, budget, false, guess);
    if (!r.halted) return Decision::budget_exhausted;
    return r.accepted ? Decision::accepted : Decision::rejected;
}

namespace {

// Global guess index: all guesses of length 0, then length 1, ...
struct GuessSpace {
    std::vector<uint64_t> start;  // start[L] = first index of length L
    uint64_t total = 0;
    GuessSpace(size_t u, int max_len) {
        uint64_t count = 1;
        for (int L = 0; L <= max_len; ++L) {
            start.push_back(total);
            total += count;
            if (L < max_len) {
                if (count > (uint64_t(1) << 62) / std::max<size_t>(u, 1))
                    throw DomainError("guess space too large to enumerate");
                count *= u;
            }
        }
    }
    void decode(uint64_t g, const std::vector<Value>& universe, std::vector<Value>& out) const {
        int L = static_cast<int>(start.size()) - 1;
        while (start[static_cast<size_t>(L)] > g) --L;
        uint64_t idx = g - start[static_cast<size_t>(L)];
        out.assign(static_cast<size_t>(L), Value());
        for (int p = L - 1; p >= 0; --p) {
            out[static_cast<size_t>(p)] = universe[idx % universe.size()];
            idx /= universe.size();
        }
    }
};

struct GuessWorker {
    const Machine& m;
    const std::vector<Value>& x;
    const std::vector<Value>& universe;
    const GuessSpace& space;
    uint64_t budget;
    std::vector<Value> g;
    uint64_t scan(uint64_t lo, uint64_t hi, const std::atomic<uint64_t>& best) {
        for (uint64_t i = lo; i < hi; ++i) {
            if (i >= best.load(std::memory_order_relaxed)) return kNoHit;
            space.decode(i, universe, g);
            if (decide(m, x, budget, &g) == Decision::accepted) return i;
        }
        return kNoHit;
    }
};

NondetResult nondet(const Machine& m, const std::vector<Value>& x, const std::vector<Value>& universe, int max_len,
                    uint64_t budget, bool parallel) {
    if (universe.empty()) throw DomainError("guess universe must be non-empty");
    if (max_len < 0) max_len = 0;
    require_valid(m);
    GuessSpace space(universe.size(), max_len);
    auto make = [&] { return GuessWorker{m, x, universe, space, budget, {}}; };
    uint64_t hit;
    if (parallel) {
        hit = parallel_first_hit(space.total, 64, make);
    } else {
        std::atomic<uint64_t> best{kNoHit};
        hit = make().scan(0, space.total, best);
    }
    NondetResult r;
    r.accepted = hit != kNoHit;
    r.candidates = r.accepted ? hit + 1 : space.total;
    if (r.accepted) space.decode(hit, universe, r.guess);
    return r;
}

}  // namespace

NondetResult decide_nondet(const Machine& m, const std::vector<Value>& x, const std::vector<Value>& universe,
                           int max_len, uint64_t budget, bool parallel) {
    return nondet(m, x, universe, max_len, budget, parallel);
}

NondetResult decide_nondet_serial(const Machine& m, const std::vector<Value>& x, const std::vector<Value>& universe,
                                  int max_len, uint64_t budget) {
    return nondet(m, x, universe, max_len, budget, false);
}

MonitoredRun run_monitored(const Machine& m, const std::vector<Value>& x, uint64_t budget, const Monitors& mon) {
    MonitoredRun out;
    const Value zero = Value::zero(m.id), one = Value::one(m.id);
    auto outside = [&](const Value& v) {
        for (auto& u : *mon.closure)
            if (u == v) return false;
        return true;
    };
    if (mon.closure) {
        bool has0 = false, has1 = false;
        for (auto& u : *mon.closure) {
            has0 |= u.is_zero();
            has1 |= u.is_one();
        }
        if (!has0 || !has1) throw DomainError("closure set must contain 0 and 1");
        for (size_t i = 0; i < x.size(); ++i)
            if (outside(x[i]))
                out.violations.push_back({0, 1, "input value " + to_literal(x[i]) + " outside the closure set"});
    }
    Configuration cfg{1, init_input(m.id, x), 0};
    while (m.node(cfg.node).kind != NodeKind::output && cfg.steps < budget) {
        const int at = cfg.node;
        const MNode& n = m.node(at);
        if (mon.non_arithmetic && (n.kind == NodeKind::add || n.kind == NodeKind::mul)) {
            const bool is_add = n.kind == NodeKind::add;
            const Value &a = cfg.tape.get(n.j), &b = cfg.tape.get(n.k);
            const Value& e = is_add ? zero : one;
            if (a != e && b != e)
                out.violations.push_back({cfg.steps + 1, at,
                                          to_literal(a) + (is_add ? " + " : " * ") + to_literal(b) +
                                              " has no neutral operand"});
        }
        auto w = step(m, cfg);
        if (mon.closure && w && outside(w->second))
            out.violations.push_back({cfg.steps, at, "value " + to_literal(w->second) + " outside the closure set"});
    }
    out.run.steps = cfg.steps;
    if (m.node(cfg.node).kind == NodeKind::output) {
        out.run.halted = true;
        out.run.output = read_output(cfg.tape);
        out.run.accepted = !out.run.output.empty() && !out.run.output.front().is_zero();
    }
    return out;
}

}  // namespace scl
