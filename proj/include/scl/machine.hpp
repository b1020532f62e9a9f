#pragma once

#include "scl/semiring.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace scl {

enum class NodeKind { input, output, add, mul, constant, branch, shiftl, shiftr };

struct MNode {
    NodeKind kind = NodeKind::output;
    int i = 0, j = 0, k = 0;  // compute: target i, operands j, k
    Value c;                  // constant payload
    int next = 0;
    int neg = 0, pos = 0;  // branch targets
    Rel rel = Rel::eq;
    friend bool operator==(const MNode&, const MNode&) = default;
};

struct Machine {
    std::string name = "m";
    SemiringId id = SemiringId::natural;
    std::vector<MNode> nodes;  // nodes[m-1] is node m

    int size() const { return static_cast<int>(nodes.size()); }
    const MNode& node(int m) const { return nodes[static_cast<size_t>(m - 1)]; }
    std::vector<Value> constants() const;
    int max_index() const;  // largest |i|, |j|, |k| used by compute nodes
    friend bool operator==(const Machine&, const Machine&) = default;
};

// Empty means valid.
std::vector<std::string> check_machine(const Machine& m);
void require_valid(const Machine& m);  // throws DomainError

// Sparse bi-infinite tape; shifts move an offset instead of the cells.
class Tape {
public:
    explicit Tape(SemiringId id = SemiringId::natural) : zero_(Value::zero(id)) {}
    const Value& get(long i) const;
    void set(long i, const Value& v);
    void shift_left() { ++offset_; }   // new(i) = old(i + 1)
    void shift_right() { --offset_; }  // new(i) = old(i - 1)
    std::map<long, Value> cells() const;  // nonzero cells, logical coordinates
    friend bool operator==(const Tape& a, const Tape& b) { return a.cells() == b.cells(); }

private:
    std::map<long, Value> phys_;
    long offset_ = 0;
    Value zero_;
};

Tape init_input(SemiringId id, const std::vector<Value>& x, const std::vector<Value>* guess = nullptr);
std::vector<Value> read_output(const Tape& t);

struct Configuration {
    int node = 1;
    Tape tape;
    uint64_t steps = 0;
};

struct TraceStep {
    uint64_t t;
    int node;
    std::optional<std::pair<long, Value>> write;
};
std::string format_trace(const TraceStep& s);

// Applies the action of cfg.node. Returns the written cell, if any.
std::optional<std::pair<long, Value>> step(const Machine& m, Configuration& cfg);

struct RunResult {
    bool halted = false;
    std::vector<Value> output;
    bool accepted = false;
    uint64_t steps = 0;
    std::vector<TraceStep> trace;
};

// Halts iff the Output node is reached after at most `budget` steps.
RunResult run(const Machine& m, const std::vector<Value>& x, uint64_t budget, bool trace = false,
              const std::vector<Value>* guess = nullptr);

enum class Decision { accepted, rejected, budget_exhausted };
const char* decision_name(Decision d);
Decision decide(const Machine& m, const std::vector<Value>& x, uint64_t budget,
                const std::vector<Value>* guess = nullptr);

struct NondetResult {
    bool accepted = false;  // false means rejected within the bounds
    std::vector<Value> guess;
    uint64_t candidates = 0;
};

// Guesses of length 0..max_len, each length in lexicographic universe order.
NondetResult decide_nondet(const Machine& m, const std::vector<Value>& x, const std::vector<Value>& universe,
                           int max_len, uint64_t budget, bool parallel = true);
NondetResult decide_nondet_serial(const Machine& m, const std::vector<Value>& x, const std::vector<Value>& universe,
                                  int max_len, uint64_t budget);

struct Monitors {
    bool non_arithmetic = false;
    std::optional<std::vector<Value>> closure;
};

struct Violation {
    uint64_t t;
    int node;
    std::string what;
};

struct MonitoredRun {
    RunResult run;
    std::vector<Violation> violations;
};

MonitoredRun run_monitored(const Machine& m, const std::vector<Value>& x, uint64_t budget, const Monitors& mon);

}  // namespace scl
