#pragma once

#include "scl/machine.hpp"

#include <cstdint>
#include <vector>

namespace scl {

struct ClockOptions {
    int max_input = 8;    // input lengths handled; longer inputs halt with empty output
    int max_output = 16;  // output lengths reproduced; longer outputs are cut to empty
};

// t(n) = sum t[d] * n^d
uint64_t eval_poly(const std::vector<uint64_t>& t, uint64_t n);

// M' keeps M's tape on even coordinates and a binary countdown on odd ones.
// It simulates at most t(n) steps of M and then halts with empty output.
Machine wrap_with_clock(const Machine& m, const std::vector<uint64_t>& t, const ClockOptions& opt = {});

// Upper bound on the steps the wrapped machine takes on an input of length n.
uint64_t clock_step_bound(const std::vector<uint64_t>& t, const ClockOptions& opt, int n);

}  // namespace scl
