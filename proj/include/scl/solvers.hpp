#pragma once

#include "scl/etk.hpp"
#include "scl/eval.hpp"
#include "scl/logic.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace scl {

struct SearchBudget {
    std::vector<Value> universe;
    uint64_t max_candidates = uint64_t(1) << 26;
    bool parallel = true;
};

enum class SearchOutcome { found, none_within_bounds, bound_exceeded };
const char* outcome_name(SearchOutcome o);

struct SatResult {
    SearchOutcome outcome = SearchOutcome::none_within_bounds;
    std::optional<PLAssignment> assignment;
    // Search nodes visited: partial assignments checked by the pruned depth-first search.
    uint64_t candidates = 0;
};

// First satisfying assignment in lexicographic order over the signed literals of phi
// (first-occurrence order, universe order). Subtrees are cut as soon as a completed
// top-level conjunct evaluates to 0; the answer equals that of plain enumeration.
SatResult sat_bruteforce(const Formula& phi, SemiringId id, const SearchBudget& b);
// Plain enumeration of every complete assignment, no pruning and no threads.
SatResult sat_enumerate(const Formula& phi, SemiringId id, const SearchBudget& b);

struct EtkResult {
    SearchOutcome outcome = SearchOutcome::none_within_bounds;
    std::vector<Value> valuation;  // in prefix order
    uint64_t candidates = 0;
};

bool eval_etk(const EtkFormula& f, const std::vector<std::string>& vars, const std::vector<Value>& vals,
              SemiringId id);
EtkResult etk_bounded(const EtkSentence& s, const SearchBudget& b);

struct EquivalenceResult {
    bool equivalent = true;
    std::optional<size_t> counterexample;  // index into the samples
    Value left, right;
};

EquivalenceResult k_equivalence_sample(const Formula& phi, const Formula& psi,
                                       const std::vector<KInterpretation>& samples);

}  // namespace scl
