#pragma once

#include "scl/logic.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace scl {

Value eval_pl(const Formula& phi, const PLAssignment& s, SemiringId id);

// Slot-compiled first-order formula bound to the relation storage of one interpretation.
// The interpretation must outlive the program; its fact values may change between runs.
class FOProgram {
public:
    FOProgram(const Formula& phi, const KInterpretation& pi, const std::vector<std::string>& free = {});
    Value run(const std::vector<int>& free_values = {}) const;
    int slots() const { return nslots_; }

private:
    struct N {
        Kind kind;
        int a = -1, b = -1;
        int slot = -1;
        std::vector<int> args;
        const std::vector<Value>* facts = nullptr;
        Value c;
    };
    Value eval(int i, std::vector<int>& env) const;
    int compile(const Formula& phi, const KInterpretation& pi, std::vector<std::pair<std::string, int>>& scope);

    std::vector<N> nodes_;
    int root_ = -1;
    int nslots_ = 0;
    int nfree_ = 0;
    int n_ = 0;
    SemiringId id_;
    Value zero_, one_;
};

Value eval_fo(const Formula& phi, const KInterpretation& pi, const FOAssignment& s = {});

struct EsoWitness {
    KInterpretation extension;  // holds exactly the quantified relations
};

struct EsoExhaustive {
    std::vector<Value> universe;
    // Only model-defining extensions with positive facts in {0,1}.
    bool model_defining01 = false;
    uint64_t max_candidates = 1u << 22;
    bool parallel = true;
};

struct EsoResult {
    enum class Outcome { decided, bound_exceeded } outcome = Outcome::decided;
    Value value;                                  // 0 or 1 when decided
    std::optional<KInterpretation> certificate;  // extension found by exhaustive search
    uint64_t candidates = 0;
};

EsoResult eval_eso(const ESOSentence& phi, const KInterpretation& pi, const EsoWitness& mode);
EsoResult eval_eso(const ESOSentence& phi, const KInterpretation& pi, const EsoExhaustive& mode);

// Interpretation extended with the relations of the given prefix (all facts 0).
KInterpretation extend_with(const KInterpretation& pi, const std::vector<std::pair<std::string, int>>& prefix);

}  // namespace scl
