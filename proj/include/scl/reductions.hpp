#pragma once

#include "scl/etk.hpp"
#include "scl/logic.hpp"
#include "scl/machine.hpp"

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace scl {

// ---- machine to propositional formula ----

struct CookArtifact {
    Formula formula;
    SemiringId id;
    int T = 0;  // step bound
    int n = 0;  // input length
    int W = 0;  // tape window [-W, W]
    int N = 0;  // machine size
    std::map<std::pair<int, int>, std::string> v;  // (t, p) -> name
    std::map<std::pair<int, int>, std::string> q;  // (t, s) -> name
};

// Accepting runs of at most T steps with guesses of length at most T - n - 1.
CookArtifact cook_compile(const Machine& m, const std::vector<Value>& x, int T);
std::vector<Value> cook_decode_guess(const CookArtifact& art, const PLAssignment& s);

// ---- machine to existential second-order sentence ----

struct FaginArtifact {
    ESOSentence sentence;
    Vocabulary vocabulary;  // I/1 and Lt/2
    int z = 1;
    int K = 1;  // largest fixed position used; needs n^z > K and n >= 2
    int N = 0;
};

FaginArtifact fagin_compile(const Machine& m, int z);
// Ordered interpretation with I(a_i) = x_{i+1}.
KInterpretation fagin_input(SemiringId id, const std::vector<Value>& x);

// Run on the bounded tape [-R, R], R = n^z - 1, with saturating shifts.
struct BoundedRun {
    bool halted = false;
    bool accepted = false;
    std::vector<int> nodes;                   // node at each time 0..steps
    std::vector<std::map<long, Value>> tape;  // nonzero cells at each time
};
BoundedRun fagin_bounded_run(const Machine& m, const std::vector<Value>& x, const std::vector<Value>& guess, int z);
// Extension for V and every Q_s built from the bounded run; throws if the run does not halt in time.
KInterpretation fagin_witness(const Machine& m, int z, const KInterpretation& pi, const std::vector<Value>& guess);
// Longest guess whose cells and markers fit the bounded tape.
int fagin_max_guess(int n, int z);

// ---- flattening and the existential theory ----

// Removes comparisons nested under comparisons when they come from Boolean shortcuts.
Formula flatten(const Formula& phi, SemiringId id);
bool is_flat(const Formula& phi);

struct EtkArtifact {
    EtkSentence sentence;
    std::map<Literal, std::string> g;  // signed literal -> variable
    std::vector<Value> X;
    bool uses_leq = false;
};

EtkArtifact sat_to_etk(const Formula& flat_phi, SemiringId id, const std::vector<Value>& X);
// Assignment recovered from a satisfying valuation.
PLAssignment etk_to_assignment(const EtkArtifact& art, const std::vector<Value>& valuation);

// ---- encodings as strings over K ----

using Encoded = std::vector<Value>;

Encoded encode(const Formula& phi, SemiringId id);
Encoded encode(const KInterpretation& pi);
Encoded encode(const PLAssignment& s);

struct DecodeError : DomainError {
    size_t offset;
    DecodeError(const std::string& what, size_t off)
        : DomainError(what + " at offset " + std::to_string(off)), offset(off) {}
};

Formula decode_formula(const Encoded& e, SemiringId id);
KInterpretation decode_interpretation(const Encoded& e, SemiringId id);
PLAssignment decode_assignment(const Encoded& e, SemiringId id);

}  // namespace scl
