#pragma once

#include "scl/semiring.hpp"

#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

namespace scl {

// Core kinds first; the Boolean shortcuts after them are removed by desugar().
enum class Kind {
    Prop, NegProp, Const, And, Or, Eq, Leq,
    VarEq, VarNeq, Atom, NegAtom, Exists, Forall,
    SOExists,
    NotB, OrB, AndB, ImpB, Neq, NLeq,
};

bool is_sugar(Kind k);
bool is_comparison(Kind k);  // Eq, Leq, Neq, NLeq, NotB

struct Node;
using Formula = std::shared_ptr<const Node>;

struct Node {
    Kind kind;
    std::string name;               // proposition, relation, or bound variable
    std::vector<std::string> vars;  // atom arguments, or the two sides of VarEq/VarNeq
    Value c;                        // Const payload
    int arity = 0;                  // SOExists
    Formula l, r;                   // children (Exists/Forall/SOExists/NotB use l only)
};

namespace f {
Formula prop(const std::string& p);
Formula neg_prop(const std::string& p);
Formula constant(const Value& v);
Formula land(Formula a, Formula b);
Formula lor(Formula a, Formula b);
Formula eq(Formula a, Formula b);
Formula leq(Formula a, Formula b);
Formula var_eq(const std::string& x, const std::string& y);
Formula var_neq(const std::string& x, const std::string& y);
Formula atom(const std::string& rel, std::vector<std::string> args);
Formula neg_atom(const std::string& rel, std::vector<std::string> args);
Formula exists(const std::string& x, Formula body);
Formula forall(const std::string& x, Formula body);
Formula exists(const std::vector<std::string>& xs, Formula body);
Formula forall(const std::vector<std::string>& xs, Formula body);
Formula so_exists(const std::string& rel, int arity, Formula body);
Formula not_b(Formula a);
Formula or_b(Formula a, Formula b);
Formula and_b(Formula a, Formula b);
Formula imp_b(Formula a, Formula b);
Formula neq(Formula a, Formula b);
Formula nleq(Formula a, Formula b);
// n-ary folds; empty conjunction is the constant 1, empty disjunction the constant 0.
Formula all_b(const std::vector<Formula>& xs, SemiringId id);
Formula any_b(const std::vector<Formula>& xs, SemiringId id);
Formula all(const std::vector<Formula>& xs, SemiringId id);
Formula any(const std::vector<Formula>& xs, SemiringId id);
}  // namespace f

bool equal(const Formula& a, const Formula& b);
size_t size(const Formula& a);

std::set<std::string> free_vars(const Formula& a);
// Signed literals (name, negated) in first-occurrence order.
std::vector<std::pair<std::string, bool>> pl_literals(const Formula& a);
std::vector<Value> constants(const Formula& a);

Formula desugar(const Formula& a, SemiringId id);

struct Vocabulary {
    std::vector<std::pair<std::string, int>> rels;
    int arity(const std::string& r) const;  // -1 if absent
    bool has(const std::string& r) const { return arity(r) >= 0; }
    void add(const std::string& r, int k);
};

struct ESOSentence {
    std::vector<std::pair<std::string, int>> prefix;
    Formula matrix;
};

// Splits a formula into its leading block of second-order quantifiers and the rest.
ESOSentence to_eso(const Formula& a);
Formula from_eso(const ESOSentence& s);

enum class Layer { PL, FO, ESO };

// Empty result means valid.
std::vector<std::string> validate(const Formula& a, Layer layer, const SemiringProfile& prof,
                                  const Vocabulary* voc = nullptr);
inline std::vector<std::string> validate(const Formula& a, Layer layer, SemiringId id, const Vocabulary* voc = nullptr) {
    return validate(a, layer, profile(id), voc);
}
std::vector<std::string> validate(const ESOSentence& s, SemiringId id, const Vocabulary& voc);

struct Literal {
    std::string name;
    bool negated = false;
    friend bool operator<(const Literal& a, const Literal& b) {
        return a.name != b.name ? a.name < b.name : a.negated < b.negated;
    }
    friend bool operator==(const Literal& a, const Literal& b) { return a.name == b.name && a.negated == b.negated; }
};

struct PLAssignment {
    SemiringId id = SemiringId::natural;
    std::map<Literal, Value> values;

    void set(const std::string& p, bool negated, const Value& v) { values[{p, negated}] = v; }
    const Value* find(const std::string& p, bool negated) const;
    // s(p) = v and s(~p) = 1 if v = 0, else 0.
    static PLAssignment model_defining(SemiringId id, const std::map<std::string, Value>& pos);
    friend bool operator==(const PLAssignment& a, const PLAssignment& b) {
        return a.id == b.id && a.values == b.values;
    }
};

inline const std::string kLess = "Lt";

class KInterpretation {
public:
    KInterpretation(SemiringId id, int n, Vocabulary voc);
    // Ordered interpretation: adds the binary order relation Lt with 1 iff i < j.
    static KInterpretation ordered(SemiringId id, int n, Vocabulary voc);

    SemiringId id() const { return id_; }
    int domain() const { return n_; }
    const Vocabulary& vocabulary() const { return voc_; }
    bool is_ordered() const;
    bool is_model_defining() const;

    void add_relation(const std::string& r, int k);
    const Value& get(const std::string& r, const std::vector<int>& tuple, bool negated) const;
    void set(const std::string& r, const std::vector<int>& tuple, bool negated, const Value& v);
    // Raw storage: index = mixed-radix code of the tuple.
    const std::vector<Value>& facts(const std::string& r, bool negated) const;
    std::vector<Value>& facts(const std::string& r, bool negated);
    size_t tuple_count(const std::string& r) const;
    std::vector<int> decode_tuple(const std::string& r, size_t code) const;

    friend bool operator==(const KInterpretation& a, const KInterpretation& b);

private:
    struct Rel {
        int arity;
        std::vector<Value> pos, neg;
    };
    const Rel& rel(const std::string& r) const;
    Rel& rel(const std::string& r);
    size_t code(const Rel& r, const std::vector<int>& t) const;

    SemiringId id_;
    int n_;
    Vocabulary voc_;
    std::map<std::string, Rel> rels_;
};

using FOAssignment = std::map<std::string, int>;

}  // namespace scl
