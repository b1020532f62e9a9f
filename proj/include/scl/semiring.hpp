#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace scl {

using Nat = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

enum class SemiringId { boolean, natural, rational, tropical, lukasiewicz, polynomial };

const char* semiring_name(SemiringId id);
SemiringId parse_semiring_name(std::string_view s);
const std::vector<SemiringId>& all_semirings();

struct DomainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A monomial is a sorted list of (indeterminate, exponent > 0).
using Monomial = std::vector<std::pair<std::string, unsigned>>;
// Canonical polynomial: no zero coefficients.
using Poly = std::map<Monomial, Nat>;

class Value {
public:
    Value() : id_(SemiringId::boolean), v_(false) {}

    static Value boolean(bool b) { return Value(SemiringId::boolean, b); }
    static Value natural(Nat n);
    static Value rational(Rat q);
    static Value tropical(Rat q) { return Value(SemiringId::tropical, std::optional<Rat>(std::move(q))); }
    static Value tropical_inf() { return Value(SemiringId::tropical, std::optional<Rat>()); }
    static Value lukasiewicz(Rat q);
    static Value poly(Poly p);
    static Value indeterminate(const std::string& x);

    static Value zero(SemiringId id);
    static Value one(SemiringId id);
    // Embeds a small natural k as 1+1+...+1 (boolean saturates, tropical gives 0 for k>0).
    static Value from_int(SemiringId id, long k);

    SemiringId id() const { return id_; }
    bool is_zero() const;
    bool is_one() const;

    bool as_bool() const { return std::get<bool>(v_); }
    const Nat& as_nat() const { return std::get<Nat>(v_); }
    const Rat& as_rat() const { return std::get<Rat>(v_); }
    const std::optional<Rat>& as_trop() const { return std::get<std::optional<Rat>>(v_); }
    const Poly& as_poly() const { return std::get<Poly>(v_); }

    friend bool operator==(const Value& a, const Value& b) { return a.id_ == b.id_ && a.v_ == b.v_; }
    friend bool operator!=(const Value& a, const Value& b) { return !(a == b); }
    // Total order used only for containers and canonical enumeration; not the semiring order.
    friend bool operator<(const Value& a, const Value& b);

private:
    using Payload = std::variant<bool, Nat, Rat, std::optional<Rat>, Poly>;
    Value(SemiringId id, Payload v) : id_(id), v_(std::move(v)) {}

    SemiringId id_;
    Payload v_;
};

enum class Op { add, mul };
enum class Rel { eq, leq };
enum class Truth { no, yes, incomparable };
enum class OrderKind { none, numeric, reverse_numeric, coefficientwise };

struct SemiringProfile {
    SemiringId id;
    bool ordered;
    OrderKind order;
    bool positive;
    bool commutative;
};

SemiringProfile profile(SemiringId id);

Value add(const Value& a, const Value& b);
Value mul(const Value& a, const Value& b);
inline Value combine(Op op, const Value& a, const Value& b) { return op == Op::add ? add(a, b) : mul(a, b); }

Truth compare(Rel rel, const Value& a, const Value& b);
// leq as a plain predicate: incomparable counts as false.
bool leq(const Value& a, const Value& b);

std::string to_literal(const Value& v);
Value parse_literal(std::string_view text, SemiringId id);

struct AxiomViolation {
    std::string law;
    std::vector<Value> witnesses;
};

struct AxiomReport {
    SemiringId id;
    bool positive = true;
    std::vector<AxiomViolation> violations;
    bool ok() const { return violations.empty(); }
};

AxiomReport axiom_check(SemiringId id, const std::vector<Value>& sample);

// Default finite search universes, also used by the solvers.
std::vector<Value> default_universe(SemiringId id);

}  // namespace scl
