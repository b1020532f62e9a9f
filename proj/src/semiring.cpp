#include "scl/semiring.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace scl {

namespace {

void require_same(const Value& a, const Value& b, const char* what) {
    if (a.id() != b.id())
        throw DomainError(std::string(what) + ": mixed semirings " + semiring_name(a.id()) + " and " +
                          semiring_name(b.id()));
}

Monomial mono_mul(const Monomial& a, const Monomial& b) {
    Monomial r;
    size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
            r.push_back(a[i++]);
        } else if (i == a.size() || b[j].first < a[i].first) {
            r.push_back(b[j++]);
        } else {
            r.emplace_back(a[i].first, a[i].second + b[j].second);
            ++i;
            ++j;
        }
    }
    return r;
}

std::string rat_text(const Rat& q) {
    std::ostringstream os;
    os << numerator(q);
    if (denominator(q) != 1) os << '/' << denominator(q);
    return os.str();
}

std::string poly_text(const Poly& p) {
    if (p.empty()) return "0";
    std::string out;
    // Print higher-degree monomials first for readability; the map order is the canonical one.
    std::vector<std::pair<Monomial, Nat>> terms(p.begin(), p.end());
    std::stable_sort(terms.begin(), terms.end(), [](const auto& x, const auto& y) {
        unsigned dx = 0, dy = 0;
        for (auto& [v, e] : x.first) dx += e;
        for (auto& [v, e] : y.first) dy += e;
        return dx > dy;
    });
    for (size_t t = 0; t < terms.size(); ++t) {
        if (t) out += " + ";
        const auto& [m, c] = terms[t];
        bool first = true;
        if (c != 1 || m.empty()) {
            out += c.str();
            first = false;
        }
        for (auto& [v, e] : m) {
            if (!first) out += '*';
            first = false;
            out += v;
            if (e != 1) out += '^' + std::to_string(e);
        }
    }
    return out;
}

struct Cursor {
    std::string_view s;
    size_t i = 0;
    void ws() {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    }
    bool eat(char c) {
        ws();
        if (i < s.size() && s[i] == c) {
            ++i;
            return true;
        }
        return false;
    }
    bool at_end() {
        ws();
        return i == s.size();
    }
    [[noreturn]] void fail(const std::string& msg) const {
        throw DomainError("bad literal '" + std::string(s) + "': " + msg);
    }
    Nat number() {
        ws();
        size_t st = i;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
        if (st == i) fail("expected digits");
        return Nat(std::string(s.substr(st, i - st)));
    }
    std::string ident() {
        ws();
        size_t st = i;
        while (i < s.size() && (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_')) ++i;
        if (st == i || std::isdigit(static_cast<unsigned char>(s[st]))) fail("expected indeterminate");
        return std::string(s.substr(st, i - st));
    }
};

Poly parse_poly(Cursor& c) {
    Poly p;
    do {
        Nat coef = 1;
        Monomial m;
        bool any = false;
        do {
            c.ws();
            if (c.i < c.s.size() && std::isdigit(static_cast<unsigned char>(c.s[c.i]))) {
                coef *= c.number();
            } else {
                std::string v = c.ident();
                unsigned e = 1;
                if (c.eat('^')) e = static_cast<unsigned>(c.number());
                if (e > 0) m = mono_mul(m, Monomial{{v, e}});
            }
            any = true;
        } while (c.eat('*'));
        if (!any) c.fail("empty term");
        if (coef != 0) p[m] += coef;
    } while (c.eat('+'));
    return p;
}

Rat parse_rational(Cursor& c) {
    bool neg = c.eat('-');
    Nat num = c.number();
    Nat den = 1;
    if (c.eat('/')) den = c.number();
    if (den == 0) c.fail("zero denominator");
    Rat q(num, den);
    return neg ? Rat(-q) : q;
}

}  // namespace

const char* semiring_name(SemiringId id) {
    switch (id) {
        case SemiringId::boolean: return "boolean";
        case SemiringId::natural: return "natural";
        case SemiringId::rational: return "nonneg-rational";
        case SemiringId::tropical: return "tropical";
        case SemiringId::lukasiewicz: return "lukasiewicz";
        case SemiringId::polynomial: return "natural-polynomial";
    }
    return "?";
}

SemiringId parse_semiring_name(std::string_view s) {
    for (SemiringId id : all_semirings())
        if (s == semiring_name(id)) return id;
    if (s == "B" || s == "bool") return SemiringId::boolean;
    if (s == "N" || s == "nat") return SemiringId::natural;
    if (s == "rational" || s == "rat" || s == "R" || s == "Q") return SemiringId::rational;
    if (s == "T" || s == "trop") return SemiringId::tropical;
    if (s == "L" || s == "luk") return SemiringId::lukasiewicz;
    if (s == "poly" || s == "NX") return SemiringId::polynomial;
    throw DomainError("unknown semiring '" + std::string(s) + "'");
}

const std::vector<SemiringId>& all_semirings() {
    static const std::vector<SemiringId> ids = {SemiringId::boolean,  SemiringId::natural,
                                                SemiringId::rational, SemiringId::tropical,
                                                SemiringId::lukasiewicz, SemiringId::polynomial};
    return ids;
}

Value Value::natural(Nat n) {
    if (n < 0) throw DomainError("natural must be >= 0");
    return Value(SemiringId::natural, std::move(n));
}

Value Value::rational(Rat q) {
    if (q < 0) throw DomainError("nonneg-rational must be >= 0");
    return Value(SemiringId::rational, std::move(q));
}

Value Value::lukasiewicz(Rat q) {
    if (q < 0 || q > 1) throw DomainError("lukasiewicz value must lie in [0,1]");
    return Value(SemiringId::lukasiewicz, std::move(q));
}

Value Value::poly(Poly p) {
    for (auto it = p.begin(); it != p.end();) {
        if (it->second < 0) throw DomainError("polynomial coefficients must be naturals");
        if (it->second == 0)
            it = p.erase(it);
        else
            ++it;
    }
    return Value(SemiringId::polynomial, std::move(p));
}

Value Value::indeterminate(const std::string& x) { return poly(Poly{{Monomial{{x, 1u}}, Nat(1)}}); }

Value Value::zero(SemiringId id) {
    switch (id) {
        case SemiringId::boolean: return boolean(false);
        case SemiringId::natural: return natural(0);
        case SemiringId::rational: return rational(0);
        case SemiringId::tropical: return tropical_inf();
        case SemiringId::lukasiewicz: return lukasiewicz(0);
        case SemiringId::polynomial: return poly({});
    }
    throw DomainError("bad semiring id");
}

Value Value::one(SemiringId id) {
    switch (id) {
        case SemiringId::boolean: return boolean(true);
        case SemiringId::natural: return natural(1);
        case SemiringId::rational: return rational(1);
        case SemiringId::tropical: return tropical(0);
        case SemiringId::lukasiewicz: return lukasiewicz(1);
        case SemiringId::polynomial: return poly(Poly{{Monomial{}, Nat(1)}});
    }
    throw DomainError("bad semiring id");
}

Value Value::from_int(SemiringId id, long k) {
    if (k < 0) throw DomainError("from_int needs k >= 0");
    switch (id) {
        case SemiringId::natural: return natural(k);
        case SemiringId::rational: return rational(k);
        case SemiringId::polynomial: return k == 0 ? zero(id) : poly(Poly{{Monomial{}, Nat(k)}});
        default: return k == 0 ? zero(id) : one(id);
    }
}

bool Value::is_zero() const {
    switch (id_) {
        case SemiringId::boolean: return !as_bool();
        case SemiringId::natural: return as_nat() == 0;
        case SemiringId::rational:
        case SemiringId::lukasiewicz: return as_rat() == 0;
        case SemiringId::tropical: return !as_trop().has_value();
        case SemiringId::polynomial: return as_poly().empty();
    }
    return false;
}

bool Value::is_one() const { return *this == one(id_); }

bool operator<(const Value& a, const Value& b) {
    if (a.id_ != b.id_) return a.id_ < b.id_;
    return a.v_ < b.v_;
}

SemiringProfile profile(SemiringId id) {
    switch (id) {
        case SemiringId::boolean: return {id, true, OrderKind::numeric, true, true};
        case SemiringId::natural: return {id, true, OrderKind::numeric, true, true};
        case SemiringId::rational: return {id, true, OrderKind::numeric, true, true};
        case SemiringId::tropical: return {id, true, OrderKind::reverse_numeric, true, true};
        case SemiringId::lukasiewicz: return {id, true, OrderKind::numeric, true, true};
        case SemiringId::polynomial: return {id, true, OrderKind::coefficientwise, true, true};
    }
    throw DomainError("bad semiring id");
}

Value add(const Value& a, const Value& b) {
    require_same(a, b, "add");
    switch (a.id()) {
        case SemiringId::boolean: return Value::boolean(a.as_bool() || b.as_bool());
        case SemiringId::natural: return Value::natural(a.as_nat() + b.as_nat());
        case SemiringId::rational: return Value::rational(a.as_rat() + b.as_rat());
        case SemiringId::tropical: {
            const auto &x = a.as_trop(), &y = b.as_trop();
            if (!x) return b;
            if (!y) return a;
            return *x <= *y ? a : b;
        }
        case SemiringId::lukasiewicz: return a.as_rat() >= b.as_rat() ? a : b;
        case SemiringId::polynomial: {
            Poly p = a.as_poly();
            for (auto& [m, c] : b.as_poly()) p[m] += c;
            return Value::poly(std::move(p));
        }
    }
    throw DomainError("bad semiring id");
}

Value mul(const Value& a, const Value& b) {
    require_same(a, b, "mul");
    switch (a.id()) {
        case SemiringId::boolean: return Value::boolean(a.as_bool() && b.as_bool());
        case SemiringId::natural: return Value::natural(a.as_nat() * b.as_nat());
        case SemiringId::rational: return Value::rational(a.as_rat() * b.as_rat());
        case SemiringId::tropical: {
            const auto &x = a.as_trop(), &y = b.as_trop();
            if (!x || !y) return Value::tropical_inf();
            return Value::tropical(*x + *y);
        }
        case SemiringId::lukasiewicz: return Value::lukasiewicz(a.as_rat() * b.as_rat());
        case SemiringId::polynomial: {
            Poly p;
            for (auto& [ma, ca] : a.as_poly())
                for (auto& [mb, cb] : b.as_poly()) p[mono_mul(ma, mb)] += ca * cb;
            return Value::poly(std::move(p));
        }
    }
    throw DomainError("bad semiring id");
}

Truth compare(Rel rel, const Value& a, const Value& b) {
    require_same(a, b, rel == Rel::eq ? "eq" : "leq");
    if (rel == Rel::eq) return a == b ? Truth::yes : Truth::no;
    if (!profile(a.id()).ordered) throw DomainError(std::string("leq on unordered semiring ") + semiring_name(a.id()));
    auto t = [](bool x) { return x ? Truth::yes : Truth::no; };
    switch (a.id()) {
        case SemiringId::boolean: return t(!a.as_bool() || b.as_bool());
        case SemiringId::natural: return t(a.as_nat() <= b.as_nat());
        case SemiringId::rational:
        case SemiringId::lukasiewicz: return t(a.as_rat() <= b.as_rat());
        case SemiringId::tropical: {
            const auto &x = a.as_trop(), &y = b.as_trop();
            if (!x) return Truth::yes;
            if (!y) return Truth::no;
            return t(*x >= *y);
        }
        case SemiringId::polynomial: {
            const Poly &p = a.as_poly(), &q = b.as_poly();
            bool le = true, ge = true;
            for (auto& [m, c] : p) {
                auto it = q.find(m);
                Nat d = it == q.end() ? Nat(0) : it->second;
                if (c > d) le = false;
                if (c < d) ge = false;
            }
            for (auto& [m, c] : q)
                if (!p.count(m)) ge = false;
            if (le) return Truth::yes;
            return ge ? Truth::no : Truth::incomparable;
        }
    }
    throw DomainError("bad semiring id");
}

bool leq(const Value& a, const Value& b) { return compare(Rel::leq, a, b) == Truth::yes; }

std::string to_literal(const Value& v) {
    switch (v.id()) {
        case SemiringId::boolean: return v.as_bool() ? "#t" : "#f";
        case SemiringId::natural: return "#" + v.as_nat().str();
        case SemiringId::rational:
        case SemiringId::lukasiewicz: return "#" + rat_text(v.as_rat());
        case SemiringId::tropical: return v.as_trop() ? "#" + rat_text(*v.as_trop()) : "#inf";
        case SemiringId::polynomial: return "#poly{" + poly_text(v.as_poly()) + "}";
    }
    return "#?";
}

Value parse_literal(std::string_view text, SemiringId id) {
    Cursor c{text};
    if (!c.eat('#')) c.fail("missing '#'");
    c.ws();
    std::string_view rest = text.substr(c.i);
    Value out;
    if (rest == "t" || rest == "f") {
        if (id != SemiringId::boolean) c.fail("boolean literal for " + std::string(semiring_name(id)));
        return Value::boolean(rest == "t");
    }
    if (rest == "inf") {
        if (id != SemiringId::tropical) c.fail("#inf is only a tropical value");
        return Value::tropical_inf();
    }
    if (rest.substr(0, 4) == "poly") {
        if (id != SemiringId::polynomial) c.fail("#poly outside natural-polynomial");
        c.i += 4;
        if (!c.eat('{')) c.fail("expected '{'");
        Poly p = parse_poly(c);
        if (!c.eat('}')) c.fail("expected '}'");
        if (!c.at_end()) c.fail("trailing text");
        return Value::poly(std::move(p));
    }
    Rat q = parse_rational(c);
    if (!c.at_end()) c.fail("trailing text");
    switch (id) {
        case SemiringId::boolean:
            if (q == 0 || q == 1) return Value::boolean(q == 1);
            c.fail("boolean value must be 0 or 1");
        case SemiringId::natural:
            if (denominator(q) != 1) c.fail("natural must be an integer");
            return Value::natural(numerator(q));
        case SemiringId::rational: return Value::rational(q);
        case SemiringId::tropical: return Value::tropical(q);
        case SemiringId::lukasiewicz: return Value::lukasiewicz(q);
        case SemiringId::polynomial:
            if (denominator(q) != 1 || q < 0) c.fail("polynomial constant must be a natural");
            return Value::poly(q == 0 ? Poly{} : Poly{{Monomial{}, numerator(q)}});
    }
    c.fail("bad semiring id");
}

AxiomReport axiom_check(SemiringId id, const std::vector<Value>& sample) {
    AxiomReport rep;
    rep.id = id;
    for (auto& v : sample)
        if (v.id() != id) throw DomainError("axiom_check: sample value from another semiring");
    const Value z = Value::zero(id), o = Value::one(id);
    const SemiringProfile prof = profile(id);
    auto flag = [&](const char* law, std::vector<Value> w) { rep.violations.push_back({law, std::move(w)}); };

    if (prof.ordered && !leq(z, o)) flag("order: 0 <= 1", {});
    for (auto& a : sample) {
        if (add(a, z) != a || add(z, a) != a) flag("additive identity", {a});
        if (mul(a, o) != a || mul(o, a) != a) flag("multiplicative identity", {a});
        if (!mul(a, z).is_zero() || !mul(z, a).is_zero()) flag("annihilation", {a});
        if (prof.ordered && !leq(a, a)) flag("order reflexive", {a});
        for (auto& b : sample) {
            Value ab = add(a, b), mab = mul(a, b);
            if (ab != add(b, a)) flag("additive commutativity", {a, b});
            if (mab != mul(b, a)) flag("multiplicative commutativity", {a, b});
            if (mab.is_zero() && !a.is_zero() && !b.is_zero()) {
                rep.positive = false;
                flag("positivity: zero divisor", {a, b});
            }
            if (ab.is_zero() && !(a.is_zero() && b.is_zero())) {
                rep.positive = false;
                flag("positivity: additive inverse", {a, b});
            }
            if (prof.ordered && a != b && leq(a, b) && leq(b, a)) flag("order antisymmetric", {a, b});
            for (auto& c : sample) {
                if (add(ab, c) != add(a, add(b, c))) flag("additive associativity", {a, b, c});
                if (mul(mab, c) != mul(a, mul(b, c))) flag("multiplicative associativity", {a, b, c});
                if (mul(a, add(b, c)) != add(mab, mul(a, c))) flag("left distributivity", {a, b, c});
                if (mul(add(b, c), a) != add(mul(b, a), mul(c, a))) flag("right distributivity", {a, b, c});
                if (prof.ordered) {
                    if (leq(a, b) && leq(b, c) && !leq(a, c)) flag("order transitive", {a, b, c});
                    if (leq(a, b) && !leq(add(a, c), add(b, c))) flag("order: additive monotonicity", {a, b, c});
                    if (leq(a, b) && leq(z, c) && (!leq(mul(a, c), mul(b, c)) || !leq(mul(c, a), mul(c, b))))
                        flag("order: multiplicative monotonicity", {a, b, c});
                }
            }
        }
    }
    return rep;
}

std::vector<Value> default_universe(SemiringId id) {
    switch (id) {
        case SemiringId::boolean: return {Value::boolean(false), Value::boolean(true)};
        case SemiringId::natural: return {Value::natural(0), Value::natural(1), Value::natural(2), Value::natural(3)};
        case SemiringId::rational:
            return {Value::rational(0), Value::rational(Rat(1, 2)), Value::rational(1), Value::rational(2)};
        case SemiringId::tropical:
            return {Value::tropical_inf(), Value::tropical(0), Value::tropical(1), Value::tropical(2)};
        case SemiringId::lukasiewicz:
            return {Value::lukasiewicz(0), Value::lukasiewicz(Rat(1, 2)), Value::lukasiewicz(1)};
        case SemiringId::polynomial: return {Value::zero(id), Value::one(id), Value::indeterminate("x")};
    }
    throw DomainError("bad semiring id");
}

}  // namespace scl
