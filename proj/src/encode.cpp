#include "scl/reductions.hpp"

namespace scl {

namespace {

// Three-symbol tags, written as 0/1 values of the semiring.
enum Tag : unsigned {
    kEnd = 0b000,
    kProp = 0b001,
    kRelation = 0b010,
    kOperator = 0b011,
    kConstant = 0b100,
    kLength = 0b101,
    kDomain = 0b110,
};

// Operator codes; propositions, atoms and constants have their own tags.
constexpr Kind kOpcodes[] = {Kind::And,    Kind::Or,   Kind::Eq,  Kind::Leq, Kind::VarEq,
                             Kind::VarNeq, Kind::Exists, Kind::Forall, Kind::SOExists, Kind::NotB,
                             Kind::OrB,    Kind::AndB, Kind::ImpB, Kind::Neq, Kind::NLeq};

class Writer {
public:
    explicit Writer(SemiringId id) : id_(id) {}
    void bit(bool b) { out_.push_back(b ? Value::one(id_) : Value::zero(id_)); }
    void bits(unsigned v, int width) {
        for (int i = width - 1; i >= 0; --i) bit((v >> i) & 1);
    }
    void tag(Tag t) { bits(t, 3); }
    // Length block: bit length in unary, then the bits.
    void nat(size_t k) {
        tag(kLength);
        int len = 0;
        for (size_t x = k; x; x >>= 1) ++len;
        for (int i = 0; i < len; ++i) bit(true);
        bit(false);
        for (int i = len - 1; i >= 0; --i) bit((k >> i) & 1);
    }
    void str(const std::string& s) {
        nat(s.size());
        for (unsigned char ch : s) bits(ch, 8);
    }
    void value(const Value& v) {
        if (v.id() != id_) throw DomainError("encode: value from another semiring");
        tag(kConstant);
        out_.push_back(v);
    }
    Encoded take() { return std::move(out_); }

private:
    SemiringId id_;
    Encoded out_;
};

class Reader {
public:
    Reader(const Encoded& e, SemiringId id) : e_(e), id_(id) {}
    size_t pos() const { return pos_; }
    [[noreturn]] void fail(const std::string& what) const { throw DecodeError(what, pos_); }
    bool bit() {
        if (pos_ >= e_.size()) fail("unexpected end of input");
        const Value& v = e_[pos_];
        if (v.id() != id_) fail("symbol from another semiring");
        if (v.is_zero()) return ++pos_, false;
        if (v.is_one()) return ++pos_, true;
        fail("expected a 0/1 symbol");
    }
    unsigned bits(int width) {
        unsigned v = 0;
        for (int i = 0; i < width; ++i) v = (v << 1) | (bit() ? 1u : 0u);
        return v;
    }
    unsigned tag() { return bits(3); }
    void expect(Tag t, const char* what) {
        size_t at = pos_;
        if (tag() != t) throw DecodeError(std::string("expected ") + what, at);
    }
    size_t nat() {
        expect(kLength, "length block");
        int len = 0;
        while (bit()) {
            if (++len > 62) fail("length block too long");
        }
        size_t k = 0;
        for (int i = 0; i < len; ++i) k = (k << 1) | (bit() ? 1 : 0);
        return k;
    }
    std::string str() {
        size_t n = nat();
        if (n > e_.size()) fail("string longer than the input");
        std::string s;
        for (size_t i = 0; i < n; ++i) s.push_back(static_cast<char>(bits(8)));
        return s;
    }
    Value value() {
        expect(kConstant, "constant");
        return value_after_tag();
    }
    Value value_after_tag() {
        if (pos_ >= e_.size()) fail("unexpected end of input");
        if (e_[pos_].id() != id_) fail("constant from another semiring");
        return e_[pos_++];
    }
    void finish() {
        expect(kEnd, "end marker");
        if (pos_ != e_.size()) fail("trailing symbols");
    }

private:
    const Encoded& e_;
    SemiringId id_;
    size_t pos_ = 0;
};

void put_formula(Writer& w, const Formula& x) {
    switch (x->kind) {
        case Kind::Prop:
        case Kind::NegProp:
            w.tag(kProp);
            w.bit(x->kind == Kind::NegProp);
            w.str(x->name);
            return;
        case Kind::Atom:
        case Kind::NegAtom:
            w.tag(kRelation);
            w.bit(x->kind == Kind::NegAtom);
            w.str(x->name);
            w.nat(x->vars.size());
            for (auto& v : x->vars) w.str(v);
            return;
        case Kind::Const: w.value(x->c); return;
        default: break;
    }
    unsigned code = 0;
    while (kOpcodes[code] != x->kind) ++code;
    w.tag(kOperator);
    w.bits(code, 4);
    switch (x->kind) {
        case Kind::VarEq:
        case Kind::VarNeq:
            w.str(x->vars[0]);
            w.str(x->vars[1]);
            return;
        case Kind::Exists:
        case Kind::Forall:
            w.str(x->name);
            put_formula(w, x->l);
            return;
        case Kind::SOExists:
            w.str(x->name);
            w.nat(static_cast<size_t>(x->arity));
            put_formula(w, x->l);
            return;
        case Kind::NotB: put_formula(w, x->l); return;
        default:
            put_formula(w, x->l);
            put_formula(w, x->r);
    }
}

Formula get_formula(Reader& r, int depth) {
    if (depth > 10000) r.fail("formula nested too deeply");
    size_t at = r.pos();
    unsigned tag = r.tag();
    switch (tag) {
        case kProp: {
            bool neg = r.bit();
            std::string name = r.str();
            return neg ? f::neg_prop(name) : f::prop(name);
        }
        case kRelation: {
            bool neg = r.bit();
            std::string name = r.str();
            size_t k = r.nat();
            std::vector<std::string> args;
            for (size_t i = 0; i < k; ++i) args.push_back(r.str());
            return neg ? f::neg_atom(name, args) : f::atom(name, args);
        }
        case kConstant: return f::constant(r.value_after_tag());
        case kOperator: break;
        default: throw DecodeError("unexpected tag in formula", at);
    }
    unsigned code = r.bits(4);
    if (code >= std::size(kOpcodes)) throw DecodeError("unknown opcode", at);
    switch (Kind k = kOpcodes[code]) {
        case Kind::VarEq:
        case Kind::VarNeq: {
            std::string a = r.str(), b = r.str();
            return k == Kind::VarEq ? f::var_eq(a, b) : f::var_neq(a, b);
        }
        case Kind::Exists:
        case Kind::Forall: {
            std::string v = r.str();
            Formula body = get_formula(r, depth + 1);
            return k == Kind::Exists ? f::exists(v, body) : f::forall(v, body);
        }
        case Kind::SOExists: {
            std::string rel = r.str();
            size_t arity = r.nat();
            return f::so_exists(rel, static_cast<int>(arity), get_formula(r, depth + 1));
        }
        case Kind::NotB: return f::not_b(get_formula(r, depth + 1));
        default: {
            Formula a = get_formula(r, depth + 1);
            Formula b = get_formula(r, depth + 1);
            switch (k) {
                case Kind::And: return f::land(a, b);
                case Kind::Or: return f::lor(a, b);
                case Kind::Eq: return f::eq(a, b);
                case Kind::Leq: return f::leq(a, b);
                case Kind::OrB: return f::or_b(a, b);
                case Kind::AndB: return f::and_b(a, b);
                case Kind::ImpB: return f::imp_b(a, b);
                case Kind::Neq: return f::neq(a, b);
                default: return f::nleq(a, b);
            }
        }
    }
}

}  // namespace

Encoded encode(const Formula& phi, SemiringId id) {
    Writer w(id);
    put_formula(w, phi);
    w.tag(kEnd);
    return w.take();
}

Encoded encode(const KInterpretation& pi) {
    Writer w(pi.id());
    w.tag(kDomain);
    w.nat(static_cast<size_t>(pi.domain()));
    for (auto& [name, k] : pi.vocabulary().rels) {
        w.tag(kRelation);
        w.str(name);
        w.nat(static_cast<size_t>(k));
        for (bool neg : {false, true})
            for (auto& v : pi.facts(name, neg)) w.value(v);
    }
    w.tag(kEnd);
    return w.take();
}

Encoded encode(const PLAssignment& s) {
    Writer w(s.id);
    for (auto& [lit, v] : s.values) {
        w.tag(kProp);
        w.bit(lit.negated);
        w.str(lit.name);
        w.value(v);
    }
    w.tag(kEnd);
    return w.take();
}

Formula decode_formula(const Encoded& e, SemiringId id) {
    Reader r(e, id);
    Formula phi = get_formula(r, 0);
    r.finish();
    return phi;
}

KInterpretation decode_interpretation(const Encoded& e, SemiringId id) {
    Reader r(e, id);
    r.expect(kDomain, "domain header");
    size_t n = r.nat();
    if (n > 1u << 20) r.fail("domain too large");
    struct Rel {
        std::string name;
        int arity;
        std::vector<Value> pos, neg;
    };
    std::vector<Rel> rels;
    for (;;) {
        size_t at = r.pos();
        unsigned tag = r.tag();
        if (tag == kEnd) break;
        if (tag != kRelation) throw DecodeError("expected a relation block", at);
        Rel rel;
        rel.name = r.str();
        size_t k = r.nat();
        if (k > 16) r.fail("relation arity too large");
        rel.arity = static_cast<int>(k);
        size_t count = 1;
        for (size_t i = 0; i < k; ++i) {
            count *= n;
            if (count > e.size()) r.fail("relation larger than the input");
        }
        for (size_t i = 0; i < count; ++i) rel.pos.push_back(r.value());
        for (size_t i = 0; i < count; ++i) rel.neg.push_back(r.value());
        for (auto& other : rels)
            if (other.name == rel.name) throw DecodeError("duplicate relation " + rel.name, at);
        rels.push_back(std::move(rel));
    }
    if (r.pos() != e.size()) r.fail("trailing symbols");
    Vocabulary voc;
    for (auto& rel : rels) voc.add(rel.name, rel.arity);
    KInterpretation pi(id, static_cast<int>(n), voc);
    for (auto& rel : rels) {
        pi.facts(rel.name, false) = rel.pos;
        pi.facts(rel.name, true) = rel.neg;
    }
    return pi;
}

PLAssignment decode_assignment(const Encoded& e, SemiringId id) {
    Reader r(e, id);
    PLAssignment s;
    s.id = id;
    for (;;) {
        size_t at = r.pos();
        unsigned tag = r.tag();
        if (tag == kEnd) break;
        if (tag != kProp) throw DecodeError("expected a literal", at);
        bool neg = r.bit();
        std::string name = r.str();
        if (s.find(name, neg)) throw DecodeError("duplicate literal " + name, at);
        s.set(name, neg, r.value());
    }
    if (r.pos() != e.size()) r.fail("trailing symbols");
    return s;
}

}  // namespace scl
