#include "scl/text.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <sstream>

namespace scl {

namespace {

enum class Tok { ident, number, constant, sym, end };

struct Token {
    Tok kind;
    std::string text;
    int line, col;
};

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

std::vector<Token> tokenize(std::string_view s) {
    std::vector<Token> out;
    int line = 1, col = 1;
    size_t i = 0;
    auto adv = [&](size_t n) {
        for (size_t k = 0; k < n; ++k, ++i) {
            if (s[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
    };
    static const char* syms[] = {"!<=", "&&", "||", "->", "<=", "!=", "&", "|", "=", "~", "!",
                                 "(",   ")",  ",",  ".",  "/"};
    while (i < s.size()) {
        char c = s[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            adv(1);
            continue;
        }
        if (c == '%') {  // comment to end of line
            while (i < s.size() && s[i] != '\n') adv(1);
            continue;
        }
        Token t{Tok::sym, "", line, col};
        size_t j = i;
        if (ident_start(c)) {
            while (j < s.size() && ident_char(s[j])) ++j;
            t.kind = Tok::ident;
        } else if (std::isdigit(static_cast<unsigned char>(c))) {
            while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
            t.kind = Tok::number;
        } else if (c == '#') {
            t.kind = Tok::constant;
            ++j;
            if (s.substr(j, 5) == "poly{") {
                size_t close = s.find('}', j);
                if (close == std::string_view::npos) throw ParseError("unterminated #poly{", line, col);
                j = close + 1;
            } else {
                if (j < s.size() && s[j] == '-') ++j;
                while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '/' || s[j] == '.'))
                    ++j;
            }
        } else {
            bool found = false;
            for (const char* sym : syms) {
                std::string_view v(sym);
                if (s.substr(i, v.size()) == v) {
                    j = i + v.size();
                    found = true;
                    break;
                }
            }
            if (!found) throw ParseError(std::string("unexpected character '") + c + "'", line, col);
        }
        t.text = std::string(s.substr(i, j - i));
        out.push_back(t);
        adv(j - i);
    }
    out.push_back({Tok::end, "", line, col});
    return out;
}

class FormulaParser {
public:
    FormulaParser(std::string_view src, SemiringId id, const std::vector<std::string>& free)
        : toks_(tokenize(src)), id_(id) {
        for (auto& v : free) bound_.push_back(v);
    }

    Formula parse() {
        Formula f = imp();
        if (peek().kind != Tok::end) fail("unexpected '" + peek().text + "'");
        return f;
    }

private:
    const Token& peek(size_t ahead = 0) const { return toks_[std::min(pos_ + ahead, toks_.size() - 1)]; }
    bool is(const char* s, size_t ahead = 0) const {
        const Token& t = peek(ahead);
        return (t.kind == Tok::sym || t.kind == Tok::ident) && t.text == s;
    }
    bool eat(const char* s) {
        if (!is(s)) return false;
        ++pos_;
        return true;
    }
    [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, peek().line, peek().col); }
    void expect(const char* s) {
        if (!eat(s)) fail(std::string("expected '") + s + "'");
    }
    std::string ident() {
        if (peek().kind != Tok::ident) fail("expected an identifier");
        return toks_[pos_++].text;
    }
    bool is_bound(const std::string& x) const { return std::find(bound_.begin(), bound_.end(), x) != bound_.end(); }
    bool is_keyword(const std::string& x) const {
        return x == "exists" || x == "forall" || x == "EXISTS" || x == "not";
    }

    Formula imp() {
        Formula a = bor();
        if (eat("->")) return f::imp_b(a, imp());
        return a;
    }
    Formula bor() {
        Formula a = band();
        while (eat("||")) a = f::or_b(a, band());
        return a;
    }
    Formula band() {
        Formula a = prod();
        while (eat("&&")) a = f::and_b(a, prod());
        return a;
    }
    Formula prod() {
        Formula a = sum();
        while (eat("&")) a = f::land(a, sum());
        return a;
    }
    Formula sum() {
        Formula a = cmp();
        while (eat("|")) a = f::lor(a, cmp());
        return a;
    }
    Formula cmp() {
        // Variable (in)equality between bound first-order variables.
        if (peek().kind == Tok::ident && is_bound(peek().text) && (is("=", 1) || is("!=", 1)) &&
            peek(2).kind == Tok::ident && is_bound(peek(2).text) && !is("(", 3)) {
            std::string x = ident();
            bool eq = eat("=");
            if (!eq) expect("!=");
            std::string y = ident();
            return eq ? f::var_eq(x, y) : f::var_neq(x, y);
        }
        Formula a = unary();
        if (eat("=")) return f::eq(a, unary());
        if (eat("<=")) return f::leq(a, unary());
        if (eat("!=")) return f::neq(a, unary());
        if (eat("!<=")) return f::nleq(a, unary());
        return a;
    }
    std::vector<std::string> args() {
        expect("(");
        std::vector<std::string> xs;
        if (!is(")")) {
            do {
                std::string x = ident();
                if (!is_bound(x)) fail("unbound variable '" + x + "'");
                xs.push_back(x);
            } while (eat(","));
        }
        expect(")");
        return xs;
    }
    Formula unary() {
        const Token& t = peek();
        if (t.kind == Tok::constant) {
            ++pos_;
            try {
                return f::constant(parse_literal(t.text, id_));
            } catch (const DomainError& e) {
                throw ParseError(e.what(), t.line, t.col);
            }
        }
        if (eat("(")) {
            Formula a = imp();
            expect(")");
            return a;
        }
        if (eat("not")) return f::not_b(unary());
        if (eat("~")) return f::neg_prop(ident());
        if (eat("!")) {
            std::string r = ident();
            return f::neg_atom(r, args());
        }
        if (is("exists") || is("forall")) {
            bool ex = peek().text == "exists";
            ++pos_;
            // `exists x y . body` extends to the right; `exists x body` binds a single unary body.
            size_t run = 0;
            while (peek(run).kind == Tok::ident) ++run;
            bool dotted = run > 0 && is(".", run);
            std::vector<std::string> vs{ident()};
            while (dotted && peek().kind == Tok::ident) vs.push_back(ident());
            if (dotted) expect(".");
            size_t mark = bound_.size();
            for (auto& v : vs) bound_.push_back(v);
            Formula body = dotted ? imp() : unary();
            bound_.resize(mark);
            return ex ? f::exists(vs, body) : f::forall(vs, body);
        }
        if (eat("EXISTS")) {
            std::string r = ident();
            expect("/");
            if (peek().kind != Tok::number) fail("expected an arity");
            int k = std::stoi(toks_[pos_++].text);
            expect(".");
            return f::so_exists(r, k, imp());
        }
        if (t.kind == Tok::ident) {
            if (is_keyword(t.text)) fail("unexpected keyword '" + t.text + "'");
            std::string name = ident();
            if (is("(")) return f::atom(name, args());
            if (is_bound(name)) fail("variable '" + name + "' used as a formula");
            return f::prop(name);
        }
        fail(t.kind == Tok::end ? "unexpected end of formula" : "unexpected '" + t.text + "'");
    }

    std::vector<Token> toks_;
    size_t pos_ = 0;
    SemiringId id_;
    std::vector<std::string> bound_;
};

std::string join(const std::vector<std::string>& xs, const char* sep) {
    std::string out;
    for (size_t i = 0; i < xs.size(); ++i) out += (i ? sep : "") + xs[i];
    return out;
}

void print(const Formula& x, std::string& out) {
    auto bin = [&](const char* op) {
        out += "(";
        print(x->l, out);
        out += op;
        print(x->r, out);
        out += ")";
    };
    switch (x->kind) {
        case Kind::Prop: out += x->name; break;
        case Kind::NegProp: out += "~" + x->name; break;
        case Kind::Const: out += to_literal(x->c); break;
        case Kind::And: bin(" & "); break;
        case Kind::Or: bin(" | "); break;
        case Kind::Eq: bin(" = "); break;
        case Kind::Leq: bin(" <= "); break;
        case Kind::Neq: bin(" != "); break;
        case Kind::NLeq: bin(" !<= "); break;
        case Kind::AndB: bin(" && "); break;
        case Kind::OrB: bin(" || "); break;
        case Kind::ImpB: bin(" -> "); break;
        case Kind::VarEq: out += "(" + x->vars[0] + " = " + x->vars[1] + ")"; break;
        case Kind::VarNeq: out += "(" + x->vars[0] + " != " + x->vars[1] + ")"; break;
        case Kind::Atom: out += x->name + "(" + join(x->vars, ", ") + ")"; break;
        case Kind::NegAtom: out += "!" + x->name + "(" + join(x->vars, ", ") + ")"; break;
        case Kind::NotB:
            out += "(not ";
            print(x->l, out);
            out += ")";
            break;
        case Kind::Exists:
        case Kind::Forall:
            out += std::string("(") + (x->kind == Kind::Exists ? "exists " : "forall ") + x->name + " . ";
            print(x->l, out);
            out += ")";
            break;
        case Kind::SOExists:
            out += "(EXISTS " + x->name + "/" + std::to_string(x->arity) + " . ";
            print(x->l, out);
            out += ")";
            break;
    }
}

// Splits "key=value" words of one line.
std::map<std::string, std::string> keyvals(const std::vector<std::string>& words, size_t from, int line) {
    std::map<std::string, std::string> kv;
    for (size_t i = from; i < words.size(); ++i) {
        auto eq = words[i].find('=');
        if (eq == std::string::npos || eq == 0) throw ParseError("expected key=value, got '" + words[i] + "'", line, 1);
        kv[words[i].substr(0, eq)] = words[i].substr(eq + 1);
    }
    return kv;
}

// Whitespace-separated words; spaces inside braces stay in the word.
std::vector<std::string> split_words(const std::string& line) {
    std::vector<std::string> w;
    std::string cur;
    int depth = 0;
    for (char ch : line) {
        if (ch == '{') ++depth;
        if (ch == '}' && depth > 0) --depth;
        if (depth == 0 && std::isspace(static_cast<unsigned char>(ch))) {
            if (!cur.empty()) w.push_back(std::move(cur));
            cur.clear();
        } else {
            cur += ch;
        }
    }
    if (!cur.empty()) w.push_back(std::move(cur));
    return w;
}

std::string strip_comment(std::string line) {
    auto p = line.find('%');
    if (p != std::string::npos) line.resize(p);
    return line;
}

int to_int(const std::string& s, int line) {
    try {
        size_t used = 0;
        int v = std::stoi(s, &used);
        if (used != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw ParseError("expected an integer, got '" + s + "'", line, 1);
    }
}

const char* kind_name(NodeKind k) {
    switch (k) {
        case NodeKind::input: return "input";
        case NodeKind::output: return "output";
        case NodeKind::add: return "add";
        case NodeKind::mul: return "mul";
        case NodeKind::constant: return "const";
        case NodeKind::branch: return "branch";
        case NodeKind::shiftl: return "shiftl";
        case NodeKind::shiftr: return "shiftr";
    }
    return "?";
}

}  // namespace

Formula parse_formula(std::string_view src, SemiringId id, const std::vector<std::string>& free) {
    return FormulaParser(src, id, free).parse();
}

std::string print_formula(const Formula& phi) {
    std::string out;
    print(phi, out);
    return out;
}

Machine parse_machine(std::string_view src) {
    Machine m;
    bool header = false;
    std::istringstream in{std::string(src)};
    std::string raw;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        auto w = split_words(strip_comment(raw));
        if (w.empty()) continue;
        if (!header) {
            if (w.size() != 4 || w[0] != "machine" || w[2] != "semiring")
                throw ParseError("expected 'machine <name> semiring <id>'", line, 1);
            m.name = w[1];
            try {
                m.id = parse_semiring_name(w[3]);
            } catch (const DomainError& e) {
                throw ParseError(e.what(), line, 1);
            }
            header = true;
            continue;
        }
        if (w.size() < 3 || w[0] != "node") throw ParseError("expected 'node <m> <kind> ...'", line, 1);
        int idx = to_int(w[1], line);
        if (idx != m.size() + 1) throw ParseError("nodes must be numbered 1, 2, ... in order", line, 1);
        auto kv = keyvals(w, 3, line);
        auto take = [&](const char* key) {
            auto it = kv.find(key);
            if (it == kv.end()) throw ParseError(std::string("missing ") + key + "=", line, 1);
            std::string v = it->second;
            kv.erase(it);
            return v;
        };
        MNode nd;
        const std::string& k = w[2];
        if (k == "input" || k == "shiftl" || k == "shiftr") {
            nd.kind = k == "input" ? NodeKind::input : k == "shiftl" ? NodeKind::shiftl : NodeKind::shiftr;
            nd.next = to_int(take("next"), line);
        } else if (k == "output") {
            nd.kind = NodeKind::output;
        } else if (k == "add" || k == "mul") {
            nd.kind = k == "add" ? NodeKind::add : NodeKind::mul;
            nd.i = to_int(take("i"), line);
            nd.j = to_int(take("j"), line);
            nd.k = to_int(take("k"), line);
            nd.next = to_int(take("next"), line);
        } else if (k == "const") {
            nd.kind = NodeKind::constant;
            nd.i = to_int(take("i"), line);
            try {
                nd.c = parse_literal(take("c"), m.id);
            } catch (const ParseError&) {
                throw;
            } catch (const DomainError& e) {
                throw ParseError(e.what(), line, 1);
            }
            nd.next = to_int(take("next"), line);
        } else if (k == "branch") {
            nd.kind = NodeKind::branch;
            nd.neg = to_int(take("neg"), line);
            nd.pos = to_int(take("pos"), line);
            std::string rel = kv.count("rel") ? take("rel") : "=";
            if (rel == "=")
                nd.rel = Rel::eq;
            else if (rel == "<=")
                nd.rel = Rel::leq;
            else
                throw ParseError("rel must be = or <=", line, 1);
        } else {
            throw ParseError("unknown node kind '" + k + "'", line, 1);
        }
        if (!kv.empty()) throw ParseError("unexpected key '" + kv.begin()->first + "'", line, 1);
        m.nodes.push_back(nd);
    }
    if (!header) throw ParseError("empty machine file", line, 1);
    auto problems = check_machine(m);
    if (!problems.empty()) throw ParseError("invalid machine: " + problems.front(), line, 1);
    return m;
}

std::string print_machine(const Machine& m) {
    std::ostringstream out;
    out << "machine " << m.name << " semiring " << semiring_name(m.id) << "\n";
    for (int s = 1; s <= m.size(); ++s) {
        const MNode& nd = m.node(s);
        out << "node " << s << " " << kind_name(nd.kind);
        switch (nd.kind) {
            case NodeKind::add:
            case NodeKind::mul: out << " i=" << nd.i << " j=" << nd.j << " k=" << nd.k << " next=" << nd.next; break;
            case NodeKind::constant: out << " i=" << nd.i << " c=" << to_literal(nd.c) << " next=" << nd.next; break;
            case NodeKind::branch:
                out << " neg=" << nd.neg << " pos=" << nd.pos << " rel=" << (nd.rel == Rel::eq ? "=" : "<=");
                break;
            case NodeKind::output: break;
            default: out << " next=" << nd.next;
        }
        out << "\n";
    }
    return out.str();
}

ValuationFile parse_valuation(std::string_view src) {
    ValuationFile vf;
    bool have_id = false, ordered = false;
    std::optional<int> domain;
    struct Entry {
        std::string rel;
        std::vector<int> tuple;
        bool neg;
        Value v;
        int line;
    };
    std::vector<Entry> entries;
    std::vector<std::pair<std::string, int>> declared;
    std::istringstream in{std::string(src)};
    std::string raw;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        std::string text = strip_comment(raw);
        auto w = split_words(text);
        if (w.empty()) continue;
        if (w[0] == "semiring") {
            if (w.size() != 2) throw ParseError("expected 'semiring <id>'", line, 1);
            try {
                vf.id = parse_semiring_name(w[1]);
            } catch (const DomainError& e) {
                throw ParseError(e.what(), line, 1);
            }
            have_id = true;
            continue;
        }
        if (!have_id) throw ParseError("the first line must be 'semiring <id>'", line, 1);
        if (w[0] == "domain") {
            if (w.size() != 2) throw ParseError("expected 'domain <n>'", line, 1);
            domain = to_int(w[1], line);
            if (*domain < 1) throw ParseError("domain must be non-empty", line, 1);
            continue;
        }
        if (w[0] == "ordered" && w.size() == 1) {
            ordered = true;
            continue;
        }
        if (w[0] == "relation") {
            auto slash = w.size() == 2 ? w[1].find('/') : std::string::npos;
            if (slash == std::string::npos) throw ParseError("expected 'relation R/k'", line, 1);
            declared.push_back({w[1].substr(0, slash), to_int(w[1].substr(slash + 1), line)});
            continue;
        }
        auto eq = text.find('=');
        if (eq == std::string::npos) throw ParseError("expected '<literal> = #value'", line, 1);
        std::string lhs = text.substr(0, eq), rhs = text.substr(eq + 1);
        auto trim = [](std::string s) {
            s.erase(0, s.find_first_not_of(" \t\r"));
            s.erase(s.find_last_not_of(" \t\r") + 1);
            return s;
        };
        lhs = trim(lhs);
        rhs = trim(rhs);
        Value v;
        try {
            v = parse_literal(rhs, vf.id);
        } catch (const DomainError& e) {
            throw ParseError(e.what(), line, static_cast<int>(eq) + 2);
        }
        bool neg = !lhs.empty() && (lhs[0] == '~' || lhs[0] == '!');
        if (neg) lhs = trim(lhs.substr(1));
        auto open = lhs.find('(');
        if (open == std::string::npos) {
            if (lhs.empty() || !ident_start(lhs[0]) || !std::all_of(lhs.begin(), lhs.end(), ident_char))
                throw ParseError("bad proposition name '" + lhs + "'", line, 1);
            if (vf.pl.find(lhs, neg)) throw ParseError("duplicate entry for " + lhs, line, 1);
            vf.pl.set(lhs, neg, v);
            continue;
        }
        if (lhs.back() != ')') throw ParseError("expected ')'", line, 1);
        Entry e{trim(lhs.substr(0, open)), {}, neg, v, line};
        std::string inner = lhs.substr(open + 1, lhs.size() - open - 2);
        std::istringstream parts(inner);
        std::string part;
        while (std::getline(parts, part, ',')) {
            part = trim(part);
            if (!part.empty()) e.tuple.push_back(to_int(part, line));
        }
        entries.push_back(std::move(e));
    }
    if (!have_id) throw ParseError("missing 'semiring <id>'", line, 1);
    vf.pl.id = vf.id;
    if (!domain) {
        if (!entries.empty() || !declared.empty() || ordered)
            throw ParseError("relation entries need a 'domain <n>' line", line, 1);
        return vf;
    }
    if (!vf.pl.values.empty()) throw ParseError("propositional entries in an interpretation file", line, 1);

    Vocabulary voc;
    for (auto& [r, k] : declared) {
        if (voc.has(r)) throw ParseError("relation " + r + " declared twice", line, 1);
        voc.add(r, k);
    }
    for (auto& e : entries) {
        int k = static_cast<int>(e.tuple.size());
        if (!voc.has(e.rel))
            voc.add(e.rel, k);
        else if (voc.arity(e.rel) != k)
            throw ParseError("arity mismatch for " + e.rel, e.line, 1);
        for (int a : e.tuple)
            if (a < 0 || a >= *domain) throw ParseError("element out of the domain", e.line, 1);
    }
    if (ordered && voc.has(kLess)) throw ParseError("'ordered' conflicts with explicit " + kLess + " facts", line, 1);
    KInterpretation pi = ordered ? KInterpretation::ordered(vf.id, *domain, voc) : KInterpretation(vf.id, *domain, voc);
    std::map<std::string, std::set<std::pair<bool, std::vector<int>>>> seen;
    for (auto& e : entries) {
        if (!seen[e.rel].insert({e.neg, e.tuple}).second) throw ParseError("duplicate entry for " + e.rel, e.line, 1);
        pi.set(e.rel, e.tuple, e.neg, e.v);
    }
    for (auto& [r, k] : voc.rels) {
        size_t total = 2 * pi.tuple_count(r);
        size_t listed = seen[r].size();
        if (listed < total)
            vf.warnings.push_back(r + ": " + std::to_string(total - listed) + " of " + std::to_string(total) +
                                  " literals unlisted, set to 0");
    }
    vf.interp = std::move(pi);
    return vf;
}

std::string print_assignment(const PLAssignment& s) {
    std::ostringstream out;
    out << "semiring " << semiring_name(s.id) << "\n";
    for (auto& [lit, v] : s.values) out << (lit.negated ? "~" : "") << lit.name << " = " << to_literal(v) << "\n";
    return out.str();
}

std::string print_interpretation(const KInterpretation& pi) {
    std::ostringstream out;
    out << "semiring " << semiring_name(pi.id()) << "\ndomain " << pi.domain() << "\n";
    for (auto& [r, k] : pi.vocabulary().rels) {
        out << "relation " << r << "/" << k << "\n";
        for (size_t c = 0; c < pi.tuple_count(r); ++c) {
            auto t = pi.decode_tuple(r, c);
            std::string args;
            for (size_t i = 0; i < t.size(); ++i) args += (i ? "," : "") + std::to_string(t[i]);
            for (bool neg : {false, true})
                out << (neg ? "!" : "") << r << "(" << args << ") = " << to_literal(pi.facts(r, neg)[c]) << "\n";
        }
    }
    return out.str();
}

std::vector<Value> parse_values(std::string_view src, SemiringId id) {
    std::vector<Value> out;
    std::string cur;
    int depth = 0;
    auto flush = [&] {
        auto a = cur.find_first_not_of(" \t\n");
        if (a == std::string::npos) throw ParseError("empty list element", 1, 1);
        auto b = cur.find_last_not_of(" \t\n");
        out.push_back(parse_literal(cur.substr(a, b - a + 1), id));
        cur.clear();
    };
    if (src.find_first_not_of(" \t\n") == std::string_view::npos) return out;
    for (char c : src) {
        if (c == '{') ++depth;
        if (c == '}') --depth;
        if (c == ',' && depth == 0)
            flush();
        else
            cur.push_back(c);
    }
    flush();
    return out;
}

std::string print_values(const std::vector<Value>& xs) {
    std::string out;
    for (size_t i = 0; i < xs.size(); ++i) out += (i ? ", " : "") + to_literal(xs[i]);
    return out;
}

}  // namespace scl
