#pragma once

#include "scl/logic.hpp"
#include "scl/machine.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace scl {

struct ParseError : DomainError {
    int line, col;
    ParseError(const std::string& what, int line_, int col_)
        : DomainError(std::to_string(line_) + ":" + std::to_string(col_) + ": " + what), line(line_), col(col_) {}
};

// Formula syntax, loosest binding first:
//   a -> b   a || b   a && b   (Boolean shortcuts)
//   a & b   a | b   (semiring product, then sum)
//   a = b   a <= b   a != b   a !<= b   (x = y between bound variables is variable equality)
//   not a   ~p   R(x, y)   !R(x, y)   #3   (a)
//   exists x y . a   forall x . a   exists x (a)   EXISTS R/2 . a
// Identifiers listed in `free` are first-order variables.
Formula parse_formula(std::string_view src, SemiringId id, const std::vector<std::string>& free = {});
std::string print_formula(const Formula& phi);

Machine parse_machine(std::string_view src);
std::string print_machine(const Machine& m);

// Assignment or interpretation file: `semiring <id>`, optional `domain <n>`, `ordered`,
// `relation R/k`, then entries `p = #v`, `~p = #v`, `R(0,1) = #v`, `!R(0,1) = #v`.
struct ValuationFile {
    SemiringId id = SemiringId::natural;
    PLAssignment pl;
    std::optional<KInterpretation> interp;
    std::vector<std::string> warnings;
};
ValuationFile parse_valuation(std::string_view src);
std::string print_assignment(const PLAssignment& s);
std::string print_interpretation(const KInterpretation& pi);

// Comma-separated literals, e.g. "#1, #0, #2"; empty text is the empty list.
std::vector<Value> parse_values(std::string_view src, SemiringId id);
std::string print_values(const std::vector<Value>& xs);

}  // namespace scl
