#pragma once

#include <string>
#include <string_view>

#include "sigmapi/sequent.hpp"
#include "sigmapi/term.hpp"
#include "sigmapi/typing.hpp"
#include "sigmapi/wiring.hpp"

namespace sigmapi {

// Compact:  a{x => b![y](id), z => #f}      cut g:A (T)(T)
// Verbose:  input on a of | x => output y on b then id | z => f
// Math:     a{x ↦ →b[y](1_A), z ↦ f}       output only
enum class Syntax { Compact, Verbose, Math };

// Parse a term whose root proves s.  Both the compact and the verbose
// forms are accepted and may be mixed.  Output direction is resolved from
// the side of the channel in scope.
Term parse_term(std::string_view text, const Sequent& s, const AtomTheory& th);

// Parse and type-check in one go.
TypedTerm parse_typed(std::string_view text, const Sequent& s, const AtomTheory& th);

std::string print_term(const TypedTerm& t, Syntax syn = Syntax::Compact);

Syntax parse_syntax_name(std::string_view name);

// Set of reserved words that cannot be used as channel or map names.
bool is_keyword(std::string_view word);

}  // namespace sigmapi
