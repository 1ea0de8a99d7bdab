#pragma once

// Concrete syntax for preference formulas:
//
//   formula := disj ; disj := conj { "or" conj } ; conj := unit { "and" unit } ;
//   unit    := "not" unit | "(" formula ")" | atom | "true" | "false" ;
//   atom    := term op term ; op := "=" | "!=" | "<" | "<=" | ">" | ">=" ;
//   term    := ("L"|"R") "." ident | 'string' | rational (decimal or p/q)
//
// Keywords are case-insensitive. Inside a string literal '' stands for '.

#include <string>
#include <string_view>

#include "prefrev/formula.hpp"

namespace prefrev {

/// Throws ParseError (with byte position) on syntax errors, unknown
/// attributes, tuple variables other than L/R and domain mismatches.
PrefRelation parse_formula(std::string_view text, const Schema& schema);

/// Renders `f` back into the grammar above. Tuple variables other than L and
/// R (which only appear transiently) print as V<n>.
std::string render(const Formula& f, const Schema& schema);
std::string render(const PrefRelation& p);

std::string render_atom(const Atom& a, const Schema& schema);

}  // namespace prefrev
