#pragma once

// Decision procedures for conjunctions of equality constraints over an
// infinite set of uninterpreted constants (D) and order constraints over the
// dense, unbounded rationals (Q).

#include <cstdint>

#include "prefrev/formula.hpp"

namespace prefrev {

/// One scalar position `var.attr`, the unit of quantifier elimination.
struct ScalarVar {
  VarId var;
  std::uint32_t attr;
  Domain domain;

  Term term() const { return Term::attr(var, attr, domain); }
};

/// Satisfiability of a conjunction. D atoms: union-find over = with
/// constants, contradiction when a != joins one class or two distinct
/// constants merge. Q atoms: closure of the <=/< bound graph over variables
/// and sorted constants; contradiction on a strict cycle or a != between
/// nodes forced equal.
bool sat_conjunct(const Conjunct& c);

bool satisfiable(const Formula& f);

/// f |= g, i.e. f and not g is unsatisfiable.
bool entails(const Formula& f, const Formula& g);
bool equivalent(const Formula& f, const Formula& g);

/// Every conjunct of `a` entails the atom set `b`.
bool conjunct_entails(const Conjunct& a, const Conjunct& b);
/// c |= d1 or ... or dn.
bool conjunct_entails_dnf(const Conjunct& c, const Dnf& d);

/// Quantifier-free equivalent of (exists v. c). D variables are substituted
/// through an equality, or dropped when only != constrains them. Q variables
/// are substituted through an equality or eliminated by Fourier-Motzkin over
/// the dense order (after splitting != on v into < or >).
Dnf eliminate_exists_dnf(const ScalarVar& v, const Conjunct& c);
Formula eliminate_exists(const ScalarVar& v, const Conjunct& c);

/// Satisfiable DNF conjuncts of `f`, simplified (see simplify).
Dnf normalize(const Formula& f);

/// Drops unsatisfiable conjuncts and atoms implied by the rest of their
/// conjunct, joins conjuncts that differ in one comparison of the same two
/// terms (x < y or x = y  ->  x <= y), and removes subsumed conjuncts.
/// The result is logically equivalent to the input.
Dnf simplify(Dnf dnf);

}  // namespace prefrev
