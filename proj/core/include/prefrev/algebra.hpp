#pragma once

#include <cstddef>

#include "prefrev/formula.hpp"

namespace prefrev {

inline constexpr std::size_t kDefaultTcIterations = 64;

/// t1 (p1 u p2) t2  iff  t1 p1 t2 or t1 p2 t2.
PrefRelation union_pref(const PrefRelation& p1, const PrefRelation& p2);

/// Neither tuple is preferred: not f(L,R) and not f(R,L).
PrefRelation indifference(const PrefRelation& p);

/// p0 |> p: p0 decides, p only between p0-indifferent tuples.
PrefRelation prioritized(const PrefRelation& p0, const PrefRelation& p);

PrefRelation inverse(const PrefRelation& p);

/// exists M. f1(L, M) and f2(M, R), with M eliminated attribute by attribute
/// in schema order.
PrefRelation compose(const PrefRelation& p1, const PrefRelation& p2);

/// f1 and not f2.
PrefRelation difference(const PrefRelation& p1, const PrefRelation& p2);

/// Least fixpoint of F(k+1) = F1 or compose(F1, F(k)), evaluated
/// semi-naively: each round composes F1 only with the conjuncts that were new
/// in the previous round and stops once a round adds nothing that the
/// accumulated formula does not already entail. Throws IterationCapError
/// after `max_iter` rounds.
PrefRelation transitive_closure(const PrefRelation& p, std::size_t max_iter = kDefaultTcIterations);

/// Same relation with its formula replaced by the simplified DNF.
PrefRelation simplified(const PrefRelation& p);

/// Conjunct-level composition used by compose and the fixpoint.
Dnf compose_dnf(const Dnf& first, const Dnf& second, const Schema& schema);

}  // namespace prefrev
