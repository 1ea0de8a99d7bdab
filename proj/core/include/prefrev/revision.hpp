#pragma once

#include <cstddef>
#include <optional>
#include <string>

#include "prefrev/algebra.hpp"
#include "prefrev/axioms.hpp"
#include "prefrev/formula.hpp"
#include "prefrev/instance.hpp"

namespace prefrev {

enum class RevisionMode { Refine, Override };

/// Which result licensed the computed revision.
enum class FastPath {
  SpoUnionScp,       // both SPOs, compatible, one has SCP: TC of the union
  SpoPriorityScp,    // both SPOs, revising has SCP, semi-compatible: TC of p0 |> p
  SpoWeakUnion,      // one SPO, one weak order, compatible: the union
  SpoWeakPriority,   // revising weak, original SPO: p0 |> p
  WeakWeakUnion,     // both weak, compatible: the union
  WeakWeakPriority,  // both weak: p0 |> p
  GenericTc,         // nothing applies: TC of the base, checked explicitly
};

std::string_view fast_path_name(FastPath f);
std::string_view mode_name(RevisionMode m);

/// Class of revisions among which the result is least.
enum class LeastAmong { Transitive, Spo, Weak };
std::string_view least_among_name(LeastAmong l);

struct CompatReport {
  bool compatible = false;
  bool semi_compatible = false;
  /// f0(L,R) and f(R,L): every conflict pair.
  Formula conflict_formula = Formula::falsity();
  /// One satisfiable conjunct of the conflict formula, when there is one.
  std::optional<Formula> sample_conflict;
};

struct RevisionOptions {
  /// Caller asserts SCP of the original (base) or revising relation.
  bool assert_scp_base = false;
  bool assert_scp_revising = false;
  /// When set, order axioms and SCP of the inputs and of the result are
  /// decided on this finite domain instead of the infinite one. SCP is then
  /// verified rather than assumed.
  std::optional<RelationInstance> domain;
  std::size_t max_iter = kDefaultTcIterations;
};

struct RevisionReport {
  explicit RevisionReport(PrefRelation r) : result(std::move(r)) {}

  PrefRelation result;
  RevisionMode mode = RevisionMode::Refine;
  FastPath fast_path = FastPath::GenericTc;
  OrderClass result_class;
  CompatReport compat;
  /// `result` is the least revision within `least_among`: guaranteed by
  /// the fast path taken, or by closure for GENERIC_TC.
  bool least = false;
  LeastAmong least_among = LeastAmong::Transitive;
  OrderClass base_class;
  OrderClass revising_class;
};

/// Pairs (t1, t2) with t1 p0 t2 and t2 p t1.
Formula conflicts(const PrefRelation& p, const PrefRelation& p0);
bool is_compatible(const PrefRelation& p, const PrefRelation& p0);
/// No hidden conflicts: inverse(p0) and TC(p - inverse(p0)) are disjoint.
bool is_semi_compatible(const PrefRelation& p, const PrefRelation& p0,
                        std::size_t max_iter = kDefaultTcIterations);
CompatReport compatibility(const PrefRelation& p, const PrefRelation& p0,
                           std::size_t max_iter = kDefaultTcIterations);

/// Revision of p with p0 containing p union p0.
RevisionReport refine(const PrefRelation& p, const PrefRelation& p0, const RevisionOptions& options = {});
/// Revision of p with p0 containing p0 |> p.
RevisionReport override_revision(const PrefRelation& p, const PrefRelation& p0,
                                 const RevisionOptions& options = {});
RevisionReport revise(const PrefRelation& p, const PrefRelation& p0, RevisionMode mode,
                      const RevisionOptions& options = {});

/// Multi-line human-readable summary (no formula).
std::string summarize(const RevisionReport& r);

}  // namespace prefrev
