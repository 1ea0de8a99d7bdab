#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

#include "prefrev/errors.hpp"
#include "prefrev/formula.hpp"
#include "prefrev/instance.hpp"

namespace prefrev {

/// Instrumentation: number of ground dominance tests performed.
struct WinnowStats {
  std::size_t evaluations = 0;
};

// All winnow variants return the undominated tuples of `r` in input order.

/// Pairwise test of every tuple against every other; no axioms assumed.
RelationInstance winnow_generic(const PrefRelation& p, const RelationInstance& r,
                                WinnowStats* stats = nullptr);

/// Block-nested-loops window. Requires an SPO; throws PreconditionError when
/// two tuples dominate each other.
RelationInstance winnow_bnl(const PrefRelation& p, const RelationInstance& r,
                            WinnowStats* stats = nullptr);

/// Single pass keeping the current top layer and one representative of it.
/// Requires a weak order; uses at most 2|r| dominance tests.
RelationInstance winnow_weak(const PrefRelation& p, const RelationInstance& r,
                             WinnowStats* stats = nullptr);

enum class WinnowAlgo { Auto, Generic, Bnl, Weak };

/// Classifies `p` once and picks weak -> single pass, SPO -> BNL, otherwise
/// generic.
RelationInstance winnow_auto(const PrefRelation& p, const RelationInstance& r,
                             WinnowStats* stats = nullptr);

RelationInstance winnow(const PrefRelation& p, const RelationInstance& r, WinnowAlgo algo,
                        WinnowStats* stats = nullptr);

/// Raised by iterate_winnow; `index` is the 0-based position in the chain
/// of the offending relation. Messages count members from 1.
class ChainError : public PreconditionError {
 public:
  ChainError(const std::string& what, std::size_t index) : PreconditionError(what), index_(index) {}
  std::size_t index() const { return index_; }

 private:
  std::size_t index_;
};

struct IterateOptions {
  /// Skip the symbolic SPO check of every chain member.
  bool assume_spo = false;
};

/// r0 = r, r(i) = winnow(p(i), r(i-1)). Requires p(i) |= p(i+1) and every
/// p(i) an SPO, under which each r(i) equals winnow(p(i), r) computed from
/// scratch. Returns [r0, r1, ..., rn].
std::vector<RelationInstance> iterate_winnow(std::span<const PrefRelation> chain,
                                             const RelationInstance& r,
                                             const IterateOptions& options = {});

}  // namespace prefrev
