#pragma once
// Brute-force ground truth on finite universes. Nothing here relies on the
// solver; everything is evaluated tuple by tuple.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "prefrev/axioms.hpp"
#include "prefrev/formula.hpp"
#include "prefrev/instance.hpp"

namespace prefrev {

inline constexpr std::size_t kDefaultUniverseCap = 10'000;

/// How dense a grid is. Per Q attribute: every constant, `q_points_per_gap`
/// evenly spaced points strictly between consecutive constants, and the same
/// number of points below the minimum and above the maximum. Per D
/// attribute: every constant plus `d_fresh` symbols that occur nowhere.
struct GridRule {
  std::size_t q_points_per_gap = 1;
  std::size_t d_fresh = 2;
};

/// Finite proxy for the infinite domains: the cross product of the
/// per-attribute value sets.
class GridUniverse {
 public:
  /// Throws PreconditionError when the universe has more than `cap` ground
  /// pairs (size squared).
  static GridUniverse build(const Schema& schema, std::span<const Formula> formulas,
                            std::span<const RelationInstance> data = {}, GridRule rule = {},
                            std::size_t cap = kDefaultUniverseCap);
  /// Exactly the tuples of `r`, no grid.
  static GridUniverse of_instance(const RelationInstance& r);

  /// Refinement: every current value is kept and treated as a constant, so
  /// `rule` adds points inside every gap of the current grid (and beyond its
  /// ends) plus `rule.d_fresh` further symbols. The current tuples are a
  /// subset of the result.
  GridUniverse densified(GridRule rule, std::size_t cap = kDefaultUniverseCap) const;

  const Schema& schema() const { return schema_; }
  std::span<const Tuple> tuples() const { return tuples_; }
  const Tuple& tuple(std::size_t i) const { return tuples_.at(i); }
  std::size_t size() const { return tuples_.size(); }
  std::optional<std::size_t> index_of(const Tuple& t) const;
  /// Per-attribute value sets (empty for an instance universe).
  const std::vector<std::vector<Value>>& values() const { return values_; }
  RelationInstance as_instance() const { return RelationInstance(schema_, tuples_); }

 private:
  GridUniverse(Schema schema) : schema_(std::move(schema)) {}
  static GridUniverse from_constants(const Schema& schema, const std::vector<Rational>& q,
                                     const std::vector<std::string>& d,
                                     const std::vector<std::vector<Value>>& data, GridRule rule,
                                     std::size_t cap);

  Schema schema_;
  std::vector<Tuple> tuples_;
  std::vector<std::vector<Value>> values_;
  // Inputs kept for densified().
  std::vector<Rational> q_consts_;
  std::vector<std::string> d_consts_;
  std::vector<std::vector<Value>> data_values_;
};

/// Ordered pairs over {0..n-1} as bit rows.
class EdgeSet {
 public:
  explicit EdgeSet(std::size_t n = 0);

  std::size_t size() const { return n_; }
  bool test(std::size_t i, std::size_t j) const { return (rows_[i * words_ + j / 64] >> (j % 64)) & 1u; }
  void set(std::size_t i, std::size_t j, bool v = true);
  std::size_t count() const;
  bool empty() const { return count() == 0; }
  std::vector<std::pair<std::size_t, std::size_t>> pairs() const;

  bool subset_of(const EdgeSet& o) const;
  EdgeSet operator|(const EdgeSet& o) const;
  EdgeSet operator&(const EdgeSet& o) const;
  EdgeSet operator^(const EdgeSet& o) const;
  EdgeSet minus(const EdgeSet& o) const;
  EdgeSet inverse() const;
  /// Restriction to the given indices, renumbered in that order.
  EdgeSet restrict(std::span<const std::size_t> idx) const;

  friend bool operator==(const EdgeSet&, const EdgeSet&) = default;

 private:
  std::size_t n_;
  std::size_t words_;
  std::vector<std::uint64_t> rows_;
};

EdgeSet materialize(const PrefRelation& p, const GridUniverse& u);
EdgeSet materialize(const PrefRelation& p, std::span<const Tuple> tuples);
EdgeSet graph_tc(const EdgeSet& e);
OrderClass graph_axioms(const EdgeSet& e);
/// At most one maximal chain with two or more elements. `e` must be an SPO.
bool graph_scp(const EdgeSet& e);
/// Indices of undominated elements within `members` (all when empty span).
std::vector<std::size_t> graph_winnow(const EdgeSet& e, std::span<const std::size_t> members);
/// e0 or (e restricted to e0-indifferent pairs).
EdgeSet graph_prioritized(const EdgeSet& e0, const EdgeSet& e);

/// Satisfiability by enumeration of all assignments of tuple variables
/// 0..nvars-1 to universe tuples.
bool grid_satisfiable(const Formula& f, const GridUniverse& u, std::size_t nvars);

enum class TargetClass { Transitive, Spo, Weak };
enum class OracleMode { Refine, Override };

struct BruteForceResult {
  /// Present when one candidate is closer to e than every other one.
  std::optional<EdgeSet> least;
  std::size_t candidates = 0;
  /// Candidates with no strictly closer candidate.
  std::vector<EdgeSet> minimal;
};

/// Enumerates every revision of e with e0 of the target class over the
/// universe {0..n-1} (supersets of e | e0, or of e0 |> e) and orders them by
/// symmetric difference with e. Throws PreconditionError when more than
/// `node_cap` search nodes would be needed.
BruteForceResult least_revision_bruteforce(const EdgeSet& e, const EdgeSet& e0, OracleMode mode,
                                           TargetClass target, std::size_t node_cap = 5'000'000);

/// Pairs (t1, t2) of e0 with a chain t2 e s1 e ... e sk e t1, k >= 1, none
/// of whose edges is reversed by e0.
std::vector<std::pair<std::size_t, std::size_t>> hidden_conflicts_prose(const EdgeSet& e, const EdgeSet& e0);

}  // namespace prefrev
