#pragma once

#include <string>

#include "prefrev/formula.hpp"
#include "prefrev/instance.hpp"

namespace prefrev {

enum class OrderKind { None, Spo, Weak, Total };

std::string_view order_kind_name(OrderKind k);

/// Outcome of the four order-axiom checks and the strongest class they
/// imply. A total order is also a weak order; `derived` names the strongest.
struct OrderClass {
  bool irreflexive = false;
  bool transitive = false;
  bool negatively_transitive = false;
  bool connected = false;
  OrderKind derived = OrderKind::None;

  static OrderClass from_flags(bool irreflexive, bool transitive, bool negatively_transitive,
                               bool connected);

  bool is_spo() const { return derived != OrderKind::None; }
  bool is_weak() const { return derived == OrderKind::Weak || derived == OrderKind::Total; }
  bool is_total() const { return derived == OrderKind::Total; }

  friend bool operator==(const OrderClass&, const OrderClass&) = default;
};

/// e.g. "SPO (not weak): irreflexive ✓ transitive ✓ neg-transitive ✗ connected ✗"
std::string describe(const OrderClass& c);

// Symbolic checks over the infinite domains. Each instantiates the binary
// formula at two or three tuple variables and tests unsatisfiability.
bool is_irreflexive(const PrefRelation& p);
bool is_transitive(const PrefRelation& p);
bool is_negatively_transitive(const PrefRelation& p);
bool is_connected(const PrefRelation& p);
OrderClass classify(const PrefRelation& p);

/// The four axioms decided on the finite domain `domain` only, i.e. for the
/// restriction of `p` to domain x domain.
OrderClass classify_finite(const PrefRelation& p, const RelationInstance& domain);

/// Single-chain property on the finite materialization over `universe`: at
/// most one maximal chain with two or more elements. Throws
/// PreconditionError if `p` is not an SPO on `universe`.
bool has_scp_finite(const PrefRelation& p, const RelationInstance& universe);

}  // namespace prefrev
