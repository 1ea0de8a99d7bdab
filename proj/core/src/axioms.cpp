#include "prefrev/axioms.hpp"

#include <algorithm>

#include "prefrev/errors.hpp"
#include "prefrev/solver.hpp"

namespace prefrev {

namespace {

constexpr VarId kX = 0;
constexpr VarId kY = 1;
constexpr VarId kZ = 2;

Formula at(const Formula& f, VarId left, VarId right) {
  const VarId from[] = {kLeft, kRight};
  const VarId to[] = {left, right};
  return rename_vars(f, from, to);
}

// Dense boolean matrix of p over the given tuples.
std::vector<std::vector<bool>> materialize_on(const PrefRelation& p, std::span<const Tuple> tuples) {
  const std::size_t n = tuples.size();
  std::vector<std::vector<bool>> m(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const Tuple* binding[] = {&tuples[i], &tuples[j]};
      m[i][j] = eval(p.formula(), binding);
    }
  }
  return m;
}

}  // namespace

std::string_view order_kind_name(OrderKind k) {
  switch (k) {
    case OrderKind::None: return "none";
    case OrderKind::Spo: return "SPO";
    case OrderKind::Weak: return "weak";
    case OrderKind::Total: return "total";
  }
  return "?";
}

OrderClass OrderClass::from_flags(bool irreflexive, bool transitive, bool negatively_transitive,
                                  bool connected) {
  OrderClass c{irreflexive, transitive, negatively_transitive, connected, OrderKind::None};
  if (irreflexive && transitive) {
    if (connected) {
      c.derived = OrderKind::Total;
    } else if (negatively_transitive) {
      c.derived = OrderKind::Weak;
    } else {
      c.derived = OrderKind::Spo;
    }
  }
  return c;
}

std::string describe(const OrderClass& c) {
  auto mark = [](bool b) { return b ? "✓" : "✗"; };
  std::string head;
  switch (c.derived) {
    case OrderKind::None: head = "not an SPO"; break;
    case OrderKind::Spo: head = "SPO (not weak)"; break;
    case OrderKind::Weak: head = "weak order"; break;
    case OrderKind::Total: head = "total order"; break;
  }
  return head + ": irreflexive " + mark(c.irreflexive) + " transitive " + mark(c.transitive) +
         " neg-transitive " + mark(c.negatively_transitive) + " connected " + mark(c.connected);
}

bool is_irreflexive(const PrefRelation& p) { return !satisfiable(at(p.formula(), kX, kX)); }

bool is_transitive(const PrefRelation& p) {
  const Formula& f = p.formula();
  return !satisfiable(at(f, kX, kY) && at(f, kY, kZ) && !at(f, kX, kZ));
}

bool is_negatively_transitive(const PrefRelation& p) {
  const Formula& f = p.formula();
  return !satisfiable(!at(f, kX, kY) && !at(f, kY, kZ) && at(f, kX, kZ));
}

bool is_connected(const PrefRelation& p) {
  const Formula& f = p.formula();
  std::vector<Formula> differ;
  for (std::uint32_t i = 0; i < p.schema().arity(); ++i) {
    Domain d = p.schema().attr(i).domain;
    differ.push_back(Formula::compare(Term::attr(kX, i, d), Op::Ne, Term::attr(kY, i, d)));
  }
  return !satisfiable(!at(f, kX, kY) && !at(f, kY, kX) && Formula::disj(std::move(differ)));
}

OrderClass classify(const PrefRelation& p) {
  return OrderClass::from_flags(is_irreflexive(p), is_transitive(p), is_negatively_transitive(p),
                                is_connected(p));
}

OrderClass classify_finite(const PrefRelation& p, const RelationInstance& domain) {
  if (!(domain.schema() == p.schema())) throw SchemaError("domain schema differs from relation schema");
  auto m = materialize_on(p, domain.tuples());
  const std::size_t n = m.size();
  bool irr = true, trans = true, neg = true, conn = true;
  for (std::size_t i = 0; i < n; ++i) {
    if (m[i][i]) irr = false;
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j && !m[i][j] && !m[j][i]) conn = false;
      for (std::size_t k = 0; k < n; ++k) {
        if (m[i][j] && m[j][k] && !m[i][k]) trans = false;
        if (!m[i][j] && !m[j][k] && m[i][k]) neg = false;
      }
    }
  }
  return OrderClass::from_flags(irr, trans, neg, conn);
}

bool has_scp_finite(const PrefRelation& p, const RelationInstance& universe) {
  if (!(universe.schema() == p.schema())) throw SchemaError("universe schema differs from relation schema");
  auto m = materialize_on(p, universe.tuples());
  const std::size_t n = m.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (m[i][i]) throw PreconditionError("has_scp_finite: relation is not irreflexive on the universe");
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k < n && m[i][j]; ++k) {
        if (m[j][k] && !m[i][k]) throw PreconditionError("has_scp_finite: relation is not transitive on the universe");
      }
    }
  }
  // Maximal chains of a finite poset are the top-to-bottom paths of its
  // Hasse diagram; count them (saturating at 2), ignoring isolated elements.
  std::vector<std::vector<std::size_t>> covers(n);
  std::vector<bool> has_above(n, false);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (!m[i][j]) continue;
      bool cover = true;
      for (std::size_t k = 0; k < n && cover; ++k) {
        if (m[i][k] && m[k][j]) cover = false;
      }
      if (cover) {
        covers[i].push_back(j);
        has_above[j] = true;
      }
    }
  }
  // Reverse topological order: j before i whenever i > j.
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::vector<std::size_t> below(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) below[i] += m[i][j];
  }
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return below[a] < below[b]; });
  std::vector<std::size_t> paths(n, 0);
  for (std::size_t v : order) {
    if (covers[v].empty()) {
      paths[v] = 1;
      continue;
    }
    std::size_t total = 0;
    for (std::size_t w : covers[v]) total = std::min<std::size_t>(2, total + paths[w]);
    paths[v] = total;
  }
  std::size_t chains = 0;
  for (std::size_t v = 0; v < n; ++v) {
    if (!has_above[v] && !covers[v].empty()) chains = std::min<std::size_t>(2, chains + paths[v]);
  }
  return chains <= 1;
}

}  // namespace prefrev
