#include "prefrev/algebra.hpp"

#include <optional>

#include "prefrev/errors.hpp"
#include "prefrev/solver.hpp"

namespace prefrev {

namespace {

constexpr VarId kMiddle = 2;

// nullopt when renaming folds an atom to false.
std::optional<Conjunct> rename_conjunct(const Conjunct& c, VarId from, VarId to) {
  Conjunct out;
  out.reserve(c.size());
  auto rename = [&](const Term& t) {
    if (t.is_const() || t.var() != from) return t;
    return Term::attr(to, t.attr_index(), t.domain());
  };
  for (const auto& a : c) {
    auto made = Atom::make(rename(a.lhs()), a.op(), rename(a.rhs()));
    if (const bool* b = std::get_if<bool>(&made)) {
      if (!*b) return std::nullopt;
      continue;
    }
    add_atom(out, std::get<Atom>(made));
  }
  return out;
}

}  // namespace

PrefRelation union_pref(const PrefRelation& p1, const PrefRelation& p2) {
  require_same_schema(p1, p2);
  return {p1.schema(), p1.formula() || p2.formula()};
}

PrefRelation indifference(const PrefRelation& p) {
  return {p.schema(), !p.formula() && !swap_sides(p.formula())};
}

PrefRelation prioritized(const PrefRelation& p0, const PrefRelation& p) {
  require_same_schema(p0, p);
  return {p0.schema(), p0.formula() || (indifference(p0).formula() && p.formula())};
}

PrefRelation inverse(const PrefRelation& p) { return {p.schema(), swap_sides(p.formula())}; }

PrefRelation difference(const PrefRelation& p1, const PrefRelation& p2) {
  require_same_schema(p1, p2);
  return {p1.schema(), p1.formula() && !p2.formula()};
}

Dnf compose_dnf(const Dnf& first, const Dnf& second, const Schema& schema) {
  Dnf out;
  for (const auto& a : first) {
    auto left = rename_conjunct(a, kRight, kMiddle);
    if (!left) continue;
    for (const auto& b : second) {
      auto right = rename_conjunct(b, kLeft, kMiddle);
      if (!right) continue;
      Conjunct joined = *left;
      for (const auto& atom : *right) add_atom(joined, atom);
      if (!sat_conjunct(joined)) continue;
      Dnf pending{std::move(joined)};
      for (std::uint32_t i = 0; i < schema.arity(); ++i) {
        ScalarVar v{kMiddle, i, schema.attr(i).domain};
        Dnf next;
        for (const auto& c : pending) {
          for (auto& r : eliminate_exists_dnf(v, c)) {
            if (sat_conjunct(r)) next.push_back(std::move(r));
          }
        }
        pending = std::move(next);
      }
      out.insert(out.end(), pending.begin(), pending.end());
    }
  }
  return simplify(std::move(out));
}

PrefRelation compose(const PrefRelation& p1, const PrefRelation& p2) {
  require_same_schema(p1, p2);
  Dnf d = compose_dnf(normalize(p1.formula()), normalize(p2.formula()), p1.schema());
  return {p1.schema(), from_dnf(d)};
}

PrefRelation simplified(const PrefRelation& p) { return {p.schema(), from_dnf(normalize(p.formula()))}; }

PrefRelation transitive_closure(const PrefRelation& p, std::size_t max_iter) {
  if (max_iter == 0) throw PreconditionError("transitive_closure: max_iter must be at least 1");
  const Dnf base = normalize(p.formula());
  Dnf total = base;
  Dnf delta = base;
  for (std::size_t round = 1; round <= max_iter; ++round) {
    Dnf fresh;
    for (auto& c : compose_dnf(base, delta, p.schema())) {
      if (!conjunct_entails_dnf(c, total)) fresh.push_back(std::move(c));
    }
    if (fresh.empty()) return {p.schema(), from_dnf(total)};
    total.insert(total.end(), fresh.begin(), fresh.end());
    total = simplify(std::move(total));
    delta = std::move(fresh);
  }
  throw IterationCapError("transitive closure did not converge within " + std::to_string(max_iter) +
                              " iterations",
                          max_iter);
}

}  // namespace prefrev
