#include "prefrev/solver.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <numeric>
#include <optional>

namespace prefrev {

namespace {

std::size_t node_of(std::vector<const Term*>& nodes, const Term& t) {
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (*nodes[i] == t) return i;
  }
  nodes.push_back(&t);
  return nodes.size() - 1;
}

bool sat_equalities(const Conjunct& c) {
  std::vector<const Term*> nodes;
  std::vector<std::pair<std::size_t, std::size_t>> eqs, nes;
  for (const auto& a : c) {
    if (a.domain() != Domain::D) continue;
    auto l = node_of(nodes, a.lhs());
    auto r = node_of(nodes, a.rhs());
    (a.op() == Op::Eq ? eqs : nes).emplace_back(l, r);
  }
  if (nodes.empty()) return true;
  std::vector<std::size_t> parent(nodes.size());
  std::iota(parent.begin(), parent.end(), 0);
  std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (auto [l, r] : eqs) parent[find(l)] = find(r);
  std::vector<const Term*> class_const(nodes.size(), nullptr);
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (!nodes[i]->is_const()) continue;
    auto root = find(i);
    if (class_const[root] && !(*class_const[root] == *nodes[i])) return false;
    class_const[root] = nodes[i];
  }
  for (auto [l, r] : nes) {
    if (find(l) == find(r)) return false;
  }
  return true;
}

enum Bound : std::uint8_t { kNone = 0, kLe = 1, kLt = 2 };

bool sat_order(const Conjunct& c) {
  std::vector<const Term*> nodes;
  struct Edge {
    std::size_t l, r;
    Op op;
  };
  std::vector<Edge> edges;
  for (const auto& a : c) {
    if (a.domain() != Domain::Q) continue;
    edges.push_back({node_of(nodes, a.lhs()), node_of(nodes, a.rhs()), a.op()});
  }
  if (nodes.empty()) return true;
  const std::size_t n = nodes.size();
  std::vector<std::uint8_t> rel(n * n, kNone);
  auto at = [&](std::size_t i, std::size_t j) -> std::uint8_t& { return rel[i * n + j]; };
  auto raise = [&](std::size_t i, std::size_t j, std::uint8_t b) { at(i, j) = std::max(at(i, j), b); };

  std::vector<std::size_t> consts;
  for (std::size_t i = 0; i < n; ++i) {
    if (nodes[i]->is_const()) consts.push_back(i);
  }
  std::sort(consts.begin(), consts.end(), [&](std::size_t a, std::size_t b) {
    return std::get<Rational>(nodes[a]->value()) < std::get<Rational>(nodes[b]->value());
  });
  for (std::size_t k = 1; k < consts.size(); ++k) raise(consts[k - 1], consts[k], kLt);

  std::vector<std::pair<std::size_t, std::size_t>> nes;
  for (const auto& e : edges) {
    switch (e.op) {
      case Op::Lt: raise(e.l, e.r, kLt); break;
      case Op::Le: raise(e.l, e.r, kLe); break;
      case Op::Gt: raise(e.r, e.l, kLt); break;
      case Op::Ge: raise(e.r, e.l, kLe); break;
      case Op::Eq:
        raise(e.l, e.r, kLe);
        raise(e.r, e.l, kLe);
        break;
      case Op::Ne: nes.emplace_back(e.l, e.r); break;
    }
  }
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      if (!at(i, k)) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (at(k, j)) raise(i, j, std::max(at(i, k), at(k, j)));
      }
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (at(i, i) == kLt) return false;
  }
  for (auto [l, r] : nes) {
    if (at(l, r) && at(r, l)) return false;
  }
  return true;
}

// Tableau over an NNF formula: atoms and conjunctions are absorbed into the
// current conjunct, disjunctions branch. Branches whose conjunct becomes
// unsatisfiable are cut. `on_leaf` returns true to stop the search.
class Tableau {
 public:
  explicit Tableau(std::function<bool(const Conjunct&)> on_leaf) : on_leaf_(std::move(on_leaf)) {}

  bool run(const Formula& nnf) { return expand(Conjunct{}, {nnf}); }
  bool run(Conjunct base, std::vector<Formula> todo) { return expand(std::move(base), std::move(todo)); }

 private:
  bool expand(Conjunct cur, std::vector<Formula> todo) {
    std::vector<Formula> ors;
    while (!todo.empty()) {
      Formula f = std::move(todo.back());
      todo.pop_back();
      switch (f.kind()) {
        case Formula::Kind::True: break;
        case Formula::Kind::False: return false;
        case Formula::Kind::Atom: add_atom(cur, f.as_atom()); break;
        case Formula::Kind::And:
          for (const auto& c : f.children()) todo.push_back(c);
          break;
        case Formula::Kind::Or: ors.push_back(std::move(f)); break;
        case Formula::Kind::Not: break;  // not present in NNF
      }
    }
    if (!sat_conjunct(cur)) return false;
    std::vector<Formula> rest;
    if (!propagate(cur, ors, rest)) return false;
    if (!rest.empty()) {
      ors.insert(ors.end(), rest.begin(), rest.end());
      return expand(std::move(cur), std::move(ors));
    }
    if (ors.empty()) return on_leaf_(cur);

    // Branch first where every alternative binds something with an equality:
    // that is what lets negated clauses (x != c or ...) propagate.
    auto score = [](const Formula& f) {
      bool binding = true;
      for (const auto& alt : f.children()) {
        auto c = flat(alt);
        binding = binding && c && std::any_of(c->begin(), c->end(), [](const Atom& a) { return a.op() == Op::Eq; });
      }
      return std::pair{!binding, f.children().size()};
    };
    auto pick = std::min_element(ors.begin(), ors.end(),
                                 [&](const Formula& a, const Formula& b) { return score(a) < score(b); });
    Formula branch = *pick;
    ors.erase(pick);
    for (const auto& alt : branch.children()) {
      std::vector<Formula> next = ors;
      next.push_back(alt);
      if (expand(cur, std::move(next))) return true;
    }
    return false;
  }

  // Atom or conjunction of atoms, as a conjunct.
  static std::optional<Conjunct> flat(const Formula& f) {
    if (f.kind() == Formula::Kind::Atom) return Conjunct{f.as_atom()};
    if (f.kind() != Formula::Kind::And) return std::nullopt;
    Conjunct c;
    for (const auto& child : f.children()) {
      if (child.kind() != Formula::Kind::Atom) return std::nullopt;
      add_atom(c, child.as_atom());
    }
    return c;
  }

  // Simplifies the pending disjunctions against `cur` until nothing changes:
  // a disjunction with an alternative entailed by `cur` is dropped, flat
  // alternatives inconsistent with `cur` are pruned, and a single remaining
  // flat alternative is absorbed into `cur`. A lone non-flat alternative
  // goes to `rest` for ordinary expansion. Returns false on a conflict.
  static bool propagate(Conjunct& cur, std::vector<Formula>& ors, std::vector<Formula>& rest) {
    bool changed = true;
    while (changed) {
      changed = false;
      std::vector<Formula> kept;
      for (std::size_t i = 0; i < ors.size(); ++i) {
        std::vector<Formula> alive;
        bool satisfied = false;
        for (const auto& alt : ors[i].children()) {
          auto c = flat(alt);
          if (!c) {
            alive.push_back(alt);
            continue;
          }
          if (conjunct_entails(cur, *c)) {
            satisfied = true;
            break;
          }
          Conjunct probe = cur;
          for (const auto& a : *c) add_atom(probe, a);
          if (sat_conjunct(probe)) alive.push_back(alt);
        }
        if (satisfied) {
          changed = true;
          continue;
        }
        if (alive.empty()) return false;
        if (alive.size() == 1) {
          if (auto c = flat(alive.front())) {
            for (const auto& a : *c) add_atom(cur, a);
            changed = true;
          } else {
            rest.push_back(std::move(alive.front()));
          }
          continue;
        }
        changed |= alive.size() != ors[i].children().size();
        kept.push_back(alive.size() == ors[i].children().size() ? ors[i] : Formula::disj(std::move(alive)));
      }
      ors = std::move(kept);
    }
    return true;
  }

  std::function<bool(const Conjunct&)> on_leaf_;
};

// not (a1 and ... and an) as the disjunction of complemented atoms.
Formula negated_conjunct(const Conjunct& c) {
  std::vector<Formula> parts;
  parts.reserve(c.size());
  for (const auto& a : c) parts.push_back(Formula::atom(a.negated()));
  return Formula::disj(std::move(parts));
}

bool mentions(const Atom& a, const ScalarVar& v) {
  const Term t = v.term();
  return a.lhs() == t || a.rhs() == t;
}

// Atom `a` with every occurrence of `v` replaced by `t`.
std::variant<bool, Atom> replace(const Atom& a, const ScalarVar& v, const Term& t) {
  const Term vt = v.term();
  Term l = a.lhs() == vt ? t : a.lhs();
  Term r = a.rhs() == vt ? t : a.rhs();
  return Atom::make(std::move(l), a.op(), std::move(r));
}

bool add_made(Conjunct& c, std::variant<bool, Atom> made) {
  if (const bool* b = std::get_if<bool>(&made)) return *b;
  add_atom(c, std::get<Atom>(made));
  return true;
}

}  // namespace

bool sat_conjunct(const Conjunct& c) { return sat_equalities(c) && sat_order(c); }

bool satisfiable(const Formula& f) {
  Tableau t([](const Conjunct&) { return true; });
  return t.run(to_nnf(f));
}

bool entails(const Formula& f, const Formula& g) { return !satisfiable(f && !g); }

bool equivalent(const Formula& f, const Formula& g) { return entails(f, g) && entails(g, f); }

bool conjunct_entails(const Conjunct& a, const Conjunct& b) {
  for (const auto& atom : b) {
    if (std::binary_search(a.begin(), a.end(), atom)) continue;
    Conjunct probe = a;
    add_atom(probe, atom.negated());
    if (sat_conjunct(probe)) return false;
  }
  return true;
}

bool conjunct_entails_dnf(const Conjunct& c, const Dnf& d) {
  for (const auto& other : d) {
    if (conjunct_entails(c, other)) return true;
  }
  std::vector<Formula> clauses;
  clauses.reserve(d.size());
  for (const auto& other : d) clauses.push_back(negated_conjunct(other));
  Tableau t([](const Conjunct&) { return true; });
  return !t.run(c, std::move(clauses));
}

Dnf eliminate_exists_dnf(const ScalarVar& v, const Conjunct& c) {
  const Term vt = v.term();
  Conjunct rest;
  std::vector<Atom> with_v;
  for (const auto& a : c) {
    if (mentions(a, v)) {
      with_v.push_back(a);
    } else {
      rest.push_back(a);
    }
  }
  if (with_v.empty()) return {c};

  // Substitute through an equality v = t.
  for (const auto& a : with_v) {
    if (a.op() != Op::Eq) continue;
    const Term& other = a.lhs() == vt ? a.rhs() : a.lhs();
    Conjunct out = rest;
    for (const auto& b : with_v) {
      if (!add_made(out, replace(b, v, other))) return {};
    }
    return {out};
  }

  // D: only != remains, satisfiable by a fresh constant.
  if (v.domain == Domain::D) return {rest};

  struct BoundTerm {
    Term t;
    bool strict;
  };
  std::vector<BoundTerm> lower, upper;
  std::vector<Term> ne_terms;
  for (const auto& a : with_v) {
    bool v_left = a.lhs() == vt;
    const Term& other = v_left ? a.rhs() : a.lhs();
    Op op = v_left ? a.op() : flip(a.op());  // now reads: v op other
    switch (op) {
      case Op::Lt: upper.push_back({other, true}); break;
      case Op::Le: upper.push_back({other, false}); break;
      case Op::Gt: lower.push_back({other, true}); break;
      case Op::Ge: lower.push_back({other, false}); break;
      case Op::Ne: ne_terms.push_back(other); break;
      case Op::Eq: break;  // handled above
    }
  }

  Dnf out;
  const std::size_t branches = std::size_t{1} << ne_terms.size();
  for (std::size_t mask = 0; mask < branches; ++mask) {
    auto lo = lower;
    auto hi = upper;
    for (std::size_t i = 0; i < ne_terms.size(); ++i) {
      if (mask & (std::size_t{1} << i)) {
        lo.push_back({ne_terms[i], true});
      } else {
        hi.push_back({ne_terms[i], true});
      }
    }
    Conjunct conj = rest;
    bool ok = true;
    for (const auto& l : lo) {
      for (const auto& h : hi) {
        if (!add_made(conj, Atom::make(l.t, (l.strict || h.strict) ? Op::Lt : Op::Le, h.t))) {
          ok = false;
          break;
        }
      }
      if (!ok) break;
    }
    if (ok) out.push_back(std::move(conj));
  }
  return out;
}

Formula eliminate_exists(const ScalarVar& v, const Conjunct& c) {
  return from_dnf(simplify(eliminate_exists_dnf(v, c)));
}

Dnf normalize(const Formula& f) {
  Dnf leaves;
  Tableau t([&](const Conjunct& c) {
    leaves.push_back(c);
    return false;
  });
  t.run(to_nnf(f));
  return simplify(std::move(leaves));
}

namespace {

Conjunct drop_redundant_atoms(Conjunct c) {
  for (std::size_t i = 0; i < c.size();) {
    Conjunct rest = c;
    rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(i));
    Conjunct probe = rest;
    add_atom(probe, c[i].negated());
    if (!sat_conjunct(probe)) {
      c = std::move(rest);
    } else {
      ++i;
    }
  }
  return c;
}

// If `a` and `b` differ in exactly one comparison between the same two terms,
// returns their disjunction as a single conjunct.
std::optional<Conjunct> try_merge(const Conjunct& a, const Conjunct& b) {
  if (a.size() != b.size()) return std::nullopt;
  std::vector<Atom> only_a, only_b;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(only_a));
  if (only_a.size() != 1) return std::nullopt;
  std::set_difference(b.begin(), b.end(), a.begin(), a.end(), std::back_inserter(only_b));
  if (only_b.size() != 1) return std::nullopt;
  const Atom& x = only_a.front();
  const Atom& y = only_b.front();
  if (!(x.lhs() == y.lhs()) || !(x.rhs() == y.rhs())) return std::nullopt;
  auto bits = static_cast<std::uint8_t>(static_cast<std::uint8_t>(x.op()) | static_cast<std::uint8_t>(y.op()));
  Conjunct merged;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(merged));
  if (bits != kAllOutcomes) {
    add_made(merged, Atom::make(x.lhs(), static_cast<Op>(bits), x.rhs()));
  }
  return merged;
}

// Widens atoms of `c` (weaker operator, or dropped) while `dnf` still covers
// the widened conjunct. Returns whether anything changed.
bool expand_against(Conjunct& c, const Dnf& dnf) {
  bool any = false;
  for (std::size_t i = 0; i < c.size();) {
    const Atom a = c[i];
    const auto bits = static_cast<std::uint8_t>(a.op());
    // Strict supersets of the outcome set, widest (atom dropped) first.
    std::vector<std::uint8_t> wider;
    for (std::uint8_t w = kAllOutcomes; w > 0; --w) {
      if (w != bits && (w & bits) == bits) wider.push_back(w);
    }
    std::stable_sort(wider.begin(), wider.end(),
                     [](std::uint8_t x, std::uint8_t y) { return std::popcount(x) > std::popcount(y); });
    bool widened = false;
    for (auto w : wider) {
      if (a.domain() == Domain::D && w != kAllOutcomes) continue;  // D has only = and !=
      Conjunct trial = c;
      trial.erase(trial.begin() + static_cast<std::ptrdiff_t>(i));
      if (w != kAllOutcomes && !add_made(trial, Atom::make(a.lhs(), static_cast<Op>(w), a.rhs()))) continue;
      if (conjunct_entails_dnf(trial, dnf)) {
        c = std::move(trial);
        widened = true;
        break;
      }
    }
    if (widened) {
      any = true;
      i = 0;
    } else {
      ++i;
    }
  }
  return any;
}

}  // namespace

Dnf simplify(Dnf dnf) {
  std::erase_if(dnf, [](const Conjunct& c) { return !sat_conjunct(c); });
  bool changed = true;
  while (changed) {
    changed = false;
    for (auto& c : dnf) {
      auto before = c.size();
      c = drop_redundant_atoms(std::move(c));
      changed |= c.size() != before;
    }
    std::sort(dnf.begin(), dnf.end());
    dnf.erase(std::unique(dnf.begin(), dnf.end()), dnf.end());

    // Subsumption: drop conjuncts that entail another one.
    std::vector<bool> dead(dnf.size(), false);
    for (std::size_t i = 0; i < dnf.size(); ++i) {
      for (std::size_t j = 0; j < dnf.size() && !dead[i]; ++j) {
        if (i != j && !dead[j] && conjunct_entails(dnf[i], dnf[j])) {
          dead[i] = true;
          changed = true;
        }
      }
    }
    Dnf kept;
    for (std::size_t i = 0; i < dnf.size(); ++i) {
      if (!dead[i]) kept.push_back(std::move(dnf[i]));
    }
    dnf = std::move(kept);

    for (std::size_t i = 0; i < dnf.size() && !changed; ++i) {
      for (std::size_t j = i + 1; j < dnf.size(); ++j) {
        if (auto merged = try_merge(dnf[i], dnf[j])) {
          dnf[i] = std::move(*merged);
          dnf.erase(dnf.begin() + static_cast<std::ptrdiff_t>(j));
          changed = true;
          break;
        }
      }
    }
    // Conjuncts covered by the others together.
    for (std::size_t i = 0; i < dnf.size() && !changed; ++i) {
      Dnf others = dnf;
      others.erase(others.begin() + static_cast<std::ptrdiff_t>(i));
      if (conjunct_entails_dnf(dnf[i], others)) {
        dnf = std::move(others);
        changed = true;
      }
    }
    if (!changed) {
      for (auto& c : dnf) changed |= expand_against(c, dnf);
    }
  }
  return dnf;
}

}  // namespace prefrev
