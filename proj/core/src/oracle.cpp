#include "prefrev/oracle.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <set>

#include "prefrev/errors.hpp"

namespace prefrev {

// ---- grid ----

GridUniverse GridUniverse::from_constants(const Schema& schema, const std::vector<Rational>& q,
                                          const std::vector<std::string>& d,
                                          const std::vector<std::vector<Value>>& data, GridRule rule,
                                          std::size_t cap) {
  // One value set per domain, shared by all attributes of that domain, so
  // atoms comparing two different attributes are also covered.
  std::set<Rational> q_consts(q.begin(), q.end());
  std::set<std::string> d_consts(d.begin(), d.end());
  for (const auto& column : data) {
    for (const auto& v : column) {
      if (const auto* r = std::get_if<Rational>(&v)) {
        q_consts.insert(*r);
      } else {
        d_consts.insert(std::get<std::string>(v));
      }
    }
  }

  std::vector<Value> q_values;
  if (q_consts.empty()) q_consts.insert(Rational(0));
  const std::int64_t k = static_cast<std::int64_t>(rule.q_points_per_gap);
  for (std::int64_t j = k; j >= 1; --j) q_values.emplace_back(*q_consts.begin() - Rational(j));
  for (auto it = q_consts.begin(); it != q_consts.end(); ++it) {
    q_values.emplace_back(*it);
    auto next = std::next(it);
    if (next == q_consts.end()) break;
    const Rational step = (*next - *it) / Rational(k + 1);
    for (std::int64_t j = 1; j <= k; ++j) q_values.emplace_back(*it + step * Rational(j));
  }
  for (std::int64_t j = 1; j <= k; ++j) q_values.emplace_back(*q_consts.rbegin() + Rational(j));

  std::vector<Value> d_values(d_consts.begin(), d_consts.end());
  for (std::size_t j = 1, added = 0; added < rule.d_fresh; ++j) {
    std::string name = "~" + std::to_string(j);
    if (d_consts.count(name)) continue;
    d_values.emplace_back(std::move(name));
    ++added;
  }

  GridUniverse u(schema);
  u.q_consts_ = q;
  u.d_consts_ = d;
  u.data_values_ = data;
  std::size_t total = 1;
  for (const auto& a : schema.attrs()) {
    u.values_.push_back(a.domain == Domain::Q ? q_values : d_values);
    total *= u.values_.back().size();
    if (total * total > cap) {
      throw PreconditionError("grid universe too large: more than " + std::to_string(cap) + " ground pairs");
    }
  }
  // Cross product, first attribute varying slowest.
  std::vector<std::size_t> idx(schema.arity(), 0);
  for (std::size_t n = 0; n < total; ++n) {
    Tuple t;
    t.reserve(schema.arity());
    for (std::size_t a = 0; a < schema.arity(); ++a) t.push_back(u.values_[a][idx[a]]);
    u.tuples_.push_back(std::move(t));
    for (std::size_t a = schema.arity(); a-- > 0;) {
      if (++idx[a] < u.values_[a].size()) break;
      idx[a] = 0;
    }
  }
  return u;
}

GridUniverse GridUniverse::build(const Schema& schema, std::span<const Formula> formulas,
                                 std::span<const RelationInstance> data, GridRule rule, std::size_t cap) {
  std::vector<Rational> q;
  std::vector<std::string> d;
  for (const auto& f : formulas) collect_constants(f, q, d);
  std::vector<std::vector<Value>> columns;
  for (const auto& r : data) {
    if (!(r.schema() == schema)) throw SchemaError("instance schema differs from grid schema");
    std::vector<Value> column;
    for (const auto& t : r.tuples()) column.insert(column.end(), t.begin(), t.end());
    columns.push_back(std::move(column));
  }
  return from_constants(schema, q, d, columns, rule, cap);
}

GridUniverse GridUniverse::of_instance(const RelationInstance& r) {
  GridUniverse u(r.schema());
  u.tuples_.assign(r.tuples().begin(), r.tuples().end());
  return u;
}

GridUniverse GridUniverse::densified(GridRule rule, std::size_t cap) const {
  if (values_.empty()) throw PreconditionError("an instance universe cannot be densified");
  // Every current value becomes an anchor, so gaps between former grid
  // points are subdivided too and fresh symbols are added on top.
  std::vector<Rational> q = q_consts_;
  std::vector<std::string> d = d_consts_;
  for (std::size_t i = 0; i < values_.size(); ++i) {
    for (const auto& v : values_[i]) {
      if (const auto* r = std::get_if<Rational>(&v)) {
        q.push_back(*r);
      } else {
        d.push_back(std::get<std::string>(v));
      }
    }
  }
  return from_constants(schema_, q, d, data_values_, rule, cap);
}

std::optional<std::size_t> GridUniverse::index_of(const Tuple& t) const {
  auto it = std::find(tuples_.begin(), tuples_.end(), t);
  if (it == tuples_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - tuples_.begin());
}

// ---- edge sets ----

EdgeSet::EdgeSet(std::size_t n) : n_(n), words_((n + 63) / 64), rows_(n * words_, 0) {}

void EdgeSet::set(std::size_t i, std::size_t j, bool v) {
  std::uint64_t& w = rows_[i * words_ + j / 64];
  const std::uint64_t bit = std::uint64_t{1} << (j % 64);
  w = v ? (w | bit) : (w & ~bit);
}

std::size_t EdgeSet::count() const {
  std::size_t c = 0;
  for (auto w : rows_) c += static_cast<std::size_t>(std::popcount(w));
  return c;
}

std::vector<std::pair<std::size_t, std::size_t>> EdgeSet::pairs() const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = 0; j < n_; ++j) {
      if (test(i, j)) out.emplace_back(i, j);
    }
  }
  return out;
}

namespace {

void same_size(const EdgeSet& a, const EdgeSet& b) {
  if (a.size() != b.size()) throw PreconditionError("edge sets over different universes");
}

}  // namespace

bool EdgeSet::subset_of(const EdgeSet& o) const {
  same_size(*this, o);
  for (std::size_t k = 0; k < rows_.size(); ++k) {
    if (rows_[k] & ~o.rows_[k]) return false;
  }
  return true;
}

EdgeSet EdgeSet::operator|(const EdgeSet& o) const {
  same_size(*this, o);
  EdgeSet r = *this;
  for (std::size_t k = 0; k < rows_.size(); ++k) r.rows_[k] |= o.rows_[k];
  return r;
}

EdgeSet EdgeSet::operator&(const EdgeSet& o) const {
  same_size(*this, o);
  EdgeSet r = *this;
  for (std::size_t k = 0; k < rows_.size(); ++k) r.rows_[k] &= o.rows_[k];
  return r;
}

EdgeSet EdgeSet::operator^(const EdgeSet& o) const {
  same_size(*this, o);
  EdgeSet r = *this;
  for (std::size_t k = 0; k < rows_.size(); ++k) r.rows_[k] ^= o.rows_[k];
  return r;
}

EdgeSet EdgeSet::minus(const EdgeSet& o) const {
  same_size(*this, o);
  EdgeSet r = *this;
  for (std::size_t k = 0; k < rows_.size(); ++k) r.rows_[k] &= ~o.rows_[k];
  return r;
}

EdgeSet EdgeSet::inverse() const {
  EdgeSet r(n_);
  for (auto [i, j] : pairs()) r.set(j, i);
  return r;
}

EdgeSet EdgeSet::restrict(std::span<const std::size_t> idx) const {
  EdgeSet r(idx.size());
  for (std::size_t a = 0; a < idx.size(); ++a) {
    for (std::size_t b = 0; b < idx.size(); ++b) {
      if (test(idx[a], idx[b])) r.set(a, b);
    }
  }
  return r;
}

EdgeSet materialize(const PrefRelation& p, std::span<const Tuple> tuples) {
  EdgeSet e(tuples.size());
  for (std::size_t i = 0; i < tuples.size(); ++i) {
    for (std::size_t j = 0; j < tuples.size(); ++j) {
      const Tuple* binding[] = {&tuples[i], &tuples[j]};
      if (eval(p.formula(), binding)) e.set(i, j);
    }
  }
  return e;
}

EdgeSet materialize(const PrefRelation& p, const GridUniverse& u) {
  if (!(p.schema() == u.schema())) throw SchemaError("relation and universe schemas differ");
  return materialize(p, u.tuples());
}

EdgeSet graph_tc(const EdgeSet& e) {
  EdgeSet r = e;
  const std::size_t n = e.size();
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      if (!r.test(i, k)) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (r.test(k, j)) r.set(i, j);
      }
    }
  }
  return r;
}

OrderClass graph_axioms(const EdgeSet& e) {
  const std::size_t n = e.size();
  bool irr = true, trans = true, neg = true, conn = true;
  for (std::size_t i = 0; i < n; ++i) irr = irr && !e.test(i, i);
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      if (x != y && !e.test(x, y) && !e.test(y, x)) conn = false;
      for (std::size_t z = 0; z < n && (trans || neg); ++z) {
        if (e.test(x, y) && e.test(y, z) && !e.test(x, z)) trans = false;
        if (!e.test(x, y) && !e.test(y, z) && e.test(x, z)) neg = false;
      }
    }
  }
  return OrderClass::from_flags(irr, trans, neg, conn);
}

bool graph_scp(const EdgeSet& e) {
  const std::size_t n = e.size();
  if (!graph_axioms(e).is_spo()) throw PreconditionError("single-chain check needs an SPO");
  // Maximal chains of an SPO are the maximal paths of its cover (Hasse)
  // graph; count those from a maximal element to a minimal one, skipping
  // isolated elements.
  EdgeSet cover(n);
  for (auto [i, j] : e.pairs()) {
    bool direct = true;
    for (std::size_t k = 0; k < n && direct; ++k) direct = !(e.test(i, k) && e.test(k, j));
    if (direct) cover.set(i, j);
  }
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  // Topological order: by number of successors, descending predecessors last.
  std::vector<std::size_t> below(n, 0);
  for (auto [i, j] : e.pairs()) ++below[i];
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return below[a] < below[b]; });
  std::vector<std::size_t> paths(n, 0);  // maximal paths starting at i, saturated at 2
  for (std::size_t i : order) {
    std::size_t c = 0;
    bool has_succ = false;
    for (std::size_t j = 0; j < n; ++j) {
      if (cover.test(i, j)) {
        has_succ = true;
        c = std::min<std::size_t>(2, c + paths[j]);
      }
    }
    paths[i] = has_succ ? c : 1;
  }
  std::size_t chains = 0;
  for (std::size_t i = 0; i < n; ++i) {
    bool has_pred = false, has_succ = false;
    for (std::size_t j = 0; j < n; ++j) {
      has_pred = has_pred || cover.test(j, i);
      has_succ = has_succ || cover.test(i, j);
    }
    if (!has_pred && has_succ) chains = std::min<std::size_t>(2, chains + paths[i]);
  }
  return chains <= 1;
}

std::vector<std::size_t> graph_winnow(const EdgeSet& e, std::span<const std::size_t> members) {
  std::vector<std::size_t> all;
  if (members.empty()) {
    for (std::size_t i = 0; i < e.size(); ++i) all.push_back(i);
    members = all;
  }
  std::vector<std::size_t> out;
  for (std::size_t t : members) {
    bool dominated = false;
    for (std::size_t s : members) dominated = dominated || e.test(s, t);
    if (!dominated) out.push_back(t);
  }
  return out;
}

EdgeSet graph_prioritized(const EdgeSet& e0, const EdgeSet& e) {
  EdgeSet r = e0;
  for (auto [i, j] : e.pairs()) {
    if (!e0.test(i, j) && !e0.test(j, i)) r.set(i, j);
  }
  return r;
}

bool grid_satisfiable(const Formula& f, const GridUniverse& u, std::size_t nvars) {
  if (u.size() == 0) return false;
  std::vector<std::size_t> idx(nvars, 0);
  std::vector<const Tuple*> binding(nvars);
  while (true) {
    for (std::size_t v = 0; v < nvars; ++v) binding[v] = &u.tuple(idx[v]);
    if (eval(f, binding)) return true;
    std::size_t v = 0;
    for (; v < nvars; ++v) {
      if (++idx[v] < u.size()) break;
      idx[v] = 0;
    }
    if (v == nvars) return false;
  }
}

// ---- least revisions ----

namespace {

struct Enumerator {
  Enumerator(std::size_t n_, const EdgeSet& base_, TargetClass target_, std::size_t cap)
      : n(n_), base(base_), target(target_), node_cap(cap) {}

  std::size_t n;
  const EdgeSet& base;
  TargetClass target;
  std::size_t node_cap;
  std::size_t nodes = 0;
  std::vector<EdgeSet> found;

  void tick() {
    if (++nodes > node_cap) throw PreconditionError("brute-force enumeration cap exceeded");
  }

  // SPO and weak targets: one decision per unordered pair.
  std::vector<std::pair<std::size_t, std::size_t>> upairs;
  std::vector<std::vector<bool>> assigned;

  bool consistent_triple(const EdgeSet& e, std::size_t a, std::size_t b, std::size_t c) const {
    const std::size_t v[3] = {a, b, c};
    static constexpr int perms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
    for (const auto& p : perms) {
      std::size_t x = v[p[0]], y = v[p[1]], z = v[p[2]];
      if (e.test(x, y) && e.test(y, z) && !e.test(x, z)) return false;
      if (target == TargetClass::Weak && !e.test(x, y) && !e.test(y, z) && e.test(x, z)) return false;
    }
    return true;
  }

  void search_pairs(EdgeSet& e, std::size_t k) {
    tick();
    if (k == upairs.size()) {
      found.push_back(e);
      return;
    }
    auto [i, j] = upairs[k];
    const bool need_ij = base.test(i, j), need_ji = base.test(j, i);
    for (int state = 0; state < 3; ++state) {
      if (need_ij && state != 1) continue;
      if (need_ji && state != 2) continue;
      e.set(i, j, state == 1);
      e.set(j, i, state == 2);
      assigned[i][j] = assigned[j][i] = true;
      bool ok = true;
      for (std::size_t m = 0; m < n && ok; ++m) {
        if (m == i || m == j || !assigned[i][m] || !assigned[j][m]) continue;
        ok = consistent_triple(e, i, j, m);
      }
      if (ok) search_pairs(e, k + 1);
      assigned[i][j] = assigned[j][i] = false;
    }
    e.set(i, j, false);
    e.set(j, i, false);
  }

  // Transitive target: every ordered pair, loops included.
  void search_bits(EdgeSet& e, std::size_t k) {
    tick();
    if (k == n * n) {
      if (graph_tc(e) == e) found.push_back(e);
      return;
    }
    const std::size_t i = k / n, j = k % n;
    if (base.test(i, j)) {
      search_bits(e, k + 1);
      return;
    }
    search_bits(e, k + 1);
    e.set(i, j);
    search_bits(e, k + 1);
    e.set(i, j, false);
  }

  void run() {
    if (target == TargetClass::Transitive) {
      EdgeSet e = base;
      search_bits(e, 0);
      return;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (base.test(i, i)) return;  // no irreflexive candidate
    }
    for (std::size_t j = 1; j < n; ++j) {
      for (std::size_t i = 0; i < j; ++i) {
        if (base.test(i, j) && base.test(j, i)) return;
        upairs.emplace_back(i, j);
      }
    }
    assigned.assign(n, std::vector<bool>(n, false));
    EdgeSet e(n);
    search_pairs(e, 0);
  }
};

}  // namespace

BruteForceResult least_revision_bruteforce(const EdgeSet& e, const EdgeSet& e0, OracleMode mode,
                                           TargetClass target, std::size_t node_cap) {
  const EdgeSet base = mode == OracleMode::Refine ? (e | e0) : graph_prioritized(e0, e);
  Enumerator en{e.size(), base, target, node_cap};
  en.run();

  BruteForceResult out;
  out.candidates = en.found.size();
  if (en.found.empty()) return out;
  std::vector<EdgeSet> diffs;
  diffs.reserve(en.found.size());
  for (const auto& c : en.found) diffs.push_back(c ^ e);
  EdgeSet meet = diffs.front();
  for (const auto& d : diffs) meet = meet & d;
  for (std::size_t k = 0; k < diffs.size(); ++k) {
    if (diffs[k] == meet) {
      out.least = en.found[k];
      out.minimal = {en.found[k]};
      return out;
    }
  }
  for (std::size_t k = 0; k < diffs.size(); ++k) {
    bool minimal = true;
    for (std::size_t m = 0; m < diffs.size() && minimal; ++m) {
      minimal = !(m != k && diffs[m].subset_of(diffs[k]) && !(diffs[m] == diffs[k]));
    }
    if (minimal) out.minimal.push_back(en.found[k]);
  }
  return out;
}

std::vector<std::pair<std::size_t, std::size_t>> hidden_conflicts_prose(const EdgeSet& e, const EdgeSet& e0) {
  same_size(e, e0);
  const std::size_t n = e.size();
  // An edge (x, y) of e may be used in a chain unless e0 prefers y to x.
  EdgeSet allowed(n);
  for (auto [x, y] : e.pairs()) {
    if (!e0.test(y, x)) allowed.set(x, y);
  }
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (auto [t1, t2] : e0.pairs()) {
    // Depth-first search from t2 over allowed edges, looking for t1.
    std::vector<bool> seen(n, false);
    std::vector<std::size_t> stack{t2};
    bool found = false;
    while (!stack.empty() && !found) {
      std::size_t x = stack.back();
      stack.pop_back();
      for (std::size_t y = 0; y < n && !found; ++y) {
        if (!allowed.test(x, y)) continue;
        if (y == t1) {
          found = true;
        } else if (!seen[y]) {
          seen[y] = true;
          stack.push_back(y);
        }
      }
    }
    if (found) out.emplace_back(t1, t2);
  }
  return out;
}

}  // namespace prefrev
