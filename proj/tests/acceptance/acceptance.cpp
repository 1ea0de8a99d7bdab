// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit when any
// criterion fails or runs over its time budget.

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "../support/fixtures.hpp"
#include "../support/random_gen.hpp"
#include "prefrev/algebra.hpp"
#include "prefrev/axioms.hpp"
#include "prefrev/errors.hpp"
#include "prefrev/io.hpp"
#include "prefrev/oracle.hpp"
#include "prefrev/revision.hpp"
#include "prefrev/solver.hpp"
#include "prefrev/utility.hpp"
#include "prefrev/winnow.hpp"

using namespace prefrev;
using namespace fixtures;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

/// First failure wins; later checks still run so counts stay meaningful.
class Check {
 public:
  void expect(bool ok, const std::string& what) {
    ++total_;
    if (ok) {
      ++passed_;
    } else if (first_failure_.empty()) {
      first_failure_ = what;
    }
  }
  Outcome outcome(const std::string& summary) const {
    Outcome o;
    o.pass = passed_ == total_;
    o.detail = summary + " [" + std::to_string(passed_) + "/" + std::to_string(total_) + " checks]";
    if (!o.pass) o.detail += "; first failure: " + first_failure_;
    return o;
  }

 private:
  std::size_t total_ = 0;
  std::size_t passed_ = 0;
  std::string first_failure_;
};

std::string data_path(const std::string& name) { return std::string(PREFREV_TEST_DATA_DIR) + "/" + name; }

struct CarData {
  Schema schema;
  std::vector<NamedPref> prefs;
  RelationInstance r1;
};

CarData load_car() {
  auto schemas = parse_schema_file(read_file(data_path("car.schema")));
  auto prefs = parse_pref_file(read_file(data_path("car.prefs")), schemas);
  RelationInstance r = parse_csv(read_file(data_path("car.csv")), schemas.front());
  return {schemas.front(), std::move(prefs), std::move(r)};
}

const PrefRelation& pref(const CarData& d, std::string_view name) { return find_pref(d.prefs, name).relation; }

std::string show_edges(const EdgeSet& e) {
  std::string s = "{";
  for (auto [i, j] : e.pairs()) s += "(" + item_name(i) + "," + item_name(j) + ")";
  return s + "}";
}

// ---- 1 ----
Outcome car_pipeline() {
  Check c;
  CarData d = load_car();
  std::string out = format_csv(winnow_generic(pref(d, "C1"), d.r1));
  c.expect(out == "make,year\nVW,2002\nKia,1997\n", "CSV output was:\n" + out);
  c.expect(format_csv(winnow_auto(pref(d, "C1"), d.r1)) == out, "auto algorithm differs");
  return c.outcome("winnow(C1, r1) CSV byte-exact");
}

// ---- 2 ----
Outcome refinement_exact() {
  Check c;
  CarData d = load_car();
  PrefRelation tc = transitive_closure(union_pref(pref(d, "C1"), pref(d, "C2")));
  c.expect(equivalent(tc.formula(), pref(d, "Cstar").formula()), "TC(C1 u C2) is " + render(tc));
  c.expect(is_irreflexive(pref(d, "Cstar")), "C* not irreflexive");
  c.expect(winnow_generic(pref(d, "Cstar"), d.r1) == RelationInstance(d.schema, {car("VW", 2002)}),
           "winnow(C*, r1) wrong");
  RevisionReport rep = refine(pref(d, "C1"), pref(d, "C2"));
  c.expect(equivalent(rep.result.formula(), pref(d, "Cstar").formula()), "refine(C1, C2) differs from C*");
  return c.outcome("TC(C1 u C2) == C*, C* irreflexive, winnow(C*) = {(VW,2002)}");
}

// ---- 3 ----
Outcome scp_fast_path() {
  Check c;
  CarData d = load_car();
  RevisionOptions o;
  o.assert_scp_revising = true;
  RevisionReport rep = refine(pref(d, "C1"), pref(d, "C3"), o);
  c.expect(rep.fast_path == FastPath::SpoUnionScp, "fast path " + std::string(fast_path_name(rep.fast_path)));
  c.expect(equivalent(rep.result.formula(), pref(d, "C4").formula()), "result is " + render(rep.result));

  const Formula fs[] = {rep.result.formula(), pref(d, "C1").formula(), pref(d, "C3").formula()};
  const RelationInstance data[] = {d.r1};
  GridUniverse u = GridUniverse::build(d.schema, fs, data);
  const std::size_t t1 = *u.index_of(car("VW", 2002)), t3 = *u.index_of(car("Kia", 1997));
  c.expect(materialize(rep.result, u).test(t1, t3), "grid lacks ((VW,2002),(Kia,1997))");
  c.expect(graph_tc(materialize(union_pref(pref(d, "C1"), pref(d, "C3")), u)).test(t1, t3),
           "grid TC of the union lacks the pair");
  // Inside the database alone the intermediates are missing.
  EdgeSet db = graph_tc(materialize(union_pref(pref(d, "C1"), pref(d, "C3")), d.r1.tuples()));
  c.expect(!db.test(0, 2), "pair already derivable within r1");
  return c.outcome("refine(C1, C3 SCP) == C4 via SPO_UNION_SCP; grid has (t1,t3)");
}

// ---- 4 ----
Outcome overriding_exact() {
  Check c;
  auto schemas = parse_schema_file(read_file(data_path("item.schema")));
  auto prefs = parse_pref_file(read_file(data_path("swap.prefs")), schemas);
  RevisionReport rep =
      override_revision(find_pref(prefs, "Chain").relation, find_pref(prefs, "Swap").relation);
  EdgeSet got = materialize(rep.result, items(3).tuples());
  c.expect(got == edges(3, {{1, 0}, {1, 2}, {0, 2}}), "swap result " + show_edges(got));
  c.expect(rep.result_class.is_spo() && classify(rep.result).is_spo(), "swap result not an SPO");

  gen::Rng rng(404);
  std::size_t pairs = 0;
  while (pairs < 500) {
    const std::size_t n = gen::uniform(rng, 2, 5);
    EdgeSet e = gen::random_relation(rng, n, 0.35);
    EdgeSet e0 = gen::random_relation(rng, n, 0.35);
    if (!(e & e0.inverse()).empty()) continue;
    ++pairs;
    PrefRelation p = item_rel(e), p0 = item_rel(e0);
    c.expect(is_compatible(p, p0), "compatible pair reported incompatible: " + show_edges(e) + " " + show_edges(e0));
    c.expect(equivalent(union_pref(p0, p).formula(), prioritized(p0, p).formula()),
             "union != prioritized for " + show_edges(e) + " " + show_edges(e0));
  }
  return c.outcome("swap = {(b,a),(b,c),(a,c)} SPO; 500 compatible pairs union == prioritized");
}

// ---- 5 ----
Outcome oracle_faithfulness() {
  Check c;
  gen::Rng rng(5005);
  const Schema schemas[] = {gen::mixed_schema(), gen::q_schema(), gen::d_schema()};
  std::size_t trials = 0, tc_checked = 0, tc_capped = 0, sat = 0, entailed = 0, spo = 0, grew = 0;
  for (; trials < 1000; ++trials) {
    const Schema& s = schemas[trials % 3];
    PrefRelation p = gen::random_pref(rng, s);
    PrefRelation q = gen::random_pref(rng, s);
    const std::string tag = "trial " + std::to_string(trials) + " p=" + render(p) + " q=" + render(q);

    const Formula fs2[] = {p.formula(), q.formula()};
    GridUniverse fine = GridUniverse::build(s, fs2, {}, GridRule{3, 3}, 40'000);

    const bool is_sat = satisfiable(p.formula());
    sat += is_sat;
    c.expect(is_sat == grid_satisfiable(p.formula(), fine, 2), "satisfiable: " + tag);
    const bool ent = entails(p.formula(), q.formula());
    entailed += ent;
    const EdgeSet ep = materialize(p, fine), eq = materialize(q, fine);
    c.expect(ent == ep.subset_of(eq), "entails: " + tag);

    const OrderClass sym = classify(p);
    const OrderClass grid = graph_axioms(ep);
    spo += sym.is_spo();
    c.expect(sym == grid, "axioms: " + tag + " symbolic " + describe(sym) + " grid " + describe(grid));

    PrefRelation tc = p;
    try {
      tc = transitive_closure(p);
    } catch (const IterationCapError&) {
      ++tc_capped;
      continue;
    }
    ++tc_checked;
    grew += !equivalent(tc.formula(), p.formula());
    const Formula fs[] = {p.formula(), tc.formula()};
    GridUniverse coarse = GridUniverse::build(s, fs, {}, GridRule{1, 2}, 40'000);
    GridUniverse dense = coarse.densified(GridRule{2, 2}, 40'000);
    std::vector<std::size_t> idx;
    for (const auto& t : coarse.tuples()) idx.push_back(*dense.index_of(t));
    EdgeSet closed = graph_tc(materialize(p, dense)).restrict(idx);
    c.expect(closed == materialize(tc, coarse), "TC: " + tag + " TC=" + render(tc));
  }
  return c.outcome(std::to_string(trials) + " random ipfs (" + std::to_string(sat) + " satisfiable, " +
                   std::to_string(entailed) + " entailments, " + std::to_string(spo) + " SPOs); TC compared on " +
                   std::to_string(tc_checked) + " (" + std::to_string(grew) + " not transitive, " +
                   std::to_string(tc_capped) + " hit the iteration cap)");
}

// ---- 6 ----
Outcome semi_compatibility() {
  Check c;
  // The hidden-conflict walkthrough on a, b, c.
  const EdgeSet e_direct = edges(3, {{1, 0}});
  const EdgeSet e_chain = edges(3, {{1, 0}, {1, 2}, {2, 0}});
  const EdgeSet e0 = edges(3, {{0, 1}});
  c.expect(!is_compatible(item_rel(e_direct), item_rel(e0)), "direct conflict not detected");
  c.expect(is_semi_compatible(item_rel(e_direct), item_rel(e0)), "direct conflict reported hidden");
  c.expect(!is_semi_compatible(item_rel(e_chain), item_rel(e0)), "hidden conflict b > c > a missed");
  c.expect(is_semi_compatible(item_rel(e_chain), item_rel(edges(3, {{0, 1}, {2, 1}}))), "adding (c,b) should unhide");
  c.expect(is_semi_compatible(item_rel(e_chain), item_rel(edges(3, {{0, 1}, {0, 2}}))), "adding (a,c) should unhide");

  gen::Rng rng(606);
  std::size_t hidden = 0;
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t n = gen::uniform(rng, 3, 6);
    EdgeSet e = gen::random_spo(rng, n, 0.45);
    EdgeSet f = gen::random_spo(rng, n, 0.3);
    const bool prose = hidden_conflicts_prose(e, f).empty();
    hidden += !prose;
    c.expect(is_semi_compatible(item_rel(e), item_rel(f)) == prose,
             "trial " + std::to_string(trial) + ": " + show_edges(e) + " vs " + show_edges(f));
  }
  return c.outcome("walkthrough reproduced; 500 random SPO pairs (" + std::to_string(hidden) +
                   " with hidden conflicts)");
}

// ---- 7 ----
struct Theorem {
  std::string name;
  RevisionMode mode;
  std::function<std::pair<EdgeSet, EdgeSet>(gen::Rng&, std::size_t)> sample;
  bool weak_target;  // also compare with the least weak order
};

bool compatible(const EdgeSet& e, const EdgeSet& e0) { return (e & e0.inverse()).empty(); }

EdgeSet random_weak_order(gen::Rng& rng, std::size_t n) { return gen::random_weak(rng, n, gen::uniform(rng, 2, n)); }

Outcome theorem_suite() {
  Check c;
  const std::vector<Theorem> theorems = {
      {"SPO + SCP compatible (refine)", RevisionMode::Refine,
       [](gen::Rng& rng, std::size_t n) {
         for (;;) {
           EdgeSet e = gen::random_spo(rng, n, 0.35), e0 = gen::random_chain(rng, n, 2);
           if (gen::coin(rng)) std::swap(e, e0);
           if (compatible(e, e0)) return std::pair{e, e0};
         }
       },
       false},
      {"SPO + weak compatible (refine)", RevisionMode::Refine,
       [](gen::Rng& rng, std::size_t n) {
         for (;;) {
           EdgeSet e = gen::random_spo(rng, n, 0.35), e0 = random_weak_order(rng, n);
           if (gen::coin(rng)) std::swap(e, e0);
           if (compatible(e, e0)) return std::pair{e, e0};
         }
       },
       false},
      {"weak + weak compatible (refine)", RevisionMode::Refine,
       [](gen::Rng& rng, std::size_t n) {
         for (;;) {
           EdgeSet e = random_weak_order(rng, n), e0 = random_weak_order(rng, n);
           if (compatible(e, e0)) return std::pair{e, e0};
         }
       },
       true},
      {"SPO overridden by weak", RevisionMode::Override,
       [](gen::Rng& rng, std::size_t n) {
         return std::pair{gen::random_spo(rng, n, 0.4), random_weak_order(rng, n)};
       },
       false},
      {"weak overridden by weak", RevisionMode::Override,
       [](gen::Rng& rng, std::size_t n) {
         return std::pair{random_weak_order(rng, n), random_weak_order(rng, n)};
       },
       true},
      {"SPO overridden by SCP SPO, semi-compatible", RevisionMode::Override,
       [](gen::Rng& rng, std::size_t n) {
         for (;;) {
           EdgeSet e = gen::random_spo(rng, n, 0.4), e0 = gen::random_chain(rng, n, 2);
           if (hidden_conflicts_prose(e, e0).empty()) return std::pair{e, e0};
         }
       },
       false},
  };

  gen::Rng rng(707);
  std::ostringstream paths;
  for (const auto& th : theorems) {
    std::map<std::string, std::size_t> path_counts;
    for (int trial = 0; trial < 500; ++trial) {
      const std::size_t n = gen::uniform(rng, 3, 5);
      auto [e, e0] = th.sample(rng, n);
      RevisionOptions o;
      o.domain = items(n);
      RevisionReport rep = revise(item_rel(e), item_rel(e0), th.mode, o);
      ++path_counts[std::string(fast_path_name(rep.fast_path))];
      const EdgeSet got = materialize(rep.result, items(n).tuples());
      const OracleMode om = th.mode == RevisionMode::Refine ? OracleMode::Refine : OracleMode::Override;
      const std::string tag = th.name + " trial " + std::to_string(trial) + " e=" + show_edges(e) +
                              " e0=" + show_edges(e0) + " got=" + show_edges(got);
      auto spo = least_revision_bruteforce(e, e0, om, TargetClass::Spo);
      c.expect(spo.least.has_value() && *spo.least == got, tag + " (least SPO)");
      c.expect(rep.least && rep.result_class.is_spo(), tag + " (report)");
      if (th.weak_target) {
        auto weak = least_revision_bruteforce(e, e0, om, TargetClass::Weak);
        c.expect(weak.least.has_value() && *weak.least == got, tag + " (least weak)");
        c.expect(rep.result_class.is_weak(), tag + " (weak class)");
      }
    }
    paths << " " << th.name << ":";
    for (const auto& [k, v] : path_counts) paths << " " << k << "=" << v;
    paths << ";";
  }
  return c.outcome("6 x 500 pairs vs brute force." + paths.str());
}

// ---- 8 ----
Outcome winnow_containment() {
  Check c;
  gen::Rng rng(808);
  const auto blocks = gen::spo_blocks();
  // Pool of verified (p1, p2) with p1 contained in p2, both SPOs.
  std::vector<std::pair<PrefRelation, PrefRelation>> pool;
  for (const auto& a : blocks) {
    PrefRelation p1 = gen::order_pref(a);
    pool.emplace_back(p1, p1);
    for (const auto& b : blocks) {
      if (a == b) continue;
      RevisionReport rep = refine(p1, gen::order_pref(b));
      if (!rep.result_class.is_spo()) continue;
      pool.emplace_back(p1, rep.result);
      RevisionReport over = override_revision(p1, gen::order_pref(b));
      // Overriding is not monotonic; keep it only when containment holds.
      if (over.result_class.is_spo() && entails(p1.formula(), over.result.formula())) {
        pool.emplace_back(p1, over.result);
      }
    }
  }
  for (int trial = 0; trial < 300; ++trial) {
    const auto& [p1, p2] = pool[gen::uniform(rng, 0, pool.size() - 1)];
    const std::string tag = "trial " + std::to_string(trial) + ": " + render(p1) + " vs " + render(p2);
    c.expect(entails(p1.formula(), p2.formula()) && classify(p1).is_spo() && classify(p2).is_spo(),
             "containment/SPO " + tag);
    RelationInstance r = gen::random_t_instance(rng, 50);
    RelationInstance w1 = winnow_generic(p1, r), w2 = winnow_generic(p2, r);
    bool subset = true;
    for (const auto& t : w2.tuples()) subset = subset && w1.contains(t);
    c.expect(subset, "w2 not within w1 " + tag);
    c.expect(winnow_generic(p2, w1) == w2, "iterated winnow differs " + tag);
  }
  return c.outcome("300 contained SPO pairs from a pool of " + std::to_string(pool.size()) +
                   " over 50-tuple instances");
}

// ---- 9 ----
Outcome weak_winnow() {
  Check c;
  gen::Rng rng(909);
  const auto blocks = gen::weak_blocks();
  std::size_t max_ratio_num = 0, max_ratio_den = 1;
  for (int trial = 0; trial < 300; ++trial) {
    PrefRelation p = gen::order_pref(gen::pick(rng, blocks));
    RelationInstance r(gen::order_schema());
    if (trial % 2 == 0) {
      // Lexicographic composition of weak orders stays weak.
      const std::size_t depth = gen::uniform(rng, 0, 2);
      for (std::size_t i = 0; i < depth; ++i) p = prioritized(p, gen::order_pref(gen::pick(rng, blocks)));
      r = gen::random_t_instance(rng, gen::uniform(rng, 0, 60));
    } else {
      const std::size_t n = gen::uniform(rng, 1, 26);
      p = item_rel(gen::random_weak(rng, n, gen::uniform(rng, 1, n)));
      r = items(n);
    }
    const std::string tag = "trial " + std::to_string(trial) + ": " + render(p);
    // A finite relation is weak only on its own items: anything outside them
    // is indifferent to everything.
    const OrderClass cls = trial % 2 == 0 ? classify(p) : classify_finite(p, r);
    c.expect(cls.is_weak(), "not weak " + tag);
    WinnowStats stats;
    RelationInstance got = winnow_weak(p, r, &stats);
    c.expect(got == winnow_generic(p, r), "result differs " + tag);
    c.expect(stats.evaluations <= 2 * r.size(),
             tag + ": " + std::to_string(stats.evaluations) + " evaluations for n=" + std::to_string(r.size()));
    if (stats.evaluations * max_ratio_den > max_ratio_num * std::max<std::size_t>(r.size(), 1)) {
      max_ratio_num = stats.evaluations;
      max_ratio_den = std::max<std::size_t>(r.size(), 1);
    }
  }
  return c.outcome("300 weak orders; worst evaluations/n = " + std::to_string(max_ratio_num) + "/" +
                   std::to_string(max_ratio_den));
}

// ---- 10 ----
Rational random_coef(gen::Rng& rng) {
  static const std::vector<Rational> pool{Rational(-2), Rational(-1), Rational(-1, 2), Rational(1, 2),
                                          Rational(1),  Rational(2),  Rational(3)};
  return gen::pick(rng, pool);
}

UtilityExpr random_utility(gen::Rng& rng) {
  UtilityExpr u(gen::order_schema(), Rational(static_cast<std::int64_t>(gen::uniform(rng, 0, 4))) - Rational(2));
  switch (gen::uniform(rng, 0, 3)) {
    case 0:
      break;
    case 1:
      u.add_linear("a", random_coef(rng));
      break;
    case 2:
      u.add_linear("b", random_coef(rng));
      break;
    default:
      for (const char* m : {"x", "y", "z"}) {
        if (gen::coin(rng, 0.6)) u.add_indicator("m", m, random_coef(rng));
      }
  }
  return u;
}

Outcome utility_theorem() {
  Check c;
  gen::Rng rng(1010);
  std::size_t rejected = 0;
  for (int trial = 0; trial < 200;) {
    UtilityExpr u = random_utility(rng), u0 = random_utility(rng);
    PrefRelation p = utility_relation(u), p0 = utility_relation(u0);
    const Formula fs[] = {p.formula(), p0.formula()};
    GridUniverse grid = GridUniverse::build(gen::order_schema(), fs, {}, GridRule{1, 1});
    // Random sample of grid tuples.
    std::vector<Tuple> ts;
    const std::size_t n = gen::uniform(rng, 2, 8);
    for (std::size_t i = 0; i < n; ++i) ts.push_back(grid.tuple(gen::uniform(rng, 0, grid.size() - 1)));
    RelationInstance r(gen::order_schema(), ts);
    EdgeSet e = materialize(p, r.tuples()), e0 = materialize(p0, r.tuples());
    if (!compatible(e, e0)) {
      ++rejected;
      continue;
    }
    ++trial;
    const std::string tag = "trial " + std::to_string(trial) + ": u=" + u.to_string() + " u0=" + u0.to_string();
    c.expect(represents(u, p, r) && represents(u0, p0, r), "utility relation mismatch " + tag);
    c.expect(classify(p).is_weak() && classify(p0).is_weak(), "not weak " + tag);
    const Rational a(static_cast<std::int64_t>(gen::uniform(rng, 1, 6)), static_cast<std::int64_t>(gen::uniform(rng, 1, 4)));
    const Rational b(static_cast<std::int64_t>(gen::uniform(rng, 1, 6)), static_cast<std::int64_t>(gen::uniform(rng, 1, 4)));
    const Rational k(static_cast<std::int64_t>(gen::uniform(rng, 0, 10)) - 5);
    UtilityExpr combined = combine_utilities(u, u0, a, b, k);
    c.expect(represents(combined, union_pref(p, p0), r),
             tag + " a=" + a.to_string() + " b=" + b.to_string() + " combined=" + combined.to_string());
  }
  return c.outcome("200 compatible utility pairs (" + std::to_string(rejected) + " incompatible samples rejected)");
}

struct Criterion {
  int id;
  std::string name;
  double limit_s;
  std::function<Outcome()> run;
};

}  // namespace

/// Optional arguments select criteria by number; default runs all.
int main(int argc, char** argv) {
  std::vector<int> only;
  for (int i = 1; i < argc; ++i) only.push_back(std::atoi(argv[i]));
  const std::vector<Criterion> criteria = {
      {1, "car-pipeline", 1, car_pipeline},
      {2, "refinement-exact", 1, refinement_exact},
      {3, "scp-fast-path", 1, scp_fast_path},
      {4, "overriding-exact", 5, overriding_exact},
      {5, "oracle-faithfulness", 60, oracle_faithfulness},
      {6, "semi-compatibility", 30, semi_compatibility},
      {7, "theorem-suite", 120, theorem_suite},
      {8, "winnow-containment", 30, winnow_containment},
      {9, "weak-order-winnow", 30, weak_winnow},
      {10, "utility-combination", 30, utility_theorem},
  };
  int failed = 0;
  for (const auto& cr : criteria) {
    if (!only.empty() && std::find(only.begin(), only.end(), cr.id) == only.end()) continue;
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = cr.run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = secs < cr.limit_s;
    if (!in_time) o.detail += "; over the time limit";
    const bool ok = o.pass && in_time;
    failed += !ok;
    char timing[64];
    std::snprintf(timing, sizeof timing, "%.2fs / %.0fs", secs, cr.limit_s);
    std::cout << (ok ? "PASS" : "FAIL") << " " << cr.id << " " << cr.name << " (" << timing << ") " << o.detail
              << std::endl;
  }
  std::cout << (failed == 0 ? "all criteria passed" : std::to_string(failed) + " criteria failed") << std::endl;
  return failed == 0 ? 0 : 1;
}
