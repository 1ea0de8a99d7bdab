#include <gtest/gtest.h>

#include "../support/fixtures.hpp"
#include "../support/random_gen.hpp"
#include "prefrev/algebra.hpp"
#include "prefrev/errors.hpp"
#include "prefrev/oracle.hpp"

using namespace prefrev;
using namespace fixtures;

TEST(Oracle, GridContainsConstantsAndWitnesses) {
  const Formula fs[] = {c3().formula()};
  const RelationInstance data[] = {r1()};
  GridUniverse u = GridUniverse::build(car_schema(), fs, data);
  EXPECT_TRUE(u.index_of(car("VW", 1999)).has_value());
  EXPECT_TRUE(u.index_of(car("Kia", 2002)).has_value());
  EXPECT_TRUE(u.index_of(Tuple{std::string("VW"), Rational(4001, 2)}).has_value());
  EXPECT_TRUE(u.index_of(Tuple{std::string("~1"), Rational(2003)}).has_value());
  EXPECT_TRUE(u.index_of(Tuple{std::string("~2"), Rational(1996)}).has_value());
  // 7 year values x 4 makes
  EXPECT_EQ(u.size(), 28u);
}

TEST(Oracle, DensifiedGridIsASuperset) {
  const Formula fs[] = {c4().formula()};
  GridUniverse coarse = GridUniverse::build(car_schema(), fs, {}, GridRule{1, 2});
  GridUniverse fine = coarse.densified(GridRule{3, 3}, 1'000'000);
  for (const auto& t : coarse.tuples()) EXPECT_TRUE(fine.index_of(t).has_value());
}

TEST(Oracle, UniverseCap) {
  const Formula fs[] = {c4().formula()};
  EXPECT_THROW(GridUniverse::build(car_schema(), fs, {}, GridRule{5, 5}, 100), PreconditionError);
}

TEST(Oracle, Materialize) {
  RelationInstance pair(car_schema(), {car("VW", 1999), car("Kia", 1999)});
  EdgeSet e = materialize(c3(), GridUniverse::of_instance(pair));
  EXPECT_EQ(e.pairs(), (std::vector<std::pair<std::size_t, std::size_t>>{{0, 1}}));
  EXPECT_TRUE(materialize(PrefRelation::empty(car_schema()), pair.tuples()).empty());
  EXPECT_EQ(materialize(PrefRelation(car_schema(), Formula::truth()), r1().tuples()).count(), 9u);
}

TEST(Oracle, GraphTc) {
  EdgeSet e = edges(3, {{0, 1}, {1, 2}});
  EdgeSet tc = graph_tc(e);
  EXPECT_TRUE(tc.test(0, 2));
  EXPECT_EQ(graph_tc(tc), tc);
  EXPECT_TRUE(graph_tc(EdgeSet(3)).empty());
  // Intermediates outside the database reach (VW,2002) -> (Kia,1997).
  const Formula fs[] = {c1().formula(), c3().formula()};
  const RelationInstance data[] = {r1()};
  GridUniverse u = GridUniverse::build(car_schema(), fs, data);
  EdgeSet closed = graph_tc(materialize(union_pref(c1(), c3()), u));
  EXPECT_TRUE(closed.test(*u.index_of(car("VW", 2002)), *u.index_of(car("Kia", 1997))));
}

TEST(Oracle, GraphAxioms) {
  EXPECT_EQ(graph_axioms(edges(3, {{0, 1}, {1, 2}, {0, 2}})).derived, OrderKind::Total);
  EXPECT_EQ(graph_axioms(edges(4, {{0, 1}, {1, 2}, {0, 2}})).derived, OrderKind::Spo);
  EXPECT_FALSE(graph_axioms(graph_tc(edges(2, {{0, 1}, {1, 0}}))).irreflexive);
  EXPECT_TRUE(graph_scp(edges(4, {{0, 1}})));
  EXPECT_FALSE(graph_scp(edges(4, {{0, 1}, {2, 3}})));
}

TEST(Oracle, LeastRevisionSwapExample) {
  EdgeSet e = edges(3, {{0, 1}, {1, 2}, {0, 2}});
  EdgeSet e0 = edges(3, {{1, 0}});
  auto r = least_revision_bruteforce(e, e0, OracleMode::Override, TargetClass::Spo);
  ASSERT_TRUE(r.least.has_value());
  EXPECT_EQ(*r.least, edges(3, {{1, 0}, {1, 2}, {0, 2}}));
}

TEST(Oracle, NoSpoRefinementForTheFourCycle) {
  EdgeSet e = edges(4, {{0, 1}, {2, 3}});
  EdgeSet e0 = edges(4, {{1, 2}, {3, 0}});
  auto r = least_revision_bruteforce(e, e0, OracleMode::Refine, TargetClass::Spo);
  EXPECT_EQ(r.candidates, 0u);
  EXPECT_FALSE(r.least.has_value());
  auto t = least_revision_bruteforce(e, e0, OracleMode::Refine, TargetClass::Transitive);
  ASSERT_TRUE(t.least.has_value());
  EXPECT_EQ(*t.least, graph_tc(e | e0));
}

TEST(Oracle, LeastRevisionOfAnSpoWithNothing) {
  EdgeSet e = edges(4, {{0, 1}, {0, 2}});
  auto r = least_revision_bruteforce(e, EdgeSet(4), OracleMode::Refine, TargetClass::Spo);
  ASSERT_TRUE(r.least.has_value());
  EXPECT_EQ(*r.least, e);
  // Weak order extensions of a > b, a > c, d: several minimal ones, no least.
  auto w = least_revision_bruteforce(edges(3, {{0, 1}}), EdgeSet(3), OracleMode::Refine, TargetClass::Weak);
  EXPECT_FALSE(w.least.has_value());
  EXPECT_GE(w.minimal.size(), 2u);
}

TEST(Oracle, HiddenConflictsProse) {
  EdgeSet e = edges(3, {{1, 0}, {1, 2}, {2, 0}});
  using Pairs = std::vector<std::pair<std::size_t, std::size_t>>;
  EXPECT_EQ(hidden_conflicts_prose(edges(3, {{1, 0}}), edges(3, {{0, 1}})), Pairs{});
  EXPECT_EQ(hidden_conflicts_prose(e, edges(3, {{0, 1}})), (Pairs{{0, 1}}));
  EXPECT_EQ(hidden_conflicts_prose(e, edges(3, {{0, 1}, {2, 1}})), Pairs{});
  EXPECT_EQ(hidden_conflicts_prose(e, edges(3, {{0, 1}, {0, 2}})), Pairs{});
  EXPECT_EQ(hidden_conflicts_prose(e, EdgeSet(3)), Pairs{});
}

TEST(Oracle, BruteForceContainsTheBase) {
  gen::Rng rng(81);
  for (int trial = 0; trial < 100; ++trial) {
    EdgeSet e = gen::random_spo(rng, 4, 0.4);
    EdgeSet e0 = gen::random_spo(rng, 4, 0.3);
    for (OracleMode mode : {OracleMode::Refine, OracleMode::Override}) {
      auto r = least_revision_bruteforce(e, e0, mode, TargetClass::Spo);
      const EdgeSet base = mode == OracleMode::Refine ? (e | e0) : graph_prioritized(e0, e);
      if (r.least) ASSERT_TRUE(base.subset_of(*r.least));
    }
  }
}

TEST(Oracle, GridSatisfiable) {
  GridUniverse u = GridUniverse::build(gen::q_schema(), {}, {}, GridRule{1, 2});
  Formula f = parse_formula("L.a > R.a", gen::q_schema()).formula();
  EXPECT_TRUE(grid_satisfiable(f, u, 2));
  EXPECT_FALSE(grid_satisfiable(parse_formula("L.a > L.a", gen::q_schema()).formula(), u, 2));
}
