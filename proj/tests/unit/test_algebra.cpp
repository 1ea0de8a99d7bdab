#include <gtest/gtest.h>

#include "../support/fixtures.hpp"
#include "../support/random_gen.hpp"
#include "prefrev/algebra.hpp"
#include "prefrev/axioms.hpp"
#include "prefrev/errors.hpp"
#include "prefrev/oracle.hpp"
#include "prefrev/solver.hpp"

using namespace prefrev;
using namespace fixtures;

namespace {

bool equiv(const PrefRelation& a, const PrefRelation& b) { return equivalent(a.formula(), b.formula()); }

}  // namespace

TEST(Algebra, UnionIdentityAndIdempotence) {
  PrefRelation u = union_pref(c1(), c2());
  auto r = r1();
  EXPECT_TRUE(eval_ground(u, r.tuple(0), r.tuple(1)));
  EXPECT_TRUE(eval_ground(u, r.tuple(1), r.tuple(2)));
  EXPECT_TRUE(equiv(union_pref(c1(), PrefRelation::empty(car_schema())), c1()));
  EXPECT_TRUE(equiv(union_pref(c1(), c1()), c1()));
  EXPECT_THROW(union_pref(c1(), item_rel({{0, 1}})), SchemaError);
}

TEST(Algebra, Indifference) {
  auto r = r1();
  PrefRelation ind = indifference(c1());
  EXPECT_TRUE(eval_ground(ind, r.tuple(0), r.tuple(2)));
  EXPECT_FALSE(eval_ground(ind, r.tuple(0), r.tuple(1)));
  EXPECT_TRUE(equivalent(ind.formula(), swap_sides(ind.formula())));
  EXPECT_TRUE(indifference(PrefRelation::empty(car_schema())).formula().is_true() ||
              equivalent(indifference(PrefRelation::empty(car_schema())).formula(), Formula::truth()));
}

TEST(Algebra, PrioritizedSwapExample) {
  // p = a > b > c, p0 = {(b,a)}
  PrefRelation p = item_rel({{0, 1}, {1, 2}, {0, 2}});
  PrefRelation p0 = item_rel({{1, 0}});
  PrefRelation pr = prioritized(p0, p);
  EXPECT_TRUE(equiv(pr, item_rel({{1, 0}, {1, 2}, {0, 2}})));
  EXPECT_TRUE(equiv(prioritized(PrefRelation::empty(item_schema()), p), p));
}

TEST(Algebra, PrioritizedEqualsUnionWhenCompatible) {
  EXPECT_TRUE(equiv(prioritized(c2(), c1()), union_pref(c2(), c1())));
}

TEST(Algebra, Inverse) {
  EXPECT_TRUE(equiv(inverse(inverse(c1())), c1()));
  PrefRelation gt = parse_formula("L.a > R.a", gen::q_schema());
  EXPECT_TRUE(equiv(inverse(gt), parse_formula("L.a < R.a", gen::q_schema())));
  EXPECT_TRUE(equiv(inverse(item_rel({{0, 1}})), item_rel({{1, 0}})));
}

TEST(Algebra, Compose) {
  EXPECT_TRUE(equiv(compose(c1(), c1()), c1()));
  EXPECT_TRUE(equiv(compose(c1(), PrefRelation::empty(car_schema())), PrefRelation::empty(car_schema())));
  // (VW,2002) -> (VW,1999) -> (Kia,1999) -> (Kia,1997)
  PrefRelation two = compose(compose(c1(), c3()), c1());
  EXPECT_TRUE(eval_ground(two, car("VW", 2002), car("Kia", 1997)));
  EXPECT_FALSE(eval_ground(two, car("VW", 1998), car("Kia", 1997)));
}

TEST(Algebra, Difference) {
  EXPECT_TRUE(equiv(difference(c1(), c1()), PrefRelation::empty(car_schema())));
  EXPECT_TRUE(equiv(difference(c1(), PrefRelation::empty(car_schema())), c1()));
  PrefRelation d = difference(item_rel({{1, 0}, {1, 2}, {2, 0}}), item_rel({{1, 0}}));
  EXPECT_TRUE(equiv(d, item_rel({{1, 2}, {2, 0}})));
}

TEST(Algebra, TransitiveClosureOfTheRunningExample) {
  EXPECT_TRUE(equiv(transitive_closure(union_pref(c1(), c2())), cstar()));
  EXPECT_TRUE(equiv(transitive_closure(union_pref(c1(), c3())), c4()));
  PrefRelation empty = PrefRelation::empty(car_schema());
  EXPECT_TRUE(equiv(transitive_closure(empty), empty));
}

TEST(Algebra, TransitiveClosureIterationCap) {
  // A finite chain of length 5 needs several rounds.
  PrefRelation chain = item_rel({{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}});
  EXPECT_THROW(transitive_closure(chain, 1), IterationCapError);
  EXPECT_NO_THROW(transitive_closure(chain, 8));
}

TEST(Algebra, TransitiveClosureProperties) {
  gen::Rng rng(41);
  const Schema s = gen::mixed_schema();
  for (int trial = 0; trial < 60; ++trial) {
    PrefRelation p = gen::random_pref(rng, s, 2, 3);
    PrefRelation tc = transitive_closure(p);
    ASSERT_TRUE(entails(p.formula(), tc.formula()));
    ASSERT_TRUE(is_transitive(tc));
    ASSERT_TRUE(equiv(transitive_closure(tc), tc));
  }
}

TEST(Algebra, OperatorsMatchSetDefinitionsOnGrids) {
  gen::Rng rng(42);
  const Schema s = gen::mixed_schema();
  for (int trial = 0; trial < 60; ++trial) {
    PrefRelation p = gen::random_pref(rng, s, 2, 3);
    PrefRelation q = gen::random_pref(rng, s, 2, 3);
    const Formula fs[] = {p.formula(), q.formula()};
    GridUniverse u = GridUniverse::build(s, fs, {}, GridRule{1, 2}, 1'000'000);
    EdgeSet ep = materialize(p, u), eq = materialize(q, u);
    ASSERT_EQ(materialize(union_pref(p, q), u), ep | eq);
    ASSERT_EQ(materialize(inverse(p), u), ep.inverse());
    ASSERT_EQ(materialize(difference(p, q), u), ep.minus(eq));
    ASSERT_EQ(materialize(prioritized(q, p), u), graph_prioritized(eq, ep));
  }
}
