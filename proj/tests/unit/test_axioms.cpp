#include <gtest/gtest.h>

#include "../support/fixtures.hpp"
#include "../support/random_gen.hpp"
#include "prefrev/algebra.hpp"
#include "prefrev/axioms.hpp"
#include "prefrev/errors.hpp"
#include "prefrev/oracle.hpp"

using namespace prefrev;
using namespace fixtures;

TEST(Axioms, Irreflexivity) {
  EXPECT_TRUE(is_irreflexive(cstar()));
  EXPECT_FALSE(is_irreflexive(car_pref("L.year >= R.year")));
  EXPECT_TRUE(is_irreflexive(PrefRelation::empty(car_schema())));
}

TEST(Axioms, Transitivity) {
  EXPECT_TRUE(is_transitive(c1()));
  EXPECT_FALSE(is_transitive(item_rel({{0, 1}, {1, 2}})));
  EXPECT_TRUE(is_transitive(c4()));
}

TEST(Axioms, NegativeTransitivity) {
  EXPECT_FALSE(is_negatively_transitive(c1()));
  EXPECT_FALSE(is_negatively_transitive(c2()));
  EXPECT_TRUE(is_negatively_transitive(parse_formula("L.a > R.a", gen::q_schema())));
  EXPECT_TRUE(is_negatively_transitive(PrefRelation::empty(car_schema())));
}

TEST(Axioms, Connectivity) {
  EXPECT_TRUE(is_connected(parse_formula("L.a > R.a", gen::q_schema())));
  EXPECT_FALSE(is_connected(c1()));
  EXPECT_FALSE(is_connected(PrefRelation::empty(car_schema())));
}

TEST(Axioms, Classify) {
  OrderClass k1 = classify(c1());
  EXPECT_EQ(k1.derived, OrderKind::Spo);
  EXPECT_EQ(describe(k1), "SPO (not weak): irreflexive ✓ transitive ✓ neg-transitive ✗ connected ✗");
  EXPECT_EQ(classify(c4()).derived, OrderKind::Spo);
  EXPECT_EQ(classify(parse_formula("L.a > R.a", gen::q_schema())).derived, OrderKind::Total);
  EXPECT_EQ(classify(car_pref("L.year > R.year")).derived, OrderKind::Weak);
  EXPECT_EQ(classify(car_pref("L.year >= R.year")).derived, OrderKind::None);
}

TEST(Axioms, ClassIsConsistentWithFlags) {
  for (int bits = 0; bits < 16; ++bits) {
    OrderClass c = OrderClass::from_flags(bits & 1, bits & 2, bits & 4, bits & 8);
    EXPECT_EQ(c.is_spo(), c.irreflexive && c.transitive);
    if (c.is_weak()) EXPECT_TRUE(c.is_spo());
    if (c.is_total()) EXPECT_TRUE(c.is_weak());
  }
}

TEST(Axioms, ScpOnFiniteUniverses) {
  RelationInstance u(car_schema(), {car("VW", 1999), car("Kia", 1999)});
  EXPECT_TRUE(has_scp_finite(c3(), u));
  EXPECT_FALSE(has_scp_finite(item_rel({{0, 1}, {2, 3}}), items(4)));
  EXPECT_TRUE(has_scp_finite(PrefRelation::empty(item_schema()), items(4)));
  EXPECT_TRUE(has_scp_finite(item_rel({{0, 1}, {1, 2}, {0, 2}}), items(4)));
  EXPECT_FALSE(has_scp_finite(item_rel({{0, 1}, {0, 2}}), items(3)));
  EXPECT_THROW(has_scp_finite(item_rel({{0, 1}, {1, 2}}), items(3)), PreconditionError);
}

TEST(Axioms, FiniteClassification) {
  // A finite relation is a weak order on its own items, never on the
  // infinite domain.
  PrefRelation chain = item_rel({{0, 1}, {1, 2}, {0, 2}});
  EXPECT_TRUE(classify_finite(chain, items(3)).is_total());
  EXPECT_FALSE(classify(chain).is_weak());
  EXPECT_TRUE(classify(chain).is_spo());
}

TEST(Axioms, SymbolicChecksAgreeWithGrid) {
  gen::Rng rng(51);
  for (const Schema& s : {gen::mixed_schema(), gen::q_schema(), gen::d_schema()}) {
    for (int trial = 0; trial < 80; ++trial) {
      PrefRelation p = gen::random_pref(rng, s);
      const Formula fs[] = {p.formula()};
      GridUniverse u = GridUniverse::build(s, fs, {}, GridRule{3, 3}, 1'000'000);
      ASSERT_EQ(classify(p), graph_axioms(materialize(p, u))) << render(p);
    }
  }
}

TEST(Axioms, TransitiveClosureIsTransitive) {
  gen::Rng rng(52);
  for (int trial = 0; trial < 40; ++trial) {
    PrefRelation p = gen::random_pref(rng, gen::mixed_schema(), 2, 3);
    ASSERT_TRUE(classify(transitive_closure(p)).transitive);
  }
}
