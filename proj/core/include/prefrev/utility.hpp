#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>

#include "prefrev/formula.hpp"
#include "prefrev/instance.hpp"

namespace prefrev {

/// Affine utility over one tuple: a constant, rational multiples of Q
/// attributes and rational multiples of indicators [A = 'c'] on D
/// attributes (valued 0 or 1). Like terms are merged.
class UtilityExpr {
 public:
  explicit UtilityExpr(Schema schema, Rational constant = 0);

  /// Adds coef * x.attr for a Q attribute. Throws SchemaError otherwise.
  UtilityExpr& add_linear(std::string_view attr, Rational coef);
  /// Adds coef * [x.attr = value] for a D attribute.
  UtilityExpr& add_indicator(std::string_view attr, std::string value, Rational coef);
  UtilityExpr& add_constant(Rational c);

  const Schema& schema() const { return schema_; }
  const Rational& constant() const { return constant_; }
  const std::map<std::uint32_t, Rational>& linear() const { return linear_; }
  const std::map<std::pair<std::uint32_t, std::string>, Rational>& indicators() const { return indicators_; }

  Rational eval(const Tuple& t) const;

  UtilityExpr scaled(const Rational& k) const;
  friend UtilityExpr operator+(const UtilityExpr& a, const UtilityExpr& b);

  /// e.g. "2*x.year + 3*[x.make = 'VW'] + 1"
  std::string to_string() const;

 private:
  void prune();

  Schema schema_;
  Rational constant_;
  std::map<std::uint32_t, Rational> linear_;
  std::map<std::pair<std::uint32_t, std::string>, Rational> indicators_;
};

/// a*u + b*u0 + c. Throws PreconditionError unless a > 0 and b > 0.
UtilityExpr combine_utilities(const UtilityExpr& u, const UtilityExpr& u0, const Rational& a,
                              const Rational& b, const Rational& c);

/// For all t1, t2 in r: t1 p t2 iff u(t1) > u(t2).
bool represents(const UtilityExpr& u, const PrefRelation& p, const RelationInstance& r);

/// u(L) > u(R) (op = Gt) or u(L) = u(R) (op = Eq) as an ipf. Expressible
/// only when all non-constant terms of u mention one attribute (a multiple
/// of it for Q, indicators on it for D); otherwise throws UnsupportedError.
Formula utility_comparison(const UtilityExpr& u, Op op);

/// Relation of u: t1 > t2 iff u(t1) > u(t2).
PrefRelation utility_relation(const UtilityExpr& u);

/// Hidden-attribute refinement: {u(L) > u(R)} union
/// {u(L) = u(R) and u0(L) > u0(R)}.
PrefRelation refine_utility_scenario(const UtilityExpr& u, const UtilityExpr& u0);

}  // namespace prefrev
