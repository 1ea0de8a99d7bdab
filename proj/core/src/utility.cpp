#include "prefrev/utility.hpp"

#include <set>
#include <vector>

#include "prefrev/errors.hpp"

namespace prefrev {

namespace {

std::uint32_t lookup(const Schema& schema, std::string_view attr, Domain expected) {
  auto idx = schema.find(attr);
  if (!idx) throw SchemaError("unknown attribute '" + std::string(attr) + "' in schema '" + schema.name() + "'");
  if (schema.attr(*idx).domain != expected) {
    throw SchemaError("attribute '" + std::string(attr) + "' is not a " + std::string(domain_name(expected)) +
                      " attribute");
  }
  return static_cast<std::uint32_t>(*idx);
}

}  // namespace

UtilityExpr::UtilityExpr(Schema schema, Rational constant)
    : schema_(std::move(schema)), constant_(constant) {}

UtilityExpr& UtilityExpr::add_linear(std::string_view attr, Rational coef) {
  linear_[lookup(schema_, attr, Domain::Q)] += coef;
  prune();
  return *this;
}

UtilityExpr& UtilityExpr::add_indicator(std::string_view attr, std::string value, Rational coef) {
  indicators_[{lookup(schema_, attr, Domain::D), std::move(value)}] += coef;
  prune();
  return *this;
}

UtilityExpr& UtilityExpr::add_constant(Rational c) {
  constant_ += c;
  return *this;
}

void UtilityExpr::prune() {
  std::erase_if(linear_, [](const auto& kv) { return kv.second == 0; });
  std::erase_if(indicators_, [](const auto& kv) { return kv.second == 0; });
}

Rational UtilityExpr::eval(const Tuple& t) const {
  check_tuple(schema_, t);
  Rational sum = constant_;
  for (const auto& [attr, coef] : linear_) sum += coef * std::get<Rational>(t[attr]);
  for (const auto& [key, coef] : indicators_) {
    if (std::get<std::string>(t[key.first]) == key.second) sum += coef;
  }
  return sum;
}

UtilityExpr UtilityExpr::scaled(const Rational& k) const {
  UtilityExpr out(schema_, constant_ * k);
  for (const auto& [attr, coef] : linear_) out.linear_[attr] = coef * k;
  for (const auto& [key, coef] : indicators_) out.indicators_[key] = coef * k;
  out.prune();
  return out;
}

UtilityExpr operator+(const UtilityExpr& a, const UtilityExpr& b) {
  if (!(a.schema_ == b.schema_)) throw SchemaError("utilities over different schemas");
  UtilityExpr out = a;
  out.constant_ += b.constant_;
  for (const auto& [attr, coef] : b.linear_) out.linear_[attr] += coef;
  for (const auto& [key, coef] : b.indicators_) out.indicators_[key] += coef;
  out.prune();
  return out;
}

std::string UtilityExpr::to_string() const {
  std::vector<std::string> parts;
  auto coef_prefix = [](const Rational& c) { return c == 1 ? std::string() : c.to_string() + "*"; };
  for (const auto& [attr, coef] : linear_) parts.push_back(coef_prefix(coef) + "x." + schema_.attr(attr).name);
  for (const auto& [key, coef] : indicators_) {
    parts.push_back(coef_prefix(coef) + "[x." + schema_.attr(key.first).name + " = '" + key.second + "']");
  }
  if (constant_ != 0 || parts.empty()) parts.push_back(constant_.to_string());
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += " + ";
    out += parts[i];
  }
  return out;
}

UtilityExpr combine_utilities(const UtilityExpr& u, const UtilityExpr& u0, const Rational& a,
                              const Rational& b, const Rational& c) {
  if (a.sign() <= 0 || b.sign() <= 0) {
    throw PreconditionError("combine_utilities requires a > 0 and b > 0");
  }
  UtilityExpr out = u.scaled(a) + u0.scaled(b);
  out.add_constant(c);
  return out;
}

bool represents(const UtilityExpr& u, const PrefRelation& p, const RelationInstance& r) {
  std::vector<Rational> values;
  values.reserve(r.size());
  for (const auto& t : r.tuples()) values.push_back(u.eval(t));
  for (std::size_t i = 0; i < r.size(); ++i) {
    for (std::size_t j = 0; j < r.size(); ++j) {
      if (eval_ground(p, r.tuple(i), r.tuple(j)) != (values[i] > values[j])) return false;
    }
  }
  return true;
}

Formula utility_comparison(const UtilityExpr& u, Op op) {
  if (op != Op::Gt && op != Op::Eq) throw PreconditionError("utility_comparison supports only > and =");
  const auto& lin = u.linear();
  const auto& ind = u.indicators();
  if (lin.empty() && ind.empty()) return Formula::literal(op == Op::Eq);

  if (ind.empty() && lin.size() == 1) {
    auto [attr, coef] = *lin.begin();
    Term l = Term::attr(kLeft, attr, Domain::Q);
    Term r = Term::attr(kRight, attr, Domain::Q);
    Op cmp = op == Op::Eq ? Op::Eq : (coef.sign() > 0 ? Op::Gt : Op::Lt);
    return Formula::compare(l, cmp, r);
  }

  std::set<std::uint32_t> attrs;
  for (const auto& [key, coef] : ind) attrs.insert(key.first);
  if (!lin.empty() || attrs.size() != 1) {
    throw UnsupportedError("utility comparison '" + u.to_string() + "' is not expressible with order/equality atoms");
  }

  // Categories: each indicator constant, plus "none of them" with value 0.
  const std::uint32_t attr = *attrs.begin();
  struct Category {
    std::optional<std::string> constant;
    Rational value;
  };
  std::vector<Category> cats;
  for (const auto& [key, coef] : ind) cats.push_back({key.second, coef});
  cats.push_back({std::nullopt, Rational(0)});

  auto member = [&](VarId var, const Category& c) {
    Term t = Term::attr(var, attr, Domain::D);
    if (c.constant) return Formula::compare(t, Op::Eq, Term::constant(*c.constant));
    std::vector<Formula> parts;
    for (const auto& other : cats) {
      if (other.constant) parts.push_back(Formula::compare(t, Op::Ne, Term::constant(*other.constant)));
    }
    return Formula::conj(std::move(parts));
  };

  std::vector<Formula> cases;
  for (const auto& a : cats) {
    for (const auto& b : cats) {
      bool holds = op == Op::Eq ? a.value == b.value : a.value > b.value;
      if (holds) cases.push_back(member(kLeft, a) && member(kRight, b));
    }
  }
  return Formula::disj(std::move(cases));
}

PrefRelation utility_relation(const UtilityExpr& u) { return {u.schema(), utility_comparison(u, Op::Gt)}; }

PrefRelation refine_utility_scenario(const UtilityExpr& u, const UtilityExpr& u0) {
  if (!(u.schema() == u0.schema())) throw SchemaError("utilities over different schemas");
  Formula base = utility_comparison(u, Op::Gt);
  Formula tie_break = utility_comparison(u, Op::Eq) && utility_comparison(u0, Op::Gt);
  return {u.schema(), base || tie_break};
}

}  // namespace prefrev
