#pragma once

// Constraint formulas over two tuple variables: equality constraints on the
// uninterpreted-constant domain D and order constraints on the rationals Q.

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "prefrev/rational.hpp"

namespace prefrev {

enum class Domain : std::uint8_t { D, Q };

std::string_view domain_name(Domain d);

struct Attribute {
  std::string name;
  Domain domain;

  friend bool operator==(const Attribute&, const Attribute&) = default;
};

/// Relation schema R(A1 ... Ak). Attribute names are unique, k >= 1.
class Schema {
 public:
  Schema(std::string name, std::vector<Attribute> attrs);

  const std::string& name() const { return name_; }
  std::span<const Attribute> attrs() const { return attrs_; }
  const Attribute& attr(std::size_t i) const { return attrs_.at(i); }
  std::size_t arity() const { return attrs_.size(); }
  std::optional<std::size_t> find(std::string_view attr) const;

  friend bool operator==(const Schema&, const Schema&) = default;

 private:
  std::string name_;
  std::vector<Attribute> attrs_;
};

/// Ground value: a string constant for D, an exact rational for Q.
using Value = std::variant<std::string, Rational>;

inline Domain domain_of(const Value& v) {
  return std::holds_alternative<std::string>(v) ? Domain::D : Domain::Q;
}
std::string value_to_string(const Value& v);

using Tuple = std::vector<Value>;

/// Throws SchemaError if the arity or a value domain disagrees with `schema`.
void check_tuple(const Schema& schema, const Tuple& t);

using VarId = std::uint32_t;
inline constexpr VarId kLeft = 0;   // L, the preferred tuple
inline constexpr VarId kRight = 1;  // R

/// Comparison operator encoded as the set of outcomes {<, =, >} it accepts.
/// Complement and side-swap are bit operations on this encoding.
enum class Op : std::uint8_t {
  Gt = 0b001,
  Eq = 0b010,
  Ge = 0b011,
  Lt = 0b100,
  Ne = 0b101,
  Le = 0b110,
};

inline constexpr std::uint8_t kAllOutcomes = 0b111;

inline Op complement(Op op) { return static_cast<Op>(kAllOutcomes & ~static_cast<std::uint8_t>(op)); }

/// Operator after exchanging the two sides: a < b  <=>  b > a.
inline Op flip(Op op) {
  auto b = static_cast<std::uint8_t>(op);
  return static_cast<Op>((b & 0b010) | ((b & 0b001) << 2) | ((b & 0b100) >> 2));
}

std::string_view op_symbol(Op op);

/// Whether `op` accepts the outcome of comparing two values with <=>.
bool op_accepts(Op op, std::strong_ordering cmp);

/// Either a reference to attribute `attr` of tuple variable `var`, or a
/// constant.
class Term {
 public:
  static Term attr(VarId var, std::uint32_t attr, Domain domain) {
    Term t;
    t.var_ = var;
    t.attr_ = attr;
    t.domain_ = domain;
    return t;
  }
  static Term constant(Value v) {
    Term t;
    t.domain_ = domain_of(v);
    t.value_ = std::move(v);
    return t;
  }

  bool is_const() const { return value_.has_value(); }
  VarId var() const { return var_; }
  std::uint32_t attr_index() const { return attr_; }
  Domain domain() const { return domain_; }
  const Value& value() const { return *value_; }

  /// Attribute references order by (var, attr) and precede all constants.
  friend std::strong_ordering operator<=>(const Term& a, const Term& b);
  friend bool operator==(const Term& a, const Term& b) { return (a <=> b) == 0; }

 private:
  VarId var_ = 0;
  std::uint32_t attr_ = 0;
  Domain domain_ = Domain::D;
  std::optional<Value> value_;
};

/// A single constraint `lhs op rhs`. Canonical form: lhs is an attribute
/// reference, lhs < rhs in Term order (so a constant, if any, is on the
/// right), both sides share a domain and D atoms use only = and !=.
class Atom {
 public:
  /// Normalizes orientation and folds atoms whose truth value is fixed
  /// (two constants, or the same term on both sides). Throws
  /// UnsupportedError on a domain mismatch or an order operator on D.
  static std::variant<bool, Atom> make(Term lhs, Op op, Term rhs);

  Op op() const { return op_; }
  const Term& lhs() const { return lhs_; }
  const Term& rhs() const { return rhs_; }
  Domain domain() const { return lhs_.domain(); }

  /// The atom with the complementary operator.
  Atom negated() const;

  friend std::strong_ordering operator<=>(const Atom& a, const Atom& b);
  friend bool operator==(const Atom& a, const Atom& b) { return (a <=> b) == 0; }

 private:
  Atom(Term lhs, Op op, Term rhs) : op_(op), lhs_(std::move(lhs)), rhs_(std::move(rhs)) {}

  Op op_;
  Term lhs_;
  Term rhs_;
};

/// Immutable boolean combination of atoms. Copies share structure.
class Formula {
 public:
  enum class Kind : std::uint8_t { True, False, Atom, And, Or, Not };

  Formula();  // TRUE

  static Formula truth();
  static Formula falsity();
  static Formula literal(bool value) { return value ? truth() : falsity(); }
  static Formula atom(Atom a);
  /// Builds `lhs op rhs`, folding it to a literal when its value is fixed.
  static Formula compare(Term lhs, Op op, Term rhs);
  /// Flattening constructors; TRUE/FALSE operands are absorbed.
  static Formula conj(std::vector<Formula> parts);
  static Formula disj(std::vector<Formula> parts);
  static Formula negate(Formula f);

  Kind kind() const;
  bool is_true() const { return kind() == Kind::True; }
  bool is_false() const { return kind() == Kind::False; }
  const Atom& as_atom() const;
  std::span<const Formula> children() const;

  /// Structural equality (not logical equivalence).
  friend bool operator==(const Formula& a, const Formula& b);

 private:
  struct Node;
  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

inline Formula operator&&(Formula a, Formula b) { return Formula::conj({std::move(a), std::move(b)}); }
inline Formula operator||(Formula a, Formula b) { return Formula::disj({std::move(a), std::move(b)}); }
inline Formula operator!(Formula a) { return Formula::negate(std::move(a)); }

/// Replaces every attribute reference through `fn`; atoms are re-folded.
Formula substitute(const Formula& f, const std::function<Term(const Term&)>& fn);

/// Renames tuple variables: every reference to `from[i]` becomes `to[i]`.
Formula rename_vars(const Formula& f, std::span<const VarId> from, std::span<const VarId> to);

/// f(L, R) -> f(R, L).
Formula swap_sides(const Formula& f);

/// Sorted, duplicate-free list of tuple variables referenced by `f`.
std::vector<VarId> free_vars(const Formula& f);

/// Rational and string constants appearing in `f`.
void collect_constants(const Formula& f, std::vector<Rational>& q, std::vector<std::string>& d);

/// Truth value under `binding[var]`; every referenced variable must be bound.
bool eval(const Formula& f, std::span<const Tuple* const> binding);
bool eval_atom(const Atom& a, std::span<const Tuple* const> binding);

/// Negation normal form: NOT eliminated by complementing atom operators.
Formula to_nnf(const Formula& f);

/// Conjunction of atoms, kept sorted and duplicate-free.
using Conjunct = std::vector<Atom>;
using Dnf = std::vector<Conjunct>;

/// Inserts `a` keeping the conjunct canonical.
void add_atom(Conjunct& c, const Atom& a);

/// Purely syntactic disjunctive normal form (no satisfiability pruning).
Dnf dnf_of(const Formula& f);
Formula from_dnf(const Dnf& dnf);
Formula from_conjunct(const Conjunct& c);

/// to_dnf as a Formula: a disjunction of conjunctions of atoms.
Formula to_dnf(const Formula& f);

/// A preference relation: schema plus a formula whose free variables are
/// among {L, R}. `t1 > t2` iff formula(L := t1, R := t2).
class PrefRelation {
 public:
  PrefRelation(Schema schema, Formula formula);

  const Schema& schema() const { return schema_; }
  const Formula& formula() const { return formula_; }

  static PrefRelation empty(Schema schema) { return {std::move(schema), Formula::falsity()}; }

 private:
  Schema schema_;
  Formula formula_;
};

/// t1 > t2 under `p`. Throws SchemaError if a tuple does not conform.
bool eval_ground(const PrefRelation& p, const Tuple& t1, const Tuple& t2);

/// Throws SchemaError unless both relations share a schema.
void require_same_schema(const PrefRelation& a, const PrefRelation& b);

/// Formula that holds exactly for L = t1 and R = t2; used to encode finite
/// relations such as {(a, b), (b, c)} as ipfs.
Formula pair_formula(const Schema& schema, const Tuple& t1, const Tuple& t2);

/// Finite relation {(t1, t2), ...} as a preference relation.
PrefRelation finite_relation(const Schema& schema,
                             std::span<const std::pair<Tuple, Tuple>> pairs);

}  // namespace prefrev
