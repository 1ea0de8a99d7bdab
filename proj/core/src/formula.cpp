#include "prefrev/formula.hpp"

#include <algorithm>
#include <set>
#include <utility>

#include "prefrev/errors.hpp"

namespace prefrev {

std::string_view domain_name(Domain d) { return d == Domain::D ? "D" : "Q"; }

Schema::Schema(std::string name, std::vector<Attribute> attrs)
    : name_(std::move(name)), attrs_(std::move(attrs)) {
  if (attrs_.empty()) throw SchemaError("schema '" + name_ + "' has no attributes");
  std::set<std::string_view> seen;
  for (const auto& a : attrs_) {
    if (!seen.insert(a.name).second) {
      throw SchemaError("duplicate attribute '" + a.name + "' in schema '" + name_ + "'");
    }
  }
}

std::optional<std::size_t> Schema::find(std::string_view attr) const {
  for (std::size_t i = 0; i < attrs_.size(); ++i) {
    if (attrs_[i].name == attr) return i;
  }
  return std::nullopt;
}

std::string value_to_string(const Value& v) {
  if (const auto* s = std::get_if<std::string>(&v)) return *s;
  return std::get<Rational>(v).to_string();
}

void check_tuple(const Schema& schema, const Tuple& t) {
  if (t.size() != schema.arity()) {
    throw SchemaError("tuple arity " + std::to_string(t.size()) + " does not match schema '" +
                      schema.name() + "' of arity " + std::to_string(schema.arity()));
  }
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (domain_of(t[i]) != schema.attr(i).domain) {
      throw SchemaError("value '" + value_to_string(t[i]) + "' is not in the domain of attribute '" +
                        schema.attr(i).name + "'");
    }
  }
}

std::string_view op_symbol(Op op) {
  switch (op) {
    case Op::Gt: return ">";
    case Op::Eq: return "=";
    case Op::Ge: return ">=";
    case Op::Lt: return "<";
    case Op::Ne: return "!=";
    case Op::Le: return "<=";
  }
  return "?";
}

bool op_accepts(Op op, std::strong_ordering cmp) {
  auto bits = static_cast<std::uint8_t>(op);
  if (cmp < 0) return bits & 0b100;
  if (cmp > 0) return bits & 0b001;
  return bits & 0b010;
}

namespace {

std::strong_ordering compare_values(const Value& a, const Value& b) {
  if (a.index() != b.index()) return a.index() <=> b.index();
  if (const auto* s = std::get_if<std::string>(&a)) {
    int c = s->compare(std::get<std::string>(b));
    return c <=> 0;
  }
  return std::get<Rational>(a) <=> std::get<Rational>(b);
}

}  // namespace

std::strong_ordering operator<=>(const Term& a, const Term& b) {
  if (a.is_const() != b.is_const()) return a.is_const() ? std::strong_ordering::greater : std::strong_ordering::less;
  if (!a.is_const()) {
    if (auto c = a.var_ <=> b.var_; c != 0) return c;
    if (auto c = a.attr_ <=> b.attr_; c != 0) return c;
    return static_cast<int>(a.domain_) <=> static_cast<int>(b.domain_);
  }
  return compare_values(*a.value_, *b.value_);
}

std::variant<bool, Atom> Atom::make(Term lhs, Op op, Term rhs) {
  if (lhs.domain() != rhs.domain()) {
    throw UnsupportedError("comparison between a D term and a Q term");
  }
  if (lhs.domain() == Domain::D && op != Op::Eq && op != Op::Ne) {
    throw UnsupportedError("order comparison '" + std::string(op_symbol(op)) +
                           "' on the uninterpreted domain D");
  }
  if (lhs.is_const() && rhs.is_const()) {
    if (lhs.domain() == Domain::D) {
      bool eq = std::get<std::string>(lhs.value()) == std::get<std::string>(rhs.value());
      return op == Op::Eq ? eq : !eq;
    }
    return op_accepts(op, std::get<Rational>(lhs.value()) <=> std::get<Rational>(rhs.value()));
  }
  auto order = lhs <=> rhs;
  if (order == 0) return op_accepts(op, std::strong_ordering::equal);
  if (order > 0) {
    std::swap(lhs, rhs);
    op = flip(op);
  }
  return Atom(std::move(lhs), op, std::move(rhs));
}

Atom Atom::negated() const { return Atom(lhs_, complement(op_), rhs_); }

std::strong_ordering operator<=>(const Atom& a, const Atom& b) {
  if (auto c = a.lhs_ <=> b.lhs_; c != 0) return c;
  if (auto c = a.rhs_ <=> b.rhs_; c != 0) return c;
  return static_cast<int>(a.op_) <=> static_cast<int>(b.op_);
}

struct Formula::Node {
  Kind kind;
  std::optional<Atom> atom;
  std::vector<Formula> children;
};

Formula::Formula() : node_(nullptr) {}

Formula Formula::truth() { return Formula(); }

Formula Formula::falsity() {
  static const auto node = std::make_shared<const Node>(Node{Kind::False, std::nullopt, {}});
  return Formula(node);
}

Formula Formula::atom(Atom a) {
  return Formula(std::make_shared<const Node>(Node{Kind::Atom, std::move(a), {}}));
}

Formula Formula::compare(Term lhs, Op op, Term rhs) {
  auto made = Atom::make(std::move(lhs), op, std::move(rhs));
  if (const bool* b = std::get_if<bool>(&made)) return literal(*b);
  return atom(std::get<Atom>(std::move(made)));
}

Formula Formula::conj(std::vector<Formula> parts) {
  std::vector<Formula> flat;
  for (auto& p : parts) {
    switch (p.kind()) {
      case Kind::True: break;
      case Kind::False: return falsity();
      case Kind::And:
        for (const auto& c : p.children()) flat.push_back(c);
        break;
      default: flat.push_back(std::move(p));
    }
  }
  if (flat.empty()) return truth();
  if (flat.size() == 1) return flat.front();
  return Formula(std::make_shared<const Node>(Node{Kind::And, std::nullopt, std::move(flat)}));
}

Formula Formula::disj(std::vector<Formula> parts) {
  std::vector<Formula> flat;
  for (auto& p : parts) {
    switch (p.kind()) {
      case Kind::False: break;
      case Kind::True: return truth();
      case Kind::Or:
        for (const auto& c : p.children()) flat.push_back(c);
        break;
      default: flat.push_back(std::move(p));
    }
  }
  if (flat.empty()) return falsity();
  if (flat.size() == 1) return flat.front();
  return Formula(std::make_shared<const Node>(Node{Kind::Or, std::nullopt, std::move(flat)}));
}

Formula Formula::negate(Formula f) {
  switch (f.kind()) {
    case Kind::True: return falsity();
    case Kind::False: return truth();
    case Kind::Atom: return atom(f.as_atom().negated());
    case Kind::Not: return f.children().front();
    default:
      return Formula(std::make_shared<const Node>(Node{Kind::Not, std::nullopt, {std::move(f)}}));
  }
}

Formula::Kind Formula::kind() const { return node_ ? node_->kind : Kind::True; }

const Atom& Formula::as_atom() const { return *node_->atom; }

std::span<const Formula> Formula::children() const {
  if (!node_) return {};
  return node_->children;
}

bool operator==(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case Formula::Kind::True:
    case Formula::Kind::False: return true;
    case Formula::Kind::Atom: return a.as_atom() == b.as_atom();
    default: {
      auto ca = a.children();
      auto cb = b.children();
      return std::equal(ca.begin(), ca.end(), cb.begin(), cb.end());
    }
  }
}

Formula substitute(const Formula& f, const std::function<Term(const Term&)>& fn) {
  using K = Formula::Kind;
  switch (f.kind()) {
    case K::True:
    case K::False: return f;
    case K::Atom: {
      const Atom& a = f.as_atom();
      Term l = a.lhs().is_const() ? a.lhs() : fn(a.lhs());
      Term r = a.rhs().is_const() ? a.rhs() : fn(a.rhs());
      return Formula::compare(std::move(l), a.op(), std::move(r));
    }
    case K::Not: return Formula::negate(substitute(f.children().front(), fn));
    case K::And:
    case K::Or: {
      std::vector<Formula> parts;
      parts.reserve(f.children().size());
      for (const auto& c : f.children()) parts.push_back(substitute(c, fn));
      return f.kind() == K::And ? Formula::conj(std::move(parts)) : Formula::disj(std::move(parts));
    }
  }
  return f;
}

Formula rename_vars(const Formula& f, std::span<const VarId> from, std::span<const VarId> to) {
  return substitute(f, [&](const Term& t) {
    for (std::size_t i = 0; i < from.size(); ++i) {
      if (t.var() == from[i]) return Term::attr(to[i], t.attr_index(), t.domain());
    }
    return t;
  });
}

Formula swap_sides(const Formula& f) {
  const VarId from[] = {kLeft, kRight};
  const VarId to[] = {kRight, kLeft};
  return rename_vars(f, from, to);
}

namespace {

template <typename Fn>
void for_each_atom(const Formula& f, Fn&& fn) {
  if (f.kind() == Formula::Kind::Atom) {
    fn(f.as_atom());
    return;
  }
  for (const auto& c : f.children()) for_each_atom(c, fn);
}

}  // namespace

std::vector<VarId> free_vars(const Formula& f) {
  std::vector<VarId> out;
  for_each_atom(f, [&](const Atom& a) {
    for (const Term* t : {&a.lhs(), &a.rhs()}) {
      if (!t->is_const()) out.push_back(t->var());
    }
  });
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

void collect_constants(const Formula& f, std::vector<Rational>& q, std::vector<std::string>& d) {
  for_each_atom(f, [&](const Atom& a) {
    if (!a.rhs().is_const()) return;
    if (a.domain() == Domain::Q) {
      q.push_back(std::get<Rational>(a.rhs().value()));
    } else {
      d.push_back(std::get<std::string>(a.rhs().value()));
    }
  });
}

namespace {

const Value& term_value(const Term& t, std::span<const Tuple* const> binding) {
  if (t.is_const()) return t.value();
  return (*binding[t.var()])[t.attr_index()];
}

}  // namespace

bool eval_atom(const Atom& a, std::span<const Tuple* const> binding) {
  const Value& l = term_value(a.lhs(), binding);
  const Value& r = term_value(a.rhs(), binding);
  if (a.domain() == Domain::D) {
    bool eq = std::get<std::string>(l) == std::get<std::string>(r);
    return a.op() == Op::Eq ? eq : !eq;
  }
  return op_accepts(a.op(), std::get<Rational>(l) <=> std::get<Rational>(r));
}

bool eval(const Formula& f, std::span<const Tuple* const> binding) {
  using K = Formula::Kind;
  switch (f.kind()) {
    case K::True: return true;
    case K::False: return false;
    case K::Atom: return eval_atom(f.as_atom(), binding);
    case K::Not: return !eval(f.children().front(), binding);
    case K::And:
      for (const auto& c : f.children()) {
        if (!eval(c, binding)) return false;
      }
      return true;
    case K::Or:
      for (const auto& c : f.children()) {
        if (eval(c, binding)) return true;
      }
      return false;
  }
  return false;
}

namespace {

Formula nnf(const Formula& f, bool negated) {
  using K = Formula::Kind;
  switch (f.kind()) {
    case K::True: return Formula::literal(!negated);
    case K::False: return Formula::literal(negated);
    case K::Atom: return Formula::atom(negated ? f.as_atom().negated() : f.as_atom());
    case K::Not: return nnf(f.children().front(), !negated);
    case K::And:
    case K::Or: {
      std::vector<Formula> parts;
      for (const auto& c : f.children()) parts.push_back(nnf(c, negated));
      bool as_and = (f.kind() == K::And) != negated;
      return as_and ? Formula::conj(std::move(parts)) : Formula::disj(std::move(parts));
    }
  }
  return f;
}

bool has_complementary_pair(const Conjunct& c) {
  for (const auto& a : c) {
    if (std::binary_search(c.begin(), c.end(), a.negated())) return true;
  }
  return false;
}

Dnf dnf_rec(const Formula& f) {
  using K = Formula::Kind;
  switch (f.kind()) {
    case K::True: return {Conjunct{}};
    case K::False: return {};
    case K::Atom: return {Conjunct{f.as_atom()}};
    case K::Or: {
      Dnf out;
      for (const auto& c : f.children()) {
        Dnf part = dnf_rec(c);
        out.insert(out.end(), std::make_move_iterator(part.begin()), std::make_move_iterator(part.end()));
      }
      return out;
    }
    case K::And: {
      Dnf acc{Conjunct{}};
      for (const auto& child : f.children()) {
        Dnf part = dnf_rec(child);
        Dnf next;
        for (const auto& a : acc) {
          for (const auto& b : part) {
            Conjunct merged = a;
            for (const auto& atom : b) add_atom(merged, atom);
            if (!has_complementary_pair(merged)) next.push_back(std::move(merged));
          }
        }
        acc = std::move(next);
        if (acc.empty()) break;
      }
      return acc;
    }
    case K::Not: break;  // unreachable after NNF
  }
  return {};
}

}  // namespace

Formula to_nnf(const Formula& f) { return nnf(f, false); }

void add_atom(Conjunct& c, const Atom& a) {
  auto it = std::lower_bound(c.begin(), c.end(), a);
  if (it == c.end() || *it != a) c.insert(it, a);
}

Dnf dnf_of(const Formula& f) {
  Dnf out = dnf_rec(to_nnf(f));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Formula from_conjunct(const Conjunct& c) {
  std::vector<Formula> parts;
  parts.reserve(c.size());
  for (const auto& a : c) parts.push_back(Formula::atom(a));
  return Formula::conj(std::move(parts));
}

Formula from_dnf(const Dnf& dnf) {
  std::vector<Formula> parts;
  parts.reserve(dnf.size());
  for (const auto& c : dnf) parts.push_back(from_conjunct(c));
  return Formula::disj(std::move(parts));
}

Formula to_dnf(const Formula& f) { return from_dnf(dnf_of(f)); }

PrefRelation::PrefRelation(Schema schema, Formula formula)
    : schema_(std::move(schema)), formula_(std::move(formula)) {
  for_each_atom(formula_, [&](const Atom& a) {
    for (const Term* t : {&a.lhs(), &a.rhs()}) {
      if (t->is_const()) continue;
      if (t->var() != kLeft && t->var() != kRight) {
        throw SchemaError("preference formula refers to a tuple variable other than L and R");
      }
      if (t->attr_index() >= schema_.arity() ||
          schema_.attr(t->attr_index()).domain != t->domain()) {
        throw SchemaError("preference formula does not conform to schema '" + schema_.name() + "'");
      }
    }
  });
}

bool eval_ground(const PrefRelation& p, const Tuple& t1, const Tuple& t2) {
  check_tuple(p.schema(), t1);
  check_tuple(p.schema(), t2);
  const Tuple* binding[] = {&t1, &t2};
  return eval(p.formula(), binding);
}

void require_same_schema(const PrefRelation& a, const PrefRelation& b) {
  if (!(a.schema() == b.schema())) {
    throw SchemaError("preference relations over different schemas '" + a.schema().name() +
                      "' and '" + b.schema().name() + "'");
  }
}

Formula pair_formula(const Schema& schema, const Tuple& t1, const Tuple& t2) {
  check_tuple(schema, t1);
  check_tuple(schema, t2);
  std::vector<Formula> parts;
  for (std::uint32_t i = 0; i < schema.arity(); ++i) {
    Domain d = schema.attr(i).domain;
    parts.push_back(Formula::compare(Term::attr(kLeft, i, d), Op::Eq, Term::constant(t1[i])));
    parts.push_back(Formula::compare(Term::attr(kRight, i, d), Op::Eq, Term::constant(t2[i])));
  }
  return Formula::conj(std::move(parts));
}

PrefRelation finite_relation(const Schema& schema,
                             std::span<const std::pair<Tuple, Tuple>> pairs) {
  std::vector<Formula> parts;
  parts.reserve(pairs.size());
  for (const auto& [a, b] : pairs) parts.push_back(pair_formula(schema, a, b));
  return PrefRelation(schema, Formula::disj(std::move(parts)));
}

}  // namespace prefrev
