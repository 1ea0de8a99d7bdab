#include "prefrev/parser.hpp"

#include <cctype>
#include <optional>
#include <stdexcept>

#include "prefrev/errors.hpp"

namespace prefrev {

namespace {

enum class Tok { Ident, String, Number, Op, LParen, RParen, Dot, End };

struct Token {
  Tok kind;
  std::string text;
  std::size_t pos;
};

bool iequals(std::string_view a, std::string_view b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (std::tolower(static_cast<unsigned char>(a[i])) != std::tolower(static_cast<unsigned char>(b[i]))) {
      return false;
    }
  }
  return true;
}

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  Token next() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    std::size_t start = pos_;
    if (pos_ >= text_.size()) return {Tok::End, "", start};
    char c = text_[pos_];
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
        ++pos_;
      }
      return {Tok::Ident, std::string(text_.substr(start, pos_ - start)), start};
    }
    if (std::isdigit(static_cast<unsigned char>(c)) ||
        (c == '-' && pos_ + 1 < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_ + 1])))) {
      ++pos_;
      while (pos_ < text_.size() &&
             (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.' || text_[pos_] == '/')) {
        ++pos_;
      }
      return {Tok::Number, std::string(text_.substr(start, pos_ - start)), start};
    }
    if (c == '\'') {
      std::string value;
      ++pos_;
      for (;;) {
        if (pos_ >= text_.size()) throw ParseError("unterminated string literal at position " + std::to_string(start), start);
        if (text_[pos_] == '\'') {
          if (pos_ + 1 < text_.size() && text_[pos_ + 1] == '\'') {
            value.push_back('\'');
            pos_ += 2;
            continue;
          }
          ++pos_;
          break;
        }
        value.push_back(text_[pos_++]);
      }
      return {Tok::String, std::move(value), start};
    }
    ++pos_;
    switch (c) {
      case '(': return {Tok::LParen, "(", start};
      case ')': return {Tok::RParen, ")", start};
      case '.': return {Tok::Dot, ".", start};
      case '=': return {Tok::Op, "=", start};
      case '!':
        if (pos_ < text_.size() && text_[pos_] == '=') {
          ++pos_;
          return {Tok::Op, "!=", start};
        }
        break;
      case '<':
      case '>':
        if (pos_ < text_.size() && text_[pos_] == '=') {
          ++pos_;
          return {Tok::Op, std::string{c, '='}, start};
        }
        if (c == '<' && pos_ < text_.size() && text_[pos_] == '>') {
          ++pos_;
          return {Tok::Op, "!=", start};
        }
        return {Tok::Op, std::string{c}, start};
      default: break;
    }
    throw ParseError("unexpected character '" + std::string{c} + "' at position " + std::to_string(start), start);
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
};

class Parser {
 public:
  Parser(std::string_view text, const Schema& schema) : lexer_(text), schema_(schema) { advance(); }

  Formula parse() {
    Formula f = disj();
    if (cur_.kind != Tok::End) fail("unexpected '" + cur_.text + "'");
    return f;
  }

 private:
  void advance() { cur_ = lexer_.next(); }

  [[noreturn]] void fail(const std::string& msg) const { fail_at(msg, cur_.pos); }
  [[noreturn]] static void fail_at(const std::string& msg, std::size_t pos) {
    throw ParseError(msg + " at position " + std::to_string(pos), pos);
  }

  bool at_keyword(std::string_view kw) const { return cur_.kind == Tok::Ident && iequals(cur_.text, kw); }

  Formula disj() {
    std::vector<Formula> parts{conj()};
    while (at_keyword("or")) {
      advance();
      parts.push_back(conj());
    }
    return Formula::disj(std::move(parts));
  }

  Formula conj() {
    std::vector<Formula> parts{unit()};
    while (at_keyword("and")) {
      advance();
      parts.push_back(unit());
    }
    return Formula::conj(std::move(parts));
  }

  Formula unit() {
    if (at_keyword("not")) {
      advance();
      return Formula::negate(unit());
    }
    if (at_keyword("true")) {
      advance();
      return Formula::truth();
    }
    if (at_keyword("false")) {
      advance();
      return Formula::falsity();
    }
    if (cur_.kind == Tok::LParen) {
      advance();
      Formula f = disj();
      if (cur_.kind != Tok::RParen) fail("expected ')'");
      advance();
      return f;
    }
    return atom();
  }

  Formula atom() {
    std::size_t start = cur_.pos;
    Term lhs = term();
    if (cur_.kind != Tok::Op) fail("expected comparison operator");
    Op op = to_op(cur_.text);
    advance();
    Term rhs = term();
    try {
      return Formula::compare(std::move(lhs), op, std::move(rhs));
    } catch (const UnsupportedError& e) {
      fail_at(std::string("domain mismatch: ") + e.what(), start);
    }
  }

  static Op to_op(const std::string& s) {
    if (s == "=") return Op::Eq;
    if (s == "!=") return Op::Ne;
    if (s == "<") return Op::Lt;
    if (s == "<=") return Op::Le;
    if (s == ">") return Op::Gt;
    return Op::Ge;
  }

  Term term() {
    switch (cur_.kind) {
      case Tok::String: {
        Term t = Term::constant(cur_.text);
        advance();
        return t;
      }
      case Tok::Number: {
        Rational r;
        try {
          r = Rational::parse(cur_.text);
        } catch (const std::exception& e) {
          fail(e.what());
        }
        advance();
        return Term::constant(r);
      }
      case Tok::Ident: {
        Token var = cur_;
        advance();
        if (cur_.kind != Tok::Dot) fail_at("expected term, found '" + var.text + "'", var.pos);
        VarId id;
        if (var.text == "L") {
          id = kLeft;
        } else if (var.text == "R") {
          id = kRight;
        } else {
          fail_at("unknown tuple variable '" + var.text + "' (expected L or R)", var.pos);
        }
        advance();
        if (cur_.kind != Tok::Ident) fail("expected attribute name");
        auto idx = schema_.find(cur_.text);
        if (!idx) fail("unknown attribute '" + cur_.text + "' in schema '" + schema_.name() + "'");
        Term t = Term::attr(id, static_cast<std::uint32_t>(*idx), schema_.attr(*idx).domain);
        advance();
        return t;
      }
      default: fail(cur_.kind == Tok::End ? "unexpected end of formula" : "expected term, found '" + cur_.text + "'");
    }
  }

  Lexer lexer_;
  const Schema& schema_;
  Token cur_{Tok::End, "", 0};
};

std::string render_term(const Term& t, const Schema& schema) {
  if (t.is_const()) {
    if (t.domain() == Domain::Q) return std::get<Rational>(t.value()).to_string();
    std::string out = "'";
    for (char c : std::get<std::string>(t.value())) {
      out.push_back(c);
      if (c == '\'') out.push_back('\'');
    }
    return out + "'";
  }
  std::string var = t.var() == kLeft ? "L" : t.var() == kRight ? "R" : "V" + std::to_string(t.var());
  std::string attr = t.attr_index() < schema.arity() ? schema.attr(t.attr_index()).name
                                                     : "a" + std::to_string(t.attr_index());
  return var + "." + attr;
}

std::string render_rec(const Formula& f, const Schema& schema, int parent_prec) {
  using K = Formula::Kind;
  switch (f.kind()) {
    case K::True: return "true";
    case K::False: return "false";
    case K::Atom: return render_atom(f.as_atom(), schema);
    case K::Not: return "not " + render_rec(f.children().front(), schema, 3);
    case K::And:
    case K::Or: {
      int prec = f.kind() == K::Or ? 1 : 2;
      std::string sep = f.kind() == K::Or ? " or " : " and ";
      std::string out;
      for (std::size_t i = 0; i < f.children().size(); ++i) {
        if (i) out += sep;
        out += render_rec(f.children()[i], schema, prec);
      }
      return prec < parent_prec ? "(" + out + ")" : out;
    }
  }
  return "";
}

}  // namespace

PrefRelation parse_formula(std::string_view text, const Schema& schema) {
  Parser parser(text, schema);
  return PrefRelation(schema, parser.parse());
}

std::string render_atom(const Atom& a, const Schema& schema) {
  return render_term(a.lhs(), schema) + " " + std::string(op_symbol(a.op())) + " " +
         render_term(a.rhs(), schema);
}

std::string render(const Formula& f, const Schema& schema) { return render_rec(f, schema, 0); }

std::string render(const PrefRelation& p) { return render(p.formula(), p.schema()); }

}  // namespace prefrev
