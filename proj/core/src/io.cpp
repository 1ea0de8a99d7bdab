#include "prefrev/io.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "prefrev/errors.hpp"
#include "prefrev/parser.hpp"

namespace prefrev {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

bool is_ident(std::string_view s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  return std::all_of(s.begin(), s.end(), [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; });
}

bool starts_with_word(std::string_view s, std::string_view word) {
  if (s.size() < word.size()) return false;
  for (std::size_t i = 0; i < word.size(); ++i) {
    if (std::tolower(static_cast<unsigned char>(s[i])) != word[i]) return false;
  }
  return s.size() == word.size() || std::isspace(static_cast<unsigned char>(s[word.size()]));
}

std::size_t line_of(std::string_view text, std::size_t offset) {
  return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + std::min(offset, text.size()), '\n'));
}

bool comment_or_blank(std::string_view line) {
  line = trim(line);
  return line.empty() || line.front() == '#';
}

}  // namespace

Schema parse_schema_line(std::string_view line) {
  std::string_view s = trim(line);
  if (!starts_with_word(s, "relation")) throw ParseError("expected 'relation' at position 0", 0);
  s = trim(s.substr(8));
  const auto open = s.find('(');
  const auto close = s.rfind(')');
  if (open == std::string_view::npos || close == std::string_view::npos || close < open ||
      !trim(s.substr(close + 1)).empty()) {
    throw ParseError("expected 'relation Name (attr: D|Q, ...)'", 0);
  }
  std::string name(trim(s.substr(0, open)));
  if (!is_ident(name)) throw ParseError("invalid relation name '" + name + "'", 0);
  std::vector<Attribute> attrs;
  std::string_view body = s.substr(open + 1, close - open - 1);
  while (true) {
    const auto comma = body.find(',');
    std::string_view item = trim(body.substr(0, comma));
    const auto colon = item.find(':');
    if (colon == std::string_view::npos) throw ParseError("expected 'attr: D|Q' in '" + std::string(item) + "'", 0);
    std::string attr(trim(item.substr(0, colon)));
    std::string tag(trim(item.substr(colon + 1)));
    if (!is_ident(attr)) throw ParseError("invalid attribute name '" + attr + "'", 0);
    if (tag == "D" || tag == "d") {
      attrs.push_back({attr, Domain::D});
    } else if (tag == "Q" || tag == "q") {
      attrs.push_back({attr, Domain::Q});
    } else if (is_ident(tag)) {
      throw UnsupportedError("unsupported domain '" + tag + "' for attribute '" + attr +
                             "' (only D and Q are supported)");
    } else {
      throw ParseError("invalid domain for attribute '" + attr + "'", 0);
    }
    if (comma == std::string_view::npos) break;
    body = body.substr(comma + 1);
  }
  try {
    return Schema(std::move(name), std::move(attrs));
  } catch (const SchemaError& e) {
    throw ParseError(e.what(), 0);
  }
}

std::vector<Schema> parse_schema_file(std::string_view text) {
  std::vector<Schema> out;
  std::size_t lineno = 0;
  std::istringstream in{std::string(text)};
  for (std::string line; std::getline(in, line);) {
    ++lineno;
    if (comment_or_blank(line)) continue;
    try {
      out.push_back(parse_schema_line(line));
    } catch (const ParseError& e) {
      throw ParseError("line " + std::to_string(lineno) + ": " + e.what(), 0, lineno);
    }
    for (std::size_t i = 0; i + 1 < out.size(); ++i) {
      if (out[i].name() == out.back().name()) {
        throw ParseError("line " + std::to_string(lineno) + ": duplicate relation '" + out.back().name() + "'", 0,
                         lineno);
      }
    }
  }
  if (out.empty()) throw ParseError("no relation declared", 0);
  return out;
}

std::vector<NamedPref> parse_pref_file(std::string_view text, std::span<const Schema> schemas) {
  std::vector<NamedPref> out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    // Skip blanks and comment lines.
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos >= text.size()) break;
    if (text[pos] == '#') {
      pos = text.find('\n', pos);
      if (pos == std::string_view::npos) break;
      continue;
    }
    const std::size_t start = pos;
    const std::size_t line = line_of(text, start);
    auto fail = [&](const std::string& msg) -> ParseError {
      return ParseError("line " + std::to_string(line) + ": " + msg, start, line);
    };
    // Entry ends at the first ';' outside quotes.
    std::size_t end = pos;
    bool quoted = false;
    for (; end < text.size(); ++end) {
      if (text[end] == '\'') quoted = !quoted;
      if (text[end] == ';' && !quoted) break;
    }
    if (end >= text.size()) throw fail("missing ';' at end of preference entry");
    std::string_view entry = text.substr(start, end - start);
    pos = end + 1;

    if (!starts_with_word(entry, "pref")) throw fail("expected 'pref <name> over <relation>: <formula>;'");
    const auto colon = entry.find(':');
    if (colon == std::string_view::npos) throw fail("expected ':' after the relation name");
    std::istringstream head{std::string(entry.substr(4, colon - 4))};
    std::string name, over, rel, extra;
    head >> name >> over >> rel;
    if (!is_ident(name) || (over != "over" && over != "OVER") || !is_ident(rel) || (head >> extra)) {
      throw fail("expected 'pref <name> over <relation>:'");
    }
    auto schema = std::find_if(schemas.begin(), schemas.end(), [&](const Schema& s) { return s.name() == rel; });
    if (schema == schemas.end()) throw fail("unknown relation '" + rel + "'");
    for (const auto& p : out) {
      if (p.name == name) throw fail("duplicate preference '" + name + "'");
    }
    std::string_view body = entry.substr(colon + 1);
    try {
      out.push_back({name, parse_formula(body, *schema)});
    } catch (const ParseError& e) {
      const std::size_t abs = start + colon + 1 + e.position();
      const std::size_t l = line_of(text, abs);
      throw ParseError("line " + std::to_string(l) + ", preference '" + name + "': " + e.what(), abs, l);
    }
  }
  return out;
}

const NamedPref& find_pref(std::span<const NamedPref> prefs, std::string_view name) {
  for (const auto& p : prefs) {
    if (p.name == name) return p;
  }
  throw Error("no preference named '" + std::string(name) + "'");
}

std::string format_pref(std::string_view name, const PrefRelation& p) {
  return "pref " + std::string(name) + " over " + p.schema().name() + ": " + render(p) + ";\n";
}

namespace {

// Splits one CSV line on commas outside single quotes; quotes are kept.
std::vector<std::string> split_csv(std::string_view line) {
  std::vector<std::string> cells(1);
  bool quoted = false;
  for (char c : line) {
    if (c == '\'') quoted = !quoted;
    if (c == ',' && !quoted) {
      cells.emplace_back();
    } else {
      cells.back() += c;
    }
  }
  return cells;
}

Value parse_cell(std::string_view cell, Domain d) {
  cell = trim(cell);
  if (d == Domain::Q) return Rational::parse(cell);
  if (cell.size() >= 2 && cell.front() == '\'' && cell.back() == '\'') {
    std::string out;
    std::string_view inner = cell.substr(1, cell.size() - 2);
    for (std::size_t i = 0; i < inner.size(); ++i) {
      if (inner[i] == '\'') {
        if (i + 1 >= inner.size() || inner[i + 1] != '\'') throw std::invalid_argument("stray quote");
        ++i;
      }
      out += inner[i];
    }
    return out;
  }
  if (cell.find('\'') != std::string_view::npos) throw std::invalid_argument("stray quote");
  return std::string(cell);
}

std::string format_cell(const Value& v) {
  if (const auto* r = std::get_if<Rational>(&v)) return r->to_string();
  const auto& s = std::get<std::string>(v);
  const bool plain = !s.empty() && s.find_first_of(",'") == std::string::npos && trim(s) == s;
  if (plain) return s;
  std::string out = "'";
  for (char c : s) {
    if (c == '\'') out += '\'';
    out += c;
  }
  return out + "'";
}

}  // namespace

RelationInstance parse_csv(std::string_view text, const Schema& schema) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  bool header = false;
  std::vector<Tuple> tuples;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) continue;
    auto cells = split_csv(line);
    if (!header) {
      bool ok = cells.size() == schema.arity();
      for (std::size_t i = 0; ok && i < cells.size(); ++i) ok = trim(cells[i]) == schema.attr(i).name;
      if (!ok) {
        std::string expected;
        for (std::size_t i = 0; i < schema.arity(); ++i) expected += (i ? "," : "") + schema.attr(i).name;
        throw ParseError("line 1: CSV header must be '" + expected + "'", 0, lineno);
      }
      header = true;
      continue;
    }
    if (cells.size() != schema.arity()) {
      throw ParseError("line " + std::to_string(lineno) + ": expected " + std::to_string(schema.arity()) +
                           " values, got " + std::to_string(cells.size()),
                       0, lineno);
    }
    Tuple t;
    for (std::size_t i = 0; i < cells.size(); ++i) {
      try {
        t.push_back(parse_cell(cells[i], schema.attr(i).domain));
      } catch (const std::exception& e) {
        throw ParseError("line " + std::to_string(lineno) + ": bad value '" + std::string(trim(cells[i])) +
                             "' for attribute '" + schema.attr(i).name + "'",
                         0, lineno);
      }
    }
    tuples.push_back(std::move(t));
  }
  if (!header) throw ParseError("empty CSV: header row missing", 0, 1);
  return RelationInstance(schema, std::move(tuples));
}

std::string format_csv(const RelationInstance& r) {
  std::string out;
  for (std::size_t i = 0; i < r.schema().arity(); ++i) out += (i ? "," : "") + r.schema().attr(i).name;
  out += '\n';
  for (const auto& t : r.tuples()) {
    for (std::size_t i = 0; i < t.size(); ++i) out += (i ? "," : "") + format_cell(t[i]);
    out += '\n';
  }
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace prefrev
