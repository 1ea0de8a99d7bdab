#pragma once
// Text formats: schema files, preference files and CSV instances.
//
//   relation Car (make: D, year: Q)
//   pref C1 over Car: L.make = R.make and L.year > R.year;
//
// Lines starting with '#' are comments in schema and preference files. A
// preference entry may span several lines and ends at the first ';' outside
// a string literal.

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "prefrev/formula.hpp"
#include "prefrev/instance.hpp"

namespace prefrev {

/// One `relation` line. Throws ParseError, or UnsupportedError for a domain
/// tag other than D or Q.
Schema parse_schema_line(std::string_view line);
/// All `relation` lines of a file, in order. At least one is required.
std::vector<Schema> parse_schema_file(std::string_view text);

struct NamedPref {
  std::string name;
  PrefRelation relation;
};

/// Every `pref` entry. The schema named after `over` must be among
/// `schemas`; preference names must be unique. ParseError carries the
/// 1-based line of the offending entry.
std::vector<NamedPref> parse_pref_file(std::string_view text, std::span<const Schema> schemas);
const NamedPref& find_pref(std::span<const NamedPref> prefs, std::string_view name);

/// `pref <name> over <schema>: <formula>;`
std::string format_pref(std::string_view name, const PrefRelation& p);

/// Header row must list the schema attributes in order. D values raw or
/// single-quoted, Q values as decimals or p/q. Duplicate rows collapse
/// (see RelationInstance::duplicates_dropped).
RelationInstance parse_csv(std::string_view text, const Schema& schema);
/// Header plus one row per tuple; rationals print as p or p/q, strings raw
/// unless they need quoting.
std::string format_csv(const RelationInstance& r);

/// Whole file contents; throws Error when unreadable.
std::string read_file(const std::string& path);

}  // namespace prefrev
