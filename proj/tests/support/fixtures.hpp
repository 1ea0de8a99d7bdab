#pragma once
// The running car example and a one-attribute item schema for finite
// relations over named elements a, b, c, ...

#include <string>
#include <utility>
#include <vector>

#include "prefrev/formula.hpp"
#include "prefrev/instance.hpp"
#include "prefrev/oracle.hpp"
#include "prefrev/parser.hpp"

namespace fixtures {

using namespace prefrev;

inline Schema car_schema() { return Schema("Car", {{"make", Domain::D}, {"year", Domain::Q}}); }

inline Tuple car(const std::string& make, std::int64_t year) { return {make, Rational(year)}; }

inline PrefRelation car_pref(const std::string& text) { return parse_formula(text, car_schema()); }

// Within each make, prefer a more recent car.
inline PrefRelation c1() { return car_pref("L.make = R.make and L.year > R.year"); }
// Among cars of the same year, a VW beats any other make.
inline PrefRelation c2() { return car_pref("L.make = 'VW' and R.make != 'VW' and L.year = R.year"); }
inline PrefRelation c3() {
  return car_pref("L.make = 'VW' and L.year = 1999 and R.make = 'Kia' and R.year = 1999");
}
inline PrefRelation c4() {
  return car_pref(
      "L.make = R.make and L.year > R.year or "
      "L.make = 'VW' and L.year >= 1999 and R.make = 'Kia' and R.year <= 1999");
}
inline PrefRelation cstar() {
  return car_pref(
      "L.make = R.make and L.year > R.year or "
      "L.make = 'VW' and R.make != 'VW' and L.year >= R.year");
}

// t1 = (VW,2002), t2 = (VW,1997), t3 = (Kia,1997)
inline RelationInstance r1() {
  return RelationInstance(car_schema(), {car("VW", 2002), car("VW", 1997), car("Kia", 1997)});
}

inline Schema item_schema() { return Schema("Item", {{"name", Domain::D}}); }

inline std::string item_name(std::size_t i) { return std::string(1, static_cast<char>('a' + i)); }

inline Tuple item(std::size_t i) { return {item_name(i)}; }

/// Items a, b, c, ... as an instance.
inline RelationInstance items(std::size_t n) {
  std::vector<Tuple> ts;
  for (std::size_t i = 0; i < n; ++i) ts.push_back(item(i));
  return RelationInstance(item_schema(), std::move(ts));
}

/// Finite relation over items from index pairs, e.g. {{0,1}} = {(a,b)}.
inline PrefRelation item_rel(const std::vector<std::pair<std::size_t, std::size_t>>& edges) {
  std::vector<std::pair<Tuple, Tuple>> pairs;
  for (auto [i, j] : edges) pairs.emplace_back(item(i), item(j));
  return finite_relation(item_schema(), pairs);
}

inline PrefRelation item_rel(const EdgeSet& e) { return item_rel(e.pairs()); }

inline EdgeSet edges(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& list) {
  EdgeSet e(n);
  for (auto [i, j] : list) e.set(i, j);
  return e;
}

}  // namespace fixtures
