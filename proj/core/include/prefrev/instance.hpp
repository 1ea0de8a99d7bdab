#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "prefrev/formula.hpp"

namespace prefrev {

/// Finite set of tuples over a schema. Input order is kept; duplicates are
/// collapsed (first occurrence wins) and counted.
class RelationInstance {
 public:
  explicit RelationInstance(Schema schema) : schema_(std::move(schema)) {}
  /// Throws SchemaError if a tuple does not conform. Missing names default
  /// to t1, t2, ... by input position.
  RelationInstance(Schema schema, std::vector<Tuple> tuples, std::vector<std::string> names = {});

  const Schema& schema() const { return schema_; }
  std::span<const Tuple> tuples() const { return tuples_; }
  const Tuple& tuple(std::size_t i) const { return tuples_.at(i); }
  const std::string& name(std::size_t i) const { return names_.at(i); }
  std::size_t size() const { return tuples_.size(); }
  bool empty() const { return tuples_.empty(); }
  std::size_t duplicates_dropped() const { return duplicates_; }

  bool contains(const Tuple& t) const;

  /// The tuples at `indices` (ascending), names preserved.
  RelationInstance subset(std::span<const std::size_t> indices) const;

  /// Same tuples in the same order (names ignored).
  friend bool operator==(const RelationInstance& a, const RelationInstance& b) {
    return a.schema_ == b.schema_ && a.tuples_ == b.tuples_;
  }

 private:
  Schema schema_;
  std::vector<Tuple> tuples_;
  std::vector<std::string> names_;
  std::size_t duplicates_ = 0;
};

}  // namespace prefrev
