#pragma once
// Interactive iterated revision over one instance. The current preference
// starts empty; each `refine`/`override` revises it with a named relation and
// re-evaluates winnow, incrementally from the previous result when the
// previous relation is contained in the new one and both are SPOs.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "prefrev/axioms.hpp"
#include "prefrev/formula.hpp"
#include "prefrev/instance.hpp"
#include "prefrev/revision.hpp"

namespace prefrev {

class Session {
 public:
  struct Step {
    std::string command;
    RevisionReport report;
    RelationInstance result;
    bool incremental = false;
  };

  Session(Schema schema, RelationInstance r0);

  /// Runs one command and returns its output (possibly several lines, each
  /// ending in '\n'). User errors are reported in the output, never thrown.
  std::string execute(std::string_view line);
  bool done() const { return done_; }

  const PrefRelation& current() const;
  const RelationInstance& current_result() const;
  const OrderClass& current_class() const;
  const std::vector<Step>& history() const { return history_; }
  /// From-scratch winnow of the current relation over r0 equals the
  /// maintained result.
  bool verify() const;

 private:
  std::string define(std::string_view rest);
  std::string revise_with(std::string_view name, RevisionMode mode, std::string_view command);
  std::string show() const;
  std::string list_history() const;
  std::string undo();
  const PrefRelation* lookup(std::string_view name) const;

  Schema schema_;
  RelationInstance r0_;
  PrefRelation empty_;
  OrderClass empty_class_;
  std::vector<std::pair<std::string, PrefRelation>> named_;
  std::vector<Step> history_;
  bool done_ = false;
};

}  // namespace prefrev
