#include "prefrev/session.hpp"

#include <cctype>
#include <sstream>

#include "prefrev/errors.hpp"
#include "prefrev/io.hpp"
#include "prefrev/parser.hpp"
#include "prefrev/solver.hpp"
#include "prefrev/winnow.hpp"

namespace prefrev {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

RelationInstance winnow_for(const PrefRelation& p, const OrderClass& c, const RelationInstance& r) {
  if (c.is_weak()) return winnow_weak(p, r);
  if (c.is_spo()) return winnow_bnl(p, r);
  return winnow_generic(p, r);
}

std::string tuple_list(const RelationInstance& r) {
  std::string out = "{";
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (i) out += ", ";
    out += "(";
    const auto& t = r.tuple(i);
    for (std::size_t a = 0; a < t.size(); ++a) out += (a ? "," : "") + value_to_string(t[a]);
    out += ")";
  }
  return out + "}";
}

const char* kHelp =
    "commands:\n"
    "  pref <name>: <formula>   define a named preference\n"
    "  refine <name>            refine the current preference with <name>\n"
    "  override <name>          override the current preference with <name>\n"
    "  show                     current preference and its class\n"
    "  winnow                   best tuples under the current preference (CSV)\n"
    "  history                  revision steps so far\n"
    "  undo                     drop the last revision step\n"
    "  quit\n";

}  // namespace

Session::Session(Schema schema, RelationInstance r0)
    : schema_(std::move(schema)),
      r0_(std::move(r0)),
      empty_(PrefRelation::empty(schema_)),
      empty_class_(OrderClass::from_flags(true, true, true, false)) {
  if (!(r0_.schema() == schema_)) throw SchemaError("instance does not match the session schema");
}

const PrefRelation& Session::current() const { return history_.empty() ? empty_ : history_.back().report.result; }

const RelationInstance& Session::current_result() const {
  return history_.empty() ? r0_ : history_.back().result;
}

const OrderClass& Session::current_class() const {
  return history_.empty() ? empty_class_ : history_.back().report.result_class;
}

bool Session::verify() const { return winnow_generic(current(), r0_) == current_result(); }

const PrefRelation* Session::lookup(std::string_view name) const {
  for (const auto& [n, p] : named_) {
    if (n == name) return &p;
  }
  return nullptr;
}

std::string Session::execute(std::string_view line) {
  line = trim(line);
  if (line.empty() || line.front() == '#') return "";
  const auto space = line.find_first_of(" \t");
  std::string cmd(line.substr(0, space));
  std::string_view rest = space == std::string_view::npos ? std::string_view{} : trim(line.substr(space));
  for (auto& c : cmd) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  try {
    if (cmd == "pref") return define(rest);
    if (cmd == "refine") return revise_with(rest, RevisionMode::Refine, line);
    if (cmd == "override") return revise_with(rest, RevisionMode::Override, line);
    if (cmd == "show" && rest.empty()) return show();
    if (cmd == "winnow" && rest.empty()) return format_csv(current_result());
    if (cmd == "history" && rest.empty()) return list_history();
    if (cmd == "undo" && rest.empty()) return undo();
    if (cmd == "help") return kHelp;
    if ((cmd == "quit" || cmd == "exit") && rest.empty()) {
      done_ = true;
      return "";
    }
    return "error: unknown command '" + std::string(line) + "' (try 'help')\n";
  } catch (const IterationCapError& e) {
    return std::string("error: ") + e.what() + "\n";
  } catch (const Error& e) {
    return std::string("error: ") + e.what() + "\n";
  }
}

std::string Session::define(std::string_view rest) {
  const auto colon = rest.find(':');
  if (colon == std::string_view::npos) return "error: expected 'pref <name>: <formula>'\n";
  std::string name(trim(rest.substr(0, colon)));
  if (name.empty() || name.find_first_of(" \t") != std::string::npos) return "error: invalid preference name\n";
  PrefRelation p = parse_formula(rest.substr(colon + 1), schema_);
  for (auto& [n, q] : named_) {
    if (n == name) {
      q = p;
      return "redefined " + name + "\n";
    }
  }
  named_.emplace_back(name, std::move(p));
  return "defined " + name + "\n";
}

std::string Session::revise_with(std::string_view name, RevisionMode mode, std::string_view command) {
  const PrefRelation* p0 = lookup(name);
  if (!p0) return "error: no preference named '" + std::string(name) + "'\n";
  const PrefRelation& prev = current();
  const OrderClass prev_class = current_class();
  RevisionReport rep = revise(prev, *p0, mode);

  std::ostringstream out;
  out << "fast_path=" << fast_path_name(rep.fast_path) << ", class=" << order_kind_name(rep.result_class.derived)
      << (rep.fast_path == FastPath::GenericTc ? " (checked)" : "") << "\n";
  out << "result: " << render(rep.result) << "\n";

  // Incremental evaluation needs prev |= new and both SPOs.
  bool incremental = prev_class.is_spo() && rep.result_class.is_spo() && entails(prev.formula(), rep.result.formula());
  Step step{std::string(command), rep, r0_, incremental};
  if (incremental) {
    step.result = winnow_for(rep.result, rep.result_class, current_result());
  } else {
    if (!rep.result_class.is_spo()) out << "warning: revised preference is not an SPO\n";
    out << "notice: incremental evaluation not applicable, winnow recomputed from the full instance\n";
    step.result = winnow_for(rep.result, rep.result_class, r0_);
  }
  out << "winnow: " << tuple_list(step.result) << "\n";
  history_.push_back(std::move(step));
  return out.str();
}

std::string Session::show() const {
  std::ostringstream out;
  out << "preference: " << render(current()) << "\n";
  out << "class: " << describe(current_class()) << "\n";
  out << "winnow: " << tuple_list(current_result()) << "\n";
  return out.str();
}

std::string Session::list_history() const {
  if (history_.empty()) return "(no revisions)\n";
  std::ostringstream out;
  for (std::size_t i = 0; i < history_.size(); ++i) {
    const auto& s = history_[i];
    out << i + 1 << ". " << s.command << "  [" << fast_path_name(s.report.fast_path) << ", "
        << order_kind_name(s.report.result_class.derived) << ", " << (s.incremental ? "incremental" : "full")
        << "] -> " << s.result.size() << " tuple(s)\n";
  }
  return out.str();
}

std::string Session::undo() {
  if (history_.empty()) return "error: nothing to undo\n";
  history_.pop_back();
  // Replay from the full instance rather than trusting cached results.
  if (!history_.empty()) history_.back().result = winnow_for(current(), current_class(), r0_);
  return "undone; winnow: " + tuple_list(current_result()) + "\n";
}

}  // namespace prefrev
