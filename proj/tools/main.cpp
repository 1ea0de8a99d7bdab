// prefrev: command-line front end for constraint-defined preference relations.
//
// Exit codes: 0 ok, 1 property or precondition failure, 2 parse/usage error,
// 3 unsupported constraint class, 4 transitive-closure iteration cap.

#include <unistd.h>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "prefrev/algebra.hpp"
#include "prefrev/axioms.hpp"
#include "prefrev/errors.hpp"
#include "prefrev/io.hpp"
#include "prefrev/oracle.hpp"
#include "prefrev/parser.hpp"
#include "prefrev/revision.hpp"
#include "prefrev/session.hpp"
#include "prefrev/winnow.hpp"

using namespace prefrev;

namespace {

constexpr int kOk = 0;
constexpr int kFailed = 1;
constexpr int kParse = 2;
constexpr int kUnsupported = 3;
constexpr int kIterCap = 4;

struct Loaded {
  std::vector<Schema> schemas;
  std::vector<NamedPref> prefs;
};

Loaded load(const std::string& schema_file, const std::string& pref_file) {
  Loaded l;
  l.schemas = parse_schema_file(read_file(schema_file));
  if (!pref_file.empty()) l.prefs = parse_pref_file(read_file(pref_file), l.schemas);
  return l;
}

const NamedPref& pick(const Loaded& l, const std::string& name) {
  if (!name.empty()) return find_pref(l.prefs, name);
  if (l.prefs.size() != 1) throw Error("the preference file has " + std::to_string(l.prefs.size()) +
                                       " entries; choose one with --pref");
  return l.prefs.front();
}

const Schema& schema_named(const Loaded& l, const std::string& name) {
  if (name.empty()) {
    if (l.schemas.size() != 1) throw Error("several relations declared; choose one with --relation");
    return l.schemas.front();
  }
  for (const auto& s : l.schemas) {
    if (s.name() == name) return s;
  }
  throw Error("no relation named '" + name + "'");
}

RelationInstance load_csv(const std::string& path, const Schema& schema) {
  RelationInstance r = parse_csv(read_file(path), schema);
  if (r.duplicates_dropped() > 0) {
    std::cerr << "warning: " << r.duplicates_dropped() << " duplicate row(s) in " << path << " collapsed\n";
  }
  return r;
}

// ---- subcommands ----

struct ClassifyArgs {
  std::string schema, prefs, pref;
};

int cmd_classify(const ClassifyArgs& a) {
  Loaded l = load(a.schema, a.prefs);
  std::vector<const NamedPref*> todo;
  if (a.pref.empty()) {
    for (const auto& p : l.prefs) todo.push_back(&p);
  } else {
    todo.push_back(&find_pref(l.prefs, a.pref));
  }
  bool all_spo = true;
  for (const auto* p : todo) {
    OrderClass c = classify(p->relation);
    std::cout << p->name << ": " << describe(c) << "\n";
    all_spo = all_spo && c.is_spo();
  }
  return all_spo ? kOk : kFailed;
}

struct ReviseArgs {
  std::string schema, prefs, base, with, mode = "refine", out, name, require, domain;
  std::vector<std::string> assert_scp;
  std::size_t max_iter = kDefaultTcIterations;
};

int cmd_revise(const ReviseArgs& a) {
  Loaded l = load(a.schema, a.prefs);
  const NamedPref& base = find_pref(l.prefs, a.base);
  const NamedPref& with = find_pref(l.prefs, a.with);
  RevisionOptions opts;
  opts.max_iter = a.max_iter;
  for (const auto& n : a.assert_scp) {
    find_pref(l.prefs, n);
    if (n == a.base) opts.assert_scp_base = true;
    if (n == a.with) opts.assert_scp_revising = true;
  }
  if (!a.domain.empty()) opts.domain = load_csv(a.domain, base.relation.schema());
  RevisionMode mode = a.mode == "override" ? RevisionMode::Override : RevisionMode::Refine;
  RevisionReport rep = revise(base.relation, with.relation, mode, opts);

  std::string name = a.name.empty() ? base.name + "_" + std::string(mode_name(mode)) + "_" + with.name : a.name;
  std::string pref_line = format_pref(name, rep.result);
  std::cout << summarize(rep) << pref_line;
  if (!a.out.empty()) {
    std::ofstream out(a.out, std::ios::binary);
    if (!out) throw Error("cannot write '" + a.out + "'");
    out << pref_line;
  }
  if (a.require == "spo" && !rep.result_class.is_spo()) return kFailed;
  if (a.require == "weak" && !rep.result_class.is_weak()) return kFailed;
  return kOk;
}

struct WinnowArgs {
  std::string schema, prefs, csv, pref, algo = "auto";
};

int cmd_winnow(const WinnowArgs& a) {
  Loaded l = load(a.schema, a.prefs);
  const NamedPref& p = pick(l, a.pref);
  RelationInstance r = load_csv(a.csv, p.relation.schema());
  WinnowAlgo algo = WinnowAlgo::Auto;
  if (a.algo == "generic") algo = WinnowAlgo::Generic;
  if (a.algo == "bnl") algo = WinnowAlgo::Bnl;
  if (a.algo == "weak") {
    // The single-pass algorithm is only correct for weak orders.
    if (!classify(p.relation).is_weak()) throw PreconditionError(p.name + " is not a weak order; --algo weak refused");
    algo = WinnowAlgo::Weak;
  }
  if (algo == WinnowAlgo::Bnl && !classify(p.relation).is_spo()) {
    throw PreconditionError(p.name + " is not an SPO; --algo bnl refused");
  }
  std::cout << format_csv(winnow(p.relation, r, algo));
  return kOk;
}

struct IterateArgs {
  std::string schema, prefs, csv;
  std::vector<std::string> chain;
};

int cmd_iterate(const IterateArgs& a) {
  Loaded l = load(a.schema, a.prefs);
  std::vector<PrefRelation> chain;
  for (const auto& n : a.chain) chain.push_back(find_pref(l.prefs, n).relation);
  if (chain.empty()) throw Error("empty chain");
  RelationInstance r = load_csv(a.csv, chain.front().schema());
  std::vector<RelationInstance> results;
  try {
    results = iterate_winnow(chain, r);
  } catch (const ChainError& e) {
    std::cerr << "error: " << e.what() << " (offending member: " << a.chain[e.index()] << ")\n";
    return kFailed;
  }
  for (std::size_t i = 0; i < results.size(); ++i) {
    std::cout << "# r" << i << (i ? " = winnow(" + a.chain[i - 1] + ", r" + std::to_string(i - 1) + ")" : "")
              << "\n"
              << format_csv(results[i]);
  }
  return kOk;
}

struct ReplArgs {
  std::string schema, csv, relation;
};

int cmd_repl(const ReplArgs& a) {
  Loaded l = load(a.schema, "");
  const Schema& s = schema_named(l, a.relation);
  Session session(s, load_csv(a.csv, s));
  const bool tty = isatty(STDIN_FILENO);
  std::string line;
  while (!session.done()) {
    if (tty) std::cout << "prefrev> " << std::flush;
    if (!std::getline(std::cin, line)) break;
    std::cout << session.execute(line) << std::flush;
  }
  return kOk;
}

struct OracleArgs {
  std::string schema, prefs, pref, csv;
  std::size_t density = 2;
  std::size_t cap = 200'000;
};

int cmd_oracle_check(const OracleArgs& a) {
  Loaded l = load(a.schema, a.prefs);
  const NamedPref& p = pick(l, a.pref);
  std::vector<RelationInstance> data;
  if (!a.csv.empty()) data.push_back(load_csv(a.csv, p.relation.schema()));
  const Formula fs[] = {p.relation.formula()};
  GridRule rule{a.density, a.density};
  GridUniverse u = GridUniverse::build(p.relation.schema(), fs, data, rule, a.cap);
  std::cout << "grid: " << u.size() << " tuples\n";

  bool agree = true;
  OrderClass sym = classify(p.relation);
  OrderClass grid = graph_axioms(materialize(p.relation, u));
  std::cout << "symbolic: " << describe(sym) << "\n";
  std::cout << "grid:     " << describe(grid) << "\n";
  agree = agree && sym == grid;

  // Transitive closure: symbolic result on the grid vs graph closure over a
  // refinement of the grid, which supplies intermediates between grid points.
  PrefRelation tc = transitive_closure(p.relation);
  EdgeSet sym_tc = materialize(tc, u);
  GridUniverse dense = u.densified(rule, a.cap);
  std::vector<std::size_t> idx;
  for (const auto& t : u.tuples()) idx.push_back(*dense.index_of(t));
  EdgeSet graph = graph_tc(materialize(p.relation, dense)).restrict(idx);
  const bool tc_ok = sym_tc == graph;
  std::cout << "tc: " << (tc_ok ? "agree" : "DISAGREE") << " (" << sym_tc.count() << " vs " << graph.count()
            << " pairs)\n";
  agree = agree && tc_ok;
  std::cout << (agree ? "oracle: agree\n" : "oracle: DISAGREE\n");
  return agree ? kOk : kFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"prefrev: revision and querying of constraint-defined preference relations"};
  app.require_subcommand(1);

  ClassifyArgs ca;
  auto* classify_cmd = app.add_subcommand("classify", "Check the order axioms of each preference");
  classify_cmd->add_option("schema", ca.schema, "Schema file")->required();
  classify_cmd->add_option("prefs", ca.prefs, "Preference file")->required();
  classify_cmd->add_option("--pref", ca.pref, "Only this preference");

  ReviseArgs ra;
  auto* revise_cmd = app.add_subcommand("revise", "Revise one preference with another");
  revise_cmd->add_option("schema", ra.schema, "Schema file")->required();
  revise_cmd->add_option("prefs", ra.prefs, "Preference file")->required();
  revise_cmd->add_option("--base", ra.base, "Preference being revised")->required();
  revise_cmd->add_option("--with", ra.with, "Revising preference")->required();
  revise_cmd->add_option("--mode", ra.mode, "refine or override")
      ->check(CLI::IsMember({"refine", "override"}));
  revise_cmd->add_option("--assert-scp", ra.assert_scp, "Assume the named preference has the single-chain property");
  revise_cmd->add_option("--domain", ra.domain, "Decide axioms and SCP on the tuples of this CSV");
  revise_cmd->add_option("--require", ra.require, "Exit 1 unless the result is of this class")
      ->check(CLI::IsMember({"spo", "weak"}));
  revise_cmd->add_option("--out", ra.out, "Write the result preference entry here");
  revise_cmd->add_option("--name", ra.name, "Name of the result preference");
  revise_cmd->add_option("--max-iter", ra.max_iter, "Transitive-closure iteration cap");

  WinnowArgs wa;
  auto* winnow_cmd = app.add_subcommand("winnow", "Undominated tuples of a CSV instance");
  winnow_cmd->add_option("schema", wa.schema, "Schema file")->required();
  winnow_cmd->add_option("prefs", wa.prefs, "Preference file")->required();
  winnow_cmd->add_option("csv", wa.csv, "Instance")->required();
  winnow_cmd->add_option("--pref", wa.pref, "Preference to use");
  winnow_cmd->add_option("--algo", wa.algo, "auto, generic, bnl or weak")
      ->check(CLI::IsMember({"auto", "generic", "bnl", "weak"}));

  IterateArgs ia;
  auto* iterate_cmd = app.add_subcommand("iterate", "Incremental winnow along a chain of refinements");
  iterate_cmd->add_option("schema", ia.schema, "Schema file")->required();
  iterate_cmd->add_option("prefs", ia.prefs, "Preference file")->required();
  iterate_cmd->add_option("csv", ia.csv, "Instance")->required();
  iterate_cmd->add_option("--chain", ia.chain, "Preference names, weakest first")->required()->delimiter(',');

  ReplArgs pa;
  auto* repl_cmd = app.add_subcommand("repl", "Interactive iterated revision");
  repl_cmd->add_option("schema", pa.schema, "Schema file")->required();
  repl_cmd->add_option("csv", pa.csv, "Instance")->required();
  repl_cmd->add_option("--relation", pa.relation, "Relation to use when several are declared");

  OracleArgs oa;
  auto* oracle_cmd = app.add_subcommand("oracle-check", "Compare symbolic results with a brute-force grid");
  oracle_cmd->add_option("schema", oa.schema, "Schema file")->required();
  oracle_cmd->add_option("prefs", oa.prefs, "Preference file")->required();
  oracle_cmd->add_option("--pref", oa.pref, "Preference to check");
  oracle_cmd->add_option("--csv", oa.csv, "Add the values of this instance to the grid");
  oracle_cmd->add_option("--density", oa.density, "Grid points per gap and fresh symbols");
  oracle_cmd->add_option("--cap", oa.cap, "Maximum number of ground pairs per grid");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kParse;
  }

  try {
    if (*classify_cmd) return cmd_classify(ca);
    if (*revise_cmd) return cmd_revise(ra);
    if (*winnow_cmd) return cmd_winnow(wa);
    if (*iterate_cmd) return cmd_iterate(ia);
    if (*repl_cmd) return cmd_repl(pa);
    if (*oracle_cmd) return cmd_oracle_check(oa);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kParse;
  } catch (const UnsupportedError& e) {
    std::cerr << "unsupported: " << e.what() << "\n";
    return kUnsupported;
  } catch (const IterationCapError& e) {
    std::cerr << "iteration cap: " << e.what() << "\n";
    return kIterCap;
  } catch (const PreconditionError& e) {
    std::cerr << "precondition failed: " << e.what() << "\n";
    return kFailed;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kParse;
  }
  return kOk;
}
