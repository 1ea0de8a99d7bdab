#include "prefrev/revision.hpp"

#include <sstream>

#include "prefrev/solver.hpp"

namespace prefrev {

std::string_view fast_path_name(FastPath f) {
  switch (f) {
    case FastPath::SpoUnionScp: return "SPO_UNION_SCP";
    case FastPath::SpoPriorityScp: return "SPO_PRIORITY_SCP";
    case FastPath::SpoWeakUnion: return "SPO_WEAK_UNION";
    case FastPath::SpoWeakPriority: return "SPO_WEAK_PRIORITY";
    case FastPath::WeakWeakUnion: return "WEAK_WEAK_UNION";
    case FastPath::WeakWeakPriority: return "WEAK_WEAK_PRIORITY";
    case FastPath::GenericTc: return "GENERIC_TC";
  }
  return "?";
}

std::string_view mode_name(RevisionMode m) { return m == RevisionMode::Refine ? "refine" : "override"; }

std::string_view least_among_name(LeastAmong l) {
  switch (l) {
    case LeastAmong::Transitive: return "transitive";
    case LeastAmong::Spo: return "SPO";
    case LeastAmong::Weak: return "weak";
  }
  return "?";
}

Formula conflicts(const PrefRelation& p, const PrefRelation& p0) {
  require_same_schema(p, p0);
  return p0.formula() && swap_sides(p.formula());
}

bool is_compatible(const PrefRelation& p, const PrefRelation& p0) { return !satisfiable(conflicts(p, p0)); }

bool is_semi_compatible(const PrefRelation& p, const PrefRelation& p0, std::size_t max_iter) {
  require_same_schema(p, p0);
  PrefRelation inv0 = inverse(p0);
  PrefRelation chains = transitive_closure(difference(p, inv0), max_iter);
  return !satisfiable(inv0.formula() && chains.formula());
}

CompatReport compatibility(const PrefRelation& p, const PrefRelation& p0, std::size_t max_iter) {
  CompatReport out;
  out.conflict_formula = conflicts(p, p0);
  Dnf dnf = normalize(out.conflict_formula);
  out.compatible = dnf.empty();
  if (!dnf.empty()) out.sample_conflict = from_conjunct(dnf.front());
  out.semi_compatible = is_semi_compatible(p, p0, max_iter);
  return out;
}

namespace {

// Axioms and SCP, on the optional finite domain or symbolically.
struct Judge {
  const RevisionOptions& options;

  OrderClass classify_rel(const PrefRelation& p) const {
    return options.domain ? classify_finite(p, *options.domain) : classify(p);
  }

  bool scp(const PrefRelation& p, const OrderClass& cls, bool asserted) const {
    if (asserted) return true;
    if (!options.domain || !cls.is_spo()) return false;
    return has_scp_finite(p, *options.domain);
  }
};

LeastAmong least_for(const OrderClass& c) {
  if (c.is_weak()) return LeastAmong::Weak;
  if (c.is_spo()) return LeastAmong::Spo;
  return LeastAmong::Transitive;
}

}  // namespace

RevisionReport refine(const PrefRelation& p, const PrefRelation& p0, const RevisionOptions& options) {
  require_same_schema(p, p0);
  Judge judge{options};
  RevisionReport rep{union_pref(p, p0)};
  rep.mode = RevisionMode::Refine;
  rep.base_class = judge.classify_rel(p);
  rep.revising_class = judge.classify_rel(p0);
  rep.compat = compatibility(p, p0, options.max_iter);
  const OrderClass& c = rep.base_class;
  const OrderClass& c0 = rep.revising_class;
  const bool compatible = rep.compat.compatible;

  if (compatible && c.is_weak() && c0.is_weak()) {
    rep.fast_path = FastPath::WeakWeakUnion;
    rep.least_among = LeastAmong::Weak;
  } else if (compatible && ((c.is_spo() && c0.is_weak()) || (c.is_weak() && c0.is_spo()))) {
    rep.fast_path = FastPath::SpoWeakUnion;
    rep.least_among = LeastAmong::Spo;
  } else if (compatible && c.is_spo() && c0.is_spo() &&
             (judge.scp(p, c, options.assert_scp_base) || judge.scp(p0, c0, options.assert_scp_revising))) {
    rep.fast_path = FastPath::SpoUnionScp;
    rep.least_among = LeastAmong::Spo;
    rep.result = transitive_closure(rep.result, options.max_iter);
  } else {
    rep.fast_path = FastPath::GenericTc;
    rep.result = transitive_closure(rep.result, options.max_iter);
  }
  rep.result = simplified(rep.result);
  rep.result_class = judge.classify_rel(rep.result);
  // The TC of the base is contained in every transitive revision, so once
  // the explicit check shows it is an SPO (weak order) it is also the least
  // one of that kind.
  if (rep.fast_path == FastPath::GenericTc) rep.least_among = least_for(rep.result_class);
  rep.least = true;
  return rep;
}

RevisionReport override_revision(const PrefRelation& p, const PrefRelation& p0, const RevisionOptions& options) {
  require_same_schema(p, p0);
  Judge judge{options};
  RevisionReport rep{prioritized(p0, p)};
  rep.mode = RevisionMode::Override;
  rep.base_class = judge.classify_rel(p);
  rep.revising_class = judge.classify_rel(p0);
  rep.compat = compatibility(p, p0, options.max_iter);
  const OrderClass& c = rep.base_class;
  const OrderClass& c0 = rep.revising_class;

  if (c0.is_weak() && c.is_weak()) {
    rep.fast_path = FastPath::WeakWeakPriority;
    rep.least_among = LeastAmong::Weak;
  } else if (c0.is_weak() && c.is_spo()) {
    rep.fast_path = FastPath::SpoWeakPriority;
    rep.least_among = LeastAmong::Spo;
  } else if (c.is_spo() && c0.is_spo() && rep.compat.semi_compatible &&
             judge.scp(p0, c0, options.assert_scp_revising)) {
    rep.fast_path = FastPath::SpoPriorityScp;
    rep.least_among = LeastAmong::Spo;
    rep.result = transitive_closure(rep.result, options.max_iter);
  } else {
    rep.fast_path = FastPath::GenericTc;
    rep.result = transitive_closure(rep.result, options.max_iter);
  }
  rep.result = simplified(rep.result);
  rep.result_class = judge.classify_rel(rep.result);
  if (rep.fast_path == FastPath::GenericTc) rep.least_among = least_for(rep.result_class);
  rep.least = true;
  return rep;
}

RevisionReport revise(const PrefRelation& p, const PrefRelation& p0, RevisionMode mode,
                      const RevisionOptions& options) {
  return mode == RevisionMode::Refine ? refine(p, p0, options) : override_revision(p, p0, options);
}

std::string summarize(const RevisionReport& r) {
  std::ostringstream os;
  os << "fast_path=" << fast_path_name(r.fast_path) << ", class=" << order_kind_name(r.result_class.derived)
     << (r.fast_path == FastPath::GenericTc ? " (checked)" : "") << "\n";
  os << "mode=" << mode_name(r.mode) << " least=" << (r.least ? "yes" : "no") << " among "
     << least_among_name(r.least_among) << " revisions\n";
  os << "base: " << describe(r.base_class) << "\n";
  os << "revising: " << describe(r.revising_class) << "\n";
  os << "compatible=" << (r.compat.compatible ? "yes" : "no")
     << " semi_compatible=" << (r.compat.semi_compatible ? "yes" : "no") << "\n";
  os << "result: " << describe(r.result_class) << "\n";
  return os.str();
}

}  // namespace prefrev
