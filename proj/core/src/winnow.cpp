#include "prefrev/winnow.hpp"

#include <algorithm>
#include <set>

#include "prefrev/axioms.hpp"
#include "prefrev/solver.hpp"

namespace prefrev {

RelationInstance::RelationInstance(Schema schema, std::vector<Tuple> tuples,
                                   std::vector<std::string> names)
    : schema_(std::move(schema)) {
  std::set<Tuple> seen;
  for (std::size_t i = 0; i < tuples.size(); ++i) {
    check_tuple(schema_, tuples[i]);
    if (!seen.insert(tuples[i]).second) {
      ++duplicates_;
      continue;
    }
    names_.push_back(i < names.size() && !names[i].empty() ? names[i] : "t" + std::to_string(i + 1));
    tuples_.push_back(std::move(tuples[i]));
  }
}

bool RelationInstance::contains(const Tuple& t) const {
  return std::find(tuples_.begin(), tuples_.end(), t) != tuples_.end();
}

RelationInstance RelationInstance::subset(std::span<const std::size_t> indices) const {
  RelationInstance out(schema_);
  for (std::size_t i : indices) {
    out.tuples_.push_back(tuples_.at(i));
    out.names_.push_back(names_.at(i));
  }
  return out;
}

namespace {

class Dominance {
 public:
  Dominance(const PrefRelation& p, const RelationInstance& r, WinnowStats* stats)
      : formula_(p.formula()), r_(r), stats_(stats) {
    if (!(p.schema() == r.schema())) {
      throw SchemaError("instance schema '" + r.schema().name() + "' differs from preference schema '" +
                        p.schema().name() + "'");
    }
  }

  bool operator()(std::size_t a, std::size_t b) const {
    if (stats_) ++stats_->evaluations;
    const Tuple* binding[] = {&r_.tuple(a), &r_.tuple(b)};
    return eval(formula_, binding);
  }

 private:
  const Formula& formula_;
  const RelationInstance& r_;
  WinnowStats* stats_;
};

RelationInstance keep_sorted(const RelationInstance& r, std::vector<std::size_t> idx) {
  std::sort(idx.begin(), idx.end());
  return r.subset(idx);
}

}  // namespace

RelationInstance winnow_generic(const PrefRelation& p, const RelationInstance& r, WinnowStats* stats) {
  Dominance dominates(p, r, stats);
  std::vector<std::size_t> keep;
  for (std::size_t t = 0; t < r.size(); ++t) {
    bool dominated = false;
    for (std::size_t s = 0; s < r.size() && !dominated; ++s) dominated = dominates(s, t);
    if (!dominated) keep.push_back(t);
  }
  return r.subset(keep);
}

RelationInstance winnow_bnl(const PrefRelation& p, const RelationInstance& r, WinnowStats* stats) {
  Dominance dominates(p, r, stats);
  std::vector<std::size_t> window;
  for (std::size_t t = 0; t < r.size(); ++t) {
    bool dominated = false;
    for (auto it = window.begin(); it != window.end();) {
      bool w_over_t = dominates(*it, t);
      bool t_over_w = dominates(t, *it);
      if (w_over_t && t_over_w) {
        throw PreconditionError("winnow_bnl: tuples " + r.name(*it) + " and " + r.name(t) +
                                " dominate each other; relation is not an SPO");
      }
      if (w_over_t) {
        dominated = true;
        break;
      }
      it = t_over_w ? window.erase(it) : it + 1;
    }
    if (!dominated) window.push_back(t);
  }
  return keep_sorted(r, std::move(window));
}

RelationInstance winnow_weak(const PrefRelation& p, const RelationInstance& r, WinnowStats* stats) {
  Dominance dominates(p, r, stats);
  std::vector<std::size_t> top;
  for (std::size_t t = 0; t < r.size(); ++t) {
    if (top.empty()) {
      top.push_back(t);
      continue;
    }
    // Members of the top layer are mutually indifferent, so one
    // representative stands for all of them.
    std::size_t rep = top.front();
    if (dominates(rep, t)) continue;
    if (dominates(t, rep)) {
      top.assign(1, t);
    } else {
      top.push_back(t);
    }
  }
  return keep_sorted(r, std::move(top));
}

RelationInstance winnow_auto(const PrefRelation& p, const RelationInstance& r, WinnowStats* stats) {
  OrderClass c = classify(p);
  if (c.is_weak()) return winnow_weak(p, r, stats);
  if (c.is_spo()) return winnow_bnl(p, r, stats);
  return winnow_generic(p, r, stats);
}

RelationInstance winnow(const PrefRelation& p, const RelationInstance& r, WinnowAlgo algo,
                        WinnowStats* stats) {
  switch (algo) {
    case WinnowAlgo::Auto: return winnow_auto(p, r, stats);
    case WinnowAlgo::Generic: return winnow_generic(p, r, stats);
    case WinnowAlgo::Bnl: return winnow_bnl(p, r, stats);
    case WinnowAlgo::Weak: return winnow_weak(p, r, stats);
  }
  return winnow_generic(p, r, stats);
}

std::vector<RelationInstance> iterate_winnow(std::span<const PrefRelation> chain,
                                             const RelationInstance& r, const IterateOptions& options) {
  for (std::size_t i = 0; i < chain.size(); ++i) {
    if (!(chain[i].schema() == r.schema())) {
      throw ChainError("chain member " + std::to_string(i + 1) + " is over a different schema", i);
    }
    if (!options.assume_spo && !classify(chain[i]).is_spo()) {
      throw ChainError("chain member " + std::to_string(i + 1) + " is not an SPO", i);
    }
    if (i + 1 < chain.size() && !entails(chain[i].formula(), chain[i + 1].formula())) {
      throw ChainError("chain is not monotonic: member " + std::to_string(i + 1) +
                           " is not contained in member " + std::to_string(i + 2),
                       i + 1);
    }
  }
  std::vector<RelationInstance> out{r};
  for (const auto& p : chain) out.push_back(winnow_bnl(p, out.back()));
  return out;
}

}  // namespace prefrev
