#include "tbackup/laminar.hpp"

#include <algorithm>
#include <set>

#include "log.hpp"
#include "tbackup/errors.hpp"
#include "tbackup/maxflow.hpp"

namespace tbackup {

std::vector<int> LaminarFamily::of_terminal(int t) const {
  std::vector<int> out;
  for (int i = 0; i < static_cast<int>(entries.size()); ++i) {
    if (entries[static_cast<size_t>(i)].terminal == t) out.push_back(i);
  }
  return out;
}

std::vector<int> LaminarFamily::children(int entry) const {
  std::vector<int> out;
  for (int i = 0; i < static_cast<int>(entries.size()); ++i) {
    if (entries[static_cast<size_t>(i)].parent == entry) out.push_back(i);
  }
  return out;
}

namespace {

std::set<int> child_union(const LaminarFamily& fam, int entry) {
  std::set<int> out;
  for (int c : fam.children(entry)) {
    const auto& hb = fam.entries[static_cast<size_t>(c)].half_boundary;
    out.insert(hb.begin(), hb.end());
  }
  return out;
}

}  // namespace

std::vector<int> LaminarFamily::f_plus(int entry) const {
  auto below = child_union(*this, entry);
  std::vector<int> out;
  for (int e : entries[static_cast<size_t>(entry)].half_boundary) {
    if (!below.count(e)) out.push_back(e);
  }
  return out;
}

std::vector<int> LaminarFamily::f_minus(int entry) const {
  const auto& own = entries[static_cast<size_t>(entry)].half_boundary;
  std::vector<int> out;
  for (int e : child_union(*this, entry)) {
    if (!std::binary_search(own.begin(), own.end(), e)) out.push_back(e);
  }
  return out;
}

std::vector<Rational> IndependenceTracker::reduce(std::vector<Rational> v) const {
  for (size_t i = 0; i < rows_.size(); ++i) {
    auto p = static_cast<size_t>(pivots_[i]);
    if (v[p] == 0) continue;
    Rational f = v[p];
    for (size_t j = 0; j < v.size(); ++j) {
      if (rows_[i][j] != 0) v[j] -= f * rows_[i][j];
    }
  }
  return v;
}

bool IndependenceTracker::try_add(const std::vector<int>& support) {
  std::vector<Rational> v(static_cast<size_t>(dim_), Rational(0));
  for (int i : support) v[static_cast<size_t>(i)] = 1;
  v = reduce(std::move(v));
  auto it = std::find_if(v.begin(), v.end(), [](const Rational& q) { return q != 0; });
  if (it == v.end()) return false;
  Rational lead = *it;
  for (auto& q : v) q /= lead;
  pivots_.push_back(static_cast<int>(it - v.begin()));
  rows_.push_back(std::move(v));
  return true;
}

namespace {

class Builder {
 public:
  Builder(const Instance& inst, const EdgeVector& floor_part, const EdgeVector& half_part)
      : inst_(inst),
        x_(floor_part + half_part),
        base1_(floor_part),
        net_(connectivity_network(inst, x_)),
        f_index_(static_cast<size_t>(inst.num_edges()), -1),
        tracker_(0) {
    for (int e = 0; e < inst.num_edges(); ++e) {
      if (half_part[e] == Rational(1, 2)) {
        f_index_[static_cast<size_t>(e)] = static_cast<int>(fam_.half_edges.size());
        fam_.half_edges.push_back(e);
      } else if (half_part[e] == 1) {
        base1_[e] += 1;
      }
    }
    tracker_ = IndependenceTracker(static_cast<int>(fam_.half_edges.size()));
  }

  Rational cut_value(const Biset& b) const {
    Rational v = boundary(x_, b, inst_.edges());
    if (inst_.mode() == Mode::Node) v += static_cast<long>(b.gamma().count());
    return v;
  }

  std::vector<int> half_boundary(const Biset& b) const {
    std::vector<int> out;
    for (int e : fam_.half_edges) {
      if (crosses(inst_.edge(e), b)) out.push_back(e);
    }
    return out;
  }

  // Tight, positive member of C(t).
  bool qualifies(const Biset& b) const {
    auto t = owner_terminal(inst_, b);
    if (!t) return false;
    if (inst_.mode() == Mode::Edge && b.gamma().any()) return false;
    if (cut_value(b) != inst_.requirement(*t)) return false;
    return !half_boundary(b).empty();
  }

  bool tight(const Biset& b) const {
    auto t = owner_terminal(inst_, b);
    return t && cut_value(b) == inst_.requirement(*t);
  }

  bool try_add(const Biset& b) {
    for (const auto& e : fam_.entries) {
      if (e.biset == b || classify_pair(e.biset, b) == PairKind::Crossing) return false;
    }
    auto hb = half_boundary(b);
    std::vector<int> support;
    for (int e : hb) support.push_back(f_index_[static_cast<size_t>(e)]);
    if (!tracker_.try_add(support)) return false;
    LaminarEntry entry{b, *owner_terminal(inst_, b), 0, std::nullopt, hb};
    fam_.entries.push_back(std::move(entry));
    return true;
  }

  void uncross(const Biset& a, const Biset& b, std::vector<Biset>& out) const {
    auto ta = owner_terminal(inst_, a);
    auto tb = owner_terminal(inst_, b);
    std::vector<Biset> pieces;
    if (ta == tb) {
      pieces = {biset_cap(a, b), biset_cup(a, b)};
    } else {
      pieces = {biset_minus(a, b), biset_minus(b, a)};
    }
    for (const auto& p : pieces) {
      if (p.empty() || !tight(p)) {
        throw InternalError("uncrossing " + format_biset(a) + " and " + format_biset(b) +
                            " produced a non-tight biset " + format_biset(p));
      }
      if (qualifies(p)) out.push_back(p);
    }
  }

  // One round of seed-driven candidates; returns the number of entries added.
  int seed_round() {
    std::vector<Biset> cands;
    std::set<int> endpoints;
    for (int e : fam_.half_edges) {
      endpoints.insert(inst_.edge(e).u);
      endpoints.insert(inst_.edge(e).v);
    }
    const int n = inst_.num_nodes();
    for (int t : inst_.terminals()) {
      std::vector<NodeSet> seeds{make_node_set(n)};
      for (int w : endpoints) seeds.push_back(make_node_set(n, {w}));
      for (const auto& entry : fam_.entries) {
        if (entry.terminal != t) continue;
        for (int w : endpoints) {
          NodeSet s = entry.biset.inner();
          s.set(static_cast<size_t>(w));
          seeds.push_back(std::move(s));
        }
      }
      for (const auto& seed : seeds) {
        auto b = minimal_tight_biset(inst_, net_, t, seed);
        if (b && qualifies(*b)) cands.push_back(*b);
      }
    }
    std::sort(cands.begin(), cands.end(), candidate_order(inst_));
    cands.erase(std::unique(cands.begin(), cands.end()), cands.end());
    std::vector<Biset> extra;
    for (const auto& c : cands) {
      for (const auto& e : fam_.entries) {
        if (classify_pair(c, e.biset) == PairKind::Crossing) uncross(c, e.biset, extra);
      }
    }
    cands.insert(cands.end(), extra.begin(), extra.end());
    std::sort(cands.begin(), cands.end(), candidate_order(inst_));
    cands.erase(std::unique(cands.begin(), cands.end()), cands.end());
    int added = 0;
    for (const auto& c : cands) {
      if (full()) break;
      if (try_add(c)) ++added;
    }
    return added;
  }

  void fallback() {
    std::vector<Biset> cands;
    for_each_c_biset(inst_, [&](const Biset& b) {
      if (qualifies(b)) cands.push_back(b);
      return true;
    });
    std::sort(cands.begin(), cands.end(), candidate_order(inst_));
    for (const auto& c : cands) {
      if (full()) break;
      if (try_add(c)) ++fam_.fallback_entries;
    }
  }

  bool full() const { return fam_.entries.size() >= fam_.half_edges.size(); }

  // (terminal, inner size, lexicographic nodes).
  struct candidate_order {
    const Instance& inst;
    bool operator()(const Biset& a, const Biset& b) const {
      auto ta = owner_terminal(inst, a).value_or(-1);
      auto tb = owner_terminal(inst, b).value_or(-1);
      if (ta != tb) return ta < tb;
      return a < b;
    }
  };

  LaminarFamily finish() {
    auto& es = fam_.entries;
    std::sort(es.begin(), es.end(), [&](const LaminarEntry& a, const LaminarEntry& b) {
      return candidate_order{inst_}(a.biset, b.biset);
    });
    for (size_t i = 0; i < es.size(); ++i) {
      std::optional<int> parent;
      for (size_t j = 0; j < es.size(); ++j) {
        if (i == j || !es[i].biset.subset_of(es[j].biset)) continue;
        if (!parent || es[j].biset.subset_of(es[static_cast<size_t>(*parent)].biset)) {
          parent = static_cast<int>(j);
        }
      }
      es[i].parent = parent;
      Rational req = Rational(h_value(inst_, es[i].biset)) - boundary(base1_, es[i].biset, inst_.edges());
      if (req * 2 != static_cast<long>(es[i].half_boundary.size())) {
        throw InternalError("entry " + format_biset(es[i].biset) + " is not tight in the residual LP");
      }
      es[i].requirement = static_cast<int>(req.get_num().get_si());
    }
    return fam_;
  }

  LaminarFamily& family() { return fam_; }

 private:
  const Instance& inst_;
  EdgeVector x_;
  EdgeVector base1_;
  FlowNetwork net_;
  std::vector<int> f_index_;
  IndependenceTracker tracker_;
  LaminarFamily fam_;
};

}  // namespace

LaminarFamily build_laminar(const Instance& inst, const EdgeVector& floor_part,
                            const EdgeVector& half_part, bool allow_fallback) {
  Builder b(inst, floor_part, half_part);
  while (!b.full() && b.seed_round() > 0) {
  }
  if (!b.full() && allow_fallback && inst.num_nodes() <= kLaminarFallbackNodes) b.fallback();
  if (!b.full()) {
    throw IncompleteFamily("laminar family has " + std::to_string(b.family().entries.size()) +
                           " bisets for " + std::to_string(b.family().half_edges.size()) +
                           " half edges");
  }
  LaminarFamily fam = b.finish();
  TB_LOG_DEBUG("laminar family: {} entries, {} from enumeration", fam.entries.size(),
               fam.fallback_entries);
  return fam;
}

StructureReport structure_check(const Instance& inst, const LaminarFamily& fam,
                                const EdgeVector& half_part) {
  StructureReport rep;
  const Rational half(1, 2);
  for (int e : fam.half_edges) {
    if (half_part[e] != half) {
      throw StructureViolation("half edge " + std::to_string(e) + " has value " + to_string(half_part[e]));
    }
  }
  const int size = static_cast<int>(fam.entries.size());
  for (int i = 0; i < size; ++i) {
    auto plus = fam.f_plus(i).size();
    auto minus = fam.f_minus(i).size();
    if (plus + minus != 2) {
      throw StructureViolation("entry " + format_biset(fam.entries[static_cast<size_t>(i)].biset) +
                               " has " + std::to_string(plus) + "+" + std::to_string(minus) +
                               " boundary changes, expected 2");
    }
  }
  for (int e : fam.half_edges) {
    int maximal = 0;
    for (int i = 0; i < size; ++i) {
      const auto& hb = fam.entries[static_cast<size_t>(i)].half_boundary;
      if (fam.is_maximal(i) && std::binary_search(hb.begin(), hb.end(), e)) ++maximal;
    }
    if (maximal != 0 && maximal != 2) {
      throw StructureViolation("half edge " + std::to_string(e) + " touches " + std::to_string(maximal) +
                               " maximal bisets, expected 2");
    }
  }
  rep.half_degree.assign(static_cast<size_t>(inst.num_nodes()), 0);
  for (int e : fam.half_edges) {
    ++rep.half_degree[static_cast<size_t>(inst.edge(e).u)];
    ++rep.half_degree[static_cast<size_t>(inst.edge(e).v)];
  }
  for (int v = 0; v < inst.num_nodes(); ++v) {
    int d = rep.half_degree[static_cast<size_t>(v)];
    if (d != 0 && d != 2 && d != 4) {
      throw StructureViolation("node " + std::to_string(v) + " has half degree " + std::to_string(d));
    }
    if (d != 4) continue;
    DegreeFourWitness w;
    w.node = v;
    auto vi = static_cast<size_t>(v);
    for (int xi = 0; xi < size; ++xi) {
      const auto& X = fam.entries[static_cast<size_t>(xi)];
      if (!X.biset.inner().test(vi)) continue;
      for (int wi = 0; wi < size; ++wi) {
        const auto& W = fam.entries[static_cast<size_t>(wi)];
        if (wi == xi || !W.biset.subset_of(X.biset) || W.biset.outer().test(vi)) continue;
        std::vector<int> xe, we;
        for (int e : fam.half_edges) {
          if (!inst.edge(e).touches(v)) continue;
          if (std::binary_search(X.half_boundary.begin(), X.half_boundary.end(), e)) xe.push_back(e);
          if (std::binary_search(W.half_boundary.begin(), W.half_boundary.end(), e)) we.push_back(e);
        }
        if (xe.size() != 2 || we.size() != 2) continue;
        if (w.candidates++ == 0) {
          w.outer_entry = xi;
          w.inner_entry = wi;
          w.outer_edges = xe;
          w.inner_edges = we;
        }
      }
    }
    if (w.candidates == 0) {
      throw StructureViolation("degree-4 node " + std::to_string(v) + " has no nested witness pair");
    }
    if (w.candidates > 1) {
      TB_LOG_DEBUG("degree-4 node {} has {} witness pairs; using the first", v, w.candidates);
    }
    rep.witnesses.push_back(std::move(w));
  }
  return rep;
}

}  // namespace tbackup
