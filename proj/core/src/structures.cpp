#include "bshyper/structures.hpp"

#include <algorithm>
#include <set>

namespace bshyper {

VertexSet normalize_vertex_set(VertexSet vs) {
  std::sort(vs.begin(), vs.end());
  vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
  return vs;
}

VertexSet set_union(const VertexSet& a, const VertexSet& b) {
  VertexSet out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

VertexSet set_intersection(const VertexSet& a, const VertexSet& b) {
  VertexSet out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

VertexSet set_difference(const VertexSet& a, const VertexSet& b) {
  VertexSet out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

bool set_contains(const VertexSet& a, const Vertex& v) {
  return std::binary_search(a.begin(), a.end(), v);
}

bool subset_of(const VertexSet& a, const VertexSet& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

FinStructure::FinStructure(VertexSet universe, std::map<std::string, std::vector<VertexSet>> relations)
    : universe_(normalize_vertex_set(std::move(universe))) {
  for (auto& [symbol, tuples] : relations) {
    std::set<Tuple> canon;
    for (const VertexSet& raw : tuples) {
      VertexSet named = raw;
      std::sort(named.begin(), named.end());
      if (std::adjacent_find(named.begin(), named.end()) != named.end())
        fail(errc::invalid_argument, "relation tuple for '" + symbol + "' repeats a vertex");
      if (named.size() < 2)
        fail(errc::invalid_argument, "relation tuple for '" + symbol + "' must have at least 2 vertices");
      Tuple t;
      t.reserve(named.size());
      for (const Vertex& v : named) t.push_back(index_of(v));
      canon.insert(std::move(t));
    }
    if (!canon.empty()) relations_[symbol] = std::vector<Tuple>(canon.begin(), canon.end());
  }
}

bool FinStructure::has_vertex(const Vertex& v) const { return set_contains(universe_, v); }

int FinStructure::index_of(const Vertex& v) const {
  auto it = std::lower_bound(universe_.begin(), universe_.end(), v);
  if (it == universe_.end() || *it != v) fail(errc::unknown_vertex, "vertex '" + v + "' not in universe");
  return static_cast<int>(it - universe_.begin());
}

std::size_t FinStructure::relation_count(const std::string& symbol) const {
  auto it = relations_.find(symbol);
  return it == relations_.end() ? 0 : it->second.size();
}

std::size_t FinStructure::total_relations() const {
  std::size_t n = 0;
  for (const auto& [sym, tuples] : relations_) n += tuples.size();
  return n;
}

bool FinStructure::has_relation(const std::string& symbol, const VertexSet& tuple) const {
  auto it = relations_.find(symbol);
  if (it == relations_.end()) return false;
  VertexSet named = normalize_vertex_set(tuple);
  Tuple t;
  for (const Vertex& v : named) {
    if (!has_vertex(v)) return false;
    t.push_back(index_of(v));
  }
  return std::binary_search(it->second.begin(), it->second.end(), t);
}

VertexSet FinStructure::tuple_vertices(const Tuple& t) const {
  VertexSet out;
  out.reserve(t.size());
  for (int i : t) out.push_back(vertex(i));
  return out;
}

void FinStructure::validate_against(const AlphaSpec& spec) const {
  for (const auto& [symbol, tuples] : relations_) {
    const SymbolDecl& decl = spec.at(symbol);
    for (const Tuple& t : tuples) {
      if (static_cast<int>(t.size()) != decl.arity)
        fail(errc::signature_mismatch,
             "relation '" + symbol + "' expects arity " + std::to_string(decl.arity) + ", got tuple of size " +
                 std::to_string(t.size()));
    }
  }
}

FinStructure FinStructure::with_added_vertices(const VertexSet& extra) const {
  FinStructure out;
  std::map<std::string, std::vector<VertexSet>> rels;
  for (const auto& [sym, tuples] : relations_) {
    for (const Tuple& t : tuples) rels[sym].push_back(tuple_vertices(t));
  }
  return FinStructure(set_union(universe_, normalize_vertex_set(extra)), std::move(rels));
}

FinStructure FinStructure::with_added_relation(const std::string& symbol, const VertexSet& tuple) const {
  std::map<std::string, std::vector<VertexSet>> rels;
  for (const auto& [sym, tuples] : relations_) {
    for (const Tuple& t : tuples) rels[sym].push_back(tuple_vertices(t));
  }
  rels[symbol].push_back(tuple);
  return FinStructure(universe_, std::move(rels));
}

FinStructure FinStructure::without_relation(const std::string& symbol, const VertexSet& tuple) const {
  const VertexSet target = normalize_vertex_set(tuple);
  std::map<std::string, std::vector<VertexSet>> rels;
  for (const auto& [sym, tuples] : relations_) {
    for (const Tuple& t : tuples) {
      VertexSet named = tuple_vertices(t);
      if (sym == symbol && named == target) continue;
      rels[sym].push_back(std::move(named));
    }
  }
  return FinStructure(universe_, std::move(rels));
}

FinStructure FinStructure::renamed(const std::map<Vertex, Vertex>& mapping) const {
  auto rename = [&mapping](const Vertex& v) -> Vertex {
    auto it = mapping.find(v);
    return it == mapping.end() ? v : it->second;
  };
  VertexSet uni;
  for (const Vertex& v : universe_) uni.push_back(rename(v));
  VertexSet check = normalize_vertex_set(uni);
  if (check.size() != universe_.size()) fail(errc::invalid_argument, "renaming collapses vertices");
  std::map<std::string, std::vector<VertexSet>> rels;
  for (const auto& [sym, tuples] : relations_) {
    for (const Tuple& t : tuples) {
      VertexSet named;
      for (int i : t) named.push_back(rename(vertex(i)));
      rels[sym].push_back(std::move(named));
    }
  }
  return FinStructure(std::move(uni), std::move(rels));
}

FinStructure induced(const FinStructure& s, const VertexSet& x) {
  VertexSet xs = normalize_vertex_set(x);
  for (const Vertex& v : xs) {
    if (!s.has_vertex(v)) fail(errc::unknown_vertex, "vertex '" + v + "' not in universe");
  }
  std::map<std::string, std::vector<VertexSet>> rels;
  for (const auto& [sym, tuples] : s.relations()) {
    for (const auto& t : tuples) {
      VertexSet named = s.tuple_vertices(t);
      if (subset_of(named, xs)) rels[sym].push_back(std::move(named));
    }
  }
  return FinStructure(std::move(xs), std::move(rels));
}

FinStructure free_join(const std::vector<FinStructure>& parts, const FinStructure& base) {
  const VertexSet& base_universe = base.universe();
  // Parts must contain the base as an induced substructure.
  for (const FinStructure& p : parts) {
    for (const Vertex& v : base_universe) {
      if (!p.has_vertex(v)) fail(errc::invalid_argument, "part does not contain base vertex '" + v + "'");
    }
    if (!(induced(p, base_universe) == base))
      fail(errc::invalid_argument, "base is not induced in a join part");
  }
  // Pairwise intersections must equal the base universe.
  for (std::size_t i = 0; i < parts.size(); ++i) {
    for (std::size_t j = i + 1; j < parts.size(); ++j) {
      VertexSet inter = set_intersection(parts[i].universe(), parts[j].universe());
      if (inter != base_universe) {
        VertexSet bad = set_difference(inter, base_universe);
        fail(errc::overlap_outside_base,
             "parts share vertex '" + (bad.empty() ? std::string("?") : bad.front()) + "' outside the base");
      }
    }
  }
  VertexSet uni = base_universe;
  std::map<std::string, std::vector<VertexSet>> rels;
  for (const auto& [sym, tuples] : base.relations()) {
    for (const auto& t : tuples) rels[sym].push_back(base.tuple_vertices(t));
  }
  for (const FinStructure& p : parts) {
    uni = set_union(uni, p.universe());
    for (const auto& [sym, tuples] : p.relations()) {
      for (const auto& t : tuples) rels[sym].push_back(p.tuple_vertices(t));
    }
  }
  return FinStructure(std::move(uni), std::move(rels));
}

std::vector<FinStructure> rename_apart(const std::vector<FinStructure>& parts, const FinStructure& base) {
  std::vector<FinStructure> out;
  out.reserve(parts.size());
  for (std::size_t i = 0; i < parts.size(); ++i) {
    std::map<Vertex, Vertex> mapping;
    for (const Vertex& v : parts[i].universe()) {
      if (!base.has_vertex(v)) mapping[v] = "p" + std::to_string(i) + "_" + v;
    }
    out.push_back(parts[i].renamed(mapping));
  }
  return out;
}

namespace {

struct EmbedSearch {
  const FinStructure& pattern;
  const FinStructure& target;
  std::size_t limit;
  std::vector<int> assign;        // pattern index -> target index or -1
  std::vector<bool> used;         // target index used
  std::vector<Embedding> results;

  // Tuples of the pattern indexed for incremental consistency checks.
  struct PatRel {
    std::string symbol;
    std::vector<int> tuple;
  };
  std::vector<PatRel> pattern_rels;

  EmbedSearch(const FinStructure& b, const FinStructure& m, std::size_t lim)
      : pattern(b), target(m), limit(lim), assign(b.size(), -1), used(m.size(), false) {
    for (const auto& [sym, tuples] : b.relations()) {
      for (const auto& t : tuples) pattern_rels.push_back({sym, t});
    }
  }

  // Relation consistency for the partial map: any fully-assigned pattern tuple
  // must be a relation of the target, and any fully-assigned target tuple over
  // the image must pull back (induced embedding, both directions).
  bool consistent_after(int pv) {
    for (const auto& pr : pattern_rels) {
      bool involves = false, complete = true;
      for (int idx : pr.tuple) {
        if (idx == pv) involves = true;
        if (assign[static_cast<std::size_t>(idx)] < 0) complete = false;
      }
      if (!involves || !complete) continue;
      std::vector<int> image;
      for (int idx : pr.tuple) image.push_back(assign[static_cast<std::size_t>(idx)]);
      std::sort(image.begin(), image.end());
      auto it = target.relations().find(pr.symbol);
      if (it == target.relations().end() || !std::binary_search(it->second.begin(), it->second.end(), image))
        return false;
    }
    // Reverse direction: target relations fully inside the image must exist in
    // the pattern. Check only tuples through the newly assigned vertex.
    const int tv = assign[static_cast<std::size_t>(pv)];
    std::vector<int> inverse(target.size(), -1);
    for (std::size_t i = 0; i < assign.size(); ++i) {
      if (assign[i] >= 0) inverse[static_cast<std::size_t>(assign[i])] = static_cast<int>(i);
    }
    for (const auto& [sym, tuples] : target.relations()) {
      auto pit = pattern.relations().find(sym);
      for (const auto& t : tuples) {
        bool through = false, inside = true;
        for (int idx : t) {
          if (idx == tv) through = true;
          if (inverse[static_cast<std::size_t>(idx)] < 0) inside = false;
        }
        if (!through || !inside) continue;
        std::vector<int> pre;
        for (int idx : t) pre.push_back(inverse[static_cast<std::size_t>(idx)]);
        std::sort(pre.begin(), pre.end());
        if (pit == pattern.relations().end() || !std::binary_search(pit->second.begin(), pit->second.end(), pre))
          return false;
      }
    }
    return true;
  }

  int pick_unassigned() {
    // Most-constrained-first: prefer vertices touching many assigned ones.
    int best = -1;
    int best_score = -1;
    for (std::size_t i = 0; i < assign.size(); ++i) {
      if (assign[i] >= 0) continue;
      int score = 0;
      for (const auto& pr : pattern_rels) {
        bool involves = false;
        int assigned = 0;
        for (int idx : pr.tuple) {
          if (idx == static_cast<int>(i)) involves = true;
          if (assign[static_cast<std::size_t>(idx)] >= 0) ++assigned;
        }
        if (involves) score += assigned;
      }
      if (score > best_score) {
        best_score = score;
        best = static_cast<int>(i);
      }
    }
    return best;
  }

  void run() {
    if (results.size() >= limit) return;
    int pv = pick_unassigned();
    if (pv < 0) {
      Embedding e;
      for (std::size_t i = 0; i < assign.size(); ++i)
        e.map[pattern.vertex(static_cast<int>(i))] = target.vertex(assign[i]);
      results.push_back(std::move(e));
      return;
    }
    for (std::size_t tv = 0; tv < target.size(); ++tv) {
      if (used[tv]) continue;
      assign[static_cast<std::size_t>(pv)] = static_cast<int>(tv);
      used[tv] = true;
      if (consistent_after(pv)) run();
      used[tv] = false;
      assign[static_cast<std::size_t>(pv)] = -1;
      if (results.size() >= limit) return;
    }
  }
};

}  // namespace

std::vector<Embedding> find_embeddings(const FinStructure& b, const Embedding& over, const FinStructure& m,
                                       std::size_t limit) {
  if (limit == 0) return {};
  EmbedSearch search(b, m, limit);
  std::set<int> used_targets;
  for (const auto& [src, dst] : over.map) {
    const int pi = b.index_of(src);
    const int ti = m.index_of(dst);
    if (used_targets.count(ti)) fail(errc::invalid_argument, "partial embedding is not injective");
    used_targets.insert(ti);
    search.assign[static_cast<std::size_t>(pi)] = ti;
    search.used[static_cast<std::size_t>(ti)] = true;
  }
  // The pinned part must already be consistent.
  for (const auto& [src, dst] : over.map) {
    (void)dst;
    if (!search.consistent_after(b.index_of(src))) return {};
  }
  search.run();
  std::sort(search.results.begin(), search.results.end(),
            [](const Embedding& x, const Embedding& y) { return x.map < y.map; });
  return search.results;
}

namespace {

// Cheap isomorphism invariant: per-vertex sorted profile of (symbol, arity)
// incidences, refined a few rounds by neighbor multisets.
std::vector<std::string> vertex_profiles(const FinStructure& s) {
  std::vector<std::string> prof(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) prof[i] = "";
  for (int round = 0; round < 3; ++round) {
    std::vector<std::vector<std::string>> incident(s.size());
    for (const auto& [sym, tuples] : s.relations()) {
      for (const auto& t : tuples) {
        std::vector<std::string> member_profiles;
        for (int idx : t) member_profiles.push_back(prof[static_cast<std::size_t>(idx)]);
        std::sort(member_profiles.begin(), member_profiles.end());
        std::string tag = sym + "(";
        for (const auto& mp : member_profiles) tag += mp + ",";
        tag += ")";
        for (int idx : t) incident[static_cast<std::size_t>(idx)].push_back(tag);
      }
    }
    for (std::size_t i = 0; i < s.size(); ++i) {
      std::sort(incident[i].begin(), incident[i].end());
      std::string next = "[";
      for (const auto& tag : incident[i]) next += tag + ";";
      next += "]";
      prof[i] = next;
    }
  }
  return prof;
}

}  // namespace

bool is_isomorphic(const FinStructure& s, const FinStructure& t) {
  if (s.size() != t.size()) return false;
  std::map<std::string, std::size_t> counts_s, counts_t;
  for (const auto& [sym, tuples] : s.relations()) counts_s[sym] = tuples.size();
  for (const auto& [sym, tuples] : t.relations()) counts_t[sym] = tuples.size();
  if (counts_s != counts_t) return false;
  std::vector<std::string> ps = vertex_profiles(s), pt = vertex_profiles(t);
  {
    auto cs = ps;
    auto ct = pt;
    std::sort(cs.begin(), cs.end());
    std::sort(ct.begin(), ct.end());
    if (cs != ct) return false;
  }
  // Backtracking over profile-compatible assignments; reuse the embedding
  // search (an induced embedding between equal-size structures with equal
  // relation counts is an isomorphism).
  return !find_embeddings(s, Embedding{}, t, 1).empty();
}

}  // namespace bshyper
