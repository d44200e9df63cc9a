#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "bshyper/weights.hpp"

namespace bshyper {

using Vertex = std::string;
using VertexSet = std::vector<Vertex>;  // kept sorted and duplicate-free

VertexSet normalize_vertex_set(VertexSet vs);
VertexSet set_union(const VertexSet& a, const VertexSet& b);
VertexSet set_intersection(const VertexSet& a, const VertexSet& b);
VertexSet set_difference(const VertexSet& a, const VertexSet& b);
bool set_contains(const VertexSet& a, const Vertex& v);
bool subset_of(const VertexSet& a, const VertexSet& b);

// A finite structure of K_L: a universe of named vertices plus, per relation
// symbol, a set of distinct vertex-subsets. The set-of-subsets representation
// enforces the symmetric/irreflexive reading: a tuple is stored once as a
// sorted duplicate-free list.
class FinStructure {
public:
  using Tuple = std::vector<int>;  // sorted internal vertex indices

  FinStructure() = default;
  FinStructure(VertexSet universe, std::map<std::string, std::vector<VertexSet>> relations);

  std::size_t size() const { return universe_.size(); }
  bool empty() const { return universe_.empty(); }
  const VertexSet& universe() const { return universe_; }

  bool has_vertex(const Vertex& v) const;
  int index_of(const Vertex& v) const;  // fails with UnknownVertex
  const Vertex& vertex(int index) const { return universe_.at(static_cast<std::size_t>(index)); }

  const std::map<std::string, std::vector<Tuple>>& relations() const { return relations_; }
  std::size_t relation_count(const std::string& symbol) const;  // N_E
  std::size_t total_relations() const;
  bool has_relation(const std::string& symbol, const VertexSet& tuple) const;

  VertexSet tuple_vertices(const Tuple& t) const;

  // Validates arities and (implicitly) vertex membership against a signature.
  void validate_against(const AlphaSpec& spec) const;

  bool operator==(const FinStructure& o) const {
    return universe_ == o.universe_ && relations_ == o.relations_;
  }

  FinStructure with_added_vertices(const VertexSet& extra) const;
  FinStructure with_added_relation(const std::string& symbol, const VertexSet& tuple) const;
  FinStructure without_relation(const std::string& symbol, const VertexSet& tuple) const;
  FinStructure renamed(const std::map<Vertex, Vertex>& mapping) const;

private:
  VertexSet universe_;
  std::map<std::string, std::vector<Tuple>> relations_;  // tuples sorted lexicographically
};

// Substructure induced on X: exactly the relation subsets contained in X.
FinStructure induced(const FinStructure& s, const VertexSet& x);

// Free join: union universe, union relations, no new relations. Every part
// must contain `base` as an induced substructure and the parts may pairwise
// share only base vertices.
FinStructure free_join(const std::vector<FinStructure>& parts, const FinStructure& base);

// Renames the non-base vertices of each part to "p{i}_{oldid}" so the parts
// become disjoint over the base; used to form joins of isomorphic copies.
std::vector<FinStructure> rename_apart(const std::vector<FinStructure>& parts, const FinStructure& base);

// An injective, relation-preserving-in-both-directions map onto its image.
struct Embedding {
  std::map<Vertex, Vertex> map;

  bool defined_on(const Vertex& v) const { return map.count(v) != 0; }
  const Vertex& operator()(const Vertex& v) const { return map.at(v); }
};

// All (up to `limit`) extensions of the partial embedding `over` to induced
// embeddings of B into M. Backtracking, most-constrained vertex first;
// deterministic, results canonically ordered.
std::vector<Embedding> find_embeddings(const FinStructure& b, const Embedding& over, const FinStructure& m,
                                       std::size_t limit);

bool is_isomorphic(const FinStructure& s, const FinStructure& t);

}  // namespace bshyper
