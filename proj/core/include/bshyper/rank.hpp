#pragma once

#include <functional>
#include <optional>

#include "bshyper/structures.hpp"

namespace bshyper {

// Hard caps for the exhaustive subset scans. Scans beyond the cap fail with
// TooLarge rather than silently degrade.
struct ScanLimits {
  int scan_cap = 24;        // in_kalpha / strong / minimal-pair windows
  int closed_cap = 16;      // is_closed clause-(c) double scan
  int zero_cap = 20;        // zero_set subset DP (per connected component)
};

struct RankReport {
  bool pass = false;
  Weight value;       // the relevant extremal rank
  VertexSet witness;  // violating subset when pass == false
};

// delta(S) = |S| - sum_E alpha_E * N_E(S), exact.
Weight delta(const AlphaSpec& spec, const FinStructure& s);

// delta(B/A) = delta(AB) - delta(A), both induced in `ambient`.
Weight rel_rank(const AlphaSpec& spec, const FinStructure& ambient, const VertexSet& b, const VertexSet& a);

// e(A,B): weighted count of relation subsets of AB meeting both A and B.
Weight edge_interaction(const AlphaSpec& spec, const FinStructure& ambient, const VertexSet& a,
                        const VertexSet& b);
// e(A,B,C): weighted count of relation subsets of ABC meeting A and C.
Weight edge_interaction(const AlphaSpec& spec, const FinStructure& ambient, const VertexSet& a,
                        const VertexSet& b, const VertexSet& c);

// K_alpha membership: min over all subsets of delta >= 0.
RankReport in_kalpha(const AlphaSpec& spec, const FinStructure& s, const ScanLimits& limits = {});

// A <= ambient: every A-containing subset has delta >= delta(A).
RankReport is_strong(const AlphaSpec& spec, const FinStructure& ambient, const VertexSet& a,
                     const ScanLimits& limits = {});

// (A,B) minimal pair: delta(C) >= delta(A) for all A <= C < B, delta(B) < delta(A).
bool is_minimal_pair(const AlphaSpec& spec, const FinStructure& a, const FinStructure& b,
                     const ScanLimits& limits = {});

// Essential minimal pair over B: minimal pair plus delta(D'/D' cap B) >= 0 for
// every proper substructure D' of D.
bool is_essential_minimal_pair(const AlphaSpec& spec, const FinStructure& b, const FinStructure& d,
                               const ScanLimits& limits = {});

// Intrinsic closure: least superset of X closed under absorbing minimal pairs.
VertexSet icl(const AlphaSpec& spec, const FinStructure& ambient, const VertexSet& x,
              const ScanLimits& limits = {});

// The unique maximal rank-0 substructure (requires S in K_alpha).
VertexSet zero_set(const AlphaSpec& spec, const FinStructure& s, const ScanLimits& limits = {});

// Closure test via both characterizations (no escaping minimal pair; every
// finite B has B cap X strong in B); asserts they agree.
bool is_closed(const AlphaSpec& spec, const FinStructure& ambient, const VertexSet& x,
               const ScanLimits& limits = {});

// Minimum positive rank over sets C with Z proper-subset-of C subset-of S.
// Used by the rank-zero construction loop; deterministic tie-breaking.
struct MinRankSubset {
  bool found = false;
  VertexSet set;
  Weight value;
};
MinRankSubset min_positive_delta_over_supersets(const AlphaSpec& spec, const FinStructure& s,
                                                const VertexSet& z, int cap);

}  // namespace bshyper
