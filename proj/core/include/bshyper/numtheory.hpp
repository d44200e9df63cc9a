#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "bshyper/weights.hpp"

namespace bshyper {

struct Bounds {
  long m_pt = 0;    // least m with 1 - m*alpha_E < 0 for every E
  long m_suff = 0;  // m_pt * ar(L)
  int ar_l = 2;     // ar(L)
};

Bounds coarse_bounds(const AlphaSpec& spec);

// Gr_{L0}(m): the smallest positive value of sum_{E in L0} alpha_E n_E - k
// over integers 0 < k < m and n_E >= 0. Exact bounded enumeration.
Weight granularity(const AlphaSpec& spec, const std::vector<std::string>& l0, long m);
Weight granularity(const AlphaSpec& spec, long m);

struct Convergent {
  Int p;
  Int q;
  long index = 0;  // k, with p_k/q_k = [0; a_1..a_k]
};

struct CFExpansion {
  std::vector<Int> partial_quotients;  // a_1..a_k (a_0 = 0 for x in (0,1))
  std::vector<Convergent> convergents;
};

// First k continued-fraction convergents of an irrational quadratic x in
// (0,1). Exact: floor/reciprocal arithmetic inside Q(sqrt d).
CFExpansion cf_convergents(const Weight& x, int k);

// Solutions of n - sum_E alpha_E m_E = target with n >= min_n and m_E > 0,
// streamed in increasing n. Requires a rational spec and rational target.
class DiophantineStream {
public:
  DiophantineStream(const AlphaSpec& spec, const Weight& target, Int min_n);

  struct Solution {
    Int n;
    std::map<std::string, Int> m;
  };
  std::optional<Solution> next();

private:
  std::vector<std::string> names_;
  std::vector<Int> coeffs_;  // c * alpha_E, integers
  Int c_;
  Int target_scaled_;  // c * target
  Int n_;
};

DiophantineStream solve_diophantine(const AlphaSpec& spec, const Weight& target, Int min_n);

// A certified positive lower bound for the soft bound beta(alpha) of a
// coherent non-rational spec: minimum of Gr(2) and every positive value
// n - sum m_E alpha_E with n < m_suff, 0 <= m_E <= C(n, ar(E)). The count
// relaxation over-approximates the achievable delta values, so the minimum
// under-approximates beta.
Weight beta_lower_bound(const AlphaSpec& spec);

// Exact beta over genuine K_alpha structures of at most `max_size` vertices
// (exhaustive structure enumeration; only feasible for tiny sizes).
Weight beta_exact(const AlphaSpec& spec, int max_size);

}  // namespace bshyper
