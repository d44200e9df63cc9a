#include "bshyper/numtheory.hpp"

#include <algorithm>

#include "bshyper/rank.hpp"
#include "bshyper/structures.hpp"

namespace bshyper {

using boost::multiprecision::denominator;
using boost::multiprecision::numerator;

Bounds coarse_bounds(const AlphaSpec& spec) {
  Bounds b;
  b.ar_l = spec.max_arity();
  long m = 1;
  for (;;) {
    bool all_negative = true;
    for (const auto& sym : spec.symbols()) {
      if ((Weight(1) - sym.alpha * Rational(m)).sign() >= 0) {
        all_negative = false;
        break;
      }
    }
    if (all_negative) break;
    ++m;
    if (m > 1000000) fail(errc::internal_inconsistency, "m_pt scan did not terminate");
  }
  b.m_pt = m;
  b.m_suff = m * b.ar_l;
  return b;
}

namespace {

// Minimize the positive value (sum of chosen alpha multiples) - k. The sum
// only grows along a branch, so any partial sum at or above k + best prunes.
void granularity_dfs(const std::vector<Weight>& alphas, std::size_t idx, const Weight& partial,
                     const Weight& k_weight, Weight& best) {
  if ((partial - k_weight - best).sign() >= 0) return;
  if (idx == alphas.size()) {
    const Weight val = partial - k_weight;
    if (val.sign() > 0 && val < best) best = val;
    return;
  }
  Weight acc = partial;
  for (long n = 0;; ++n) {
    if (n > 0) acc += alphas[idx];
    if ((acc - k_weight - best).sign() >= 0) break;
    granularity_dfs(alphas, idx + 1, acc, k_weight, best);
  }
}

}  // namespace

Weight granularity(const AlphaSpec& spec, const std::vector<std::string>& l0, long m) {
  if (m < 2) fail(errc::invalid_argument, "granularity requires m >= 2");
  if (l0.empty()) fail(errc::invalid_argument, "granularity requires a nonempty symbol set");
  std::vector<Weight> alphas;
  for (const std::string& name : l0) alphas.push_back(spec.at(name).alpha);
  std::optional<Weight> seed;
  // Seed with single-symbol candidates so pruning has a bound from the start.
  for (long k = 1; k < m; ++k) {
    const Weight kw(static_cast<long>(k));
    for (const Weight& a : alphas) {
      Weight acc;
      while ((acc - kw).sign() <= 0) acc += a;
      const Weight val = acc - kw;
      if (!seed || val < *seed) seed = val;
    }
  }
  Weight best = *seed;
  for (long k = 1; k < m; ++k) granularity_dfs(alphas, 0, Weight(), Weight(static_cast<long>(k)), best);
  return best;
}

Weight granularity(const AlphaSpec& spec, long m) {
  std::vector<std::string> all;
  for (const auto& sym : spec.symbols()) all.push_back(sym.name);
  return granularity(spec, all, m);
}

CFExpansion cf_convergents(const Weight& x, int k) {
  if (x.is_rational()) fail(errc::rational_input, "continued-fraction expansion requires an irrational input");
  if (x.sign() <= 0 || (Weight(1) - x).sign() <= 0)
    fail(errc::invalid_argument, "continued-fraction input must lie in (0,1)");
  CFExpansion out;
  // p_{-1}/q_{-1} = 1/0, p_0/q_0 = 0/1 (a_0 = 0 since x < 1).
  Int pm1 = 1, qm1 = 0, p0 = 0, q0 = 1;
  Weight cur = x;
  for (int i = 1; i <= k; ++i) {
    cur = cur.reciprocal();
    const Int a = cur.floor();
    out.partial_quotients.push_back(a);
    const Int p = a * p0 + pm1;
    const Int q = a * q0 + qm1;
    out.convergents.push_back(Convergent{p, q, i});
    pm1 = p0;
    qm1 = q0;
    p0 = p;
    q0 = q;
    cur = cur - Weight(Rational(a));
    if (cur.sign() == 0) fail(errc::internal_inconsistency, "irrational expansion terminated");
  }
  return out;
}

DiophantineStream::DiophantineStream(const AlphaSpec& spec, const Weight& target, Int min_n) {
  const RationalityReport rat = is_rational(spec);
  if (!rat.rational) fail(errc::invalid_argument, "diophantine stream requires a rational signature");
  if (!target.is_rational()) fail(errc::invalid_argument, "diophantine target must be rational");
  c_ = rat.c;
  const Rational t = target.rational_part();
  if (c_ % denominator(t) != 0)
    fail(errc::invalid_argument, "target denominator must divide c");
  target_scaled_ = numerator(t) * (c_ / denominator(t));
  for (const auto& sym : spec.symbols()) {
    names_.push_back(sym.name);
    const Rational& a = sym.alpha.rational_part();
    coeffs_.push_back(numerator(a) * (c_ / denominator(a)));
  }
  n_ = min_n > 0 ? min_n : Int(1);
}

std::optional<DiophantineStream::Solution> DiophantineStream::next() {
  // Solve sum coeffs_i * m_i = c*n - target_scaled with every m_i >= 1,
  // maximizing sum m_i (ties: lexicographically least count vector).
  Int g = 0;
  for (const Int& a : coeffs_) g = boost::multiprecision::gcd(g, a);
  for (Int guard = 0; guard < 100000; ++guard, ++n_) {
    Int r = c_ * n_ - target_scaled_;
    Int rest = r;
    for (const Int& a : coeffs_) rest -= a;  // enforce m_i >= 1 via shift
    if (rest < 0) continue;
    if (rest % g != 0) continue;
    // DFS over all but the last symbol; the last takes the remainder.
    std::vector<Int> counts(coeffs_.size(), Int(0));
    std::vector<Int> best;
    Int best_total = -1;
    std::function<void(std::size_t, Int, Int)> dfs = [&](std::size_t idx, Int remaining, Int total) {
      if (idx + 1 == coeffs_.size()) {
        if (remaining % coeffs_[idx] != 0) return;
        counts[idx] = remaining / coeffs_[idx];
        const Int tot = total + counts[idx];
        if (tot > best_total || (tot == best_total && counts < best)) {
          best_total = tot;
          best = counts;
        }
        return;
      }
      for (Int m = 0; m * coeffs_[idx] <= remaining; ++m) {
        counts[idx] = m;
        dfs(idx + 1, remaining - m * coeffs_[idx], total + m);
      }
    };
    dfs(0, rest, 0);
    if (best_total < 0) continue;
    Solution sol;
    sol.n = n_;
    for (std::size_t i = 0; i < names_.size(); ++i) sol.m[names_[i]] = best[i] + 1;
    ++n_;
    return sol;
  }
  fail(errc::no_solution, "no diophantine solution found in search range");
}

DiophantineStream solve_diophantine(const AlphaSpec& spec, const Weight& target, Int min_n) {
  return DiophantineStream(spec, target, min_n);
}

namespace {

Int binomial(long n, long k) {
  if (k < 0 || k > n) return 0;
  Int r = 1;
  for (long i = 0; i < k; ++i) {
    r *= (n - i);
    r /= (i + 1);
  }
  return r;
}

// Minimize the positive value n - (sum of chosen alpha multiples). The value
// only shrinks along a branch, so a non-positive partial value kills the
// whole subtree (all alphas are positive).
void beta_relax_dfs(const std::vector<Weight>& alphas, const std::vector<long>& caps, std::size_t idx,
                    const Weight& acc, const Weight& n_weight, Weight& best) {
  if ((n_weight - acc).sign() <= 0) return;
  if (idx == alphas.size()) {
    const Weight val = n_weight - acc;
    if (val < best) best = val;
    return;
  }
  Weight cur = acc;
  for (long m = 0; m <= caps[idx]; ++m) {
    if (m > 0) cur += alphas[idx];
    if ((n_weight - cur).sign() <= 0) break;
    beta_relax_dfs(alphas, caps, idx + 1, cur, n_weight, best);
  }
}

}  // namespace

Weight beta_lower_bound(const AlphaSpec& spec) {
  const CoherenceReport coh = is_coherent(spec);
  const RationalityReport rat = is_rational(spec);
  if (!coh.coherent || rat.rational)
    fail(errc::not_coherent_irrational, "beta is defined for coherent non-rational signatures");
  const Bounds bounds = coarse_bounds(spec);
  Weight best = granularity(spec, 2);
  std::vector<Weight> alphas;
  std::vector<int> arities;
  for (const auto& sym : spec.symbols()) {
    alphas.push_back(sym.alpha);
    arities.push_back(sym.arity);
  }
  for (long n = 1; n < bounds.m_suff; ++n) {
    std::vector<long> caps;
    for (std::size_t i = 0; i < alphas.size(); ++i) {
      const Int cap = binomial(n, arities[i]);
      caps.push_back(cap > 100000 ? 100000L : static_cast<long>(cap));
    }
    beta_relax_dfs(alphas, caps, 0, Weight(), Weight(n), best);
  }
  return best;
}

Weight beta_exact(const AlphaSpec& spec, int max_size) {
  const CoherenceReport coh = is_coherent(spec);
  const RationalityReport rat = is_rational(spec);
  if (!coh.coherent || rat.rational)
    fail(errc::not_coherent_irrational, "beta is defined for coherent non-rational signatures");
  const Bounds bounds = coarse_bounds(spec);
  const int limit = std::min<long>(max_size, bounds.m_suff - 1);
  Weight best = granularity(spec, 2);

  for (int n = 1; n <= limit; ++n) {
    VertexSet universe;
    for (int i = 0; i < n; ++i) universe.push_back("v" + std::to_string(i));
    // All candidate tuples per symbol.
    std::vector<std::pair<std::string, std::vector<VertexSet>>> slots;
    std::size_t total_bits = 0;
    for (const auto& sym : spec.symbols()) {
      std::vector<VertexSet> tuples;
      std::vector<int> pick(static_cast<std::size_t>(sym.arity));
      std::function<void(int, int)> gen = [&](int start, int depth) {
        if (depth == sym.arity) {
          VertexSet t;
          for (int idx : pick) t.push_back(universe[static_cast<std::size_t>(idx)]);
          tuples.push_back(t);
          return;
        }
        for (int v = start; v < n; ++v) {
          pick[static_cast<std::size_t>(depth)] = v;
          gen(v + 1, depth + 1);
        }
      };
      if (sym.arity <= n) gen(0, 0);
      total_bits += tuples.size();
      slots.emplace_back(sym.name, std::move(tuples));
    }
    if (total_bits > 22) fail(errc::too_large, "beta_exact enumeration space too large");
    const std::uint64_t patterns = 1ull << total_bits;
    for (std::uint64_t pat = 0; pat < patterns; ++pat) {
      std::map<std::string, std::vector<VertexSet>> rels;
      std::size_t bit = 0;
      for (const auto& [sym, tuples] : slots) {
        for (const auto& t : tuples) {
          if (pat & (1ull << bit)) rels[sym].push_back(t);
          ++bit;
        }
      }
      FinStructure s(universe, std::move(rels));
      const Weight d = delta(spec, s);
      if (d.sign() <= 0 || d >= best) continue;
      if (in_kalpha(spec, s).pass) best = d;
    }
  }
  return best;
}

}  // namespace bshyper
