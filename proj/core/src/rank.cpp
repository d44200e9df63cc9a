#include "bshyper/rank.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <limits>

namespace bshyper {

namespace {

using boost::multiprecision::denominator;
using boost::multiprecision::numerator;

// Scaled exact rank values: (x + y*sqrt(d)) / den with x,y int64. All alpha
// weights are scaled once per scan; the Gray-code loop then runs on integer
// adds only. Magnitudes stay far below 2^62 at scan scale (den and counts are
// small); sign tests square into __int128.
struct ScaledVal {
  std::int64_t x = 0;
  std::int64_t y = 0;
};

int sign_scaled(const ScaledVal& v, long d) {
  if (v.y == 0) return v.x > 0 ? 1 : (v.x < 0 ? -1 : 0);
  if (v.x == 0) return v.y > 0 ? 1 : -1;
  if ((v.x > 0) == (v.y > 0)) return v.x > 0 ? 1 : -1;
  const __int128 lhs = static_cast<__int128>(v.x) * v.x;
  const __int128 rhs = static_cast<__int128>(v.y) * v.y * d;
  if (lhs == rhs) return 0;
  const bool x_dominates = lhs > rhs;
  return x_dominates ? (v.x > 0 ? 1 : -1) : (v.y > 0 ? 1 : -1);
}

// v compared to w: sign of v - w.
int cmp_scaled(const ScaledVal& v, const ScaledVal& w, long d) {
  return sign_scaled({v.x - w.x, v.y - w.y}, d);
}

std::int64_t to_i64(const Int& v) {
  if (v > std::numeric_limits<std::int64_t>::max() || v < std::numeric_limits<std::int64_t>::min())
    fail(errc::too_large, "scaled rank value exceeds 64-bit range");
  return static_cast<std::int64_t>(v);
}

struct ScaleContext {
  Int den = 1;
  long d = 0;
  ScaledVal scale(const Weight& w) const {
    const Rational& a = w.rational_part();
    const Rational& b = w.surd_coeff();
    Int xs = numerator(a) * (den / denominator(a));
    Int ys = numerator(b) * (den / denominator(b));
    return {to_i64(xs), to_i64(ys)};
  }
  Weight unscale(const ScaledVal& v) const {
    return Weight(Rational(Int(v.x), den), Rational(Int(v.y), den), d);
  }
};

ScaleContext make_scale(const AlphaSpec& spec) {
  ScaleContext ctx;
  ctx.d = spec.surd_base();
  for (const auto& sym : spec.symbols()) {
    ctx.den = boost::multiprecision::lcm(ctx.den, denominator(sym.alpha.rational_part()));
    ctx.den = boost::multiprecision::lcm(ctx.den, denominator(sym.alpha.surd_coeff()));
  }
  return ctx;
}

// Exhaustive scan over subsets S of `window` with `fixed` always present.
// Maintains delta(fixed u S) and, when a trace mask is supplied, the rank of
// the induced substructure (fixed u S) cap trace. Relations of the ambient
// with any vertex outside fixed u window are ignored (they never lie inside a
// scanned set).
class SubsetScanner {
public:
  SubsetScanner(const AlphaSpec& spec, const FinStructure& ambient, VertexSet window, VertexSet fixed)
      : spec_(spec), ambient_(ambient), ctx_(make_scale(spec)), window_(std::move(window)),
        fixed_(std::move(fixed)) {
    if (window_.size() > 30) fail(errc::too_large, "scan window of " + std::to_string(window_.size()) +
                                                        " vertices exceeds the representable range");
    scope_ = set_union(window_, fixed_);
    for (const auto& [sym, tuples] : ambient_.relations()) {
      const ScaledVal alpha = ctx_.scale(spec_.at(sym).alpha);
      for (const auto& t : tuples) {
        Rel r;
        r.weight = alpha;
        bool in_scope = true;
        for (int idx : t) {
          const Vertex& v = ambient_.vertex(idx);
          if (set_contains(window_, v)) {
            r.wmask |= (1u << index_in_window(v));
          } else if (!set_contains(fixed_, v)) {
            in_scope = false;
            break;
          }
        }
        if (in_scope) rels_.push_back(r);
      }
    }
    incidence_.assign(window_.size(), {});
    for (std::size_t ri = 0; ri < rels_.size(); ++ri) {
      std::uint32_t m = rels_[ri].wmask;
      while (m) {
        const int b = std::countr_zero(m);
        m &= m - 1;
        incidence_[static_cast<std::size_t>(b)].push_back(static_cast<int>(ri));
      }
    }
  }

  int window_size() const { return static_cast<int>(window_.size()); }
  const ScaleContext& ctx() const { return ctx_; }

  int index_in_window(const Vertex& v) const {
    auto it = std::lower_bound(window_.begin(), window_.end(), v);
    return static_cast<int>(it - window_.begin());
  }

  std::uint32_t mask_of(const VertexSet& vs) const {
    std::uint32_t m = 0;
    for (const Vertex& v : vs)
      if (set_contains(window_, v)) m |= (1u << index_in_window(v));
    return m;
  }

  VertexSet decode(std::uint32_t mask) const {
    VertexSet out = fixed_;
    for (int b = 0; b < window_size(); ++b)
      if (mask & (1u << b)) out.push_back(window_[static_cast<std::size_t>(b)]);
    return normalize_vertex_set(out);
  }

  // Optional second accumulator: rank of (current set) cap trace_set.
  void set_trace(const VertexSet& trace_set) {
    trace_enabled_ = true;
    trace_mask_ = mask_of(trace_set);
    trace_fixed_count_ = static_cast<std::int64_t>(set_intersection(fixed_, trace_set).size());
    rebuild_trace_flags(trace_set);
  }

  // delta(fixed u S) scaled by ctx.den: (|fixed|+|S|)*den - edge_sum.
  // visit(mask, delta_scaled, trace_delta_scaled_or_null)
  void scan(const std::function<void(std::uint32_t, const ScaledVal&, const ScaledVal*)>& visit) {
    const int n = window_size();
    const std::int64_t den = to_i64(ctx_.den);
    cur_edges_ = {0, 0};
    cur_trace_edges_ = {0, 0};
    // Relations fully inside `fixed` contribute to every scanned set.
    for (const auto& r : rels_) {
      if (r.wmask == 0) {
        cur_edges_.x += r.weight.x;
        cur_edges_.y += r.weight.y;
        if (trace_enabled_ && r.in_trace) {
          cur_trace_edges_.x += r.weight.x;
          cur_trace_edges_.y += r.weight.y;
        }
      }
    }
    std::uint32_t cur = 0;
    auto emit = [&](std::uint32_t mask) {
      const std::int64_t size = static_cast<std::int64_t>(fixed_.size()) + std::popcount(mask);
      ScaledVal d{size * den - cur_edges_.x, -cur_edges_.y};
      if (trace_enabled_) {
        const std::int64_t tsize = trace_fixed_count_ + std::popcount(mask & trace_mask_);
        ScaledVal td{tsize * den - cur_trace_edges_.x, -cur_trace_edges_.y};
        visit(mask, d, &td);
      } else {
        visit(mask, d, nullptr);
      }
    };
    emit(0);
    if (n == 0) return;
    const std::uint64_t total = 1ull << n;
    for (std::uint64_t g = 1; g < total; ++g) {
      const int bit = std::countr_zero(g);
      const std::uint32_t vbit = 1u << bit;
      const bool adding = !(cur & vbit);
      const std::uint32_t next = cur ^ vbit;
      const std::uint32_t reference = adding ? next : cur;  // superset side
      for (int ri : incidence_[static_cast<std::size_t>(bit)]) {
        const Rel& r = rels_[static_cast<std::size_t>(ri)];
        if ((r.wmask & reference) == r.wmask) {
          const std::int64_t sgn = adding ? 1 : -1;
          cur_edges_.x += sgn * r.weight.x;
          cur_edges_.y += sgn * r.weight.y;
          if (trace_enabled_ && r.in_trace) {
            cur_trace_edges_.x += sgn * r.weight.x;
            cur_trace_edges_.y += sgn * r.weight.y;
          }
        }
      }
      cur = next;
      emit(cur);
    }
  }

private:
  struct Rel {
    std::uint32_t wmask = 0;
    ScaledVal weight;
    bool in_trace = false;
  };

  void rebuild_trace_flags(const VertexSet& trace_set) {
    std::size_t ri = 0;
    for (const auto& [sym, tuples] : ambient_.relations()) {
      (void)sym;
      for (const auto& t : tuples) {
        bool in_scope = true;
        bool inside_trace = true;
        for (int idx : t) {
          const Vertex& v = ambient_.vertex(idx);
          if (!set_contains(window_, v) && !set_contains(fixed_, v)) {
            in_scope = false;
            break;
          }
          if (!set_contains(trace_set, v)) inside_trace = false;
        }
        if (!in_scope) continue;
        rels_[ri].in_trace = inside_trace;
        ++ri;
      }
    }
  }

  const AlphaSpec& spec_;
  const FinStructure& ambient_;
  ScaleContext ctx_;
  VertexSet window_;
  VertexSet fixed_;
  VertexSet scope_;
  std::vector<Rel> rels_;
  std::vector<std::vector<int>> incidence_;
  ScaledVal cur_edges_;
  ScaledVal cur_trace_edges_;
  bool trace_enabled_ = false;
  std::uint32_t trace_mask_ = 0;
  std::int64_t trace_fixed_count_ = 0;
};

void require_window(std::size_t n, int cap, const char* what) {
  if (static_cast<int>(n) > cap)
    fail(errc::too_large, std::string(what) + ": window of " + std::to_string(n) +
                              " vertices exceeds cap " + std::to_string(cap));
}

}  // namespace

Weight delta(const AlphaSpec& spec, const FinStructure& s) {
  s.validate_against(spec);
  Weight d(static_cast<long>(s.size()));
  for (const auto& [sym, tuples] : s.relations()) {
    const Weight& alpha = spec.at(sym).alpha;
    d -= alpha * Rational(static_cast<long>(tuples.size()));
  }
  return d;
}

Weight rel_rank(const AlphaSpec& spec, const FinStructure& ambient, const VertexSet& b, const VertexSet& a) {
  const FinStructure ab = induced(ambient, set_union(a, b));
  const FinStructure aa = induced(ambient, a);
  return delta(spec, ab) - delta(spec, aa);
}

Weight edge_interaction(const AlphaSpec& spec, const FinStructure& ambient, const VertexSet& a,
                        const VertexSet& b) {
  const VertexSet an = normalize_vertex_set(a), bn = normalize_vertex_set(b);
  const FinStructure scope = induced(ambient, set_union(an, bn));
  Weight total;
  for (const auto& [sym, tuples] : scope.relations()) {
    const Weight& alpha = spec.at(sym).alpha;
    long n = 0;
    for (const auto& t : tuples) {
      bool meets_a = false, meets_b = false;
      for (int idx : t) {
        const Vertex& v = scope.vertex(idx);
        meets_a = meets_a || set_contains(an, v);
        meets_b = meets_b || set_contains(bn, v);
      }
      if (meets_a && meets_b) ++n;
    }
    total += alpha * Rational(n);
  }
  return total;
}

Weight edge_interaction(const AlphaSpec& spec, const FinStructure& ambient, const VertexSet& a,
                        const VertexSet& b, const VertexSet& c) {
  const VertexSet an = normalize_vertex_set(a), cn = normalize_vertex_set(c);
  const VertexSet scope_set = set_union(set_union(an, normalize_vertex_set(b)), cn);
  const FinStructure scope = induced(ambient, scope_set);
  Weight total;
  for (const auto& [sym, tuples] : scope.relations()) {
    const Weight& alpha = spec.at(sym).alpha;
    long n = 0;
    for (const auto& t : tuples) {
      bool meets_a = false, meets_c = false;
      for (int idx : t) {
        const Vertex& v = scope.vertex(idx);
        meets_a = meets_a || set_contains(an, v);
        meets_c = meets_c || set_contains(cn, v);
      }
      if (meets_a && meets_c) ++n;
    }
    total += alpha * Rational(n);
  }
  return total;
}

RankReport in_kalpha(const AlphaSpec& spec, const FinStructure& s, const ScanLimits& limits) {
  s.validate_against(spec);
  require_window(s.size(), limits.scan_cap, "in_kalpha");
  SubsetScanner scan(spec, s, s.universe(), {});
  const long d = spec.surd_base();
  bool found_negative = false;
  ScaledVal best{0, 0};
  std::uint32_t best_mask = 0;
  scan.scan([&](std::uint32_t mask, const ScaledVal& dv, const ScaledVal*) {
    if (sign_scaled(dv, d) < 0 && (!found_negative || cmp_scaled(dv, best, d) < 0)) {
      found_negative = true;
      best = dv;
      best_mask = mask;
    }
  });
  RankReport rep;
  rep.pass = !found_negative;
  if (found_negative) {
    rep.value = scan.ctx().unscale(best);
    rep.witness = scan.decode(best_mask);
  } else {
    rep.value = delta(spec, s);
  }
  return rep;
}

RankReport is_strong(const AlphaSpec& spec, const FinStructure& ambient, const VertexSet& a,
                     const ScanLimits& limits) {
  ambient.validate_against(spec);
  const VertexSet an = normalize_vertex_set(a);
  for (const Vertex& v : an) (void)ambient.index_of(v);
  const VertexSet window = set_difference(ambient.universe(), an);
  require_window(window.size(), limits.scan_cap, "is_strong");
  const Weight base = delta(spec, induced(ambient, an));
  SubsetScanner scan(spec, ambient, window, an);
  const ScaledVal base_scaled = scan.ctx().scale(base);
  const long d = spec.surd_base();
  bool violated = false;
  ScaledVal worst{0, 0};
  std::uint32_t worst_mask = 0;
  scan.scan([&](std::uint32_t mask, const ScaledVal& dv, const ScaledVal*) {
    if (cmp_scaled(dv, base_scaled, d) < 0 && (!violated || cmp_scaled(dv, worst, d) < 0)) {
      violated = true;
      worst = dv;
      worst_mask = mask;
    }
  });
  RankReport rep;
  rep.pass = !violated;
  if (violated) {
    rep.value = scan.ctx().unscale(worst);
    rep.witness = scan.decode(worst_mask);
  } else {
    rep.value = base;
  }
  return rep;
}

bool is_minimal_pair(const AlphaSpec& spec, const FinStructure& a, const FinStructure& b,
                     const ScanLimits& limits) {
  // A must be induced in B and proper.
  for (const Vertex& v : a.universe())
    if (!b.has_vertex(v)) fail(errc::unknown_vertex, "base vertex '" + v + "' missing from extension");
  if (!(induced(b, a.universe()) == a))
    fail(errc::invalid_argument, "base is not an induced substructure of the extension");
  if (a.universe() == b.universe()) return false;
  const VertexSet window = set_difference(b.universe(), a.universe());
  require_window(window.size(), limits.scan_cap, "is_minimal_pair");
  const Weight base = delta(spec, a);
  SubsetScanner scan(spec, b, window, a.universe());
  const ScaledVal base_scaled = scan.ctx().scale(base);
  const long d = spec.surd_base();
  const std::uint32_t full = window.empty() ? 0 : ((1u << window.size()) - 1);
  bool ok = true;
  bool final_drops = false;
  scan.scan([&](std::uint32_t mask, const ScaledVal& dv, const ScaledVal*) {
    const int c = cmp_scaled(dv, base_scaled, d);
    if (mask == full) {
      final_drops = c < 0;
    } else if (c < 0) {
      ok = false;
    }
  });
  return ok && final_drops;
}

bool is_essential_minimal_pair(const AlphaSpec& spec, const FinStructure& b, const FinStructure& d,
                               const ScanLimits& limits) {
  if (!is_minimal_pair(spec, b, d, limits)) return false;
  require_window(d.size(), limits.scan_cap, "is_essential_minimal_pair");
  SubsetScanner scan(spec, d, d.universe(), {});
  scan.set_trace(b.universe());
  const long sd = spec.surd_base();
  const std::uint32_t full = d.empty() ? 0 : ((1u << d.size()) - 1);
  bool ok = true;
  scan.scan([&](std::uint32_t mask, const ScaledVal& dv, const ScaledVal* tv) {
    if (mask == full || !ok) return;
    // delta(D'/D' cap B) = delta(D') - delta(D' cap B) >= 0
    if (cmp_scaled(dv, *tv, sd) < 0) ok = false;
  });
  return ok;
}

VertexSet icl(const AlphaSpec& spec, const FinStructure& ambient, const VertexSet& x,
              const ScanLimits& limits) {
  ambient.validate_against(spec);
  require_window(ambient.size(), limits.scan_cap, "icl");
  VertexSet cur = normalize_vertex_set(x);
  for (const Vertex& v : cur) (void)ambient.index_of(v);
  const long d = spec.surd_base();
  for (;;) {
    SubsetScanner scan(spec, ambient, ambient.universe(), {});
    scan.set_trace(cur);
    // Find the smallest violating C: delta(C) < delta(C cap X). Such a C of
    // minimal size yields a genuine minimal pair (C cap X, C).
    bool found = false;
    std::uint32_t best_mask = 0;
    int best_size = 0;
    scan.scan([&](std::uint32_t mask, const ScaledVal& dv, const ScaledVal* tv) {
      if (cmp_scaled(dv, *tv, d) >= 0) return;
      const int size = std::popcount(mask);
      if (!found || size < best_size || (size == best_size && mask < best_mask)) {
        found = true;
        best_mask = mask;
        best_size = size;
      }
    });
    if (!found) return cur;
    cur = set_union(cur, scan.decode(best_mask));
  }
}

namespace {

// Connected components of the relation hypergraph; rank is additive across
// them, so K_alpha membership and zero sets both split component-wise.
std::vector<VertexSet> components(const FinStructure& s) {
  std::vector<int> comp(s.size(), -1);
  int ncomp = 0;
  std::vector<std::vector<int>> adj(s.size());
  for (const auto& [sym, tuples] : s.relations()) {
    (void)sym;
    for (const auto& t : tuples) {
      for (std::size_t i = 0; i + 1 < t.size(); ++i) {
        adj[static_cast<std::size_t>(t[i])].push_back(t[i + 1]);
        adj[static_cast<std::size_t>(t[i + 1])].push_back(t[i]);
      }
    }
  }
  for (std::size_t seed = 0; seed < s.size(); ++seed) {
    if (comp[seed] >= 0) continue;
    std::vector<int> stack{static_cast<int>(seed)};
    comp[seed] = ncomp;
    while (!stack.empty()) {
      const int v = stack.back();
      stack.pop_back();
      for (int u : adj[static_cast<std::size_t>(v)]) {
        if (comp[static_cast<std::size_t>(u)] < 0) {
          comp[static_cast<std::size_t>(u)] = ncomp;
          stack.push_back(u);
        }
      }
    }
    ++ncomp;
  }
  std::vector<VertexSet> out(static_cast<std::size_t>(ncomp));
  for (std::size_t i = 0; i < s.size(); ++i)
    out[static_cast<std::size_t>(comp[i])].push_back(s.vertex(static_cast<int>(i)));
  return out;
}

}  // namespace

VertexSet zero_set(const AlphaSpec& spec, const FinStructure& s, const ScanLimits& limits) {
  s.validate_against(spec);
  const long d = spec.surd_base();
  VertexSet result;
  for (const VertexSet& members : components(s)) {
    require_window(members.size(), limits.zero_cap, "zero_set");
    const FinStructure part = induced(s, members);
    RankReport kalpha = in_kalpha(spec, part, ScanLimits{limits.zero_cap, limits.closed_cap, limits.zero_cap});
    if (!kalpha.pass) fail(errc::not_in_kalpha, "zero_set requires a K_alpha structure");
    SubsetScanner scan(spec, s, members, {});
    std::uint32_t zero_union = 0;
    scan.scan([&](std::uint32_t mask, const ScaledVal& dv, const ScaledVal*) {
      if (mask != 0 && sign_scaled(dv, d) == 0) zero_union |= mask;
    });
    if (zero_union) result = set_union(result, scan.decode(zero_union));
  }
  // Prop justifying the zero set: the union of rank-0 subsets has rank 0.
  if (!result.empty() && delta(spec, induced(s, result)).sign() != 0)
    fail(errc::internal_inconsistency, "union of rank-0 subsets has nonzero rank");
  return result;
}

bool is_closed(const AlphaSpec& spec, const FinStructure& ambient, const VertexSet& x,
               const ScanLimits& limits) {
  ambient.validate_against(spec);
  require_window(ambient.size(), limits.closed_cap, "is_closed");
  const VertexSet xn = normalize_vertex_set(x);
  for (const Vertex& v : xn) (void)ambient.index_of(v);
  const long d = spec.surd_base();
  const int n = static_cast<int>(ambient.size());
  const std::uint32_t full = n == 0 ? 0 : ((n == 32) ? ~0u : ((1u << n) - 1));

  // One pass fills a table of scaled rank values for all subsets.
  SubsetScanner scan(spec, ambient, ambient.universe(), {});
  std::vector<ScaledVal> table(static_cast<std::size_t>(full) + 1);
  scan.scan([&](std::uint32_t mask, const ScaledVal& dv, const ScaledVal*) { table[mask] = dv; });
  const std::uint32_t xmask = scan.mask_of(xn);

  // Clause (b): no minimal pair (A', F) with A' inside X and F escaping X.
  bool clause_b = true;
  for (std::uint32_t f = 0; f <= full && clause_b; ++f) {
    if ((f & ~xmask) == 0) continue;  // F inside X cannot escape
    // Bases A' run over subsets of F cap X.
    const std::uint32_t fx = f & xmask;
    for (std::uint32_t a = fx;; a = (a - 1) & fx) {
      if (cmp_scaled(table[f], table[a], d) < 0) {
        // Candidate drop; minimal pair additionally needs all proper
        // intermediates at or above the base rank.
        bool minimal = true;
        const std::uint32_t free_bits = f & ~a;
        for (std::uint32_t c = free_bits; c != 0 && minimal; c = (c - 1) & free_bits) {
          if (c == free_bits) continue;  // proper subsets only
          if (cmp_scaled(table[a | c], table[a], d) < 0) minimal = false;
        }
        if (minimal) {
          clause_b = false;
          break;
        }
      }
      if (a == 0) break;
    }
  }

  // Clause (c): for every B: B cap X <= B.
  bool clause_c = true;
  for (std::uint32_t b = 0; b <= full && clause_c; ++b) {
    const std::uint32_t base = b & xmask;
    const std::uint32_t free_bits = b & ~xmask;
    for (std::uint32_t c = free_bits;; c = (c - 1) & free_bits) {
      if (cmp_scaled(table[base | c], table[base], d) < 0) {
        clause_c = false;
        break;
      }
      if (c == 0) break;
    }
  }

  if (clause_b != clause_c)
    fail(errc::internal_inconsistency, "closure clauses (b) and (c) disagree");
  return clause_b;
}

MinRankSubset min_positive_delta_over_supersets(const AlphaSpec& spec, const FinStructure& s,
                                                const VertexSet& z, int cap) {
  const VertexSet zn = normalize_vertex_set(z);
  const VertexSet window = set_difference(s.universe(), zn);
  require_window(window.size(), cap, "min_positive_delta_over_supersets");
  SubsetScanner scan(spec, s, window, zn);
  const long d = spec.surd_base();
  MinRankSubset out;
  ScaledVal best{0, 0};
  std::uint32_t best_mask = 0;
  bool found = false;
  scan.scan([&](std::uint32_t mask, const ScaledVal& dv, const ScaledVal*) {
    if (mask == 0) return;  // proper superset of Z required
    if (sign_scaled(dv, d) <= 0) return;
    if (!found || cmp_scaled(dv, best, d) < 0 ||
        (cmp_scaled(dv, best, d) == 0 && std::popcount(mask) < std::popcount(best_mask))) {
      found = true;
      best = dv;
      best_mask = mask;
    }
  });
  out.found = found;
  if (found) {
    out.set = scan.decode(best_mask);
    out.value = scan.ctx().unscale(best);
  }
  return out;
}

}  // namespace bshyper
