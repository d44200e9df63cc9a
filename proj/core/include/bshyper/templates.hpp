#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "bshyper/numtheory.hpp"
#include "bshyper/structures.hpp"

namespace bshyper {

// A multiset of relation symbols.
using LCollection = std::map<std::string, long>;

long collection_size(const LCollection& r);                      // |r|
bool sub_collection(const LCollection& a, const LCollection& b);  // pointwise <=
LCollection collection_minus(const LCollection& a, const LCollection& b);

// w(n, r) = n - sum_E alpha_E r(E).
Weight weighted_sum(const AlphaSpec& spec, long n, const LCollection& r);

// The triple <n, r_1..r_n, t> with r_i(E) < m_pt and an ordered chain
// collection t of n-1 symbols.
struct ExtensionTemplate {
  long n = 0;
  std::vector<LCollection> r;     // size n
  std::vector<std::string> t;     // size n-1, ordered E_1..E_{n-1}

  std::vector<std::string> localization() const;  // L^Theta
};

void validate_template(const AlphaSpec& spec, const ExtensionTemplate& theta);

enum class PairClass { None, Acceptable, Good };
const char* pair_class_name(PairClass c);

struct PairNS {
  long n = 0;
  LCollection s;
  PairClass cls = PairClass::None;
  Weight w;  // w(n, s)
};

// Classification of <n, s> against B (only |B|, delta(B) and the arities
// matter). Acceptable: min{delta(B), Gr_{L0}(2)} >= -w > 0 and |s| >= n.
// Good adds the size clause and the empty-window clause (3).
PairNS classify_pair(const AlphaSpec& spec, const FinStructure& b, long n, const LCollection& s);
PairNS classify_pair_sized(const AlphaSpec& spec, long b_size, const Weight& delta_b, long n,
                           const LCollection& s);

// The greedy pair -> template construction. Records the potential relative
// ranks Rel(1..n) realized by the eventual extension.
struct TemplateBuild {
  ExtensionTemplate theta;
  std::vector<Weight> rel;  // Rel(j) = delta(D^j / B)
};
TemplateBuild pair_to_template(const AlphaSpec& spec, const FinStructure& b, const PairNS& pair);

// Extension of B by a template: new points d_1..d_n, one chain relation per
// consecutive pair, r_i(E) attachment relations per point, nothing else.
struct TemplateExtension {
  FinStructure d;
  std::vector<Vertex> new_points;  // d_1..d_n in order
};
struct ExtendOptions {
  bool covering = false;
  std::uint64_t variant_seed = 0;
  std::optional<Vertex> steer;  // force one d_n attachment subset to contain this vertex
  std::string point_prefix = "d";
};
TemplateExtension extend_by_template(const AlphaSpec& spec, const FinStructure& b,
                                     const ExtensionTemplate& theta, const ExtendOptions& opts = {});

// Evaluates the acceptable/good conditions on a canonical extension of B.
PairClass template_class(const AlphaSpec& spec, const FinStructure& b, const ExtensionTemplate& theta);

// Streamed good pairs per the three regimes: irrational weights via even
// continued-fraction convergents; rational c > 1 via the diophantine stream
// at target -1/c; c = 1 via one at-least-ternary weight-1 symbol.
struct GoodPairQuery {
  enum class Mode { Irrational, Rational, UnitC } mode = Mode::Rational;
  std::string symbol;        // irrational mode: the symbol E*
  Weight epsilon;            // irrational mode: drop bound
  long min_n = 3;
};
class GoodPairStream {
public:
  GoodPairStream(const AlphaSpec& spec, const FinStructure& b, GoodPairQuery query);
  std::optional<PairNS> next();

private:
  const AlphaSpec& spec_;
  long b_size_;
  Weight delta_b_;
  GoodPairQuery query_;
  // irrational mode state
  CFExpansion cf_;
  std::size_t cf_pos_ = 0;
  // rational mode state
  std::optional<DiophantineStream> dioph_;
  // unit-c mode state
  long unit_n_ = 0;
  std::string unit_symbol_;
};
GoodPairStream gen_good_pairs(const AlphaSpec& spec, const FinStructure& b, const GoodPairQuery& query);

// Bounded search for good pairs ordered by descending drop then ascending n;
// the size-aware generator behind the construction module. Only pairs whose
// drop is strictly below `drop_cap` (when given) are returned.
std::vector<PairNS> good_pair_catalog(const AlphaSpec& spec, long b_size, const Weight& delta_b,
                                      long max_n, long max_count,
                                      const std::optional<Weight>& drop_cap = {});

}  // namespace bshyper
