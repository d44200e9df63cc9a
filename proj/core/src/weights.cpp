#include "bshyper/weights.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <numeric>
#include <sstream>

namespace bshyper {

const char* errc_name(errc code) {
  switch (code) {
    case errc::unknown_vertex: return "UnknownVertex";
    case errc::mixed_surd_base: return "MixedSurdBase";
    case errc::too_large: return "TooLarge";
    case errc::signature_mismatch: return "SignatureMismatch";
    case errc::not_in_kalpha: return "NotInKalpha";
    case errc::overlap_outside_base: return "OverlapOutsideBase";
    case errc::rational_input: return "RationalInput";
    case errc::no_solution: return "NoSolution";
    case errc::not_coherent_irrational: return "NotCoherentIrrational";
    case errc::b_too_small: return "BTooSmall";
    case errc::covering_infeasible: return "CoveringInfeasible";
    case errc::mode_mismatch: return "ModeMismatch";
    case errc::base_not_strong: return "BaseNotStrong";
    case errc::epsilon_too_large: return "EpsilonTooLarge";
    case errc::no_irrational_symbol: return "NoIrrationalSymbol";
    case errc::not_essential_pair: return "NotEssentialPair";
    case errc::phi_member_strong: return "PhiMemberStrong";
    case errc::not_coherent: return "NotCoherent";
    case errc::b_star_infeasible: return "BStarInfeasible";
    case errc::budget_infeasible: return "BudgetInfeasible";
    case errc::incoherent_atomic_mode: return "IncoherentAtomicMode";
    case errc::internal_inconsistency: return "InternalInconsistency";
    case errc::invalid_argument: return "InvalidArgument";
    case errc::parse_error: return "ParseError";
  }
  return "Error";
}

bool is_square_free(long d) {
  if (d < 0) return false;
  if (d <= 1) return true;
  for (long p = 2; p * p <= d; ++p) {
    if (d % (p * p) == 0) return false;
  }
  return true;
}

Weight::Weight(Rational a, Rational b, long d) : a_(std::move(a)), b_(std::move(b)), d_(d) {
  if (!is_square_free(d_)) fail(errc::invalid_argument, "surd base must be a square-free non-negative integer");
  if (d_ == 1) {  // sqrt(1) = 1
    a_ += b_;
    b_ = 0;
    d_ = 0;
  }
  if (d_ == 0) {
    // sqrt(0) = 0; drop the coefficient entirely
    b_ = 0;
  }
  if (b_ == 0) d_ = 0;
}

int Weight::sign() const {
  const int sa = a_.sign();
  const int sb = b_.sign();
  if (sb == 0) return sa;
  if (sa == 0) return sb;
  if (sa == sb) return sa;
  // Signs differ: compare a^2 against b^2 * d.
  const Rational lhs = a_ * a_;
  const Rational rhs = b_ * b_ * d_;
  if (lhs == rhs) return 0;
  const bool a_dominates = lhs > rhs;
  return a_dominates ? sa : sb;
}

namespace {
long common_base(const Weight& x, const Weight& y) {
  if (x.surd_base() == 0) return y.surd_base();
  if (y.surd_base() == 0 || x.surd_base() == y.surd_base()) return x.surd_base();
  fail(errc::mixed_surd_base, "operands live in different quadratic fields (d=" +
                                  std::to_string(x.surd_base()) + " vs d=" + std::to_string(y.surd_base()) + ")");
}
}  // namespace

Weight Weight::operator+(const Weight& o) const {
  const long d = common_base(*this, o);
  return Weight(a_ + o.a_, b_ + o.b_, d);
}

Weight Weight::operator*(const Weight& o) const {
  const long d = common_base(*this, o);
  return Weight(a_ * o.a_ + b_ * o.b_ * d, a_ * o.b_ + b_ * o.a_, d);
}

Weight Weight::reciprocal() const {
  if (sign() == 0) fail(errc::invalid_argument, "reciprocal of zero");
  // 1/(a + b sqrt d) = (a - b sqrt d) / (a^2 - b^2 d)
  const Rational den = a_ * a_ - b_ * b_ * d_;
  if (den == 0) fail(errc::internal_inconsistency, "nonzero weight with vanishing norm");
  return Weight(a_ / den, -b_ / den, d_);
}

Int Weight::floor() const {
  using boost::multiprecision::numerator;
  using boost::multiprecision::denominator;
  if (b_ == 0) {
    Int n = numerator(a_), d = denominator(a_);
    Int q = n / d;
    if (n % d != 0 && n < 0) --q;
    return q;
  }
  // a + b sqrt(d) = (p*s + r*q*sqrt(d)) / (q*s) with a = p/q, b = r/s.
  const Int p = numerator(a_), q = denominator(a_);
  const Int r = numerator(b_), s = denominator(b_);
  const Int den = q * s;
  const Int t = r * q;  // integer surd multiplier
  // floor(t*sqrt(d)) by integer square root
  Int surd_floor;
  const Int sq = t * t * d_;
  const Int root = boost::multiprecision::sqrt(sq);
  if (t >= 0) {
    surd_floor = root;
  } else {
    surd_floor = (root * root == sq) ? -root : -root - 1;
  }
  const Int num = p * s + surd_floor;
  Int fq = num / den;
  if (num % den != 0 && num < 0) --fq;
  // surd_floor underestimates t*sqrt(d) by < 1, so fq is floor(x) or floor(x)-1;
  // correct by one exact comparison.
  const Weight cand(Rational(fq + 1), Rational(0), 0);
  if ((*this - cand).sign() >= 0) return fq + 1;
  return fq;
}

std::string Weight::str() const {
  std::ostringstream os;
  auto rat = [](const Rational& r) {
    std::ostringstream t;
    t << r;
    return t.str();
  };
  if (b_ == 0) return rat(a_);
  if (a_ != 0) os << rat(a_) << (b_ > 0 ? " + " : " - ");
  else if (b_ < 0) os << "-";
  Rational ab = b_ < 0 ? Rational(-b_) : b_;
  if (ab != 1) os << rat(ab) << "*";
  os << "sqrt(" << d_ << ")";
  return os.str();
}

Ordering weight_compare(const Weight& x, const Weight& y) {
  const int s = (x - y).sign();
  if (s < 0) return Ordering::LT;
  if (s > 0) return Ordering::GT;
  return Ordering::EQ;
}

AlphaSpec::AlphaSpec(std::vector<SymbolDecl> symbols) : symbols_(std::move(symbols)) {
  if (symbols_.empty()) fail(errc::invalid_argument, "signature must contain at least one relation symbol");
  std::sort(symbols_.begin(), symbols_.end(),
            [](const SymbolDecl& a, const SymbolDecl& b) { return a.name < b.name; });
  for (std::size_t i = 0; i + 1 < symbols_.size(); ++i) {
    if (symbols_[i].name == symbols_[i + 1].name)
      fail(errc::invalid_argument, "duplicate relation symbol '" + symbols_[i].name + "'");
  }
  bool all_binary_weight_one = true;
  for (const auto& sym : symbols_) {
    if (sym.name.empty()) fail(errc::invalid_argument, "empty relation symbol name");
    if (sym.arity < 2) fail(errc::invalid_argument, "symbol '" + sym.name + "' must be at least binary");
    if (sym.alpha.sign() <= 0 || sym.alpha > Weight(1))
      fail(errc::invalid_argument, "alpha(" + sym.name + ") must lie in (0,1]");
    max_arity_ = std::max(max_arity_, sym.arity);
    const long d = sym.alpha.surd_base();
    if (d != 0) {
      if (surd_base_ == 0) surd_base_ = d;
      else if (surd_base_ != d)
        fail(errc::mixed_surd_base, "all weights must share one surd base");
    }
    if (sym.arity != 2 || sym.alpha != Weight(1)) all_binary_weight_one = false;
  }
  if (all_binary_weight_one)
    fail(errc::invalid_argument, "all-binary signatures cannot have every alpha equal to 1");
}

const SymbolDecl* AlphaSpec::find(const std::string& name) const {
  auto it = std::lower_bound(symbols_.begin(), symbols_.end(), name,
                             [](const SymbolDecl& s, const std::string& n) { return s.name < n; });
  if (it == symbols_.end() || it->name != name) return nullptr;
  return &*it;
}

const SymbolDecl& AlphaSpec::at(const std::string& name) const {
  const SymbolDecl* s = find(name);
  if (!s) fail(errc::signature_mismatch, "unknown relation symbol '" + name + "'");
  return *s;
}

RationalityReport is_rational(const AlphaSpec& spec) {
  using boost::multiprecision::denominator;
  RationalityReport rep;
  rep.rational = true;
  rep.c = 1;
  for (const auto& sym : spec.symbols()) {
    if (!sym.alpha.is_rational()) {
      rep.rational = false;
      rep.c = 0;
      return rep;
    }
    rep.c = boost::multiprecision::lcm(rep.c, denominator(sym.alpha.rational_part()));
  }
  return rep;
}

CoherenceReport is_coherent(const AlphaSpec& spec) {
  using boost::multiprecision::denominator;
  using boost::multiprecision::numerator;
  CoherenceReport rep;
  // Scale the surd coefficients to integers over a common denominator.
  Int den = 1;
  for (const auto& sym : spec.symbols()) den = boost::multiprecision::lcm(den, denominator(sym.alpha.surd_coeff()));
  std::map<std::string, Int> scaled;
  Int pos_sum = 0, neg_sum = 0;
  for (const auto& sym : spec.symbols()) {
    const Rational& b = sym.alpha.surd_coeff();
    Int v = numerator(b) * (den / denominator(b));
    scaled[sym.name] = v;
    if (v > 0) pos_sum += v;
    if (v < 0) neg_sum += -v;
  }
  if (pos_sum == 0 && neg_sum == 0) {
    rep.coherent = true;  // rational, trivially coherent
    for (const auto& sym : spec.symbols()) rep.witness[sym.name] = 1;
    return rep;
  }
  if (pos_sum == 0 || neg_sum == 0) {
    rep.coherent = false;  // one-sided surd coefficients cannot cancel
    return rep;
  }
  rep.coherent = true;
  Int g = 0;
  for (const auto& sym : spec.symbols()) {
    const Int& v = scaled[sym.name];
    Int m = v > 0 ? neg_sum : (v < 0 ? pos_sum : Int(1));
    rep.witness[sym.name] = m;
    g = boost::multiprecision::gcd(g, m);
  }
  if (g > 1) {
    for (auto& [name, m] : rep.witness) m /= g;
  }
  return rep;
}

}  // namespace bshyper
