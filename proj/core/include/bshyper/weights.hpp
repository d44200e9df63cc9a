#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "bshyper/errors.hpp"

namespace bshyper {

using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

enum class Ordering { LT, EQ, GT };

// Exact element a + b*sqrt(d) of Q(sqrt(d)).
//
// d is a square-free non-negative integer; canonical form forces d = 0
// whenever the surd coefficient b vanishes (so purely rational values have a
// unique representation). All arithmetic is exact and sign decisions are made
// by integer comparisons only: sign(a + b*sqrt(d)) reduces to comparing a^2
// against b^2*d when a and b disagree in sign.
class Weight {
public:
  Weight() : a_(0), b_(0), d_(0) {}
  Weight(int v) : a_(v), b_(0), d_(0) {}
  Weight(long v) : a_(v), b_(0), d_(0) {}
  explicit Weight(Rational a) : a_(std::move(a)), b_(0), d_(0) {}
  Weight(Rational a, Rational b, long d);

  static Weight surd(Rational coeff, long d) { return Weight(Rational(0), std::move(coeff), d); }

  const Rational& rational_part() const { return a_; }
  const Rational& surd_coeff() const { return b_; }
  long surd_base() const { return d_; }

  bool is_rational() const { return b_ == 0; }
  // -1, 0, +1; exact.
  int sign() const;
  bool is_zero() const { return a_ == 0 && b_ == 0; }

  Weight operator-() const { return Weight(-a_, -b_, d_); }
  Weight operator+(const Weight& o) const;
  Weight operator-(const Weight& o) const { return *this + (-o); }
  Weight operator*(const Weight& o) const;
  Weight operator*(const Rational& r) const { return Weight(a_ * r, b_ * r, r == 0 ? 0 : d_); }
  Weight& operator+=(const Weight& o) { return *this = *this + o; }
  Weight& operator-=(const Weight& o) { return *this = *this - o; }

  // Multiplicative inverse; requires a nonzero value.
  Weight reciprocal() const;
  // Exact floor as an integer.
  Int floor() const;

  bool operator==(const Weight& o) const { return (*this - o).sign() == 0; }
  bool operator!=(const Weight& o) const { return !(*this == o); }
  bool operator<(const Weight& o) const { return (*this - o).sign() < 0; }
  bool operator<=(const Weight& o) const { return (*this - o).sign() <= 0; }
  bool operator>(const Weight& o) const { return (*this - o).sign() > 0; }
  bool operator>=(const Weight& o) const { return (*this - o).sign() >= 0; }

  std::string str() const;

private:
  Rational a_;
  Rational b_;
  long d_;
};

Ordering weight_compare(const Weight& x, const Weight& y);

bool is_square_free(long d);

struct SymbolDecl {
  std::string name;
  int arity = 2;
  Weight alpha;
};

// A relational signature with weight assignment alpha: L -> (0,1].
//
// Every symbol is at least binary, every alpha lies in (0,1], all surd parts
// share one square-free base d, and the degenerate all-binary all-weight-1
// case is rejected.
class AlphaSpec {
public:
  explicit AlphaSpec(std::vector<SymbolDecl> symbols);

  const std::vector<SymbolDecl>& symbols() const { return symbols_; }
  const SymbolDecl& at(const std::string& name) const;
  const SymbolDecl* find(const std::string& name) const;
  bool has(const std::string& name) const { return find(name) != nullptr; }
  std::size_t size() const { return symbols_.size(); }

  int max_arity() const { return max_arity_; }  // ar(L)
  long surd_base() const { return surd_base_; }

private:
  std::vector<SymbolDecl> symbols_;  // sorted by name
  int max_arity_ = 2;
  long surd_base_ = 0;
};

struct RationalityReport {
  bool rational = false;
  Int c;  // lcm of reduced denominators, meaningful iff rational
};

// Defn of rational alpha: every weight has zero surd part; c = lcm(q_E).
RationalityReport is_rational(const AlphaSpec& spec);

struct CoherenceReport {
  bool coherent = false;
  std::map<std::string, Int> witness;  // positive m_E with sum m_E*alpha_E rational
};

// Coherence: some positive integer combination of the weights is rational.
// With the shared-surd representation this holds iff all surd coefficients
// vanish or they take both signs (then they can be cancelled exactly).
CoherenceReport is_coherent(const AlphaSpec& spec);

}  // namespace bshyper
