#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace qcomm {

using Rational = mpq_class;
using Integer = mpz_class;

/// Global interning table for scalar parameter names (m, lambda, ...).
///
/// Parameters are identified by a small index so that parameter monomials can
/// be packed into a single 64-bit key. At most kMaxParams names may be interned
/// per process.
class ParamRegistry {
 public:
  static constexpr int kMaxParams = 4;

  static int intern(std::string_view name);
  static int find(std::string_view name);  // -1 when unknown
  static std::string name(int index);
  static int size();
};

/// Packed Laurent monomial in the registered parameters: 16-bit biased
/// exponent per parameter, parameter 0 in the low bits.
using ParamKey = std::uint64_t;

namespace param_key {
inline constexpr int kBias = 0x8000;
inline constexpr ParamKey kOne = ParamKey{0x8000} | (ParamKey{0x8000} << 16) |
                                 (ParamKey{0x8000} << 32) |
                                 (ParamKey{0x8000} << 48);

inline int exponent(ParamKey k, int param) {
  return static_cast<int>((k >> (16 * param)) & 0xFFFF) - kBias;
}
inline ParamKey times(ParamKey a, ParamKey b) { return a + b - kOne; }
inline ParamKey inverse(ParamKey a) { return 2 * kOne - a; }
ParamKey single(int param, int exp);
int total_degree(ParamKey k);
bool is_one(ParamKey k);
std::string to_string(ParamKey k);
}  // namespace param_key

/// Sparse Laurent polynomial over Q in the registered parameters.
/// Terms are kept sorted by key with no zero coefficients.
class LaurentPoly {
 public:
  using Term = std::pair<ParamKey, Rational>;

  LaurentPoly() = default;
  explicit LaurentPoly(const Rational& c);
  static LaurentPoly monomial(ParamKey k, const Rational& c);

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  bool is_monomial() const { return terms_.size() == 1; }
  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }

  LaurentPoly operator-() const;
  LaurentPoly& operator+=(const LaurentPoly& o);
  LaurentPoly& operator-=(const LaurentPoly& o);
  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);
  LaurentPoly scaled(const Rational& c, ParamKey k = param_key::kOne) const;

  /// Minimal exponent of each parameter across terms (as a key).
  ParamKey min_key() const;
  bool has_negative_exponents() const;
  /// Leading term under the key order (largest key).
  const Term& leading() const { return terms_.back(); }

  friend bool operator==(const LaurentPoly& a, const LaurentPoly& b);
  friend bool operator!=(const LaurentPoly& a, const LaurentPoly& b) { return !(a == b); }

  std::size_t hash() const;

 private:
  friend class ParamScalar;
  void normalize_unsorted();
  std::vector<Term> terms_;
};

/// Element of the fraction field Q(params).
///
/// Canonical form: numerator is a Laurent polynomial over Q; the denominator
/// is either 1 (stored empty) or an integer polynomial with at least two
/// terms, primitive, positive leading coefficient, not divisible by any
/// parameter, and coprime to the numerator. Equality is structural.
class ParamScalar {
 public:
  ParamScalar() = default;
  ParamScalar(long v) : num_(Rational(v)) {}  // NOLINT(google-explicit-constructor)
  ParamScalar(const Rational& v) : num_(v) {}  // NOLINT(google-explicit-constructor)
  explicit ParamScalar(LaurentPoly num) : num_(std::move(num)) {}
  ParamScalar(LaurentPoly num, LaurentPoly den);

  static ParamScalar param(std::string_view name, int exp = 1);
  static ParamScalar from_key(ParamKey k, const Rational& c = 1);

  bool is_zero() const { return num_.is_zero(); }
  bool is_one() const;
  bool is_constant() const { return den_.is_zero() && num_.is_constant(); }
  /// Laurent polynomial (denominator 1).
  bool is_laurent() const { return den_.is_zero(); }
  /// Rational value of a constant scalar; undefined otherwise.
  Rational constant_value() const;

  const LaurentPoly& numerator() const { return num_; }
  /// Denominator; an empty LaurentPoly stands for 1.
  const LaurentPoly& denominator() const { return den_; }

  ParamScalar operator-() const;
  ParamScalar& operator+=(const ParamScalar& o);
  ParamScalar& operator-=(const ParamScalar& o);
  ParamScalar& operator*=(const ParamScalar& o);
  ParamScalar& operator/=(const ParamScalar& o);
  friend ParamScalar operator+(ParamScalar a, const ParamScalar& b) { return a += b; }
  friend ParamScalar operator-(ParamScalar a, const ParamScalar& b) { return a -= b; }
  friend ParamScalar operator*(ParamScalar a, const ParamScalar& b) { return a *= b; }
  friend ParamScalar operator/(ParamScalar a, const ParamScalar& b) { return a /= b; }
  ParamScalar inverse() const;

  friend bool operator==(const ParamScalar& a, const ParamScalar& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const ParamScalar& a, const ParamScalar& b) { return !(a == b); }

  /// Substitute rational values for parameters (indexed by registry index).
  /// Throws std::domain_error on a vanishing denominator.
  Rational evaluate(const std::vector<Rational>& values) const;
  /// Maximal exponent of a parameter in the numerator (denominator must be 1).
  int max_exponent(int param) const;

  /// Number of stored terms; used as a pivot-complexity measure.
  std::size_t complexity() const { return num_.size() + den_.size(); }
  std::size_t hash() const;

  std::string to_string() const;
  std::string to_latex() const;

 private:
  void normalize();
  LaurentPoly num_;
  LaurentPoly den_;
};

std::string to_string(const Rational& q);

}  // namespace qcomm
