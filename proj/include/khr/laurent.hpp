#pragma once

#include <map>
#include <string>
#include <vector>

#include "khr/rational.hpp"

namespace khr {

/// Dense univariate polynomial in v over Q; coeffs[i] multiplies v^i.
class UniPoly {
 public:
  UniPoly() = default;
  UniPoly(const Rational& c);  // NOLINT: constants convert implicitly
  UniPoly(int c) : UniPoly(Rational(c)) {}
  static UniPoly monomial(const Rational& c, int exponent);
  static UniPoly v() { return monomial(1, 1); }

  bool is_zero() const { return coeffs_.empty(); }
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  int valuation() const;
  const Rational& leading() const { return coeffs_.back(); }
  Rational coeff(int i) const;
  const std::vector<Rational>& coeffs() const { return coeffs_; }

  UniPoly operator+(const UniPoly& o) const;
  UniPoly operator-(const UniPoly& o) const;
  UniPoly operator-() const;
  UniPoly operator*(const UniPoly& o) const;
  UniPoly scaled(const Rational& c) const;
  UniPoly shifted(int k) const;  // times v^k, k >= 0
  /// Euclidean division; returns quotient and stores remainder.
  UniPoly divmod(const UniPoly& d, UniPoly& rem) const;
  UniPoly monic() const;

  friend bool operator==(const UniPoly&, const UniPoly&) = default;

  std::string to_string(const std::string& var = "v") const;

 private:
  void trim();
  std::vector<Rational> coeffs_;
};

UniPoly gcd(UniPoly a, UniPoly b);

/// Element of Q(v), kept as num/den with gcd removed and den monic.
class RatFunc {
 public:
  RatFunc() : den_(1) {}
  RatFunc(const Rational& c) : num_(c), den_(1) {}  // NOLINT
  RatFunc(int c) : RatFunc(Rational(c)) {}           // NOLINT
  RatFunc(UniPoly num, UniPoly den);
  /// c * v^k for any integer k.
  static RatFunc monomial(const Rational& c, int k);

  const UniPoly& num() const { return num_; }
  const UniPoly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }

  RatFunc operator+(const RatFunc& o) const;
  RatFunc operator-(const RatFunc& o) const;
  RatFunc operator-() const;
  RatFunc operator*(const RatFunc& o) const;
  RatFunc operator/(const RatFunc& o) const;
  RatFunc& operator+=(const RatFunc& o) { return *this = *this + o; }
  RatFunc& operator-=(const RatFunc& o) { return *this = *this - o; }
  RatFunc& operator*=(const RatFunc& o) { return *this = *this * o; }
  RatFunc pow(int e) const;

  friend bool operator==(const RatFunc&, const RatFunc&) = default;

  /// Laurent expansion around v = 0: exponent -> coefficient for all
  /// exponents <= max_order.
  std::map<int, Rational> series(int max_order) const;

  std::string to_string() const;

 private:
  void normalize();
  UniPoly num_;
  UniPoly den_;
};

/// q = v^2.
inline RatFunc q_pow(int k) { return RatFunc::monomial(1, 2 * k); }

/// Element of Q(v)[a, a^-1]: a-exponent -> coefficient in Q(v).
class LaurentScalar {
 public:
  LaurentScalar() = default;
  LaurentScalar(const RatFunc& c);  // NOLINT
  LaurentScalar(int c) : LaurentScalar(RatFunc(c)) {}  // NOLINT
  static LaurentScalar a_power(int k, const RatFunc& c = RatFunc(1));

  bool is_zero() const { return terms_.empty(); }
  const std::map<int, RatFunc>& terms() const { return terms_; }
  RatFunc coeff(int k) const;
  int max_a_degree() const;
  int min_a_degree() const;

  LaurentScalar operator+(const LaurentScalar& o) const;
  LaurentScalar operator-(const LaurentScalar& o) const;
  LaurentScalar operator-() const;
  LaurentScalar operator*(const LaurentScalar& o) const;
  LaurentScalar operator*(const RatFunc& c) const;
  LaurentScalar& operator+=(const LaurentScalar& o);
  LaurentScalar& operator*=(const LaurentScalar& o) { return *this = *this * o; }
  /// Division by a scalar free of a.
  LaurentScalar divided(const RatFunc& c) const;

  friend bool operator==(const LaurentScalar&, const LaurentScalar&) = default;

  std::string to_string(const std::string& avar = "a") const;

 private:
  std::map<int, RatFunc> terms_;
};

}  // namespace khr
