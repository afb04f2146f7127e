#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "khr/rational.hpp"

namespace khr {

/// Exponent vector packed 8 bits per variable; at most 8 variables.
class Monomial {
 public:
  static constexpr int kMaxVars = 8;

  Monomial() = default;
  static Monomial var(int i, int power = 1);
  static Monomial from_exponents(const std::vector<int>& e);

  int exponent(int i) const { return static_cast<int>((bits_ >> (8 * i)) & 0xff); }
  int degree() const;
  std::uint64_t bits() const { return bits_; }
  bool is_one() const { return bits_ == 0; }
  bool divides(Monomial o) const;

  Monomial operator*(Monomial o) const;
  /// Requires divides(o) from the other side.
  Monomial operator/(Monomial o) const;

  friend bool operator==(Monomial a, Monomial b) { return a.bits_ == b.bits_; }
  friend bool operator<(Monomial a, Monomial b) { return a.bits_ < b.bits_; }

  std::string to_string(int nvars, const std::vector<std::string>& names = {}) const;

 private:
  std::uint64_t bits_ = 0;
};

/// All monomials of the given total degree in nvars variables, in a fixed
/// order (sorted by packed key).
const std::vector<Monomial>& monomials_of_degree(int nvars, int degree);

/// Sparse multivariate polynomial over Q with terms sorted by monomial.
class Poly {
 public:
  using Term = std::pair<Monomial, Rational>;

  Poly() = default;
  Poly(const Rational& c);  // NOLINT
  Poly(int c) : Poly(Rational(c)) {}  // NOLINT
  static Poly var(int i) { return term(Monomial::var(i), 1); }
  static Poly term(Monomial m, const Rational& c);

  bool is_zero() const { return terms_.empty(); }
  const std::vector<Term>& terms() const { return terms_; }
  Rational coeff(Monomial m) const;
  /// Total degree of the highest term (polynomial degree, not internal).
  int degree() const;
  bool is_homogeneous() const;
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].first.is_one()); }
  Rational constant_term() const;

  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator-() const;
  Poly operator*(const Poly& o) const;
  Poly& operator+=(const Poly& o) { return *this = *this + o; }
  Poly& operator-=(const Poly& o) { return *this = *this - o; }
  Poly scaled(const Rational& c) const;
  Poly times(Monomial m) const;
  void add_term(Monomial m, const Rational& c);

  friend bool operator==(const Poly&, const Poly&) = default;

  std::string to_string(int nvars, const std::vector<std::string>& names = {}) const;

 private:
  std::vector<Term> terms_;
};

/// Dense matrix with polynomial entries, row-major.
class PolyMatrix {
 public:
  PolyMatrix() = default;
  PolyMatrix(int rows, int cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  static PolyMatrix identity(int n);
  static PolyMatrix scalar(int n, const Poly& p);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  Poly& operator()(int r, int c) { return data_[r * cols_ + c]; }
  const Poly& operator()(int r, int c) const { return data_[r * cols_ + c]; }

  bool is_zero() const;
  /// Some scalar lambda with *this = lambda * I, if there is one.
  bool is_scalar_identity(Rational& lambda) const;

  PolyMatrix operator+(const PolyMatrix& o) const;
  PolyMatrix operator-(const PolyMatrix& o) const;
  PolyMatrix operator*(const PolyMatrix& o) const;
  PolyMatrix operator-() const;
  PolyMatrix scaled(const Rational& c) const;
  PolyMatrix times_poly(const Poly& p) const;

  PolyMatrix block(int r0, int c0, int nr, int nc) const;
  void set_block(int r0, int c0, const PolyMatrix& b);

  friend bool operator==(const PolyMatrix&, const PolyMatrix&) = default;

  std::string to_string(int nvars) const;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<Poly> data_;
};

/// Evaluates polynomials at a tuple of pairwise commuting square matrices,
/// caching monomial powers.
class MatrixEvaluator {
 public:
  explicit MatrixEvaluator(std::vector<PolyMatrix> mats);
  int dim() const { return dim_; }
  const PolyMatrix& power(Monomial m);
  PolyMatrix eval(const Poly& p);

 private:
  std::vector<PolyMatrix> mats_;
  int dim_ = 0;
  std::map<std::uint64_t, PolyMatrix> cache_;
};

}  // namespace khr
