#pragma once

#include <map>
#include <mutex>
#include <shared_mutex>
#include <string>
#include <vector>

#include "khr/braid.hpp"
#include "khr/laurent.hpp"

namespace khr {

/// Element of the Hecke algebra H_n over Q(v) in the standard basis t_w,
/// with t_s^2 = (v - v^-1) t_s + 1. Zero coefficients are never stored.
class HeckeElement {
 public:
  explicit HeckeElement(int n) : n_(n) {}
  static HeckeElement unit(int n);
  static HeckeElement basis(const Permutation& w, const RatFunc& c = RatFunc(1));

  int strands() const { return n_; }
  const std::map<Permutation, RatFunc>& coords() const { return coords_; }
  RatFunc coeff(const Permutation& w) const;
  bool is_zero() const { return coords_.empty(); }

  void add(const Permutation& w, const RatFunc& c);
  HeckeElement operator+(const HeckeElement& o) const;
  HeckeElement operator-(const HeckeElement& o) const;
  HeckeElement operator*(const RatFunc& c) const;
  /// Right multiplication by t_{s_i}.
  HeckeElement times_generator(int i) const;

  friend bool operator==(const HeckeElement&, const HeckeElement&) = default;

  std::string to_string() const;

 private:
  int n_;
  std::map<Permutation, RatFunc> coords_;
};

/// v - v^-1
RatFunc hecke_z();

HeckeElement hecke_multiply(const HeckeElement& x, const HeckeElement& y);
HeckeElement braid_to_hecke(const BraidWord& b);

/// Memo table for traces of basis elements, shareable across threads.
class TraceCache {
 public:
  bool lookup(const Permutation& w, LaurentScalar& out) const;
  void store(const Permutation& w, const LaurentScalar& value);
  std::size_t size() const;

 private:
  mutable std::shared_mutex mutex_;
  std::map<std::pair<int, Permutation>, LaurentScalar> table_;
};

/// Process-wide cache used when no cache is passed explicitly.
TraceCache& default_trace_cache();

/// (1 + a) / (1 - q)
LaurentScalar markov_factor();

/// Ocneanu trace with Tr_0(1) = 1 and Tr_n(iota(x)) = (1+a)/(1-q) Tr_{n-1}(x)
/// for every n >= 1; Tr_n(iota(x) t_{n-1}) = -v^-1 Tr_{n-1}(x).
LaurentScalar ocneanu_trace(const HeckeElement& x, TraceCache& cache = default_trace_cache());
LaurentScalar trace_coefficient(const HeckeElement& x, int k);

struct YoungDiagram {
  std::vector<int> rows;  // weakly decreasing, positive

  explicit YoungDiagram(std::vector<int> r);
  int size() const;
  std::vector<int> column_lengths() const;
  /// Cells as (column i, row j), row-major.
  std::vector<std::pair<int, int>> cells() const;
  int content(int i, int j) const { return i - j; }
  int hook(int i, int j) const;
  /// n'(lambda) = sum_i (i-1) lambda'_i over the transposed diagram.
  int n_prime() const;
  std::string to_string() const;

  friend bool operator==(const YoungDiagram&, const YoungDiagram&) = default;
};

std::vector<YoungDiagram> partitions(int n);

/// W_lambda = q^{n'} prod (1 + a q^{-c}) / (1 - q^{h}).
LaurentScalar weight(const YoungDiagram& lambda);

using RatMatrix = std::vector<std::vector<RatFunc>>;

struct SeminormalRep {
  YoungDiagram diagram;
  /// Standard tableaux; tableau[m] = (column, row) of entry m+1.
  std::vector<std::vector<std::pair<int, int>>> basis;
  /// generators[i-1] represents t_{s_i}.
  std::vector<RatMatrix> generators;

  int dimension() const { return static_cast<int>(basis.size()); }
  int strands() const { return diagram.size(); }
  RatMatrix represent(const HeckeElement& x) const;
};

/// Seminormal form; throws if the Hecke relations fail to hold.
SeminormalRep build_seminormal(const YoungDiagram& lambda);
RatFunc character(const SeminormalRep& rep, const HeckeElement& x);

bool verify_weight_decomposition(int n);

/// Jucys-Murphy inverses j_0^-1, ..., j_{n-1}^-1 in H_n.
std::vector<HeckeElement> jucys_murphy_inverses(int n);
/// E_k(j_0^-1, ..., j_{n-1}^-1).
HeckeElement elementary_jm(int n, int k);
bool jm_elementary_identity(const HeckeElement& x, int k);

struct HomflyValue {
  LaurentScalar raw;         // Tr_n(phi(beta)), polynomial in a
  LaurentScalar normalized;  // Laurent in alpha, a = -alpha^2
};

/// Normalized invariant ((1-q)/(1+a)) (-v)^{n-1} alpha^{writhe-n+1} Tr_n,
/// which is 1 on every unknot diagram and invariant under both Markov moves.
HomflyValue homfly(const BraidWord& b);

/// Exact division of a polynomial in a by (1 + a); throws if not divisible.
LaurentScalar divide_by_one_plus_a(const LaurentScalar& x);
/// Substitute a = -alpha^2.
LaurentScalar substitute_alpha(const LaurentScalar& x);

RatMatrix mat_mul(const RatMatrix& a, const RatMatrix& b);
RatMatrix mat_identity(int d);

}  // namespace khr
