#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "khr/linalg.hpp"
#include "khr/poly.hpp"

namespace khr {

/// Laurent polynomial in v with integer coefficients: exponent -> coefficient.
using GradedRank = std::map<int, long>;

GradedRank graded_rank_add(const GradedRank& a, const GradedRank& b, long sign = 1);
GradedRank graded_rank_mul(const GradedRank& a, const GradedRank& b);
GradedRank graded_rank_shift(const GradedRank& a, int k);  // times v^k
bool graded_rank_nonnegative(const GradedRank& a);
std::string graded_rank_string(const GradedRank& a);

/// Q[x_1..x_n], deg x_i = 2.
struct PolyRing {
  int n = 1;
  friend bool operator==(const PolyRing&, const PolyRing&) = default;
};

/// A free graded left R-module with a commuting right R-action, or the image
/// of an idempotent on one.
///
/// An element is a column vector f over R meaning sum_r f_r b_r. Right
/// multiplication by x_j sends f to right[j] * f, so right[j](r, c) is
/// homogeneous of degree degrees[c] - degrees[r] + 2.
struct GradedBimodule {
  int n = 0;
  std::vector<int> degrees;
  std::vector<PolyMatrix> right;
  PolyMatrix idempotent;  // 0 x 0 when the module is free
  std::string label;

  int rank() const { return static_cast<int>(degrees.size()); }
  bool is_karoubi() const { return idempotent.rows() > 0; }
  PolyRing ring() const { return {n}; }
};

using BimodulePtr = std::shared_ptr<const GradedBimodule>;

inline BimodulePtr make_ptr(GradedBimodule m) { return std::make_shared<const GradedBimodule>(std::move(m)); }

/// Bimodule map of the given degree; matrix is target.rank() x source.rank().
struct BimoduleMap {
  BimodulePtr source;
  BimodulePtr target;
  int degree = 0;
  PolyMatrix matrix;
};

GradedBimodule diagonal(int n);
GradedBimodule bott_samelson(const std::vector<int>& word, int n);
/// M(r): generator degrees lowered by r.
GradedBimodule shift(const GradedBimodule& m, int r);
GradedBimodule tensor(const GradedBimodule& m, const GradedBimodule& n);

/// f (x) g for f: M -> M' and g: N -> N', on the bases of M (x) N and M' (x) N'.
PolyMatrix tensor_maps(const PolyMatrix& f, const GradedBimodule& f_target, const PolyMatrix& g);
/// f (x) id_N.
PolyMatrix tensor_with_identity(const PolyMatrix& f, int rank_n);
/// id_M (x) g.
PolyMatrix identity_tensor(const GradedBimodule& m, const PolyMatrix& g);

/// B_{s_i} -> R(1), a (x) b -> ab.
BimoduleMap multiplication_map(int i, int n);
/// R(-1) -> B_{s_i}, 1 -> x_i (x) 1 - 1 (x) x_{i+1}.
BimoduleMap split_map(int i, int n);

/// R (x)_{R^W} R (l(w_0)) on the Artin monomial basis of the right variables.
GradedBimodule b_w0(int n);
/// B_{w_0} of the parabolic subgroup permuting strands first..first+size-1
/// (0-based), inside the ring with n variables.
GradedBimodule longest_block(int first, int size, int n);

/// Largest degree of a matrix entry as a polynomial (ignoring grading).
int max_entry_degree(const PolyMatrix& m);

bool right_actions_commute(const GradedBimodule& m);
bool entries_homogeneous(const GradedBimodule& m);
/// e_k(x) acting on the left equals e_k(right[0..n-1]) for every k.
bool symmetric_relation_holds(const GradedBimodule& m);
bool idempotent_valid(const GradedBimodule& m);
/// Homogeneity of the given degree, intertwining, and idempotent compatibility.
bool is_bimodule_map(const GradedBimodule& src, const GradedBimodule& tgt, const PolyMatrix& f, int degree);

/// Q-basis of the degree-m part of a free graded left module: pairs
/// (generator, monomial).
class DegreePiece {
 public:
  DegreePiece(const std::vector<int>& degrees, int n, int m);
  int dim() const { return static_cast<int>(basis_.size()); }
  const std::vector<std::pair<int, Monomial>>& basis() const { return basis_; }
  /// Index of (generator, monomial), or -1 if it is not in this piece.
  int index(int gen, Monomial mono) const;
  /// Coordinates of a column vector over R that is homogeneous of degree m.
  SparseVec vectorize(const std::vector<Poly>& column) const;

 private:
  int n_;
  std::vector<int> offset_;  // -1 where the generator contributes nothing
  std::vector<int> poly_degree_;
  std::vector<const std::vector<Monomial>*> monomials_;  // per generator, null if absent
  std::vector<std::pair<int, Monomial>> basis_;
};

/// Image of basis element (gen, mono) of `from` under a left-linear matrix,
/// expressed in `to`.
SparseVec apply_to_basis(const PolyMatrix& f, int gen, Monomial mono, const DegreePiece& to);

/// Degree-d bimodule maps M -> N as a Q-vector space with exact coordinates.
class HomSpace {
 public:
  HomSpace(BimodulePtr source, BimodulePtr target, int degree);

  int dim() const { return static_cast<int>(basis_.size()); }
  const std::vector<PolyMatrix>& basis() const { return basis_; }
  int degree() const { return degree_; }
  const BimodulePtr& source() const { return source_; }
  const BimodulePtr& target() const { return target_; }

  /// Flattened coefficients of a degree-d matrix; nullopt if some entry is
  /// not homogeneous of the right degree.
  std::optional<SparseVec> vectorize(const PolyMatrix& f) const;
  /// Coordinates in basis(); nullopt if f is not in the space. With
  /// check = false the caller vouches that f lies in the space.
  std::optional<std::vector<Rational>> coordinates(const PolyMatrix& f, bool check = true) const;
  PolyMatrix combine(const std::vector<Rational>& coeffs) const;

 private:
  int unknown_count() const { return unknowns_; }

  BimodulePtr source_, target_;
  int degree_;
  int unknowns_ = 0;
  std::vector<int> entry_offset_;       // per (r, c); -1 when the entry must vanish
  std::vector<int> entry_poly_degree_;  // per (r, c)
  std::vector<PolyMatrix> basis_;
  std::vector<SparseVec> vectors_;  // basis_ flattened
  std::vector<int> free_cols_;      // the unknown where vectors_[i] is 1 and the others vanish
};

/// Shared, cached hom spaces (keyed by object identity and degree).
std::shared_ptr<const HomSpace> hom(const BimodulePtr& m, const BimodulePtr& n, int degree);

std::vector<BimoduleMap> hom_space(const BimodulePtr& m, const BimodulePtr& n, int degree);

/// Dimensions of the degree pieces lo..hi (of the image of the idempotent
/// for Karoubi objects).
std::vector<long> graded_dimensions(const GradedBimodule& m, int lo, int hi);
/// Graded rank as a left module: sum over a homogeneous basis of v^degree.
GradedRank graded_rank(const GradedBimodule& m);

/// Splits M along incl: S -> M and proj: M -> S with proj * incl = c * id.
/// Returns (image of incl*proj/c, image of its complement), both as Karoubi
/// objects on M's carrier.
std::pair<GradedBimodule, GradedBimodule> split_summand(const GradedBimodule& m, const PolyMatrix& incl,
                                                        const PolyMatrix& proj);

/// Dense rational matrix of f restricted to degree pieces.
std::vector<SparseVec> degree_matrix_columns(const PolyMatrix& f, const DegreePiece& from, const DegreePiece& to);

}  // namespace khr
