#pragma once

#include <map>
#include <utility>
#include <vector>

#include "khr/rational.hpp"

namespace khr {

/// Sparse vector over Q: (index, value) pairs sorted by index, no zeros.
using SparseVec = std::vector<std::pair<int, Rational>>;

SparseVec sparse_axpy(const SparseVec& x, const Rational& a, const SparseVec& y);  // x + a*y
SparseVec sparse_scale(const SparseVec& x, const Rational& a);
SparseVec sparse_from_dense(const std::vector<Rational>& d);

/// Row space in echelon form. Every stored row has leading coefficient 1 at
/// a distinct pivot; other entries of a row sit strictly right of its pivot.
class EchelonBasis {
 public:
  /// Residual of v after eliminating every pivot it touches.
  SparseVec reduce(SparseVec v) const;
  /// Adds v; returns false if it was already in the span.
  bool insert(SparseVec v);
  bool contains(const SparseVec& v) const { return reduce(v).empty(); }
  int rank() const { return static_cast<int>(rows_.size()); }
  const std::map<int, SparseVec>& rows() const { return rows_; }
  /// Back-substitutes so that pivot columns are zero outside their own row.
  void make_reduced();

 private:
  std::map<int, SparseVec> rows_;
};

int sparse_rank(const std::vector<SparseVec>& rows);

/// Basis of {x : row . x = 0 for all rows} in a space of dimension `cols`.
/// Vector t has a 1 in the t-th free column and zeros in the other free
/// columns. The free columns are reported in the same order if requested.
std::vector<SparseVec> sparse_kernel(const std::vector<SparseVec>& rows, int cols,
                                     std::vector<int>* free_columns = nullptr);

/// Linearly independent subset (in order) of the given vectors.
std::vector<int> independent_subset(const std::vector<SparseVec>& vecs);

}  // namespace khr
