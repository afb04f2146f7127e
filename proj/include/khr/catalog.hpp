#pragma once

#include <optional>
#include <string>
#include <vector>

#include "khr/bimodule.hpp"
#include "khr/braid.hpp"

namespace khr {

/// Known indecomposable Soergel bimodules B_w in S_n, each with a fixed free
/// model: R for w = e, Bott-Samelson objects for elements with a reduced word
/// of distinct letters, and tensor products of B_{w_0} blocks for longest
/// elements of parabolic subgroups.
struct CatalogEntry {
  int id = -1;
  Permutation w;
  std::string label;
  unsigned support = 0;  // bit i-1 set iff s_i occurs in w
  BimodulePtr object;
};

class Catalog {
 public:
  static const Catalog& get(int n);

  int strands() const { return n_; }
  const std::vector<CatalogEntry>& entries() const { return entries_; }
  const CatalogEntry& entry(int id) const { return entries_.at(id); }
  std::optional<int> find(const Permutation& w) const;
  int unit_id() const { return unit_id_; }
  /// Catalog id of B_{s_i}.
  int simple_id(int i) const;
  /// Catalog id of B_{w_0}; throws if this n is not supported.
  int longest_id() const;

 private:
  explicit Catalog(int n);
  int n_;
  int unit_id_ = -1;
  std::vector<CatalogEntry> entries_;
};

/// Indecomposable model for w, if the catalog has one.
std::optional<GradedBimodule> indecomposable(const Permutation& w);

struct Splitting {
  PolyMatrix incl;  // Z(shift) -> X
  PolyMatrix proj;  // X -> Z(shift), proj * incl = id
};

/// A split embedding of Z(shift) into X (free or Karoubi), if one exists.
std::optional<Splitting> find_splitting(const BimodulePtr& z, int shift, const BimodulePtr& x);

struct Piece {
  int id = -1;
  int shift = 0;
  PolyMatrix incl;
  PolyMatrix proj;
};

struct Decomposition {
  std::vector<Piece> pieces;
  /// Idempotent on the carrier cutting out what the catalog could not
  /// account for; zero matrix when the decomposition is complete.
  PolyMatrix remainder;
  bool complete = true;
};

/// Splits X into catalog indecomposables. Only entries whose letters lie in
/// `support` are tried.
Decomposition decompose(const BimodulePtr& x, unsigned support = ~0u);

/// Cached tensor product of two catalog objects and its decomposition.
BimodulePtr catalog_tensor(int n, int left_id, int right_id);
const Decomposition& catalog_tensor_decomposition(int n, int left_id, int right_id);

}  // namespace khr
