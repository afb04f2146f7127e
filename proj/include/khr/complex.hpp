#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "khr/bimodule.hpp"
#include "khr/braid.hpp"
#include "khr/catalog.hpp"

namespace khr {

/// One summand object(shift) of a chain group.
struct ComplexTerm {
  BimodulePtr object;
  int shift = 0;
  int catalog_id = -1;                     // -1 unless object is a catalog entry
  std::pair<int, int> tensor_of{-1, -1};   // catalog ids when object = catalog_tensor(l, r)

  std::string label() const;
  GradedRank graded_rank() const;
};

/// Block matrix of a differential or chain map component: blocks[t][s] maps
/// source term s to target term t.
using BlockMatrix = std::vector<std::vector<PolyMatrix>>;

/// Bounded cochain complex of graded bimodules, d: C^i -> C^{i+1}.
class ChainComplex {
 public:
  explicit ChainComplex(int n = 1) : n_(n) {}

  int strands() const { return n_; }
  const std::map<int, std::vector<ComplexTerm>>& terms() const { return terms_; }
  const std::vector<ComplexTerm>& terms_at(int i) const;
  /// d^i as blocks [target in C^{i+1}][source in C^i]; empty if a side is zero.
  const BlockMatrix& differential(int i) const;
  bool empty() const { return terms_.empty(); }
  int min_degree() const { return terms_.begin()->first; }
  int max_degree() const { return terms_.rbegin()->first; }
  int rank_at(int i) const;
  int total_rank() const;

  /// Appends a term at degree i with zero differentials; returns its index.
  int add_term(int i, ComplexTerm t);
  void set_block(int i, int t, int s, PolyMatrix m);
  /// Removes empty degrees; differentials stay consistent.
  void normalize();
  /// Gaussian elimination of the invertible scalar block d^i[t][s] = lambda id.
  void cancel(int i, int s, int t);

  /// d^i assembled into one matrix over the carriers.
  PolyMatrix assembled(int i) const;
  bool d_squared_zero() const;
  /// Every block is a bimodule map of internal degree 0 with the shifts.
  bool blocks_valid() const;

  /// Sum over i of (-1)^i times the graded rank of C^i.
  GradedRank euler_characteristic() const;
  std::string describe() const;

 private:
  void ensure_shape(int i);

  int n_;
  std::map<int, std::vector<ComplexTerm>> terms_;
  std::map<int, BlockMatrix> d_;
};

ChainComplex one_term_complex(int n, const ComplexTerm& t, int degree = 0);
ChainComplex unit_complex(int n);
/// B_{s_i} -> R(1) in degrees 0, 1.
ChainComplex delta_complex(int i, int n);
/// R(-1) -> B_{s_i} in degrees -1, 0.
ChainComplex nabla_complex(int i, int n);

/// Total complex, d = d_C (x) 1 + (-1)^i 1 (x) d_D.
ChainComplex tensor_complex(const ChainComplex& c, const ChainComplex& d);
/// C[h](r): C[h]^i = C^{i+h} with d multiplied by (-1)^h, every shift plus r.
ChainComplex shift_complex(const ChainComplex& c, int h, int r = 0);

/// Splits every term into catalog indecomposables (plus a Karoubi remainder
/// where the catalog is incomplete) and conjugates the differentials.
ChainComplex decompose_terms(const ChainComplex& c);
/// Cancels invertible blocks between identical catalog terms until none is
/// left; lowest degree first, then smallest support.
ChainComplex gaussian_eliminate(const ChainComplex& c);
ChainComplex minimize(const ChainComplex& c);

/// Tensor product of the two-term complexes of the letters, unminimized.
ChainComplex rouquier_complex(const BraidWord& b);
/// Same up to homotopy, minimized one letter at a time.
ChainComplex minimized_rouquier(const BraidWord& b);

struct ChainMap {
  std::shared_ptr<const ChainComplex> source;
  std::shared_ptr<const ChainComplex> target;
  std::map<int, BlockMatrix> components;  // [t in target^i][s in source^i]

  PolyMatrix assembled(int i) const;
};

ChainMap zero_chain_map(std::shared_ptr<const ChainComplex> c, std::shared_ptr<const ChainComplex> d);
/// Blocks valid and d f = f d exactly.
bool is_chain_map(const ChainMap& f);
/// cone^i = C^{i+1} + D^i with d = [[-d_C, 0], [f, d_D]]; throws unless f is a
/// chain map.
ChainComplex cone(const ChainMap& f);

/// Basis of degree-0 chain maps C -> D, up to nothing (homotopies included).
std::vector<ChainMap> solve_chain_maps(const ChainComplex& c, const ChainComplex& d);

/// True if some chain map C -> D has contractible cone. Both sides are
/// minimized first; term multisets must agree.
bool complexes_equivalent(const ChainComplex& c, const ChainComplex& d);
/// Same, but returns the equivalence found between the minimized complexes.
std::optional<ChainMap> find_equivalence(const ChainComplex& c, const ChainComplex& d);

/// True if every term is a catalog object and no further elimination is
/// possible.
bool is_minimal(const ChainComplex& c);

/// (catalog label, shift) per term in each degree, sorted.
std::map<int, std::vector<std::pair<std::string, int>>> term_signature(const ChainComplex& c);

/// Koszul complex of the operators A_p = Y_p - x_p on B_{w_0}: chain group
/// -k is the sum over k-subsets of B_{w_0}(-2k). With reduced = true the
/// operators are alpha_i(Y) - alpha_i for the simple roots alpha_i = x_i - x_{i+1}.
ChainComplex koszul_soergel_complex(int n, bool reduced = false);

}  // namespace khr
