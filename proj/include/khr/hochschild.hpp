#pragma once

#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "khr/complex.hpp"
#include "khr/hecke.hpp"

namespace khr {

/// A_p = x_p (left) - Y_p (right) on the carrier of M, one per variable.
std::vector<PolyMatrix> hh_operators(const GradedBimodule& m);

/// (k, j) -> dim HH^k(M)_j for every j <= max_degree (nonzero range only).
using HHDims = std::map<std::pair<int, int>, long>;

/// Cohomology of the Koszul complex Lambda^k (x) M_{j+2k} with differential
/// sum_p e_p ^ A_p, per internal degree j.
HHDims hochschild_dims(const GradedBimodule& m, int max_degree);

/// Dimension of H^k(Hom(K, M))_j for the full Koszul complex K of B_{w_0}.
HHDims koszul_hom_dims(const BimodulePtr& m, int max_degree, int max_k);

struct HHAgreement {
  bool match = true;
  int checked = 0;  // number of (k, j) cells compared
  std::vector<std::string> mismatches;
};

/// Compares HH^k(M)_{j - l(w_0)} with H^k(Hom(K, M))_j for all j - l(w_0) <=
/// max_degree and k <= max_k (default: all k).
HHAgreement hh_agreement(const BimodulePtr& m, int max_degree, int max_k = -1);
bool hh_agreement_check(const BimodulePtr& m, int max_degree);

/// Dimensions of HHH^{k,i,j} for |j| <= truncation.
struct TriGradedTable {
  int strands = 1;
  int truncation = 0;
  std::map<std::tuple<int, int, int>, long> entries;  // (k, i, j), nonzero only

  long at(int k, int i, int j) const;
  friend bool operator==(const TriGradedTable&, const TriGradedTable&) = default;
};

/// Hochschild cohomology termwise, then cohomology in the homological
/// direction, computed per (k, j) cell. threads = 0 picks the hardware count.
TriGradedTable hhh_of_complex(const ChainComplex& c, int truncation, unsigned threads = 0);
TriGradedTable hhh(const BraidWord& b, int truncation, unsigned threads = 0);

/// a-exponent -> v-exponent -> coefficient.
using BiSeries = std::map<int, std::map<int, Rational>>;

/// sum (-1)^i dim HHH^{k,i,j} a^k v^{j + 2k} times the monomial sign * v^shift.
BiSeries euler_bridge(const TriGradedTable& t, int sign = 1, int shift = 0);
/// Expansion of Tr(b) around v = 0, all exponents <= max_order.
BiSeries trace_series(const LaurentScalar& tr, int max_order);

/// Exponents e with -truncation + 2 n <= e <= truncation are fully determined
/// by the table; both sides are compared there.
struct EulerComparison {
  bool match = false;
  int lo = 0, hi = 0;
  std::vector<std::string> mismatches;
};
EulerComparison compare_euler(const TriGradedTable& t, const LaurentScalar& tr, int sign = 1, int shift = 0);

/// The normalization monomial sign * v^shift, searched in |shift| <= 4, that
/// makes the comparison hold, if any.
std::optional<std::pair<int, int>> calibrate_euler(const TriGradedTable& t, const LaurentScalar& tr);

struct GradingShift {
  int dk = 0, di = 0, dj = 0;
  friend bool operator==(const GradingShift&, const GradingShift&) = default;
};

/// True if b(k + dk, i + di, j + dj) = a(k, i, j) wherever both j and j + dj lie
/// within both truncation windows.
bool tables_agree_up_to(const TriGradedTable& a, const TriGradedTable& b, const GradingShift& s);
/// All shifts with |dk| <= 1, |di| <= 2, |dj| <= 6 under which the tables agree.
std::vector<GradingShift> matching_shifts(const TriGradedTable& a, const TriGradedTable& b);

std::string table_to_string(const TriGradedTable& t);

}  // namespace khr
