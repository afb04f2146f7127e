#include <algorithm>
#include <numeric>
#include <random>

#include "doctest.h"
#include "khr/catalog.hpp"

using namespace khr;

namespace {

Poly x(int i) { return Poly::var(i); }

GradedRank bs_rank(int factors) {
  GradedRank r{{0, 1}};
  for (int k = 0; k < factors; ++k) r = graded_rank_mul(r, GradedRank{{-1, 1}, {1, 1}});
  return r;
}

bool all_structure_checks(const GradedBimodule& m) {
  return right_actions_commute(m) && entries_homogeneous(m) && symmetric_relation_holds(m) && idempotent_valid(m);
}

// Same bimodule with generators listed in the order perm.
GradedBimodule permuted(const GradedBimodule& m, const std::vector<int>& perm) {
  const int r = m.rank();
  PolyMatrix p(r, r);
  for (int k = 0; k < r; ++k) p(k, perm[k]) = Poly(1);
  PolyMatrix pt(r, r);
  for (int k = 0; k < r; ++k) pt(perm[k], k) = Poly(1);
  GradedBimodule out = m;
  for (int k = 0; k < r; ++k) out.degrees[k] = m.degrees[perm[k]];
  for (auto& y : out.right) y = p * y * pt;
  if (m.is_karoubi()) out.idempotent = p * m.idempotent * pt;
  return out;
}

// Coefficient of v^d in Hilb(R) * P(v), P the Poincare polynomial of the
// Artin monomials; R (x)_{R^W} R is free over R on the Artin monomials.
long two_sided_coinvariant_dim(int n, int d) {
  if (d % 2) return 0;
  std::vector<int> artin_degrees{0};
  for (int k = 0; k < n; ++k) {
    std::vector<int> next;
    for (int a : artin_degrees)
      for (int e = 0; e <= n - 1 - k; ++e) next.push_back(a + e);
    artin_degrees = std::move(next);
  }
  long total = 0;
  for (int a : artin_degrees)
    if (d / 2 >= a) total += static_cast<long>(monomials_of_degree(n, d / 2 - a).size());
  return total;
}

}  // namespace

TEST_CASE("diagonal and Bott-Samelson objects") {
  const auto r = diagonal(3);
  CHECK(r.rank() == 1);
  CHECK(r.degrees == std::vector<int>{0});
  for (int j = 0; j < 3; ++j) CHECK(r.right[j] == PolyMatrix::scalar(1, x(j)));

  const auto b = bott_samelson({1}, 2);
  CHECK(b.degrees == std::vector<int>{-1, 1});
  PolyMatrix y2(2, 2);
  y2(0, 1) = Poly() - x(0) * x(1);
  y2(1, 0) = Poly(1);
  y2(1, 1) = x(0) + x(1);
  CHECK(b.right[1] == y2);
  CHECK(all_structure_checks(b));

  const auto b121 = bott_samelson({1, 2, 1}, 3);
  CHECK(b121.rank() == 8);
  CHECK(all_structure_checks(b121));
  CHECK(graded_rank(b121) == bs_rank(3));
  CHECK_THROWS(bott_samelson({3}, 3));
  CHECK_THROWS(bott_samelson({0}, 3));
}

TEST_CASE("shift and tensor") {
  const auto b = bott_samelson({1}, 3);
  CHECK(shift(diagonal(2), 0).degrees == diagonal(2).degrees);
  CHECK(shift(shift(b, 2), -5).degrees == shift(b, -3).degrees);
  CHECK(graded_rank(shift(b, 1)) == graded_rank_shift(graded_rank(b), -1));

  const auto t = tensor(diagonal(3), b);
  CHECK(t.degrees == b.degrees);
  CHECK(t.right == b.right);

  const auto bb = tensor(bott_samelson({1}, 2), bott_samelson({1}, 2));
  CHECK(graded_rank(bb) == bs_rank(2));
  CHECK(all_structure_checks(bb));

  const auto b12 = tensor(bott_samelson({1}, 3), bott_samelson({2}, 3));
  const auto direct = bott_samelson({1, 2}, 3);
  CHECK(b12.degrees == direct.degrees);
  CHECK(b12.right == direct.right);

  const auto m = tensor(bott_samelson({2, 1}, 3), bott_samelson({2}, 3));
  CHECK(graded_rank(m) == graded_rank_mul(bs_rank(2), bs_rank(1)));
  CHECK_THROWS(tensor(diagonal(2), diagonal(3)));
}

TEST_CASE("multiplication and split maps") {
  for (int n = 2; n <= 4; ++n)
    for (int i = 1; i < n; ++i) {
      const auto m = multiplication_map(i, n);
      const auto s = split_map(i, n);
      CHECK(m.matrix(0, 0) == Poly(1));
      CHECK(m.matrix(0, 1) == x(i));
      CHECK(is_bimodule_map(*m.source, *m.target, m.matrix, 0));
      CHECK(is_bimodule_map(*s.source, *s.target, s.matrix, 0));
      CHECK(m.matrix * s.matrix == PolyMatrix::scalar(1, x(i - 1) - x(i)));
    }
}

TEST_CASE("hom spaces") {
  for (int n = 1; n <= 3; ++n) {
    const auto r = make_ptr(diagonal(n));
    CHECK(hom(r, r, 0)->dim() == 1);
    CHECK(hom(r, r, 0)->basis()[0] == PolyMatrix::identity(1));
    CHECK(hom(r, r, 2)->dim() == n);
    CHECK(hom(r, r, 1)->dim() == 0);
  }
  const auto rm = make_ptr(shift(diagonal(2), -1));
  const auto bs = make_ptr(bott_samelson({1}, 2));
  const auto h = hom(rm, bs, 0);
  REQUIRE(h->dim() == 1);
  CHECK(h->coordinates(split_map(1, 2).matrix).has_value());
  CHECK(h->coordinates(PolyMatrix(2, 1)).has_value());

  // End(B_s) is free over R on generators of degree 0 and 2: (1 + v^2) / (1 - v^2)^2 at n = 2.
  const long expect[] = {1, 3, 5, 7};
  for (int d = 0; d < 4; ++d) CHECK(hom(bs, bs, 2 * d)->dim() == expect[d]);
  CHECK(hom(bs, bs, -2)->dim() == 0);
  CHECK(hom(bs, bs, 1)->dim() == 0);
}

TEST_CASE("hom dimensions are invariant under basis permutation") {
  std::mt19937 rng(7);
  const auto m = bott_samelson({1, 2}, 3);
  const auto n = bott_samelson({2, 1, 2}, 3);
  std::vector<int> pm(m.rank()), pn(n.rank());
  std::iota(pm.begin(), pm.end(), 0);
  std::iota(pn.begin(), pn.end(), 0);
  std::shuffle(pm.begin(), pm.end(), rng);
  std::shuffle(pn.begin(), pn.end(), rng);
  const auto a = make_ptr(m), b = make_ptr(n);
  const auto a2 = make_ptr(permuted(m, pm)), b2 = make_ptr(permuted(n, pn));
  CHECK(all_structure_checks(*a2));
  for (int d = -3; d <= 3; ++d) {
    CHECK(hom(a, b, d)->dim() == hom(a2, b2, d)->dim());
    CHECK(hom(b, a, d)->dim() == hom(b2, a2, d)->dim());
  }
}

TEST_CASE("B_w0") {
  CHECK(b_w0(1).rank() == 1);
  CHECK(b_w0(1).degrees == std::vector<int>{0});
  const auto b2 = b_w0(2);
  CHECK(b2.degrees == std::vector<int>{-1, 1});
  CHECK(all_structure_checks(b2));
  const auto p2 = make_ptr(b2), s = make_ptr(bott_samelson({1}, 2));
  REQUIRE(find_splitting(s, 0, p2).has_value());

  const auto b3 = b_w0(3);
  CHECK(b3.rank() == 6);
  CHECK(all_structure_checks(b3));
  // v^-3 (1 + v^2)(1 + v^2 + v^4)
  CHECK(graded_rank(b3) == GradedRank{{-3, 1}, {-1, 2}, {1, 2}, {3, 1}});

  const auto b4 = b_w0(4);
  CHECK(b4.rank() == 24);
  CHECK(all_structure_checks(b4));
}

TEST_CASE("End(B_w0) matches the two-sided coinvariants") {
  for (int n = 2; n <= 3; ++n) {
    const auto b = make_ptr(b_w0(n));
    for (int d = -2; d <= 6; ++d) {
      CAPTURE(n);
      CAPTURE(d);
      const long want = d < 0 ? 0 : two_sided_coinvariant_dim(n, d);
      CHECK(hom(b, b, d)->dim() == want);
    }
  }
}

TEST_CASE("split_summand") {
  const auto bb = make_ptr(tensor(bott_samelson({1}, 2), bott_samelson({1}, 2)));
  const auto s = make_ptr(bott_samelson({1}, 2));
  // B_s B_s = B_s(1) + B_s(-1); R is not a summand.
  CHECK(!find_splitting(make_ptr(diagonal(2)), 0, bb).has_value());
  auto sp = find_splitting(s, 1, bb);
  REQUIRE(sp.has_value());
  auto [summand, complement] = split_summand(*bb, sp->incl, sp->proj);
  CHECK(graded_rank(summand) == graded_rank(shift(*s, 1)));
  CHECK(graded_rank(complement) == GradedRank{{0, 1}, {2, 1}});
  CHECK(idempotent_valid(summand));
  CHECK(idempotent_valid(complement));
  const auto cp = make_ptr(complement);
  CHECK(find_splitting(s, -1, cp).has_value());

  const auto id = PolyMatrix::identity(bb->rank());
  auto [all, none] = split_summand(*bb, id, id);
  CHECK(graded_rank(all) == graded_rank(*bb));
  CHECK(graded_rank(none).empty());
  CHECK_THROWS(split_summand(*bb, id, id.scaled(0)));

  // B1 B2 B1 = B121 + B1.
  const auto b121 = make_ptr(bott_samelson({1, 2, 1}, 3));
  const auto b1 = make_ptr(bott_samelson({1}, 3));
  auto sp1 = find_splitting(b1, 0, b121);
  REQUIRE(sp1.has_value());
  auto [piece, rest] = split_summand(*b121, sp1->incl, sp1->proj);
  CHECK(graded_rank(rest) == graded_rank_add(bs_rank(3), bs_rank(1), -1));
  const auto restp = make_ptr(rest), w0 = make_ptr(b_w0(3));
  auto iso = find_splitting(w0, 0, restp);
  REQUIRE(iso.has_value());
  CHECK(graded_rank(rest) == graded_rank(*w0));
}

TEST_CASE("catalog") {
  const auto& c2 = Catalog::get(2);
  CHECK(c2.entries().size() == 2);
  CHECK(c2.entry(c2.unit_id()).label == "R");
  CHECK(c2.entry(c2.simple_id(1)).label == "B1");
  CHECK(c2.longest_id() == c2.simple_id(1));

  const auto& c3 = Catalog::get(3);
  CHECK(c3.entries().size() == 6);
  CHECK(c3.entry(c3.longest_id()).label == "B121");
  for (const auto& e : c3.entries()) CHECK(all_structure_checks(*e.object));

  const auto& c4 = Catalog::get(4);
  // Missing: elements such as s1 s2 s3 s2 that are neither Boolean nor parabolic longest.
  CHECK(c4.entries().size() < 24);
  CHECK(c4.find(Permutation::longest(4)).has_value());
}

TEST_CASE("decomposition into catalog objects") {
  const auto& c3 = Catalog::get(3);
  const auto b121 = make_ptr(bott_samelson({1, 2, 1}, 3));
  const auto d = decompose(b121);
  CHECK(d.complete);
  std::vector<std::pair<std::string, int>> got;
  for (const auto& p : d.pieces) got.emplace_back(c3.entry(p.id).label, p.shift);
  std::sort(got.begin(), got.end());
  CHECK(got == std::vector<std::pair<std::string, int>>{{"B1", 0}, {"B121", 0}});
  // The pieces give a complete system of orthogonal idempotents.
  PolyMatrix sum(b121->rank(), b121->rank());
  for (const auto& p : d.pieces) {
    CHECK(p.proj * p.incl == PolyMatrix::identity(c3.entry(p.id).object->rank()));
    sum = sum + p.incl * p.proj;
  }
  CHECK(sum == PolyMatrix::identity(b121->rank()));

  const int s1 = c3.simple_id(1);
  const auto& dd = catalog_tensor_decomposition(3, s1, s1);
  CHECK(dd.complete);
  std::vector<int> shifts;
  for (const auto& p : dd.pieces) {
    CHECK(p.id == s1);
    shifts.push_back(p.shift);
  }
  std::sort(shifts.begin(), shifts.end());
  CHECK(shifts == std::vector<int>{-1, 1});

  const int w0 = c3.longest_id();
  const auto& dw = catalog_tensor_decomposition(3, w0, w0);
  CHECK(dw.complete);
  // B_w0 B_w0 = B_w0 tensored with the Poincare polynomial of S_3.
  std::vector<int> ws;
  for (const auto& p : dw.pieces) {
    CHECK(p.id == w0);
    ws.push_back(p.shift);
  }
  std::sort(ws.begin(), ws.end());
  CHECK(ws == std::vector<int>{-3, -1, -1, 1, 1, 3});
}
