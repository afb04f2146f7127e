#include <random>

#include "doctest.h"
#include "khr/complex.hpp"

using namespace khr;

namespace {

using Signature = std::map<int, std::vector<std::pair<std::string, int>>>;

ChainComplex rq(int n, std::vector<int> word) { return rouquier_complex(BraidWord(n, std::move(word))); }
ChainComplex mrq(int n, std::vector<int> word) { return minimized_rouquier(BraidWord(n, std::move(word))); }

bool is_unit(const ChainComplex& c, int shift = 0) {
  return term_signature(c) == Signature{{0, {{"R", shift}}}};
}

void check_well_formed(const ChainComplex& c) {
  CHECK(c.d_squared_zero());
  CHECK(c.blocks_valid());
}

}  // namespace

TEST_CASE("elementary complexes") {
  const auto d = delta_complex(1, 2);
  CHECK(term_signature(d) == Signature{{0, {{"B1", 0}}}, {1, {{"R", 1}}}});
  check_well_formed(d);
  const auto n = nabla_complex(1, 2);
  CHECK(term_signature(n) == Signature{{-1, {{"R", -1}}}, {0, {{"B1", 0}}}});
  check_well_formed(n);
  // (v^-1 + v) - v^-1, since graded_rank(R(1)) = v^-1.
  CHECK(d.euler_characteristic() == GradedRank{{1, 1}});
}

TEST_CASE("tensor products of complexes") {
  const auto d1 = delta_complex(1, 3), d2 = delta_complex(2, 3);
  const auto t = tensor_complex(d1, d2);
  check_well_formed(t);
  CHECK(t.rank_at(0) == 4);
  CHECK(t.rank_at(1) == 4);
  CHECK(t.terms_at(1).size() == 2);
  CHECK(t.rank_at(2) == 1);
  CHECK(t.euler_characteristic() == graded_rank_mul(d1.euler_characteristic(), d2.euler_characteristic()));

  const auto u = tensor_complex(unit_complex(3), d1);
  CHECK(u.describe() == d1.describe());
  CHECK(u.assembled(0) == d1.assembled(0));

  const auto big = rq(3, {1, -2, 1, 2});
  check_well_formed(big);
  CHECK(big.total_rank() == 81);
}

TEST_CASE("shifts") {
  const auto d = delta_complex(1, 2);
  const auto s = shift_complex(d, 1, 2);
  CHECK(term_signature(s) == Signature{{-1, {{"B1", 2}}}, {0, {{"R", 3}}}});
  CHECK(s.assembled(-1) == -d.assembled(0));
  check_well_formed(s);
}

TEST_CASE("minimization of Rouquier complexes") {
  CHECK(is_unit(mrq(2, {})));
  CHECK(is_unit(minimize(rq(2, {1, -1}))));
  CHECK(is_unit(minimize(rq(2, {-1, 1}))));
  CHECK(is_unit(mrq(3, {2, 1, -1, -2})));

  // B_s B_s = B_s(1) + B_s(-1) in degree 0; the B_s(1) cancels one of the two in degree 1.
  const auto dd = mrq(2, {1, 1});
  CHECK(term_signature(dd) == Signature{{0, {{"B1", -1}}}, {1, {{"B1", 1}}}, {2, {{"R", 2}}}});

  std::mt19937 rng(3);
  for (int trial = 0; trial < 10; ++trial) {
    std::uniform_int_distribution<int> len(1, 4), letter(1, 2), sign(0, 1);
    std::vector<int> w;
    const int l = len(rng);
    for (int k = 0; k < l; ++k) w.push_back(sign(rng) ? letter(rng) : -letter(rng));
    const BraidWord b(3, w);
    const auto c = minimized_rouquier(b * b.inverse());
    CAPTURE(b.to_string());
    CHECK(is_unit(c));
  }
}

TEST_CASE("elimination preserves Euler characteristic and shrinks") {
  for (const auto& w : std::vector<std::vector<int>>{{1, 2, 1}, {1, -2, 1}, {-1, -2, -1, 2}, {1, 1, 2}}) {
    const auto full = rq(3, w);
    const auto small = minimize(full);
    check_well_formed(small);
    CHECK(small.euler_characteristic() == full.euler_characteristic());
    CHECK(small.total_rank() <= full.total_rank());
    CHECK(is_minimal(small));
    const auto inc = mrq(3, w);
    CHECK(term_signature(inc) == term_signature(small));
  }
}

TEST_CASE("braid relations") {
  const auto a = mrq(3, {1, 2, 1});
  const auto b = mrq(3, {2, 1, 2});
  CHECK(term_signature(a) == term_signature(b));
  CHECK(complexes_equivalent(a, b));
  CHECK(complexes_equivalent(mrq(3, {-1, -2, -1}), mrq(3, {-2, -1, -2})));
  for (int i = 1; i <= 2; ++i) CHECK(complexes_equivalent(mrq(4, {i, i + 1, i}), mrq(4, {i + 1, i, i + 1})));
  CHECK(complexes_equivalent(mrq(4, {1, 3}), mrq(4, {3, 1})));
}

TEST_CASE("chain maps and cones") {
  auto r = std::make_shared<const ChainComplex>(unit_complex(2));
  auto id = zero_chain_map(r, r);
  id.components[0][0][0] = PolyMatrix::identity(1);
  CHECK(is_chain_map(id));
  CHECK(minimize(cone(id)).empty());

  auto d = std::make_shared<const ChainComplex>(delta_complex(1, 2));
  auto n = std::make_shared<const ChainComplex>(nabla_complex(1, 2));
  const auto z = zero_chain_map(d, n);
  CHECK(is_chain_map(z));
  const auto c = cone(z);
  CHECK(term_signature(c) == Signature{{-1, {{"B1", 0}, {"R", -1}}}, {0, {{"B1", 0}, {"R", 1}}}});
  check_well_formed(c);

  // A map that does not commute with the differentials.
  auto bad = zero_chain_map(d, d);
  bad.components[0][0][0] = PolyMatrix::identity(2);
  CHECK(!is_chain_map(bad));
  CHECK_THROWS(cone(bad));

  const auto ends = solve_chain_maps(*d, *d);
  CHECK(ends.size() == 1);
  for (const auto& f : ends) CHECK(is_chain_map(f));
}

TEST_CASE("equivalence") {
  CHECK(complexes_equivalent(unit_complex(2), unit_complex(2)));
  CHECK(complexes_equivalent(rq(2, {1, 1, 1, 1, -1}), rq(2, {1, 1, 1})));
  CHECK(complexes_equivalent(rq(2, {-1, 1, 1, 1, 1}), rq(2, {1, 1, 1})));
  CHECK(!complexes_equivalent(delta_complex(1, 2), nabla_complex(1, 2)));
  CHECK(!complexes_equivalent(rq(2, {1, 1}), shift_complex(unit_complex(2), 0, 1)));
  CHECK(!complexes_equivalent(unit_complex(2), shift_complex(unit_complex(2), 0, 1)));
}

TEST_CASE("Koszul complex of B_w0") {
  const auto k1 = koszul_soergel_complex(1);
  CHECK(term_signature(k1) == Signature{{-1, {{"R", -2}}}, {0, {{"R", 0}}}});
  CHECK(k1.assembled(-1).is_zero());
  CHECK(term_signature(koszul_soergel_complex(1, true)) == Signature{{0, {{"R", 0}}}});

  const auto k2 = koszul_soergel_complex(2, true);
  CHECK(term_signature(k2) == Signature{{-1, {{"B1", -2}}}, {0, {{"B1", 0}}}});
  check_well_formed(k2);
  const auto& b = *Catalog::get(2).entry(Catalog::get(2).simple_id(1)).object;
  CHECK(k2.assembled(-1) == b.right[0] - b.right[1] - PolyMatrix::scalar(2, Poly::var(0) - Poly::var(1)));

  const auto k3 = koszul_soergel_complex(3, true);
  check_well_formed(k3);
  CHECK(term_signature(k3) ==
        Signature{{-2, {{"B121", -4}}}, {-1, {{"B121", -2}, {"B121", -2}}}, {0, {{"B121", 0}}}});
  const auto f3 = koszul_soergel_complex(3);
  check_well_formed(f3);
  CHECK(f3.terms_at(-3).size() == 1);
  CHECK(f3.terms_at(-1).size() == 3);
}
