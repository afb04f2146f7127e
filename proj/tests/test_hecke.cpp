#include <random>

#include "doctest.h"
#include "khr/hecke.hpp"

using namespace khr;

namespace {

RatFunc vpow(int k) { return RatFunc::monomial(1, k); }

HeckeElement random_element(int n, std::mt19937& rng) {
  const auto perms = all_permutations(n);
  std::uniform_int_distribution<int> pick(0, static_cast<int>(perms.size()) - 1), c(-3, 3), e(-2, 2);
  HeckeElement x(n);
  for (int k = 0; k < 3; ++k) x.add(perms[pick(rng)], RatFunc::monomial(c(rng), e(rng)));
  return x;
}

// Embeds x in H_{n+1}.
HeckeElement include(const HeckeElement& x) {
  HeckeElement y(x.strands() + 1);
  for (const auto& [w, c] : x.coords()) y.add(w.extended(x.strands() + 1), c);
  return y;
}

LaurentScalar alpha(int k, const RatFunc& c = RatFunc(1)) { return LaurentScalar::a_power(k, c); }

}  // namespace

TEST_CASE("Hecke relations") {
  const RatFunc z = hecke_z();
  for (int n = 2; n <= 4; ++n) {
    for (int i = 1; i < n; ++i) {
      const auto t = HeckeElement::basis(Permutation::simple(i, n));
      const auto one = HeckeElement::unit(n);
      CHECK(hecke_multiply(t, t) == t * z + one);
      const auto tinv = t - one * z;
      CHECK(hecke_multiply(t, tinv) == one);
      if (i + 1 < n) {
        const auto u = HeckeElement::basis(Permutation::simple(i + 1, n));
        CHECK(hecke_multiply(hecke_multiply(t, u), t) == hecke_multiply(hecke_multiply(u, t), u));
      }
    }
  }
  // t_w is the product along any reduced word.
  for (const auto& w : all_permutations(4)) {
    HeckeElement x = HeckeElement::unit(4);
    for (int i : reduced_word(w)) x = x.times_generator(i);
    CHECK(x == HeckeElement::basis(w));
  }
}

TEST_CASE("trace small values") {
  const LaurentScalar m = markov_factor();
  CHECK(ocneanu_trace(HeckeElement::unit(1)) == m);
  CHECK(ocneanu_trace(HeckeElement::unit(2)) == m * m);
  CHECK(ocneanu_trace(HeckeElement::basis(Permutation::simple(1, 2))) == m * vpow(-1) * RatFunc(-1));
  // t_s^2 = z t_s + 1
  const auto t = HeckeElement::basis(Permutation::simple(1, 2));
  CHECK(ocneanu_trace(hecke_multiply(t, t)) == m * m + m * (hecke_z() * vpow(-1) * RatFunc(-1)));
}

TEST_CASE("trace axioms") {
  std::mt19937 rng(42);
  for (int n = 1; n <= 4; ++n) {
    // Markov conditions on every basis element of H_{n-1}.
    if (n >= 2) {
      for (const auto& w : all_permutations(n - 1)) {
        const auto x = HeckeElement::basis(w);
        const auto ix = include(x);
        CHECK(ocneanu_trace(ix) == markov_factor() * ocneanu_trace(x));
        CHECK(ocneanu_trace(ix.times_generator(n - 1)) == ocneanu_trace(x) * vpow(-1) * RatFunc(-1));
      }
    }
    // Cyclicity on random pairs.
    const int pairs = n == 1 ? 5 : 50;
    for (int k = 0; k < pairs; ++k) {
      const auto x = random_element(n, rng), y = random_element(n, rng);
      CHECK(ocneanu_trace(hecke_multiply(x, y)) == ocneanu_trace(hecke_multiply(y, x)));
    }
    // Linearity.
    const auto x = random_element(n, rng), y = random_element(n, rng);
    CHECK(ocneanu_trace(x * RatFunc(3) + y) == ocneanu_trace(x) * RatFunc(3) + ocneanu_trace(y));
  }
}

TEST_CASE("Young diagrams") {
  CHECK(partitions(4).size() == 5);
  CHECK(partitions(5).size() == 7);
  const YoungDiagram l({2, 1});
  CHECK(l.size() == 3);
  CHECK(l.hook(0, 0) == 3);
  CHECK(l.hook(1, 0) == 1);
  CHECK(l.content(1, 0) == 1);
  CHECK(YoungDiagram({3}).n_prime() == 3);
  CHECK(YoungDiagram({1, 1, 1}).n_prime() == 0);
  CHECK(build_seminormal(YoungDiagram({2, 1})).dimension() == 2);
  CHECK(build_seminormal(YoungDiagram({3, 2})).dimension() == 5);
  CHECK_THROWS(YoungDiagram({1, 2}));
}

TEST_CASE("weight decomposition of the trace") {
  for (int n = 1; n <= 4; ++n) CHECK(verify_weight_decomposition(n));
}

TEST_CASE("Jucys-Murphy identity") {
  for (int n = 2; n <= 3; ++n)
    for (const auto& w : all_permutations(n))
      for (int k = 0; k < n; ++k) CHECK(jm_elementary_identity(HeckeElement::basis(w), k));
}

TEST_CASE("HOMFLY normalization and skein relation") {
  const RatFunc z = hecke_z();
  for (int n = 1; n <= 4; ++n) {
    std::vector<int> word;
    for (int i = 1; i < n; ++i) word.push_back(i);
    CHECK(homfly(BraidWord(n, word)).normalized == LaurentScalar(1));
    for (auto& x : word) x = -x;
    CHECK(homfly(BraidWord(n, word)).normalized == LaurentScalar(1));
  }
  // Skein values computed by hand from alpha^-1 P+ - alpha P- = z P0.
  const LaurentScalar unlink = (alpha(-1) - alpha(1)).divided(z);
  CHECK(homfly(BraidWord(2, {})).normalized == unlink);
  const LaurentScalar hopf = alpha(1) * (LaurentScalar(z) + alpha(1) * unlink);
  CHECK(homfly(BraidWord(2, {1, 1})).normalized == hopf);
  const LaurentScalar trefoil = alpha(1) * (hopf * z + alpha(1));
  CHECK(homfly(BraidWord(2, {1, 1, 1})).normalized == trefoil);
  CHECK(homfly(BraidWord(3, {1, 2, 1, 2})).normalized == trefoil);
  // Conjugation and stabilization.
  CHECK(homfly(BraidWord(3, {2, 1, 1, 1, -2})).normalized == homfly(BraidWord(3, {1, 1, 1})).normalized);
  CHECK(homfly(BraidWord(3, {1, 1, 1})).normalized == trefoil * unlink);
  CHECK(homfly(BraidWord(3, {1, 1, 1, -2})).normalized == trefoil);
}
