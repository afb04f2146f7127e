#include <random>

#include "doctest.h"
#include "khr/poly.hpp"

using namespace khr;

namespace {

Poly random_poly(int nvars, std::mt19937& rng) {
  std::uniform_int_distribution<int> e(0, 3), c(-4, 4), count(0, 4);
  Poly p;
  const int terms = count(rng);
  for (int t = 0; t < terms; ++t) {
    std::vector<int> ex(nvars);
    for (int& x : ex) x = e(rng);
    p += Poly::term(Monomial::from_exponents(ex), c(rng));
  }
  return p;
}

long binom(int n, int k) {
  long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

TEST_CASE("ring axioms on random polynomials") {
  std::mt19937 rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + trial % 4;
    const Poly a = random_poly(n, rng), b = random_poly(n, rng), c = random_poly(n, rng);
    CHECK(a * b == b * a);
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(a - a == Poly());
    CHECK((a + b) - b == a);
  }
}

TEST_CASE("monomial enumeration") {
  for (int n = 1; n <= 4; ++n)
    for (int d = 0; d <= 6; ++d) {
      const auto& ms = monomials_of_degree(n, d);
      CHECK(static_cast<long>(ms.size()) == binom(d + n - 1, n - 1));
      for (const auto& m : ms) CHECK(m.degree() == d);
    }
  CHECK(monomials_of_degree(3, -1).empty());
}

TEST_CASE("polynomial basics") {
  const Poly x = Poly::var(0), y = Poly::var(1);
  const Poly p = (x + y) * (x - y);
  CHECK(p == x * x - y * y);
  CHECK(p.is_homogeneous());
  CHECK(p.degree() == 2);
  CHECK(!(p + 1).is_homogeneous());
  CHECK((p + 5).constant_term() == 5);
  CHECK(p.coeff(Monomial::var(1, 2)) == -1);
  CHECK(Poly(0).is_zero());
}

TEST_CASE("matrix evaluation at commuting matrices") {
  const Poly x = Poly::var(0), y = Poly::var(1);
  PolyMatrix a(2, 2), b(2, 2);
  a(0, 1) = 1;
  a(1, 1) = x;
  b = PolyMatrix::scalar(2, y);
  MatrixEvaluator ev({a, b});
  const Poly f = x * x * y + 3;
  const PolyMatrix direct = a * a * b + PolyMatrix::scalar(2, Poly(3));
  CHECK(ev.eval(f) == direct);
  Rational lambda;
  CHECK(PolyMatrix::scalar(3, Poly(2)).is_scalar_identity(lambda));
  CHECK(lambda == 2);
  CHECK(!a.is_scalar_identity(lambda));
}
