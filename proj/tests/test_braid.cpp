#include <algorithm>
#include <numeric>
#include <random>

#include "doctest.h"
#include "khr/braid.hpp"

using namespace khr;

namespace {

int inversions(const std::vector<int>& p) {
  int c = 0;
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = i + 1; j < p.size(); ++j) c += p[i] > p[j];
  return c;
}

// Applies the letters to the sequence 0..n-1 by swapping adjacent slots,
// reading the word right to left so that images compose as functions.
std::vector<int> images_by_swaps(const std::vector<int>& word, int n) {
  std::vector<int> img(n);
  std::iota(img.begin(), img.end(), 0);
  for (int letter : word) {
    const int i = std::abs(letter);
    // (f * s_i)(x) = f(s_i(x)): swap the images at positions i-1, i.
    std::swap(img[i - 1], img[i]);
  }
  return img;
}

}  // namespace

TEST_CASE("parse braid words") {
  CHECK(parse_braid_word("1 -2 1", 3).letters == std::vector<int>{1, -2, 1});
  CHECK(parse_braid_word("", 2).letters.empty());
  CHECK(parse_braid_word("", 1).letters.empty());
  CHECK_THROWS_AS(parse_braid_word("3", 3), ParseError);
  CHECK_THROWS_AS(parse_braid_word("0", 3), ParseError);
  CHECK_THROWS_AS(parse_braid_word("1 x", 3), ParseError);
}

TEST_CASE("braid word algebra") {
  const BraidWord b(3, {1, -2, 2, 1});
  CHECK(b.writhe() == 2);
  CHECK(b.inverse().letters == std::vector<int>{-1, -2, 2, -1});
  CHECK((b * b.inverse()).letters.size() == 8);
  CHECK(b.inverse().inverse() == b);
  CHECK_THROWS(BraidWord(2, {2}));
}

TEST_CASE("permutations of braid words match adjacent swaps") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 2 + trial % 4;
    std::uniform_int_distribution<int> len(0, 8), letter(1, n - 1), sign(0, 1);
    std::vector<int> word(len(rng));
    for (int& x : word) x = letter(rng) * (sign(rng) ? 1 : -1);
    const Permutation w = permutation_of(BraidWord(n, word));
    CHECK(w.images() == images_by_swaps(word, n));
  }
}

TEST_CASE("length, reduced words and normal forms") {
  for (int n = 1; n <= 5; ++n) {
    const auto perms = all_permutations(n);
    int factorial = 1;
    for (int k = 2; k <= n; ++k) factorial *= k;
    CHECK(static_cast<int>(perms.size()) == factorial);
    for (const auto& w : perms) {
      CHECK(w.length() == inversions(w.images()));
      const auto word = reduced_word(w);
      CHECK(static_cast<int>(word.size()) == w.length());
      CHECK(Permutation::from_word(word, n) == w);
      CHECK((w * w.inverse()).is_identity());
      for (int i = 1; i < n; ++i) {
        CHECK(w.has_right_descent(i) == (w.times_simple(i).length() < w.length()));
        CHECK(w.has_left_descent(i) == (w.simple_times(i).length() < w.length()));
      }
      if (n >= 1) {
        const auto nf = coset_normal_form(w);
        CHECK(nf.head(n - 1) == n - 1);
        Permutation rebuilt = nf.head;
        for (int i : nf.tail) rebuilt = rebuilt.times_simple(i);
        CHECK(rebuilt == w);
        CHECK(nf.head.length() + static_cast<int>(nf.tail.size()) == w.length());
      }
    }
  }
  CHECK(Permutation::longest(4).length() == 6);
}

TEST_CASE("Jucys-Murphy braids") {
  CHECK(jucys_murphy_braid(0, 3).letters.empty());
  CHECK(jucys_murphy_braid(1, 3).letters == std::vector<int>{1, 1});
  CHECK(jucys_murphy_braid(2, 3).letters == std::vector<int>{2, 1, 1, 2});
  CHECK(permutation_of(jucys_murphy_braid(2, 3)).is_identity());
}
