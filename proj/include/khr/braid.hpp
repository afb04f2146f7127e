#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace khr {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::string token)
      : Error(what), token_(std::move(token)) {}
  const std::string& token() const { return token_; }

 private:
  std::string token_;
};

/// A braid word on `strand_count` strands. Letter +i is sigma_i, -i its
/// inverse, with 1 <= i <= strand_count - 1.
struct BraidWord {
  int strand_count = 1;
  std::vector<int> letters;

  BraidWord() = default;
  BraidWord(int n, std::vector<int> word);

  BraidWord inverse() const;
  BraidWord operator*(const BraidWord& rhs) const;
  int writhe() const;
  std::string to_string() const;

  friend bool operator==(const BraidWord&, const BraidWord&) = default;
};

/// Permutation of {0, ..., n-1} stored by images. Products compose as
/// functions: (u * w)(x) = u(w(x)). The simple reflection s_i (1-based)
/// swaps positions i-1 and i.
class Permutation {
 public:
  Permutation() = default;
  explicit Permutation(std::vector<int> images);

  static Permutation identity(int n);
  static Permutation simple(int i, int n);
  static Permutation longest(int n);
  static Permutation from_word(const std::vector<int>& reflections, int n);

  int size() const { return static_cast<int>(images_.size()); }
  int operator()(int x) const { return images_[x]; }
  const std::vector<int>& images() const { return images_; }

  int length() const;
  bool is_identity() const;
  Permutation inverse() const;
  /// True iff l(w s_i) < l(w).
  bool has_right_descent(int i) const { return images_[i - 1] > images_[i]; }
  /// True iff l(s_i w) < l(w).
  bool has_left_descent(int i) const;
  Permutation times_simple(int i) const;
  Permutation simple_times(int i) const;
  /// Same permutation viewed in S_m (m >= size), fixing the new points.
  Permutation extended(int m) const;
  /// Restriction to S_{n-1}; requires w(n-1) = n-1.
  Permutation restricted() const;
  /// Index in the lexicographic enumeration of S_n.
  std::uint64_t rank() const;

  Permutation operator*(const Permutation& rhs) const;
  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend auto operator<=>(const Permutation& a, const Permutation& b) {
    return a.images_ <=> b.images_;
  }

  std::string to_string() const;

 private:
  std::vector<int> images_;
};

struct CosetNormalForm {
  Permutation head;       // fixes n-1
  std::vector<int> tail;  // s_{n-1} s_{n-2} ... s_k, possibly empty
};

BraidWord parse_braid_word(std::string_view text, int n);
Permutation permutation_of(const BraidWord& b);
/// Reduced word by repeated leftmost-descent extraction.
std::vector<int> reduced_word(const Permutation& w);
CosetNormalForm coset_normal_form(const Permutation& w);
/// j_0 = 1, j_k = sigma_k j_{k-1} sigma_k.
BraidWord jucys_murphy_braid(int k, int n);

/// All permutations of S_n in lexicographic order of images.
std::vector<Permutation> all_permutations(int n);

}  // namespace khr
