#include "khr/braid.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace khr {

BraidWord::BraidWord(int n, std::vector<int> word) : strand_count(n), letters(std::move(word)) {
  if (n < 1) throw Error("braid word needs at least one strand");
  for (int l : letters) {
    if (l == 0 || std::abs(l) >= n)
      throw Error("braid letter " + std::to_string(l) + " out of range for " +
                  std::to_string(n) + " strands");
  }
}

BraidWord BraidWord::inverse() const {
  BraidWord inv;
  inv.strand_count = strand_count;
  inv.letters.assign(letters.rbegin(), letters.rend());
  for (int& l : inv.letters) l = -l;
  return inv;
}

BraidWord BraidWord::operator*(const BraidWord& rhs) const {
  if (rhs.strand_count != strand_count) throw Error("braid strand counts differ");
  BraidWord out = *this;
  out.letters.insert(out.letters.end(), rhs.letters.begin(), rhs.letters.end());
  return out;
}

int BraidWord::writhe() const {
  int w = 0;
  for (int l : letters) w += l > 0 ? 1 : -1;
  return w;
}

std::string BraidWord::to_string() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < letters.size(); ++i) os << (i ? " " : "") << letters[i];
  return os.str();
}

Permutation::Permutation(std::vector<int> images) : images_(std::move(images)) {
  std::vector<char> seen(images_.size(), 0);
  for (int x : images_) {
    if (x < 0 || x >= size() || seen[x]) throw Error("not a permutation");
    seen[x] = 1;
  }
}

Permutation Permutation::identity(int n) {
  std::vector<int> im(n);
  std::iota(im.begin(), im.end(), 0);
  return Permutation(std::move(im));
}

Permutation Permutation::simple(int i, int n) {
  if (i < 1 || i >= n) throw Error("simple reflection index out of range");
  auto p = identity(n);
  std::swap(p.images_[i - 1], p.images_[i]);
  return p;
}

Permutation Permutation::longest(int n) {
  std::vector<int> im(n);
  for (int i = 0; i < n; ++i) im[i] = n - 1 - i;
  return Permutation(std::move(im));
}

Permutation Permutation::from_word(const std::vector<int>& reflections, int n) {
  auto p = identity(n);
  for (int i : reflections) p = p.times_simple(i);
  return p;
}

int Permutation::length() const {
  int inv = 0;
  for (int i = 0; i < size(); ++i)
    for (int j = i + 1; j < size(); ++j)
      if (images_[i] > images_[j]) ++inv;
  return inv;
}

bool Permutation::is_identity() const {
  for (int i = 0; i < size(); ++i)
    if (images_[i] != i) return false;
  return true;
}

Permutation Permutation::inverse() const {
  std::vector<int> im(images_.size());
  for (int i = 0; i < size(); ++i) im[images_[i]] = i;
  return Permutation(std::move(im));
}

bool Permutation::has_left_descent(int i) const {
  int a = -1, b = -1;
  for (int p = 0; p < size(); ++p) {
    if (images_[p] == i - 1) a = p;
    if (images_[p] == i) b = p;
  }
  return a > b;
}

Permutation Permutation::times_simple(int i) const {
  if (i < 1 || i >= size()) throw Error("simple reflection index out of range");
  Permutation p = *this;
  std::swap(p.images_[i - 1], p.images_[i]);
  return p;
}

Permutation Permutation::simple_times(int i) const {
  if (i < 1 || i >= size()) throw Error("simple reflection index out of range");
  Permutation p = *this;
  for (int& x : p.images_) {
    if (x == i - 1)
      x = i;
    else if (x == i)
      x = i - 1;
  }
  return p;
}

Permutation Permutation::extended(int m) const {
  std::vector<int> im = images_;
  for (int i = size(); i < m; ++i) im.push_back(i);
  return Permutation(std::move(im));
}

Permutation Permutation::restricted() const {
  if (images_.empty() || images_.back() != size() - 1)
    throw Error("permutation does not fix its last point");
  return Permutation(std::vector<int>(images_.begin(), images_.end() - 1));
}

std::uint64_t Permutation::rank() const {
  std::uint64_t r = 0;
  std::vector<char> used(images_.size(), 0);
  for (int i = 0; i < size(); ++i) {
    int smaller = 0;
    for (int x = 0; x < images_[i]; ++x)
      if (!used[x]) ++smaller;
    used[images_[i]] = 1;
    std::uint64_t f = 1;
    for (int k = 2; k < size() - i; ++k) f *= k;
    r += smaller * f;
  }
  return r;
}

Permutation Permutation::operator*(const Permutation& rhs) const {
  if (rhs.size() != size()) throw Error("permutation sizes differ");
  std::vector<int> im(images_.size());
  for (int i = 0; i < size(); ++i) im[i] = images_[rhs.images_[i]];
  return Permutation(std::move(im));
}

std::string Permutation::to_string() const {
  std::ostringstream os;
  os << '[';
  for (int i = 0; i < size(); ++i) os << (i ? " " : "") << images_[i];
  os << ']';
  return os.str();
}

BraidWord parse_braid_word(std::string_view text, int n) {
  if (n < 1) throw ParseError("strand count must be positive", std::to_string(n));
  std::istringstream is{std::string(text)};
  std::vector<int> letters;
  std::string tok;
  while (is >> tok) {
    std::size_t used = 0;
    int value = 0;
    try {
      value = std::stoi(tok, &used);
    } catch (const std::exception&) {
      throw ParseError("not an integer braid letter: '" + tok + "'", tok);
    }
    if (used != tok.size()) throw ParseError("not an integer braid letter: '" + tok + "'", tok);
    if (value == 0 || std::abs(value) >= n)
      throw ParseError("braid letter '" + tok + "' out of range for " + std::to_string(n) +
                           " strands",
                       tok);
    letters.push_back(value);
  }
  return BraidWord(n, std::move(letters));
}

Permutation permutation_of(const BraidWord& b) {
  auto p = Permutation::identity(b.strand_count);
  for (int l : b.letters) p = p.times_simple(std::abs(l));
  return p;
}

std::vector<int> reduced_word(const Permutation& w) {
  std::vector<int> word;
  Permutation cur = w;
  while (!cur.is_identity()) {
    for (int i = 1; i < cur.size(); ++i) {
      if (cur.has_left_descent(i)) {
        word.push_back(i);
        cur = cur.simple_times(i);
        break;
      }
    }
  }
  return word;
}

CosetNormalForm coset_normal_form(const Permutation& w) {
  const int n = w.size();
  CosetNormalForm out;
  if (n == 0) {
    out.head = w;
    return out;
  }
  const int pos = w.inverse()(n - 1);  // w(pos) = n-1
  Permutation tail = Permutation::identity(n);
  for (int i = n - 1; i >= pos + 1; --i) {
    out.tail.push_back(i);
    tail = tail.times_simple(i);
  }
  out.head = w * tail.inverse();
  return out;
}

BraidWord jucys_murphy_braid(int k, int n) {
  if (k < 0 || k > n - 1) throw Error("Jucys-Murphy index out of range");
  std::vector<int> word;
  for (int i = 1; i <= k; ++i) {
    word.insert(word.begin(), i);
    word.push_back(i);
  }
  return BraidWord(n, std::move(word));
}

std::vector<Permutation> all_permutations(int n) {
  std::vector<int> im(n);
  std::iota(im.begin(), im.end(), 0);
  std::vector<Permutation> out;
  do {
    out.emplace_back(im);
  } while (std::next_permutation(im.begin(), im.end()));
  return out;
}

}  // namespace khr
