#include "khr/poly.hpp"

#include <algorithm>
#include <mutex>
#include <sstream>

#include "khr/braid.hpp"

namespace khr {

Monomial Monomial::var(int i, int power) {
  if (i < 0 || i >= kMaxVars) throw Error("monomial variable index out of range");
  Monomial m;
  m.bits_ = static_cast<std::uint64_t>(power) << (8 * i);
  return m;
}

Monomial Monomial::from_exponents(const std::vector<int>& e) {
  if (e.size() > static_cast<std::size_t>(kMaxVars)) throw Error("too many variables");
  Monomial m;
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (e[i] < 0 || e[i] > 255) throw Error("monomial exponent out of range");
    m.bits_ |= static_cast<std::uint64_t>(e[i]) << (8 * i);
  }
  return m;
}

int Monomial::degree() const {
  int d = 0;
  for (int i = 0; i < kMaxVars; ++i) d += exponent(i);
  return d;
}

bool Monomial::divides(Monomial o) const {
  for (int i = 0; i < kMaxVars; ++i)
    if (exponent(i) > o.exponent(i)) return false;
  return true;
}

Monomial Monomial::operator*(Monomial o) const {
  Monomial m;
  m.bits_ = bits_ + o.bits_;
  return m;
}

Monomial Monomial::operator/(Monomial o) const {
  Monomial m;
  m.bits_ = bits_ - o.bits_;
  return m;
}

std::string Monomial::to_string(int nvars, const std::vector<std::string>& names) const {
  std::ostringstream os;
  bool first = true;
  for (int i = 0; i < nvars; ++i) {
    const int e = exponent(i);
    if (!e) continue;
    if (!first) os << '*';
    first = false;
    os << (i < static_cast<int>(names.size()) ? names[i] : "x" + std::to_string(i + 1));
    if (e > 1) os << '^' << e;
  }
  return first ? "1" : os.str();
}

const std::vector<Monomial>& monomials_of_degree(int nvars, int degree) {
  static std::mutex mutex;
  static std::map<std::pair<int, int>, std::vector<Monomial>> table;
  std::lock_guard lock(mutex);
  auto key = std::make_pair(nvars, degree);
  auto it = table.find(key);
  if (it != table.end()) return it->second;
  std::vector<Monomial> out;
  if (degree >= 0) {
    std::vector<int> e(nvars, 0);
    auto rec = [&](auto& self, int var, int left) -> void {
      if (var == nvars - 1) {
        e[var] = left;
        out.push_back(Monomial::from_exponents(e));
        return;
      }
      for (int k = 0; k <= left; ++k) {
        e[var] = k;
        self(self, var + 1, left - k);
      }
      e[var] = 0;
    };
    if (nvars == 0) {
      if (degree == 0) out.push_back(Monomial());
    } else {
      rec(rec, 0, degree);
    }
    std::sort(out.begin(), out.end());
  }
  return table.emplace(key, std::move(out)).first->second;
}

Poly::Poly(const Rational& c) {
  if (c != 0) terms_.emplace_back(Monomial(), c);
}

Poly Poly::term(Monomial m, const Rational& c) {
  Poly p;
  if (c != 0) p.terms_.emplace_back(m, c);
  return p;
}

Rational Poly::coeff(Monomial m) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), m,
                             [](const Term& t, Monomial x) { return t.first < x; });
  if (it != terms_.end() && it->first == m) return it->second;
  return 0;
}

int Poly::degree() const {
  int d = -1;
  for (const auto& t : terms_) d = std::max(d, t.first.degree());
  return d;
}

bool Poly::is_homogeneous() const {
  for (const auto& t : terms_)
    if (t.first.degree() != terms_[0].first.degree()) return false;
  return true;
}

Rational Poly::constant_term() const { return coeff(Monomial()); }

Poly Poly::operator+(const Poly& o) const {
  if (o.terms_.empty()) return *this;
  if (terms_.empty()) return o;
  Poly r;
  r.terms_.reserve(terms_.size() + o.terms_.size());
  auto a = terms_.begin(), b = o.terms_.begin();
  while (a != terms_.end() && b != o.terms_.end()) {
    if (a->first < b->first) {
      r.terms_.push_back(*a++);
    } else if (b->first < a->first) {
      r.terms_.push_back(*b++);
    } else {
      Rational c = a->second + b->second;
      if (c != 0) r.terms_.emplace_back(a->first, std::move(c));
      ++a;
      ++b;
    }
  }
  r.terms_.insert(r.terms_.end(), a, terms_.end());
  r.terms_.insert(r.terms_.end(), b, o.terms_.end());
  return r;
}

Poly Poly::operator-() const {
  Poly r = *this;
  for (auto& t : r.terms_) t.second = -t.second;
  return r;
}

Poly Poly::operator-(const Poly& o) const { return *this + (-o); }

Poly Poly::operator*(const Poly& o) const {
  if (terms_.empty() || o.terms_.empty()) return {};
  if (o.terms_.size() == 1) return times(o.terms_[0].first).scaled(o.terms_[0].second);
  if (terms_.size() == 1) return o.times(terms_[0].first).scaled(terms_[0].second);
  std::map<Monomial, Rational> acc;
  for (const auto& [m1, c1] : terms_)
    for (const auto& [m2, c2] : o.terms_) acc[m1 * m2] += c1 * c2;
  Poly r;
  for (auto& [m, c] : acc)
    if (c != 0) r.terms_.emplace_back(m, std::move(c));
  return r;
}

Poly Poly::scaled(const Rational& c) const {
  if (c == 0) return {};
  Poly r = *this;
  if (c != 1)
    for (auto& t : r.terms_) t.second *= c;
  return r;
}

Poly Poly::times(Monomial m) const {
  Poly r = *this;
  // Multiplying by a monomial can reorder packed keys only if a carry
  // occurs, which the 8-bit exponent bound rules out; the order of sums of
  // packed keys is preserved.
  for (auto& t : r.terms_) t.first = t.first * m;
  return r;
}

void Poly::add_term(Monomial m, const Rational& c) { *this = *this + term(m, c); }

std::string Poly::to_string(int nvars, const std::vector<std::string>& names) const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [m, c] = *it;
    Rational mag = abs(c);
    os << (c < 0 ? (first ? "-" : " - ") : (first ? "" : " + "));
    if (m.is_one()) {
      os << mag.get_str();
    } else {
      if (mag != 1) os << mag.get_str() << '*';
      os << m.to_string(nvars, names);
    }
    first = false;
  }
  return os.str();
}

PolyMatrix PolyMatrix::identity(int n) { return scalar(n, Poly(1)); }

PolyMatrix PolyMatrix::scalar(int n, const Poly& p) {
  PolyMatrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = p;
  return m;
}

bool PolyMatrix::is_zero() const {
  for (const auto& p : data_)
    if (!p.is_zero()) return false;
  return true;
}

bool PolyMatrix::is_scalar_identity(Rational& lambda) const {
  if (rows_ != cols_) return false;
  if (rows_ == 0) {
    lambda = 1;
    return true;
  }
  const Poly& d = (*this)(0, 0);
  if (!d.is_constant()) return false;
  for (int r = 0; r < rows_; ++r)
    for (int c = 0; c < cols_; ++c)
      if (!(r == c ? (*this)(r, c) == d : (*this)(r, c).is_zero())) return false;
  lambda = d.constant_term();
  return true;
}

PolyMatrix PolyMatrix::operator+(const PolyMatrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw Error("matrix shape mismatch in +");
  PolyMatrix r = *this;
  for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] += o.data_[i];
  return r;
}

PolyMatrix PolyMatrix::operator-(const PolyMatrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw Error("matrix shape mismatch in -");
  PolyMatrix r = *this;
  for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] -= o.data_[i];
  return r;
}

PolyMatrix PolyMatrix::operator-() const {
  PolyMatrix r = *this;
  for (auto& p : r.data_) p = -p;
  return r;
}

PolyMatrix PolyMatrix::operator*(const PolyMatrix& o) const {
  if (cols_ != o.rows_) throw Error("matrix shape mismatch in *");
  PolyMatrix r(rows_, o.cols_);
  for (int i = 0; i < rows_; ++i)
    for (int k = 0; k < cols_; ++k) {
      const Poly& a = (*this)(i, k);
      if (a.is_zero()) continue;
      for (int j = 0; j < o.cols_; ++j) {
        const Poly& b = o(k, j);
        if (!b.is_zero()) r(i, j) += a * b;
      }
    }
  return r;
}

PolyMatrix PolyMatrix::scaled(const Rational& c) const {
  PolyMatrix r = *this;
  for (auto& p : r.data_) p = p.scaled(c);
  return r;
}

PolyMatrix PolyMatrix::times_poly(const Poly& p) const {
  PolyMatrix r = *this;
  for (auto& x : r.data_) x = x * p;
  return r;
}

PolyMatrix PolyMatrix::block(int r0, int c0, int nr, int nc) const {
  PolyMatrix b(nr, nc);
  for (int r = 0; r < nr; ++r)
    for (int c = 0; c < nc; ++c) b(r, c) = (*this)(r0 + r, c0 + c);
  return b;
}

void PolyMatrix::set_block(int r0, int c0, const PolyMatrix& b) {
  for (int r = 0; r < b.rows(); ++r)
    for (int c = 0; c < b.cols(); ++c) (*this)(r0 + r, c0 + c) = b(r, c);
}

std::string PolyMatrix::to_string(int nvars) const {
  std::ostringstream os;
  os << '[';
  for (int r = 0; r < rows_; ++r) {
    os << (r ? "; " : "") << '[';
    for (int c = 0; c < cols_; ++c) os << (c ? ", " : "") << (*this)(r, c).to_string(nvars);
    os << ']';
  }
  os << ']';
  return os.str();
}

MatrixEvaluator::MatrixEvaluator(std::vector<PolyMatrix> mats) : mats_(std::move(mats)) {
  dim_ = mats_.empty() ? 0 : mats_[0].rows();
}

const PolyMatrix& MatrixEvaluator::power(Monomial m) {
  auto it = cache_.find(m.bits());
  if (it != cache_.end()) return it->second;
  PolyMatrix result;
  if (m.is_one()) {
    result = PolyMatrix::identity(dim_);
  } else {
    int var = 0;
    while (m.exponent(var) == 0) ++var;
    const Monomial rest = m / Monomial::var(var);
    result = power(rest) * mats_.at(var);
  }
  return cache_.emplace(m.bits(), std::move(result)).first->second;
}

PolyMatrix MatrixEvaluator::eval(const Poly& p) {
  PolyMatrix out(dim_, dim_);
  for (const auto& [m, c] : p.terms()) out = out + power(m).scaled(c);
  return out;
}

}  // namespace khr
