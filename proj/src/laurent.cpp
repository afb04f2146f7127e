#include "khr/laurent.hpp"

#include <sstream>

#include "khr/braid.hpp"

namespace khr {

UniPoly::UniPoly(const Rational& c) {
  if (c != 0) coeffs_.push_back(c);
}

UniPoly UniPoly::monomial(const Rational& c, int exponent) {
  UniPoly p;
  if (c == 0) return p;
  p.coeffs_.assign(exponent + 1, Rational(0));
  p.coeffs_[exponent] = c;
  return p;
}

void UniPoly::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

int UniPoly::valuation() const {
  for (std::size_t i = 0; i < coeffs_.size(); ++i)
    if (coeffs_[i] != 0) return static_cast<int>(i);
  return 0;
}

Rational UniPoly::coeff(int i) const {
  if (i < 0 || i >= static_cast<int>(coeffs_.size())) return 0;
  return coeffs_[i];
}

UniPoly UniPoly::operator+(const UniPoly& o) const {
  UniPoly r = coeffs_.size() >= o.coeffs_.size() ? *this : o;
  const UniPoly& s = coeffs_.size() >= o.coeffs_.size() ? o : *this;
  for (std::size_t i = 0; i < s.coeffs_.size(); ++i) r.coeffs_[i] += s.coeffs_[i];
  r.trim();
  return r;
}

UniPoly UniPoly::operator-() const {
  UniPoly r = *this;
  for (auto& c : r.coeffs_) c = -c;
  return r;
}

UniPoly UniPoly::operator-(const UniPoly& o) const { return *this + (-o); }

UniPoly UniPoly::operator*(const UniPoly& o) const {
  UniPoly r;
  if (is_zero() || o.is_zero()) return r;
  r.coeffs_.assign(coeffs_.size() + o.coeffs_.size() - 1, Rational(0));
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i] == 0) continue;
    for (std::size_t j = 0; j < o.coeffs_.size(); ++j) r.coeffs_[i + j] += coeffs_[i] * o.coeffs_[j];
  }
  r.trim();
  return r;
}

UniPoly UniPoly::scaled(const Rational& c) const {
  if (c == 0) return {};
  UniPoly r = *this;
  for (auto& x : r.coeffs_) x *= c;
  return r;
}

UniPoly UniPoly::shifted(int k) const {
  if (is_zero()) return {};
  UniPoly r;
  r.coeffs_.assign(k, Rational(0));
  r.coeffs_.insert(r.coeffs_.end(), coeffs_.begin(), coeffs_.end());
  return r;
}

UniPoly UniPoly::divmod(const UniPoly& d, UniPoly& rem) const {
  if (d.is_zero()) throw Error("polynomial division by zero");
  rem = *this;
  UniPoly q;
  if (degree() < d.degree()) return q;
  q.coeffs_.assign(degree() - d.degree() + 1, Rational(0));
  const Rational lead_inv = 1 / d.leading();
  while (!rem.is_zero() && rem.degree() >= d.degree()) {
    const int shift = rem.degree() - d.degree();
    const Rational c = rem.leading() * lead_inv;
    q.coeffs_[shift] = c;
    for (int i = 0; i <= d.degree(); ++i) rem.coeffs_[i + shift] -= c * d.coeffs_[i];
    rem.trim();
  }
  q.trim();
  return q;
}

UniPoly UniPoly::monic() const {
  if (is_zero()) return {};
  return scaled(1 / leading());
}

std::string UniPoly::to_string(const std::string& var) const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = degree(); i >= 0; --i) {
    const Rational& c = coeffs_[i];
    if (c == 0) continue;
    Rational mag = abs(c);
    os << (c < 0 ? (first ? "-" : " - ") : (first ? "" : " + "));
    if (i == 0 || mag != 1) os << mag.get_str();
    if (i > 0) {
      if (mag != 1) os << '*';
      os << var;
      if (i > 1) os << '^' << i;
    }
    first = false;
  }
  return os.str();
}

UniPoly gcd(UniPoly a, UniPoly b) {
  while (!b.is_zero()) {
    UniPoly r;
    a.divmod(b, r);
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

RatFunc::RatFunc(UniPoly num, UniPoly den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw Error("rational function with zero denominator");
  normalize();
}

RatFunc RatFunc::monomial(const Rational& c, int k) {
  if (k >= 0) return RatFunc(UniPoly::monomial(c, k), UniPoly(1));
  return RatFunc(UniPoly(c), UniPoly::monomial(1, -k));
}

void RatFunc::normalize() {
  if (num_.is_zero()) {
    den_ = UniPoly(1);
    return;
  }
  if (den_.degree() > 0) {
    // Cheap path: strip common powers of v before the general gcd.
    const int common = std::min(num_.valuation(), den_.valuation());
    if (common > 0) {
      UniPoly r;
      num_ = num_.divmod(UniPoly::monomial(1, common), r);
      den_ = den_.divmod(UniPoly::monomial(1, common), r);
    }
    UniPoly g = gcd(num_, den_);
    if (g.degree() > 0) {
      UniPoly r;
      num_ = num_.divmod(g, r);
      den_ = den_.divmod(g, r);
    }
  }
  const Rational lead = den_.leading();
  if (lead != 1) {
    num_ = num_.scaled(1 / lead);
    den_ = den_.scaled(1 / lead);
  }
}

RatFunc RatFunc::operator+(const RatFunc& o) const {
  if (is_zero()) return o;
  if (o.is_zero()) return *this;
  if (den_ == o.den_) return RatFunc(num_ + o.num_, den_);
  return RatFunc(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

RatFunc RatFunc::operator-() const {
  RatFunc r = *this;
  r.num_ = -r.num_;
  return r;
}

RatFunc RatFunc::operator-(const RatFunc& o) const { return *this + (-o); }

RatFunc RatFunc::operator*(const RatFunc& o) const {
  if (is_zero() || o.is_zero()) return {};
  if (den_.degree() == 0 && o.den_.degree() == 0) {
    RatFunc r;
    r.num_ = num_ * o.num_;
    return r;
  }
  return RatFunc(num_ * o.num_, den_ * o.den_);
}

RatFunc RatFunc::operator/(const RatFunc& o) const {
  if (o.is_zero()) throw Error("division by zero rational function");
  return RatFunc(num_ * o.den_, den_ * o.num_);
}

RatFunc RatFunc::pow(int e) const {
  if (e < 0) return RatFunc(1) / pow(-e);
  RatFunc r(1), b = *this;
  while (e) {
    if (e & 1) r *= b;
    b *= b;
    e >>= 1;
  }
  return r;
}

std::map<int, Rational> RatFunc::series(int max_order) const {
  std::map<int, Rational> out;
  if (is_zero()) return out;
  const int dv = den_.valuation();
  const int nv = num_.valuation();
  // num/den = v^(nv-dv) * N(v)/D(v) with N(0), D(0) nonzero.
  const int start = nv - dv;
  const int terms = max_order - start + 1;
  if (terms <= 0) return out;
  std::vector<Rational> d(terms, Rational(0)), nn(terms, Rational(0)), s(terms, Rational(0));
  for (int i = 0; i < terms; ++i) {
    d[i] = den_.coeff(i + dv);
    nn[i] = num_.coeff(i + nv);
  }
  const Rational d0_inv = 1 / d[0];
  for (int i = 0; i < terms; ++i) {
    Rational acc = nn[i];
    for (int j = 1; j <= i; ++j) acc -= d[j] * s[i - j];
    s[i] = acc * d0_inv;
    if (s[i] != 0) out[start + i] = s[i];
  }
  return out;
}

std::string RatFunc::to_string() const {
  if (den_ == UniPoly(1)) return num_.to_string();
  return "(" + num_.to_string() + ")/(" + den_.to_string() + ")";
}

LaurentScalar::LaurentScalar(const RatFunc& c) {
  if (!c.is_zero()) terms_[0] = c;
}

LaurentScalar LaurentScalar::a_power(int k, const RatFunc& c) {
  LaurentScalar s;
  if (!c.is_zero()) s.terms_[k] = c;
  return s;
}

RatFunc LaurentScalar::coeff(int k) const {
  auto it = terms_.find(k);
  return it == terms_.end() ? RatFunc() : it->second;
}

int LaurentScalar::max_a_degree() const { return terms_.empty() ? 0 : terms_.rbegin()->first; }
int LaurentScalar::min_a_degree() const { return terms_.empty() ? 0 : terms_.begin()->first; }

LaurentScalar& LaurentScalar::operator+=(const LaurentScalar& o) {
  for (const auto& [k, c] : o.terms_) {
    auto it = terms_.find(k);
    if (it == terms_.end()) {
      terms_.emplace(k, c);
    } else {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }
  return *this;
}

LaurentScalar LaurentScalar::operator+(const LaurentScalar& o) const {
  LaurentScalar r = *this;
  r += o;
  return r;
}

LaurentScalar LaurentScalar::operator-() const {
  LaurentScalar r = *this;
  for (auto& [k, c] : r.terms_) c = -c;
  return r;
}

LaurentScalar LaurentScalar::operator-(const LaurentScalar& o) const { return *this + (-o); }

LaurentScalar LaurentScalar::operator*(const LaurentScalar& o) const {
  LaurentScalar r;
  for (const auto& [k1, c1] : terms_)
    for (const auto& [k2, c2] : o.terms_) r += a_power(k1 + k2, c1 * c2);
  return r;
}

LaurentScalar LaurentScalar::operator*(const RatFunc& c) const {
  LaurentScalar r;
  if (c.is_zero()) return r;
  for (const auto& [k, x] : terms_) r.terms_[k] = x * c;
  return r;
}

LaurentScalar LaurentScalar::divided(const RatFunc& c) const {
  LaurentScalar r;
  for (const auto& [k, x] : terms_) r.terms_[k] = x / c;
  return r;
}

std::string LaurentScalar::to_string(const std::string& avar) const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << '(' << c.to_string() << ')';
    if (k != 0) os << '*' << avar << (k != 1 ? "^" + std::to_string(k) : "");
  }
  return os.str();
}

}  // namespace khr
