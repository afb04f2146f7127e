#include "khr/hecke.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace khr {

RatFunc hecke_z() { return RatFunc::monomial(1, 1) - RatFunc::monomial(1, -1); }

HeckeElement HeckeElement::unit(int n) { return basis(Permutation::identity(n)); }

HeckeElement HeckeElement::basis(const Permutation& w, const RatFunc& c) {
  HeckeElement e(w.size());
  e.add(w, c);
  return e;
}

RatFunc HeckeElement::coeff(const Permutation& w) const {
  auto it = coords_.find(w);
  return it == coords_.end() ? RatFunc() : it->second;
}

void HeckeElement::add(const Permutation& w, const RatFunc& c) {
  if (w.size() != n_) throw Error("Hecke basis element has wrong strand count");
  if (c.is_zero()) return;
  auto it = coords_.find(w);
  if (it == coords_.end()) {
    coords_.emplace(w, c);
  } else {
    it->second += c;
    if (it->second.is_zero()) coords_.erase(it);
  }
}

HeckeElement HeckeElement::operator+(const HeckeElement& o) const {
  if (o.n_ != n_) throw Error("Hecke elements on different strand counts");
  HeckeElement r = *this;
  for (const auto& [w, c] : o.coords_) r.add(w, c);
  return r;
}

HeckeElement HeckeElement::operator-(const HeckeElement& o) const { return *this + o * RatFunc(-1); }

HeckeElement HeckeElement::operator*(const RatFunc& c) const {
  HeckeElement r(n_);
  for (const auto& [w, x] : coords_) r.add(w, x * c);
  return r;
}

HeckeElement HeckeElement::times_generator(int i) const {
  HeckeElement r(n_);
  const RatFunc z = hecke_z();
  for (const auto& [w, c] : coords_) {
    const Permutation ws = w.times_simple(i);
    if (!w.has_right_descent(i)) {
      r.add(ws, c);
    } else {
      r.add(w, c * z);
      r.add(ws, c);
    }
  }
  return r;
}

std::string HeckeElement::to_string() const {
  if (coords_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [w, c] : coords_) {
    os << (first ? "" : " + ") << '(' << c.to_string() << ")*t" << w.to_string();
    first = false;
  }
  return os.str();
}

HeckeElement hecke_multiply(const HeckeElement& x, const HeckeElement& y) {
  if (x.strands() != y.strands()) throw Error("Hecke elements on different strand counts");
  HeckeElement out(x.strands());
  for (const auto& [w, c] : y.coords()) {
    HeckeElement partial = x * c;
    for (int i : reduced_word(w)) partial = partial.times_generator(i);
    out = out + partial;
  }
  return out;
}

HeckeElement braid_to_hecke(const BraidWord& b) {
  HeckeElement x = HeckeElement::unit(b.strand_count);
  const RatFunc z = hecke_z();
  for (int l : b.letters) {
    const int i = std::abs(l);
    HeckeElement t = x.times_generator(i);
    x = l > 0 ? t : t - x * z;
  }
  return x;
}

bool TraceCache::lookup(const Permutation& w, LaurentScalar& out) const {
  std::shared_lock lock(mutex_);
  auto it = table_.find({w.size(), w});
  if (it == table_.end()) return false;
  out = it->second;
  return true;
}

void TraceCache::store(const Permutation& w, const LaurentScalar& value) {
  std::unique_lock lock(mutex_);
  table_.emplace(std::make_pair(w.size(), w), value);
}

std::size_t TraceCache::size() const {
  std::shared_lock lock(mutex_);
  return table_.size();
}

TraceCache& default_trace_cache() {
  static TraceCache cache;
  return cache;
}

LaurentScalar markov_factor() {
  const RatFunc denom = RatFunc(1) - q_pow(1);
  return (LaurentScalar(1) + LaurentScalar::a_power(1)).divided(denom);
}

namespace {

LaurentScalar trace_basis(const Permutation& w, TraceCache& cache);

LaurentScalar trace_element(const HeckeElement& x, TraceCache& cache) {
  LaurentScalar sum;
  for (const auto& [w, c] : x.coords()) sum += trace_basis(w, cache) * c;
  return sum;
}

LaurentScalar trace_basis(const Permutation& w, TraceCache& cache) {
  const int n = w.size();
  if (n == 0) return LaurentScalar(1);
  LaurentScalar cached;
  if (cache.lookup(w, cached)) return cached;

  LaurentScalar value;
  const CosetNormalForm nf = coset_normal_form(w);
  const Permutation head = nf.head.restricted();
  if (nf.tail.empty()) {
    value = markov_factor() * trace_basis(head, cache);
  } else {
    // t_w = t_u t_{n-1} t_rest; cyclicity moves t_rest to the front.
    HeckeElement y = HeckeElement::basis(head);
    for (std::size_t k = 1; k < nf.tail.size(); ++k) y = y.times_generator(nf.tail[k]);
    value = trace_element(y, cache) * RatFunc::monomial(-1, -1);
  }
  cache.store(w, value);
  return value;
}

}  // namespace

LaurentScalar ocneanu_trace(const HeckeElement& x, TraceCache& cache) {
  return trace_element(x, cache);
}

LaurentScalar trace_coefficient(const HeckeElement& x, int k) {
  return LaurentScalar(ocneanu_trace(x).coeff(k));
}

YoungDiagram::YoungDiagram(std::vector<int> r) : rows(std::move(r)) {
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i] <= 0) throw Error("Young diagram rows must be positive");
    if (i && rows[i] > rows[i - 1]) throw Error("Young diagram rows must be weakly decreasing");
  }
}

int YoungDiagram::size() const {
  int s = 0;
  for (int r : rows) s += r;
  return s;
}

std::vector<int> YoungDiagram::column_lengths() const {
  std::vector<int> cols(rows.empty() ? 0 : rows[0], 0);
  for (int r : rows)
    for (int i = 0; i < r; ++i) ++cols[i];
  return cols;
}

std::vector<std::pair<int, int>> YoungDiagram::cells() const {
  std::vector<std::pair<int, int>> out;
  for (int j = 0; j < static_cast<int>(rows.size()); ++j)
    for (int i = 0; i < rows[j]; ++i) out.emplace_back(i, j);
  return out;
}

int YoungDiagram::hook(int i, int j) const {
  const auto cols = column_lengths();
  return (rows[j] - i - 1) + (cols[i] - j - 1) + 1;
}

int YoungDiagram::n_prime() const {
  const auto cols = column_lengths();
  int s = 0;
  for (int i = 0; i < static_cast<int>(cols.size()); ++i) s += i * cols[i];
  return s;
}

std::string YoungDiagram::to_string() const {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < rows.size(); ++i) os << (i ? "," : "") << rows[i];
  os << ')';
  return os.str();
}

std::vector<YoungDiagram> partitions(int n) {
  std::vector<YoungDiagram> out;
  std::vector<int> cur;
  std::function<void(int, int)> rec = [&](int left, int maxpart) {
    if (left == 0) {
      out.emplace_back(cur);
      return;
    }
    for (int p = std::min(left, maxpart); p >= 1; --p) {
      cur.push_back(p);
      rec(left - p, p);
      cur.pop_back();
    }
  };
  if (n == 0) {
    out.emplace_back(std::vector<int>{});
    return out;
  }
  rec(n, n);
  return out;
}

LaurentScalar weight(const YoungDiagram& lambda) {
  LaurentScalar w(q_pow(lambda.n_prime()));
  for (const auto& [i, j] : lambda.cells()) {
    const int c = lambda.content(i, j);
    const int h = lambda.hook(i, j);
    LaurentScalar num = LaurentScalar(1) + LaurentScalar::a_power(1, q_pow(-c));
    w = (w * num).divided(RatFunc(1) - q_pow(h));
  }
  return w;
}

RatMatrix mat_identity(int d) {
  RatMatrix m(d, std::vector<RatFunc>(d));
  for (int i = 0; i < d; ++i) m[i][i] = RatFunc(1);
  return m;
}

RatMatrix mat_mul(const RatMatrix& a, const RatMatrix& b) {
  const std::size_t n = a.size(), k = b.size(), m = b.empty() ? 0 : b[0].size();
  RatMatrix c(n, std::vector<RatFunc>(m));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t l = 0; l < k; ++l) {
      if (a[i][l].is_zero()) continue;
      for (std::size_t j = 0; j < m; ++j)
        if (!b[l][j].is_zero()) c[i][j] += a[i][l] * b[l][j];
    }
  return c;
}

namespace {

RatMatrix mat_add(const RatMatrix& a, const RatMatrix& b) {
  RatMatrix c = a;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a[i].size(); ++j) c[i][j] += b[i][j];
  return c;
}

RatMatrix mat_scale(const RatMatrix& a, const RatFunc& s) {
  RatMatrix c = a;
  for (auto& row : c)
    for (auto& x : row) x *= s;
  return c;
}

using Tableau = std::vector<std::pair<int, int>>;

std::vector<Tableau> standard_tableaux(const YoungDiagram& lambda) {
  const int n = lambda.size();
  std::vector<Tableau> out;
  std::vector<int> filled(lambda.rows.size(), 0);
  Tableau cur;
  std::function<void()> rec = [&]() {
    if (static_cast<int>(cur.size()) == n) {
      out.push_back(cur);
      return;
    }
    for (std::size_t j = 0; j < filled.size(); ++j) {
      if (filled[j] >= lambda.rows[j]) continue;
      if (j > 0 && filled[j] >= filled[j - 1]) continue;
      cur.emplace_back(filled[j], static_cast<int>(j));
      ++filled[j];
      rec();
      --filled[j];
      cur.pop_back();
    }
  };
  rec();
  return out;
}

bool hecke_relations_hold(const std::vector<RatMatrix>& gens, int dim) {
  const RatFunc z = hecke_z();
  const RatMatrix id = mat_identity(dim);
  for (const auto& t : gens)
    if (mat_mul(t, t) != mat_add(mat_scale(t, z), id)) return false;
  for (std::size_t i = 0; i + 1 < gens.size(); ++i) {
    const auto& a = gens[i];
    const auto& b = gens[i + 1];
    if (mat_mul(mat_mul(a, b), a) != mat_mul(mat_mul(b, a), b)) return false;
  }
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (std::size_t j = i + 2; j < gens.size(); ++j)
      if (mat_mul(gens[i], gens[j]) != mat_mul(gens[j], gens[i])) return false;
  return true;
}

}  // namespace

RatMatrix SeminormalRep::represent(const HeckeElement& x) const {
  if (x.strands() != strands()) throw Error("representation and element on different strand counts");
  const int d = dimension();
  RatMatrix out(d, std::vector<RatFunc>(d));
  for (const auto& [w, c] : x.coords()) {
    RatMatrix m = mat_identity(d);
    for (int i : reduced_word(w)) m = mat_mul(m, generators[i - 1]);
    out = mat_add(out, mat_scale(m, c));
  }
  return out;
}

SeminormalRep build_seminormal(const YoungDiagram& lambda) {
  SeminormalRep rep{lambda, standard_tableaux(lambda), {}};
  const int n = lambda.size();
  const int d = rep.dimension();
  const RatFunc z = hecke_z();
  auto index_of = [&](const Tableau& t) {
    auto it = std::find(rep.basis.begin(), rep.basis.end(), t);
    return it == rep.basis.end() ? -1 : static_cast<int>(it - rep.basis.begin());
  };
  auto diag = [&](int axial) {
    // (v - v^-1) / (1 - q^{-axial})
    return z / (RatFunc(1) - q_pow(-axial));
  };
  for (int i = 1; i < n; ++i) {
    RatMatrix t(d, std::vector<RatFunc>(d));
    for (int col = 0; col < d; ++col) {
      const Tableau& tab = rep.basis[col];
      const auto [ci, ri] = tab[i - 1];
      const auto [cj, rj] = tab[i];
      const int axial = (cj - rj) - (ci - ri);
      t[col][col] = diag(axial);
      if (ri == rj || ci == cj) continue;
      Tableau swapped = tab;
      std::swap(swapped[i - 1], swapped[i]);
      const int row = index_of(swapped);
      if (row < 0) throw Error("seminormal construction: swapped tableau not standard");
      // Entry i+1 in a lower row than i: coefficient 1; otherwise the
      // complementary factor so that the 2x2 block has determinant -1.
      t[row][col] = rj > ri ? RatFunc(1) : diag(axial) * diag(-axial) + RatFunc(1);
    }
    rep.generators.push_back(std::move(t));
  }
  if (!hecke_relations_hold(rep.generators, d))
    throw Error("seminormal matrices violate the Hecke relations for " + lambda.to_string());
  return rep;
}

RatFunc character(const SeminormalRep& rep, const HeckeElement& x) {
  const RatMatrix m = rep.represent(x);
  RatFunc tr;
  for (int i = 0; i < rep.dimension(); ++i) tr += m[i][i];
  return tr;
}

bool verify_weight_decomposition(int n) {
  std::vector<std::pair<LaurentScalar, SeminormalRep>> parts;
  for (const auto& lambda : partitions(n)) parts.emplace_back(weight(lambda), build_seminormal(lambda));
  for (const auto& w : all_permutations(n)) {
    const HeckeElement t = HeckeElement::basis(w);
    LaurentScalar rhs;
    for (const auto& [wt, rep] : parts) rhs += wt * character(rep, t);
    if (ocneanu_trace(t) != rhs) return false;
  }
  return true;
}

std::vector<HeckeElement> jucys_murphy_inverses(int n) {
  std::vector<HeckeElement> out;
  for (int k = 0; k < n; ++k) out.push_back(braid_to_hecke(jucys_murphy_braid(k, n).inverse()));
  return out;
}

HeckeElement elementary_jm(int n, int k) {
  const auto inv = jucys_murphy_inverses(n);
  // e_k via the recursion e_k(x_1..x_m) = e_k(x_1..x_{m-1}) + x_m e_{k-1}(...)
  std::vector<HeckeElement> e(k + 1, HeckeElement(n));
  e[0] = HeckeElement::unit(n);
  for (int m = 0; m < n; ++m)
    for (int j = std::min(k, m + 1); j >= 1; --j) e[j] = e[j] + hecke_multiply(e[j - 1], inv[m]);
  return e[k];
}

bool jm_elementary_identity(const HeckeElement& x, int k) {
  const int n = x.strands();
  if (k < 0) return false;
  const RatFunc lhs = ocneanu_trace(x).coeff(k);
  if (k > n) return lhs.is_zero();
  const RatFunc rhs = ocneanu_trace(hecke_multiply(x, elementary_jm(n, k))).coeff(0);
  return lhs == rhs;
}

LaurentScalar divide_by_one_plus_a(const LaurentScalar& x) {
  if (x.is_zero()) return x;
  if (x.min_a_degree() < 0) throw Error("expected a polynomial in a");
  const int top = x.max_a_degree();
  if (top == 0) throw Error("trace not divisible by (1 + a)");
  // p(a) = (a + 1) q(a): q_{top-1} = p_top, q_{k-1} = p_k - q_k.
  std::vector<RatFunc> quot(top);
  quot[top - 1] = x.coeff(top);
  for (int k = top - 1; k >= 1; --k) quot[k - 1] = x.coeff(k) - quot[k];
  if (!(x.coeff(0) - quot[0]).is_zero()) throw Error("trace not divisible by (1 + a)");
  LaurentScalar q;
  for (int k = 0; k < top; ++k) q += LaurentScalar::a_power(k, quot[k]);
  return q;
}

LaurentScalar substitute_alpha(const LaurentScalar& x) {
  LaurentScalar out;
  for (const auto& [k, c] : x.terms()) out += LaurentScalar::a_power(2 * k, k % 2 ? -c : c);
  return out;
}

HomflyValue homfly(const BraidWord& b) {
  HomflyValue out;
  const int n = b.strand_count;
  out.raw = ocneanu_trace(braid_to_hecke(b));
  LaurentScalar reduced = divide_by_one_plus_a(out.raw) * (RatFunc(1) - q_pow(1));
  // (1 - q)/(1 + a) * (-v)^{n-1} * alpha^{e - n + 1}, after a = -alpha^2.
  const RatFunc sign_v = RatFunc::monomial(((n - 1) % 2) ? -1 : 1, n - 1);
  LaurentScalar alpha = substitute_alpha(reduced) * sign_v;
  out.normalized = alpha * LaurentScalar::a_power(b.writhe() - n + 1);
  return out;
}

}  // namespace khr
