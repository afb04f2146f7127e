#include "khr/bimodule.hpp"

#include <algorithm>
#include <mutex>
#include <sstream>
#include <tuple>

#include "khr/braid.hpp"

namespace khr {

GradedRank graded_rank_add(const GradedRank& a, const GradedRank& b, long sign) {
  GradedRank r = a;
  for (const auto& [k, c] : b) {
    r[k] += sign * c;
    if (r[k] == 0) r.erase(k);
  }
  return r;
}

GradedRank graded_rank_mul(const GradedRank& a, const GradedRank& b) {
  GradedRank r;
  for (const auto& [i, x] : a)
    for (const auto& [j, y] : b) r[i + j] += x * y;
  std::erase_if(r, [](const auto& kv) { return kv.second == 0; });
  return r;
}

GradedRank graded_rank_shift(const GradedRank& a, int k) {
  GradedRank r;
  for (const auto& [i, x] : a) r[i + k] = x;
  return r;
}

bool graded_rank_nonnegative(const GradedRank& a) {
  return std::all_of(a.begin(), a.end(), [](const auto& kv) { return kv.second >= 0; });
}

std::string graded_rank_string(const GradedRank& a) {
  if (a.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, c] : a) {
    const long mag = c < 0 ? -c : c;
    os << (c < 0 ? (first ? "-" : " - ") : (first ? "" : " + "));
    first = false;
    if (k == 0) {
      os << mag;
      continue;
    }
    if (mag != 1) os << mag << '*';
    os << 'v';
    if (k != 1) os << '^' << k;
  }
  return os.str();
}

namespace {

Poly x(int i) { return Poly::var(i); }

bool is_variable_scalar(const PolyMatrix& y, int j) {
  Rational unused;
  if (y.rows() != y.cols()) return false;
  for (int r = 0; r < y.rows(); ++r)
    for (int c = 0; c < y.cols(); ++c)
      if (!(r == c ? y(r, c) == x(j) : y(r, c).is_zero())) return false;
  return true;
}

std::string join_labels(const std::string& a, const std::string& b) {
  if (a == "R") return b;
  if (b == "R") return a;
  return a + b;
}

}  // namespace

GradedBimodule diagonal(int n) {
  if (n < 1 || n > Monomial::kMaxVars) throw Error("unsupported number of variables");
  GradedBimodule m;
  m.n = n;
  m.degrees = {0};
  for (int j = 0; j < n; ++j) m.right.push_back(PolyMatrix::scalar(1, x(j)));
  m.label = "R";
  return m;
}

namespace {

GradedBimodule generator_bimodule(int i, int n) {
  if (i < 1 || i >= n) throw Error("reflection index out of range: " + std::to_string(i));
  GradedBimodule m;
  m.n = n;
  m.degrees = {-1, 1};
  const Poly e = x(i - 1) + x(i), p = x(i - 1) * x(i);
  PolyMatrix yi1(2, 2);
  yi1(1, 0) = 1;
  yi1(0, 1) = -p;
  yi1(1, 1) = e;
  for (int j = 0; j < n; ++j) {
    if (j == i) {
      m.right.push_back(yi1);
    } else if (j == i - 1) {
      m.right.push_back(PolyMatrix::scalar(2, e) - yi1);
    } else {
      m.right.push_back(PolyMatrix::scalar(2, x(j)));
    }
  }
  m.label = "B" + std::to_string(i);
  return m;
}

}  // namespace

GradedBimodule bott_samelson(const std::vector<int>& word, int n) {
  GradedBimodule m = diagonal(n);
  for (int i : word) m = tensor(m, generator_bimodule(i, n));
  return m;
}

GradedBimodule shift(const GradedBimodule& m, int r) {
  GradedBimodule s = m;
  for (int& d : s.degrees) d -= r;
  return s;
}

PolyMatrix tensor_with_identity(const PolyMatrix& f, int rank_n) {
  PolyMatrix out(f.rows() * rank_n, f.cols() * rank_n);
  for (int d = 0; d < f.rows(); ++d)
    for (int a = 0; a < f.cols(); ++a) {
      if (f(d, a).is_zero()) continue;
      for (int b = 0; b < rank_n; ++b) out(d * rank_n + b, a * rank_n + b) = f(d, a);
    }
  return out;
}

PolyMatrix tensor_maps(const PolyMatrix& f, const GradedBimodule& f_target, const PolyMatrix& g) {
  const int mt = f.rows(), ms = f.cols(), nt = g.rows(), ns = g.cols();
  if (f_target.rank() != mt) throw Error("tensor_maps: target rank mismatch");
  PolyMatrix out(mt * nt, ms * ns);
  MatrixEvaluator ev(f_target.right);
  for (int bt = 0; bt < nt; ++bt)
    for (int bs = 0; bs < ns; ++bs) {
      if (g(bt, bs).is_zero()) continue;
      const PolyMatrix block = ev.eval(g(bt, bs)) * f;
      for (int d = 0; d < mt; ++d)
        for (int a = 0; a < ms; ++a)
          if (!block(d, a).is_zero()) out(d * nt + bt, a * ns + bs) = block(d, a);
    }
  return out;
}

PolyMatrix identity_tensor(const GradedBimodule& m, const PolyMatrix& g) {
  return tensor_maps(PolyMatrix::identity(m.rank()), m, g);
}

GradedBimodule tensor(const GradedBimodule& m, const GradedBimodule& n) {
  if (m.n != n.n) throw Error("tensor: ring mismatch");
  GradedBimodule t;
  t.n = m.n;
  for (int a : m.degrees)
    for (int b : n.degrees) t.degrees.push_back(a + b);
  for (int j = 0; j < m.n; ++j) t.right.push_back(identity_tensor(m, n.right[j]));
  if (m.is_karoubi() || n.is_karoubi()) {
    const PolyMatrix em = m.is_karoubi() ? m.idempotent : PolyMatrix::identity(m.rank());
    const PolyMatrix en = n.is_karoubi() ? n.idempotent : PolyMatrix::identity(n.rank());
    t.idempotent = tensor_maps(em, m, en);
  }
  t.label = join_labels(m.label, n.label);
  return t;
}

BimoduleMap multiplication_map(int i, int n) {
  BimoduleMap f;
  f.source = make_ptr(generator_bimodule(i, n));
  f.target = make_ptr(shift(diagonal(n), 1));
  f.degree = 0;
  f.matrix = PolyMatrix(1, 2);
  f.matrix(0, 0) = 1;
  f.matrix(0, 1) = x(i);
  return f;
}

BimoduleMap split_map(int i, int n) {
  BimoduleMap f;
  f.source = make_ptr(shift(diagonal(n), -1));
  f.target = make_ptr(generator_bimodule(i, n));
  f.degree = 0;
  f.matrix = PolyMatrix(2, 1);
  f.matrix(0, 0) = x(i - 1);
  f.matrix(1, 0) = -1;
  return f;
}

namespace {

// Splits a monomial over n left variables followed by right variables.
std::pair<Monomial, std::vector<int>> split_monomial(Monomial m, int n, int size) {
  std::vector<int> left(n), right(size);
  for (int i = 0; i < n; ++i) left[i] = m.exponent(i);
  for (int k = 0; k < size; ++k) right[k] = m.exponent(n + k);
  return {Monomial::from_exponents(left), right};
}

}  // namespace

GradedBimodule longest_block(int first, int size, int n) {
  if (size < 1 || first < 0 || first + size > n) throw Error("longest_block: bad strand range");
  if (n + size > Monomial::kMaxVars) throw Error("longest_block: too many variables");
  if (size == 1) return diagonal(n);
  auto y = [&](int k) { return Poly::var(n + k); };

  // f_0(t) = prod (t - x_i); f_{k+1}(t) = (f_k(t) - f_k(y_k)) / (t - y_k).
  std::vector<Poly> f{Poly(1)};
  for (int i = first; i < first + size; ++i) {
    std::vector<Poly> g(f.size() + 1);
    for (std::size_t m = 0; m < f.size(); ++m) {
      g[m + 1] += f[m];
      g[m] -= f[m] * x(i);
    }
    f = std::move(g);
  }
  // replacement[k] = y_k^{size-k} - f_k(y_k), of lower degree in y_k.
  std::vector<Poly> replacement(size);
  for (int k = 0; k < size; ++k) {
    Poly value;
    Poly power(1);
    for (std::size_t m = 0; m < f.size(); ++m) {
      value += f[m] * power;
      power = power * y(k);
    }
    replacement[k] = Poly::term(Monomial::var(n + k, size - k), 1) - value;
    std::vector<Poly> g(f.size() - 1);
    for (std::size_t i = 0; i + 1 < f.size(); ++i) {
      Poly ypow(1);
      for (std::size_t m = i + 1; m < f.size(); ++m) {
        g[i] += f[m] * ypow;
        ypow = ypow * y(k);
      }
    }
    f = std::move(g);
  }
  auto reduce = [&](Poly p) {
    for (int k = size - 1; k >= 0; --k) {
      const int bound = size - k;
      Poly done;
      while (!p.is_zero()) {
        Poly next;
        for (const auto& [mono, c] : p.terms()) {
          if (mono.exponent(n + k) >= bound) {
            next += replacement[k].times(mono / Monomial::var(n + k, bound)).scaled(c);
          } else {
            done += Poly::term(mono, c);
          }
        }
        p = std::move(next);
      }
      p = std::move(done);
    }
    return p;
  };

  // Artin basis y^a with a_k <= size-1-k, sorted by degree.
  std::vector<std::vector<int>> basis;
  std::vector<int> a(size, 0);
  auto rec = [&](auto& self, int k) -> void {
    if (k == size) {
      basis.push_back(a);
      return;
    }
    for (int e = 0; e <= size - 1 - k; ++e) {
      a[k] = e;
      self(self, k + 1);
    }
    a[k] = 0;
  };
  rec(rec, 0);
  std::stable_sort(basis.begin(), basis.end(), [](const auto& p, const auto& q) {
    int sp = 0, sq = 0;
    for (int e : p) sp += e;
    for (int e : q) sq += e;
    return sp < sq;
  });
  std::map<std::vector<int>, int> index;
  for (std::size_t b = 0; b < basis.size(); ++b) index[basis[b]] = static_cast<int>(b);

  const int length = size * (size - 1) / 2;
  GradedBimodule m;
  m.n = n;
  for (const auto& e : basis) {
    int s = 0;
    for (int v : e) s += v;
    m.degrees.push_back(2 * s - length);
  }
  const int rank = static_cast<int>(basis.size());
  for (int j = 0; j < n; ++j) {
    if (j < first || j >= first + size) {
      m.right.push_back(PolyMatrix::scalar(rank, x(j)));
      continue;
    }
    PolyMatrix yj(rank, rank);
    for (int c = 0; c < rank; ++c) {
      std::vector<int> ex(n + size, 0);
      for (int k = 0; k < size; ++k) ex[n + k] = basis[c][k];
      ex[n + (j - first)] += 1;
      const Poly reduced = reduce(Poly::term(Monomial::from_exponents(ex), 1));
      for (const auto& [mono, coeff] : reduced.terms()) {
        auto [left, right] = split_monomial(mono, n, size);
        auto it = index.find(right);
        if (it == index.end()) throw Error("longest_block: reduction left a non-basis monomial");
        yj(it->second, c) += Poly::term(left, coeff);
      }
    }
    m.right.push_back(std::move(yj));
  }
  m.label = "B_w0";
  return m;
}

GradedBimodule b_w0(int n) { return longest_block(0, n, n); }

int max_entry_degree(const PolyMatrix& m) {
  int d = -1;
  for (int r = 0; r < m.rows(); ++r)
    for (int c = 0; c < m.cols(); ++c) d = std::max(d, m(r, c).degree());
  return d;
}

bool right_actions_commute(const GradedBimodule& m) {
  for (int i = 0; i < m.n; ++i)
    for (int j = i + 1; j < m.n; ++j)
      if (!(m.right[i] * m.right[j] == m.right[j] * m.right[i])) return false;
  return true;
}

namespace {

bool matrix_homogeneous(const PolyMatrix& f, const std::vector<int>& src, const std::vector<int>& tgt, int degree) {
  for (int r = 0; r < f.rows(); ++r)
    for (int c = 0; c < f.cols(); ++c) {
      const Poly& p = f(r, c);
      if (p.is_zero()) continue;
      const int want = degree + src[c] - tgt[r];
      if (want < 0 || want % 2) return false;
      for (const auto& [mono, coeff] : p.terms())
        if (2 * mono.degree() != want) return false;
    }
  return true;
}

PolyMatrix carrier_identity(const GradedBimodule& m) {
  return m.is_karoubi() ? m.idempotent : PolyMatrix::identity(m.rank());
}

}  // namespace

bool entries_homogeneous(const GradedBimodule& m) {
  for (const auto& y : m.right)
    if (!matrix_homogeneous(y, m.degrees, m.degrees, 2)) return false;
  return true;
}

bool symmetric_relation_holds(const GradedBimodule& m) {
  MatrixEvaluator ev(m.right);
  const PolyMatrix e = carrier_identity(m);
  // e_k by the recursion over variables.
  std::vector<Poly> elem(m.n + 1);
  elem[0] = 1;
  for (int i = 0; i < m.n; ++i)
    for (int k = i + 1; k >= 1; --k) elem[k] += elem[k - 1] * x(i);
  for (int k = 1; k <= m.n; ++k) {
    const PolyMatrix diff = PolyMatrix::scalar(m.rank(), elem[k]) - ev.eval(elem[k]);
    if (!(e * diff).is_zero()) return false;
  }
  return true;
}

bool idempotent_valid(const GradedBimodule& m) {
  if (!m.is_karoubi()) return true;
  const PolyMatrix& e = m.idempotent;
  if (!(e * e == e)) return false;
  if (!matrix_homogeneous(e, m.degrees, m.degrees, 0)) return false;
  for (const auto& y : m.right)
    if (!(e * y == y * e)) return false;
  return true;
}

bool is_bimodule_map(const GradedBimodule& src, const GradedBimodule& tgt, const PolyMatrix& f, int degree) {
  if (f.rows() != tgt.rank() || f.cols() != src.rank()) return false;
  if (!matrix_homogeneous(f, src.degrees, tgt.degrees, degree)) return false;
  for (int j = 0; j < src.n; ++j)
    if (!(f * src.right[j] == tgt.right[j] * f)) return false;
  if (src.is_karoubi() || tgt.is_karoubi())
    if (!(carrier_identity(tgt) * f * carrier_identity(src) == f)) return false;
  return true;
}

DegreePiece::DegreePiece(const std::vector<int>& degrees, int n, int m) : n_(n) {
  for (std::size_t g = 0; g < degrees.size(); ++g) {
    const int want = m - degrees[g];
    if (want < 0 || want % 2) {
      offset_.push_back(-1);
      poly_degree_.push_back(-1);
      monomials_.push_back(nullptr);
      continue;
    }
    offset_.push_back(static_cast<int>(basis_.size()));
    poly_degree_.push_back(want / 2);
    monomials_.push_back(&monomials_of_degree(n, want / 2));
    for (const auto& mono : *monomials_.back()) basis_.emplace_back(static_cast<int>(g), mono);
  }
}

int DegreePiece::index(int gen, Monomial mono) const {
  if (gen < 0 || gen >= static_cast<int>(offset_.size()) || offset_[gen] < 0) return -1;
  if (mono.degree() != poly_degree_[gen]) return -1;
  const auto& ms = *monomials_[gen];
  auto it = std::lower_bound(ms.begin(), ms.end(), mono);
  if (it == ms.end() || !(*it == mono)) return -1;
  return offset_[gen] + static_cast<int>(it - ms.begin());
}

SparseVec DegreePiece::vectorize(const std::vector<Poly>& column) const {
  SparseVec v;
  for (std::size_t g = 0; g < column.size(); ++g)
    for (const auto& [mono, c] : column[g].terms()) {
      const int idx = index(static_cast<int>(g), mono);
      if (idx < 0) throw Error("vector is not homogeneous of the expected degree");
      v.emplace_back(idx, c);
    }
  std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  return v;
}

SparseVec apply_to_basis(const PolyMatrix& f, int gen, Monomial mono, const DegreePiece& to) {
  std::map<int, Rational> acc;
  for (int r = 0; r < f.rows(); ++r) {
    const Poly& p = f(r, gen);
    for (const auto& [m, c] : p.terms()) {
      const int idx = to.index(r, m * mono);
      if (idx < 0) throw Error("map does not respect the grading");
      acc[idx] += c;
    }
  }
  SparseVec v;
  for (auto& [i, c] : acc)
    if (c != 0) v.emplace_back(i, std::move(c));
  return v;
}

std::vector<SparseVec> degree_matrix_columns(const PolyMatrix& f, const DegreePiece& from, const DegreePiece& to) {
  std::vector<SparseVec> cols;
  cols.reserve(from.dim());
  for (const auto& [gen, mono] : from.basis()) cols.push_back(apply_to_basis(f, gen, mono, to));
  return cols;
}

namespace {

struct EquationKey {
  int var, row, col;
  std::uint64_t mono;
  friend auto operator<=>(const EquationKey&, const EquationKey&) = default;
};

}  // namespace

HomSpace::HomSpace(BimodulePtr source, BimodulePtr target, int degree)
    : source_(std::move(source)), target_(std::move(target)), degree_(degree) {
  const GradedBimodule& s = *source_;
  const GradedBimodule& t = *target_;
  if (s.n != t.n) throw Error("hom: ring mismatch");
  const int n = s.n, rs = s.rank(), rt = t.rank();
  entry_offset_.assign(rs * rt, -1);
  entry_poly_degree_.assign(rs * rt, -1);
  for (int r = 0; r < rt; ++r)
    for (int c = 0; c < rs; ++c) {
      const int want = degree + s.degrees[c] - t.degrees[r];
      if (want < 0 || want % 2) continue;
      entry_offset_[r * rs + c] = unknowns_;
      entry_poly_degree_[r * rs + c] = want / 2;
      unknowns_ += static_cast<int>(monomials_of_degree(n, want / 2).size());
    }
  if (unknowns_ == 0) return;

  std::map<EquationKey, int> eq_index;
  std::vector<std::vector<std::pair<int, Rational>>> rows;
  auto add = [&](const EquationKey& key, int unknown, const Rational& c) {
    auto [it, inserted] = eq_index.emplace(key, static_cast<int>(rows.size()));
    if (inserted) rows.emplace_back();
    rows[it->second].emplace_back(unknown, c);
  };
  for (int j = 0; j < n; ++j) {
    if (is_variable_scalar(s.right[j], j) && is_variable_scalar(t.right[j], j)) continue;
    const PolyMatrix& ys = s.right[j];
    const PolyMatrix& yt = t.right[j];
    for (int r = 0; r < rt; ++r)
      for (int c = 0; c < rs; ++c) {
        const int off = entry_offset_[r * rs + c];
        if (off < 0) continue;
        const auto& monos = monomials_of_degree(n, entry_poly_degree_[r * rs + c]);
        for (std::size_t k = 0; k < monos.size(); ++k) {
          const int u = off + static_cast<int>(k);
          // (F Y^s)(r, c2) picks up m * Y^s(c, c2).
          for (int c2 = 0; c2 < rs; ++c2)
            for (const auto& [mu, a] : ys(c, c2).terms()) add({j, r, c2, (monos[k] * mu).bits()}, u, a);
          // -(Y^t F)(r2, c) picks up Y^t(r2, r) * m.
          for (int r2 = 0; r2 < rt; ++r2)
            for (const auto& [mu, a] : yt(r2, r).terms()) add({j, r2, c, (monos[k] * mu).bits()}, u, -a);
        }
      }
  }
  // On Karoubi objects the maps are the f with e_t f e_s = f.
  const bool karoubi = s.is_karoubi() || t.is_karoubi();
  if (karoubi) {
    const PolyMatrix es = carrier_identity(s), et = carrier_identity(t);
    for (int r = 0; r < rt; ++r)
      for (int c = 0; c < rs; ++c) {
        const int off = entry_offset_[r * rs + c];
        if (off < 0) continue;
        const auto& monos = monomials_of_degree(n, entry_poly_degree_[r * rs + c]);
        for (std::size_t k = 0; k < monos.size(); ++k) {
          const int u = off + static_cast<int>(k);
          add({n, r, c, monos[k].bits()}, u, Rational(-1));
          for (int r2 = 0; r2 < rt; ++r2) {
            if (et(r2, r).is_zero()) continue;
            for (int c2 = 0; c2 < rs; ++c2) {
              if (es(c, c2).is_zero()) continue;
              for (const auto& [mu, a] : et(r2, r).terms())
                for (const auto& [nu, b] : es(c, c2).terms()) add({n, r2, c2, (mu * monos[k] * nu).bits()}, u, a * b);
            }
          }
        }
      }
  }
  std::vector<SparseVec> system;
  system.reserve(rows.size());
  for (auto& row : rows) {
    std::sort(row.begin(), row.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    SparseVec merged;
    for (auto& [u, c] : row) {
      if (!merged.empty() && merged.back().first == u) {
        merged.back().second += c;
        if (merged.back().second == 0) merged.pop_back();
      } else {
        merged.emplace_back(u, c);
      }
    }
    if (!merged.empty()) system.push_back(std::move(merged));
  }
  // Each kernel vector has a 1 in its own free column and zeros in the
  // others, so coordinates can be read off the free columns.
  vectors_ = sparse_kernel(system, unknowns_, &free_cols_);
  for (const auto& v : vectors_) {
    PolyMatrix f(rt, rs);
    // Unknown ranges are laid out in (r, c) order, so walk them together.
    int entry = 0;
    for (const auto& [u, c] : v) {
      while (!(entry_offset_[entry] >= 0 && u >= entry_offset_[entry] &&
               u < entry_offset_[entry] +
                       static_cast<int>(monomials_of_degree(n, entry_poly_degree_[entry]).size())))
        ++entry;
      const auto& monos = monomials_of_degree(n, entry_poly_degree_[entry]);
      f(entry / rs, entry % rs) += Poly::term(monos[u - entry_offset_[entry]], c);
    }
    basis_.push_back(std::move(f));
  }
}

std::optional<SparseVec> HomSpace::vectorize(const PolyMatrix& f) const {
  const int rs = source_->rank(), rt = target_->rank(), n = source_->n;
  if (f.rows() != rt || f.cols() != rs) return std::nullopt;
  SparseVec v;
  for (int r = 0; r < rt; ++r)
    for (int c = 0; c < rs; ++c) {
      const Poly& p = f(r, c);
      if (p.is_zero()) continue;
      const int off = entry_offset_[r * rs + c];
      if (off < 0) return std::nullopt;
      const auto& monos = monomials_of_degree(n, entry_poly_degree_[r * rs + c]);
      for (const auto& [mono, coeff] : p.terms()) {
        auto it = std::lower_bound(monos.begin(), monos.end(), mono);
        if (it == monos.end() || !(*it == mono)) return std::nullopt;
        v.emplace_back(off + static_cast<int>(it - monos.begin()), coeff);
      }
    }
  std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  return v;
}

std::optional<std::vector<Rational>> HomSpace::coordinates(const PolyMatrix& f, bool check) const {
  auto v = vectorize(f);
  if (!v) return std::nullopt;
  std::vector<Rational> coeffs(basis_.size(), Rational(0));
  std::map<int, Rational> at;
  for (auto& [u, c] : *v) at.emplace_hint(at.end(), u, c);
  for (std::size_t i = 0; i < basis_.size(); ++i) {
    auto it = at.find(free_cols_[i]);
    if (it != at.end()) coeffs[i] = it->second;
  }
  if (!check) return coeffs;
  for (std::size_t i = 0; i < basis_.size(); ++i) {
    if (coeffs[i] == 0) continue;
    for (const auto& [u, c] : vectors_[i]) {
      Rational& slot = at[u];
      slot -= coeffs[i] * c;
      if (slot == 0) at.erase(u);
    }
  }
  if (!at.empty()) return std::nullopt;
  return coeffs;
}

PolyMatrix HomSpace::combine(const std::vector<Rational>& coeffs) const {
  PolyMatrix f(target_->rank(), source_->rank());
  for (std::size_t i = 0; i < basis_.size() && i < coeffs.size(); ++i)
    if (coeffs[i] != 0) f = f + basis_[i].scaled(coeffs[i]);
  return f;
}

std::shared_ptr<const HomSpace> hom(const BimodulePtr& m, const BimodulePtr& n, int degree) {
  static std::mutex mutex;
  static std::map<std::tuple<const void*, const void*, int>, std::shared_ptr<const HomSpace>> cache;
  const auto key = std::make_tuple(static_cast<const void*>(m.get()), static_cast<const void*>(n.get()), degree);
  {
    std::lock_guard lock(mutex);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  auto space = std::make_shared<const HomSpace>(m, n, degree);
  std::lock_guard lock(mutex);
  return cache.emplace(key, std::move(space)).first->second;
}

std::vector<BimoduleMap> hom_space(const BimodulePtr& m, const BimodulePtr& n, int degree) {
  std::vector<BimoduleMap> out;
  for (const auto& f : hom(m, n, degree)->basis()) out.push_back({m, n, degree, f});
  return out;
}

std::vector<long> graded_dimensions(const GradedBimodule& m, int lo, int hi) {
  std::vector<long> dims;
  for (int d = lo; d <= hi; ++d) {
    DegreePiece piece(m.degrees, m.n, d);
    if (!m.is_karoubi()) {
      dims.push_back(piece.dim());
    } else {
      dims.push_back(sparse_rank(degree_matrix_columns(m.idempotent, piece, piece)));
    }
  }
  return dims;
}

GradedRank graded_rank(const GradedBimodule& m) {
  GradedRank r;
  if (!m.is_karoubi()) {
    for (int d : m.degrees) r[d] += 1;
    return r;
  }
  if (m.rank() == 0) return r;
  const int lo = *std::min_element(m.degrees.begin(), m.degrees.end());
  const int hi = *std::max_element(m.degrees.begin(), m.degrees.end());
  const auto dims = graded_dimensions(m, lo, hi);
  // The image is free, so its Hilbert series times (1 - v^2)^n is its rank.
  std::vector<long> series(dims.begin(), dims.end());
  for (int k = 0; k < m.n; ++k)
    for (int i = static_cast<int>(series.size()) - 1; i >= 2; --i) series[i] -= series[i - 2];
  for (std::size_t i = 0; i < series.size(); ++i)
    if (series[i]) r[lo + static_cast<int>(i)] = series[i];
  return r;
}

std::pair<GradedBimodule, GradedBimodule> split_summand(const GradedBimodule& m, const PolyMatrix& incl,
                                                        const PolyMatrix& proj) {
  Rational lambda;
  const PolyMatrix pi = proj * incl;
  if (!pi.is_scalar_identity(lambda) || lambda == 0)
    throw Error("split_summand: proj * incl is not a nonzero multiple of the identity");
  const PolyMatrix e = (incl * proj).scaled(1 / lambda);
  const PolyMatrix whole = carrier_identity(m);
  GradedBimodule summand = m, complement = m;
  if (!(e == PolyMatrix::identity(m.rank()) && !m.is_karoubi())) summand.idempotent = e;
  complement.idempotent = whole - e;
  summand.label = m.label + "/summand";
  complement.label = m.label + "/complement";
  return {summand, complement};
}

}  // namespace khr
