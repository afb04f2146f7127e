#include "khr/linalg.hpp"

#include <algorithm>
#include <functional>
#include <cstdint>
#include <cstdlib>
#include <tuple>
#include <optional>

namespace khr {

SparseVec sparse_axpy(const SparseVec& x, const Rational& a, const SparseVec& y) {
  if (a == 0 || y.empty()) return x;
  SparseVec r;
  r.reserve(x.size() + y.size());
  auto p = x.begin(), q = y.begin();
  while (p != x.end() || q != y.end()) {
    if (q == y.end() || (p != x.end() && p->first < q->first)) {
      r.push_back(*p++);
    } else if (p == x.end() || q->first < p->first) {
      r.emplace_back(q->first, a * q->second);
      ++q;
    } else {
      Rational c = p->second + a * q->second;
      if (c != 0) r.emplace_back(p->first, std::move(c));
      ++p;
      ++q;
    }
  }
  return r;
}

SparseVec sparse_scale(const SparseVec& x, const Rational& a) {
  if (a == 0) return {};
  SparseVec r = x;
  for (auto& e : r) e.second *= a;
  return r;
}

SparseVec sparse_from_dense(const std::vector<Rational>& d) {
  SparseVec r;
  for (std::size_t i = 0; i < d.size(); ++i)
    if (d[i] != 0) r.emplace_back(static_cast<int>(i), d[i]);
  return r;
}

SparseVec EchelonBasis::reduce(SparseVec v) const {
  // Entries left of the first pivot hit never change, so they go straight out.
  std::size_t pos = 0;
  while (pos < v.size() && !rows_.count(v[pos].first)) ++pos;
  if (pos == v.size()) return v;
  SparseVec out(std::make_move_iterator(v.begin()), std::make_move_iterator(v.begin() + pos));
  std::map<int, Rational> acc;
  for (std::size_t k = pos; k < v.size(); ++k) acc.emplace_hint(acc.end(), v[k].first, std::move(v[k].second));
  Rational t;
  while (!acc.empty()) {
    auto head = acc.begin();
    auto it = rows_.find(head->first);
    if (it == rows_.end()) {
      out.emplace_back(head->first, std::move(head->second));
      acc.erase(head);
      continue;
    }
    const Rational c = -head->second;
    acc.erase(head);
    const SparseVec& row = it->second;
    for (std::size_t k = 1; k < row.size(); ++k) {
      t = c * row[k].second;
      auto [slot, fresh] = acc.try_emplace(row[k].first, t);
      if (!fresh) {
        slot->second += t;
        if (slot->second == 0) acc.erase(slot);
      }
    }
  }
  return out;
}

bool EchelonBasis::insert(SparseVec v) {
  v = reduce(std::move(v));
  if (v.empty()) return false;
  const Rational lead = v.front().second;
  if (lead != 1) v = sparse_scale(v, 1 / lead);
  rows_.emplace(v.front().first, std::move(v));
  return true;
}

void EchelonBasis::make_reduced() {
  // Process pivots right to left so each row is reduced against rows that
  // are already fully reduced.
  for (auto it = rows_.rbegin(); it != rows_.rend(); ++it) {
    SparseVec& row = it->second;
    SparseVec head{row.front()};
    SparseVec rest(row.begin() + 1, row.end());
    rest = reduce(std::move(rest));
    head.insert(head.end(), rest.begin(), rest.end());
    row = std::move(head);
  }
}

namespace {

constexpr std::uint64_t kPrime = (std::uint64_t{1} << 61) - 1;

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b) {
  const unsigned __int128 z = static_cast<unsigned __int128>(a) * b;
  std::uint64_t r = (static_cast<std::uint64_t>(z) & kPrime) + static_cast<std::uint64_t>(z >> 61);
  if (r >= kPrime) r -= kPrime;
  return r;
}

std::uint64_t add_mod(std::uint64_t a, std::uint64_t b) {
  const std::uint64_t r = a + b;
  return r >= kPrime ? r - kPrime : r;
}

std::uint64_t pow_mod(std::uint64_t a, std::uint64_t e) {
  std::uint64_t r = 1;
  for (; e; e >>= 1, a = mul_mod(a, a))
    if (e & 1) r = mul_mod(r, a);
  return r;
}

std::uint64_t mpz_mod(const mpz_class& z) {
  const std::uint64_t r = mpz_fdiv_ui(z.get_mpz_t(), static_cast<unsigned long>(kPrime));
  return r;
}

using ModVec = std::vector<std::pair<int, std::uint64_t>>;

std::optional<std::uint64_t> to_mod(const Rational& q) {
  const std::uint64_t num = mpz_mod(q.get_num());
  if (mpz_cmp_ui(q.get_den_mpz_t(), 1) == 0) return num;
  const std::uint64_t den = mpz_mod(q.get_den());
  if (den == 0) return std::nullopt;
  return mul_mod(num, pow_mod(den, kPrime - 2));
}

// Kernel basis mod p in the same normal form as over Q: one vector per free
// column with a 1 there and zeros in the other free columns.
std::optional<std::vector<ModVec>> kernel_mod_p(const std::vector<SparseVec>& rows, int cols) {
  std::vector<ModVec> pivot_rows(cols);
  std::vector<char> is_pivot(cols, 0);
  // Dense scratch row; `heap` holds the touched columns, smallest first.
  std::vector<std::uint64_t> work(cols, 0);
  std::vector<char> queued(cols, 0);
  std::vector<int> heap;
  auto push = [&](int c) {
    if (queued[c]) return;
    queued[c] = 1;
    heap.push_back(c);
    std::push_heap(heap.begin(), heap.end(), std::greater<>());
  };
  auto reduce = [&]() {
    ModVec residual;
    while (!heap.empty()) {
      std::pop_heap(heap.begin(), heap.end(), std::greater<>());
      const int col = heap.back();
      heap.pop_back();
      queued[col] = 0;
      const std::uint64_t x = work[col];
      work[col] = 0;
      if (x == 0) continue;
      if (!is_pivot[col]) {
        residual.emplace_back(col, x);
        continue;
      }
      const std::uint64_t c = kPrime - x;
      const ModVec& row = pivot_rows[col];
      for (std::size_t k = 1; k < row.size(); ++k) {
        const int t = row[k].first;
        work[t] = add_mod(work[t], mul_mod(c, row[k].second));
        push(t);
      }
    }
    return residual;
  };
  std::vector<const SparseVec*> order;
  order.reserve(rows.size());
  for (const auto& r : rows) order.push_back(&r);
  std::stable_sort(order.begin(), order.end(), [](const auto* x, const auto* y) { return x->size() < y->size(); });
  for (const SparseVec* r : order) {
    for (const auto& [k, q] : *r) {
      const auto val = to_mod(q);
      if (!val) {
        for (int c : heap) work[c] = 0, queued[c] = 0;
        return std::nullopt;
      }
      work[k] = add_mod(work[k], *val);
      push(k);
    }
    ModVec residual = reduce();
    if (residual.empty()) continue;
    const std::uint64_t inv = pow_mod(residual.front().second, kPrime - 2);
    for (auto& e : residual) e.second = mul_mod(e.second, inv);
    const int p = residual.front().first;
    is_pivot[p] = 1;
    pivot_rows[p] = std::move(residual);
  }
  // Back substitution, right to left.
  for (int p = cols - 1; p >= 0; --p) {
    if (!is_pivot[p]) continue;
    ModVec& row = pivot_rows[p];
    for (std::size_t k = 1; k < row.size(); ++k) {
      work[row[k].first] = row[k].second;
      push(row[k].first);
    }
    ModVec rest = reduce();
    row.resize(1);
    row.insert(row.end(), rest.begin(), rest.end());
  }
  std::vector<ModVec> by_free(cols);
  for (int p = 0; p < cols; ++p)
    if (is_pivot[p])
      for (std::size_t k = 1; k < pivot_rows[p].size(); ++k)
        by_free[pivot_rows[p][k].first].emplace_back(p, kPrime - pivot_rows[p][k].second);
  std::vector<ModVec> basis;
  for (int f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    ModVec v = std::move(by_free[f]);
    v.emplace_back(f, 1);
    basis.push_back(std::move(v));
  }
  return basis;
}

// In reduced echelon form every pivot lies left of the free columns in its
// row, so the free column of a kernel vector is its last entry.
int last_free(const ModVec& v) { return v.back().first; }

// The rational a/b with |a|, b <= sqrt(p/2) congruent to x, if any.
std::optional<Rational> reconstruct(std::uint64_t x) {
  const std::int64_t bound = 1518500249;  // floor(sqrt(2^60))
  std::int64_t r0 = static_cast<std::int64_t>(kPrime), r1 = static_cast<std::int64_t>(x);
  std::int64_t t0 = 0, t1 = 1;
  while (r1 > bound) {
    const std::int64_t q = r0 / r1;
    std::tie(r0, r1) = std::make_pair(r1, r0 - q * r1);
    std::tie(t0, t1) = std::make_pair(t1, t0 - q * t1);
  }
  if (t1 == 0 || std::abs(t1) > bound) return std::nullopt;
  Rational out(mpz_class(static_cast<long>(r1)), mpz_class(static_cast<long>(t1)));
  out.canonicalize();
  return out;
}

// True if every row is orthogonal to every vector.
bool annihilates(const std::vector<SparseVec>& rows, const std::vector<SparseVec>& vecs, int cols) {
  std::vector<std::vector<std::pair<int, const Rational*>>> by_col(cols);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (const auto& [c, q] : rows[i]) by_col[c].emplace_back(static_cast<int>(i), &q);
  std::vector<Rational> dot(rows.size());
  std::vector<int> touched;
  std::vector<char> mark(rows.size(), 0);
  for (const auto& v : vecs) {
    for (const auto& [c, x] : v)
      for (const auto& [i, q] : by_col[c]) {
        if (!mark[i]) {
          mark[i] = 1;
          touched.push_back(i);
        }
        dot[i] += x * *q;
      }
    bool ok = true;
    for (int i : touched) {
      ok = ok && dot[i] == 0;
      dot[i] = 0;
      mark[i] = 0;
    }
    touched.clear();
    if (!ok) return false;
  }
  return true;
}

std::vector<SparseVec> kernel_of_echelon(EchelonBasis& e, int cols) {
  e.make_reduced();
  std::vector<int> is_pivot(cols, 0);
  for (const auto& [p, row] : e.rows()) is_pivot[p] = 1;
  // Column f of the reduced matrix: which pivot rows mention it.
  std::vector<std::vector<std::pair<int, Rational>>> by_free(cols);
  for (const auto& [p, row] : e.rows())
    for (std::size_t k = 1; k < row.size(); ++k) by_free[row[k].first].emplace_back(p, row[k].second);
  std::vector<SparseVec> basis;
  for (int f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    SparseVec v;
    for (const auto& [p, c] : by_free[f]) v.emplace_back(p, -c);
    v.emplace_back(f, Rational(1));
    std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    basis.push_back(std::move(v));
  }
  return basis;
}

}  // namespace

std::vector<SparseVec> sparse_kernel(const std::vector<SparseVec>& rows, int cols, std::vector<int>* free_columns) {
  // Solve mod a large prime, lift entries by rational reconstruction and
  // check the lift exactly. Exact elimination over Q is the fallback.
  if (const auto modular = kernel_mod_p(rows, cols)) {
    std::vector<SparseVec> basis;
    bool lifted = true;
    for (const auto& mv : *modular) {
      SparseVec v;
      for (const auto& [c, x] : mv) {
        const auto q = reconstruct(x);
        if (!q) {
          lifted = false;
          break;
        }
        v.emplace_back(c, *q);
      }
      if (!lifted) break;
      basis.push_back(std::move(v));
    }
    if (lifted && annihilates(rows, basis, cols)) {
      if (free_columns) {
        free_columns->clear();
        for (const auto& mv : *modular) free_columns->push_back(last_free(mv));
      }
      return basis;
    }
  }
  EchelonBasis e;
  for (const auto& r : rows) e.insert(r);
  auto basis = kernel_of_echelon(e, cols);
  if (free_columns) {
    free_columns->clear();
    for (int f = 0; f < cols; ++f)
      if (!e.rows().count(f)) free_columns->push_back(f);
  }
  return basis;
}

std::vector<int> independent_subset(const std::vector<SparseVec>& vecs) {
  EchelonBasis e;
  std::vector<int> out;
  for (std::size_t i = 0; i < vecs.size(); ++i)
    if (e.insert(vecs[i])) out.push_back(static_cast<int>(i));
  return out;
}

int sparse_rank(const std::vector<SparseVec>& rows) {
  if (rows.size() < 2) return rows.empty() || rows[0].empty() ? 0 : 1;
  // rank = #rows - dim of the row dependencies. The dependencies come back
  // verified exactly and in normal form (hence independent), and the rank
  // mod p never exceeds the rank over Q, so the count is exact.
  std::map<int, SparseVec> by_col;
  for (std::size_t l = 0; l < rows.size(); ++l)
    for (const auto& [c, x] : rows[l]) by_col[c].emplace_back(static_cast<int>(l), x);
  std::vector<SparseVec> eqs;
  eqs.reserve(by_col.size());
  for (auto& [c, col] : by_col) eqs.push_back(std::move(col));
  return static_cast<int>(rows.size() - sparse_kernel(eqs, static_cast<int>(rows.size())).size());
}

}  // namespace khr
