#include "khr/hochschild.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <exception>
#include <mutex>
#include <sstream>
#include <thread>

namespace khr {

std::vector<PolyMatrix> hh_operators(const GradedBimodule& m) {
  std::vector<PolyMatrix> ops;
  for (int p = 0; p < m.n; ++p) ops.push_back(PolyMatrix::scalar(m.rank(), Poly::var(p)) - m.right[p]);
  return ops;
}

namespace {

std::vector<unsigned> subsets_of_size(int n, int k) {
  std::vector<unsigned> out;
  if (k < 0 || k > n) return out;
  for (unsigned mask = 0; mask < (1u << n); ++mask)
    if (std::popcount(mask) == k) out.push_back(mask);
  return out;
}

SparseVec from_map(const std::map<int, Rational>& acc) {
  SparseVec v;
  for (const auto& [i, c] : acc)
    if (c != 0) v.emplace_back(i, c);
  return v;
}

// Sum of coeff * column over a sparse coefficient vector.
SparseVec apply_columns(const std::vector<SparseVec>& columns, const SparseVec& v) {
  std::map<int, Rational> acc;
  for (const auto& [c, a] : v)
    for (const auto& [r, b] : columns[c]) acc[r] += a * b;
  return from_map(acc);
}

// Coefficient vectors x with sum x_l images[l] = 0.
std::vector<SparseVec> kernel_of(const std::vector<SparseVec>& images) {
  std::map<int, SparseVec> rows;
  for (std::size_t l = 0; l < images.size(); ++l)
    for (const auto& [r, c] : images[l]) rows[r].emplace_back(static_cast<int>(l), c);
  std::vector<SparseVec> eqs;
  eqs.reserve(rows.size());
  for (auto& [r, row] : rows) eqs.push_back(std::move(row));
  return sparse_kernel(eqs, static_cast<int>(images.size()));
}

struct TermInfo {
  BimodulePtr object;
  int shift;
  std::vector<PolyMatrix> ops;
  bool karoubi;
};

// Coordinates of Lambda^k (x) (C^i)_{j+2k}: one block per k-subset, inside it
// the degree pieces of the carriers of the terms.
struct Layout {
  std::vector<unsigned> subsets;
  std::map<unsigned, int> subset_index;
  std::vector<DegreePiece> pieces;
  std::vector<int> term_offset;
  int block = 0;
  int dim() const { return block * static_cast<int>(subsets.size()); }
  int offset(int si, int t) const { return si * block + term_offset[t]; }
};

class CellEngine {
 public:
  explicit CellEngine(const ChainComplex& c) : complex_(c), n_(c.strands()) {
    for (const auto& [i, ts] : c.terms()) {
      auto& v = terms_[i];
      for (const auto& t : ts) v.push_back({t.object, t.shift, hh_operators(*t.object), t.object->is_karoubi()});
    }
  }

  std::vector<int> degrees() const {
    std::vector<int> d;
    for (const auto& [i, ts] : terms_) d.push_back(i);
    return d;
  }

  // dim of the homological cohomology at each degree i of HH^k in internal degree j.
  std::map<int, long> cell(int k, int j) const {
    std::map<int, Level> levels;
    for (const auto& [i, ts] : terms_) levels[i] = level(i, k, j);
    std::map<int, long> out;
    for (const auto& [i, lv] : levels) {
      const Level* next = levels.count(i + 1) ? &levels.at(i + 1) : nullptr;
      const Level* prev = levels.count(i - 1) ? &levels.at(i - 1) : nullptr;
      long h = static_cast<long>(lv.cycles.size());
      if (h == 0) continue;
      if (next) {
        std::vector<SparseVec> joined = lv.d_cycles;
        joined.insert(joined.end(), next->boundaries.begin(), next->boundaries.end());
        h -= sparse_rank(joined) - next->boundary_rank;
      }
      std::vector<SparseVec> joined = lv.boundaries;
      if (prev) joined.insert(joined.end(), prev->d_cycles.begin(), prev->d_cycles.end());
      h -= sparse_rank(joined);
      if (h != 0) out[i] = h;
    }
    return out;
  }

  int min_generator_degree() const {
    int lo = 0;
    bool first = true;
    for (const auto& [i, ts] : terms_)
      for (const auto& t : ts)
        for (int d : t.object->degrees) {
          const int deg = d - t.shift;
          if (first || deg < lo) lo = deg;
          first = false;
        }
    return lo;
  }

 private:
  struct Level {
    std::vector<SparseVec> cycles;      // Koszul cycles in V^i_k, carrier coordinates
    std::vector<SparseVec> boundaries;  // Koszul boundaries in V^i_k
    long boundary_rank = 0;
    std::vector<SparseVec> d_cycles;    // images of cycles in V^{i+1}_k
  };

  Layout layout(int i, int k, int j) const {
    Layout l;
    l.subsets = subsets_of_size(n_, k);
    for (std::size_t s = 0; s < l.subsets.size(); ++s) l.subset_index[l.subsets[s]] = static_cast<int>(s);
    auto it = terms_.find(i);
    if (it == terms_.end()) return l;
    for (const auto& t : it->second) {
      l.term_offset.push_back(l.block);
      l.pieces.emplace_back(t.object->degrees, n_, j + 2 * k + t.shift);
      l.block += l.pieces.back().dim();
    }
    return l;
  }

  // Basis of V (image of the idempotents where present).
  std::vector<SparseVec> basis(int i, const Layout& l) const {
    std::vector<SparseVec> out;
    const auto& ts = terms_.at(i);
    for (std::size_t s = 0; s < l.subsets.size(); ++s)
      for (std::size_t t = 0; t < ts.size(); ++t) {
        const int off = l.offset(static_cast<int>(s), static_cast<int>(t));
        const DegreePiece& p = l.pieces[t];
        if (!ts[t].karoubi) {
          for (int b = 0; b < p.dim(); ++b) out.push_back({{off + b, Rational(1)}});
          continue;
        }
        std::vector<SparseVec> cols = degree_matrix_columns(ts[t].object->idempotent, p, p);
        for (int idx : independent_subset(cols)) {
          SparseVec v = cols[idx];
          for (auto& e : v) e.first += off;
          out.push_back(std::move(v));
        }
      }
    return out;
  }

  // Koszul differential V^i_k -> V^i_{k+1} on carrier coordinates.
  std::vector<SparseVec> koszul_columns(int i, const Layout& from, const Layout& to) const {
    const auto& ts = terms_.at(i);
    std::vector<SparseVec> cols(from.dim());
    for (std::size_t s = 0; s < from.subsets.size(); ++s) {
      const unsigned mask = from.subsets[s];
      for (std::size_t t = 0; t < ts.size(); ++t) {
        const DegreePiece& p = from.pieces[t];
        for (int b = 0; b < p.dim(); ++b) {
          const auto& [gen, mono] = p.basis()[b];
          std::map<int, Rational> acc;
          for (int q = 0; q < n_; ++q) {
            if (mask & (1u << q)) continue;
            const int target = to.subset_index.at(mask | (1u << q));
            const bool negative = std::popcount(mask & ((1u << q) - 1)) % 2;
            const int off = to.offset(target, static_cast<int>(t));
            for (const auto& [r, c] : apply_to_basis(ts[t].ops[q], gen, mono, to.pieces[t]))
              acc[off + r] += negative ? -c : c;
          }
          cols[from.offset(static_cast<int>(s), static_cast<int>(t)) + b] = from_map(acc);
        }
      }
    }
    return cols;
  }

  // Complex differential V^i_k -> V^{i+1}_k, identity on the exterior factor.
  std::vector<SparseVec> differential_columns(int i, const Layout& from, const Layout& to) const {
    const auto& d = complex_.differential(i);
    const auto& ts = terms_.at(i);
    std::vector<SparseVec> cols(from.dim());
    for (std::size_t s = 0; s < from.subsets.size(); ++s)
      for (std::size_t t = 0; t < ts.size(); ++t) {
        const DegreePiece& p = from.pieces[t];
        for (int b = 0; b < p.dim(); ++b) {
          const auto& [gen, mono] = p.basis()[b];
          std::map<int, Rational> acc;
          for (std::size_t t2 = 0; t2 < d.size(); ++t2) {
            if (d[t2][t].is_zero()) continue;
            const int off = to.offset(static_cast<int>(s), static_cast<int>(t2));
            for (const auto& [r, c] : apply_to_basis(d[t2][t], gen, mono, to.pieces[t2])) acc[off + r] += c;
          }
          cols[from.offset(static_cast<int>(s), static_cast<int>(t)) + b] = from_map(acc);
        }
      }
    return cols;
  }

  Level level(int i, int k, int j) const {
    Level lv;
    const Layout here = layout(i, k, j);
    if (here.dim() == 0) return lv;
    const auto base = basis(i, here);
    if (base.empty()) return lv;
    const bool unit_basis = std::all_of(terms_.at(i).begin(), terms_.at(i).end(),
                                        [](const TermInfo& t) { return !t.karoubi; });

    if (k < n_) {
      const Layout up = layout(i, k + 1, j);
      const auto dk = koszul_columns(i, here, up);
      std::vector<SparseVec> images;
      images.reserve(base.size());
      for (const auto& b : base) images.push_back(unit_basis ? dk[b[0].first] : apply_columns(dk, b));
      for (auto& c : kernel_of(images)) {
        if (unit_basis) {
          lv.cycles.push_back(std::move(c));
        } else {
          std::map<int, Rational> acc;
          for (const auto& [l, a] : c)
            for (const auto& [r, x] : base[l]) acc[r] += a * x;
          lv.cycles.push_back(from_map(acc));
        }
      }
    } else {
      lv.cycles = base;
    }

    if (k > 0) {
      const Layout down = layout(i, k - 1, j);
      if (down.dim() > 0) {
        const auto dk = koszul_columns(i, down, here);
        for (const auto& b : basis(i, down)) {
          SparseVec img = unit_basis ? dk[b[0].first] : apply_columns(dk, b);
          if (!img.empty()) lv.boundaries.push_back(std::move(img));
        }
      }
    }
    lv.boundary_rank = sparse_rank(lv.boundaries);

    if (terms_.count(i + 1) && !lv.cycles.empty()) {
      const Layout next = layout(i + 1, k, j);
      if (next.dim() > 0) {
        const auto df = differential_columns(i, here, next);
        for (const auto& z : lv.cycles) lv.d_cycles.push_back(apply_columns(df, z));
      }
    }
    return lv;
  }

  const ChainComplex& complex_;
  int n_;
  std::map<int, std::vector<TermInfo>> terms_;
};

TriGradedTable compute_table(const ChainComplex& c, int jlo, int jhi, unsigned threads) {
  TriGradedTable table;
  table.strands = c.strands();
  table.truncation = jhi;
  if (c.empty()) return table;
  CellEngine engine(c);
  const int n = c.strands();
  const int floor = engine.min_generator_degree();
  std::vector<std::pair<int, int>> cells;
  for (int k = 0; k <= n; ++k)
    for (int j = std::max(jlo, floor - 2 * k); j <= jhi; ++j) cells.emplace_back(k, j);

  std::vector<std::map<int, long>> results(cells.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::size_t idx = next++; idx < cells.size(); idx = next++) {
      try {
        results[idx] = engine.cell(cells[idx].first, cells[idx].second);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(cells.size()));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (failure) std::rethrow_exception(failure);
  for (std::size_t idx = 0; idx < cells.size(); ++idx)
    for (const auto& [i, dim] : results[idx]) table.entries[{cells[idx].first, i, cells[idx].second}] = dim;
  return table;
}

}  // namespace

long TriGradedTable::at(int k, int i, int j) const {
  auto it = entries.find({k, i, j});
  return it == entries.end() ? 0 : it->second;
}

HHDims hochschild_dims(const GradedBimodule& m, int max_degree) {
  ChainComplex c(m.n);
  c.add_term(0, ComplexTerm{make_ptr(m), 0, -1, {-1, -1}});
  const int lo = *std::min_element(m.degrees.begin(), m.degrees.end()) - 2 * m.n;
  const TriGradedTable t = compute_table(c, lo, max_degree, 1);
  HHDims out;
  for (const auto& [key, dim] : t.entries) out[{std::get<0>(key), std::get<2>(key)}] = dim;
  return out;
}

HHDims koszul_hom_dims(const BimodulePtr& m, int max_degree, int max_k) {
  const int n = m->n;
  const Catalog& cat = Catalog::get(n);
  const BimodulePtr w0 = cat.entry(cat.longest_id()).object;
  std::vector<PolyMatrix> ops;
  for (int p = 0; p < n; ++p) ops.push_back(w0->right[p] - PolyMatrix::scalar(w0->rank(), Poly::var(p)));
  const int w0_top = *std::max_element(w0->degrees.begin(), w0->degrees.end());
  const int m_low = *std::min_element(m->degrees.begin(), m->degrees.end());
  const int kmax = max_k < 0 ? n : std::min(max_k, n);

  HHDims out;
  for (int j = m_low - w0_top - 2 * n; j <= max_degree; ++j) {
    // rank of d: V_k -> V_{k+1} for k = 0..kmax.
    std::vector<long> dims(kmax + 2, 0), ranks(kmax + 2, 0);
    for (int k = 0; k <= kmax + 1 && k <= n; ++k) {
      auto h = hom(w0, m, j + 2 * k);
      dims[k] = static_cast<long>(subsets_of_size(n, k).size()) * h->dim();
    }
    for (int k = 0; k <= kmax && k < n; ++k) {
      auto h = hom(w0, m, j + 2 * k);
      if (h->dim() == 0) continue;
      auto h2 = hom(w0, m, j + 2 * k + 2);
      const auto from = subsets_of_size(n, k);
      const auto to = subsets_of_size(n, k + 1);
      std::map<unsigned, int> to_index;
      for (std::size_t s = 0; s < to.size(); ++s) to_index[to[s]] = static_cast<int>(s);
      std::vector<SparseVec> cols;
      for (unsigned mask : from)
        for (const auto& phi : h->basis()) {
          std::map<int, Rational> acc;
          for (int q = 0; q < n; ++q) {
            if (mask & (1u << q)) continue;
            const bool negative = std::popcount(mask & ((1u << q) - 1)) % 2;
            const auto coords = h2->coordinates(phi * ops[q]);
            if (!coords) throw Error("koszul_hom_dims: composite left the hom space");
            const int off = to_index.at(mask | (1u << q)) * h2->dim();
            for (int c = 0; c < h2->dim(); ++c)
              if ((*coords)[c] != 0) acc[off + c] += negative ? -(*coords)[c] : (*coords)[c];
          }
          cols.push_back(from_map(acc));
        }
      ranks[k] = sparse_rank(cols);
    }
    for (int k = 0; k <= kmax; ++k) {
      const long h = dims[k] - ranks[k] - (k > 0 ? ranks[k - 1] : 0);
      if (h != 0) out[{k, j}] = h;
    }
  }
  return out;
}

HHAgreement hh_agreement(const BimodulePtr& m, int max_degree, int max_k) {
  const int n = m->n;
  const int l = n * (n - 1) / 2;
  const int kmax = max_k < 0 ? n : std::min(max_k, n);
  const HHDims hh = hochschild_dims(*m, max_degree);
  const HHDims kh = koszul_hom_dims(m, max_degree + l, kmax);
  HHAgreement out;
  const int lo = *std::min_element(m->degrees.begin(), m->degrees.end()) - 2 * n - 2 * l;
  for (int k = 0; k <= kmax; ++k)
    for (int j = lo; j <= max_degree; ++j) {
      auto get = [](const HHDims& d, int k2, int j2) {
        auto it = d.find({k2, j2});
        return it == d.end() ? 0L : it->second;
      };
      const long a = get(hh, k, j), b = get(kh, k, j + l);
      ++out.checked;
      if (a != b) {
        out.match = false;
        out.mismatches.push_back("k=" + std::to_string(k) + " j=" + std::to_string(j) + ": HH " + std::to_string(a) +
                                 " vs Hom(K, M) " + std::to_string(b));
      }
    }
  return out;
}

bool hh_agreement_check(const BimodulePtr& m, int max_degree) { return hh_agreement(m, max_degree).match; }

TriGradedTable hhh_of_complex(const ChainComplex& c, int truncation, unsigned threads) {
  TriGradedTable t = compute_table(c, -truncation, truncation, threads);
  t.strands = c.strands();
  t.truncation = truncation;
  return t;
}

TriGradedTable hhh(const BraidWord& b, int truncation, unsigned threads) {
  return hhh_of_complex(minimized_rouquier(b), truncation, threads);
}

BiSeries euler_bridge(const TriGradedTable& t, int sign, int shift) {
  BiSeries out;
  for (const auto& [key, dim] : t.entries) {
    const auto [k, i, j] = key;
    Rational& c = out[k][j + 2 * k + shift];
    c += Rational((i % 2 == 0 ? 1 : -1) * sign * dim);
  }
  for (auto& [k, s] : out)
    for (auto it = s.begin(); it != s.end();) it = it->second == 0 ? s.erase(it) : std::next(it);
  return out;
}

BiSeries trace_series(const LaurentScalar& tr, int max_order) {
  BiSeries out;
  for (const auto& [k, c] : tr.terms()) {
    auto s = c.series(max_order);
    for (auto it = s.begin(); it != s.end();) it = it->second == 0 ? s.erase(it) : std::next(it);
    if (!s.empty()) out[k] = std::move(s);
  }
  return out;
}

EulerComparison compare_euler(const TriGradedTable& t, const LaurentScalar& tr, int sign, int shift) {
  EulerComparison out;
  out.lo = -t.truncation + 2 * t.strands + shift;
  out.hi = t.truncation + shift;
  const BiSeries lhs = euler_bridge(t, sign, shift);
  const BiSeries rhs = trace_series(tr, out.hi);
  std::vector<int> powers;
  for (const auto& [k, s] : lhs) powers.push_back(k);
  for (const auto& [k, s] : rhs) powers.push_back(k);
  std::sort(powers.begin(), powers.end());
  powers.erase(std::unique(powers.begin(), powers.end()), powers.end());
  auto get = [](const BiSeries& b, int k, int e) {
    auto it = b.find(k);
    if (it == b.end()) return Rational(0);
    auto jt = it->second.find(e);
    return jt == it->second.end() ? Rational(0) : jt->second;
  };
  out.match = true;
  for (int k : powers)
    for (int e = out.lo; e <= out.hi; ++e) {
      const Rational a = get(lhs, k, e), b = get(rhs, k, e);
      if (a != b) {
        out.match = false;
        out.mismatches.push_back("a^" + std::to_string(k) + " v^" + std::to_string(e) + ": " + a.get_str() + " vs " +
                                 b.get_str());
      }
    }
  // Terms of the trace below the window must not exist at all.
  for (const auto& [k, s] : rhs)
    if (!s.empty() && s.begin()->first < out.lo - 2 * t.strands) {
      out.match = false;
      out.mismatches.push_back("trace has terms below the table range at a^" + std::to_string(k));
    }
  return out;
}

std::optional<std::pair<int, int>> calibrate_euler(const TriGradedTable& t, const LaurentScalar& tr) {
  for (int shift = 0; shift <= 4; ++shift)
    for (int s : {shift, -shift})
      for (int sign : {1, -1})
        if (compare_euler(t, tr, sign, s).match) return std::make_pair(sign, s);
  return std::nullopt;
}

bool tables_agree_up_to(const TriGradedTable& a, const TriGradedTable& b, const GradingShift& s) {
  auto inside = [&](int j) {
    return j >= -a.truncation && j <= a.truncation && j + s.dj >= -b.truncation && j + s.dj <= b.truncation;
  };
  for (const auto& [key, dim] : a.entries) {
    const auto [k, i, j] = key;
    if (inside(j) && b.at(k + s.dk, i + s.di, j + s.dj) != dim) return false;
  }
  for (const auto& [key, dim] : b.entries) {
    const auto [k, i, j] = key;
    if (inside(j - s.dj) && a.at(k - s.dk, i - s.di, j - s.dj) != dim) return false;
  }
  return true;
}

std::vector<GradingShift> matching_shifts(const TriGradedTable& a, const TriGradedTable& b) {
  std::vector<GradingShift> out;
  for (int dk = -1; dk <= 1; ++dk)
    for (int di = -2; di <= 2; ++di)
      for (int dj = -6; dj <= 6; ++dj)
        if (tables_agree_up_to(a, b, {dk, di, dj})) out.push_back({dk, di, dj});
  return out;
}

std::string table_to_string(const TriGradedTable& t) {
  std::ostringstream os;
  os << "k i j dim (|j| <= " << t.truncation << ")\n";
  for (const auto& [key, dim] : t.entries)
    os << std::get<0>(key) << ' ' << std::get<1>(key) << ' ' << std::get<2>(key) << ' ' << dim << '\n';
  return os.str();
}

}  // namespace khr
