#include "khr/complex.hpp"

#include <algorithm>
#include <bit>
#include <random>
#include <sstream>
#include <tuple>

namespace khr {

std::string ComplexTerm::label() const {
  std::string base = object->label.empty() ? "M" : object->label;
  if (catalog_id >= 0) base = Catalog::get(object->n).entry(catalog_id).label;
  return shift == 0 ? base : base + "(" + std::to_string(shift) + ")";
}

GradedRank ComplexTerm::graded_rank() const { return graded_rank_shift(khr::graded_rank(*object), -shift); }

const std::vector<ComplexTerm>& ChainComplex::terms_at(int i) const {
  static const std::vector<ComplexTerm> none;
  auto it = terms_.find(i);
  return it == terms_.end() ? none : it->second;
}

const BlockMatrix& ChainComplex::differential(int i) const {
  static const BlockMatrix none;
  auto it = d_.find(i);
  return it == d_.end() ? none : it->second;
}

int ChainComplex::rank_at(int i) const {
  int r = 0;
  for (const auto& t : terms_at(i)) r += t.object->rank();
  return r;
}

int ChainComplex::total_rank() const {
  int r = 0;
  for (const auto& [i, ts] : terms_) r += rank_at(i);
  return r;
}

void ChainComplex::ensure_shape(int i) {
  const auto& src = terms_at(i);
  const auto& tgt = terms_at(i + 1);
  if (src.empty() || tgt.empty()) {
    d_.erase(i);
    return;
  }
  BlockMatrix& b = d_[i];
  b.resize(tgt.size());
  for (std::size_t t = 0; t < tgt.size(); ++t) {
    b[t].resize(src.size());
    for (std::size_t s = 0; s < src.size(); ++s) {
      auto& m = b[t][s];
      if (m.rows() != tgt[t].object->rank() || m.cols() != src[s].object->rank())
        m = PolyMatrix(tgt[t].object->rank(), src[s].object->rank());
    }
  }
}

int ChainComplex::add_term(int i, ComplexTerm t) {
  if (t.object->n != n_) throw Error("complex term in the wrong ring");
  auto& ts = terms_[i];
  ts.push_back(std::move(t));
  ensure_shape(i - 1);
  ensure_shape(i);
  return static_cast<int>(ts.size()) - 1;
}

void ChainComplex::set_block(int i, int t, int s, PolyMatrix m) {
  auto& b = d_.at(i);
  auto& slot = b.at(t).at(s);
  if (m.rows() != slot.rows() || m.cols() != slot.cols()) throw Error("differential block has the wrong shape");
  slot = std::move(m);
}

void ChainComplex::normalize() {
  for (auto it = terms_.begin(); it != terms_.end();) it = it->second.empty() ? terms_.erase(it) : std::next(it);
  for (auto it = d_.begin(); it != d_.end();) {
    const int i = it->first;
    it = (terms_at(i).empty() || terms_at(i + 1).empty()) ? d_.erase(it) : std::next(it);
  }
}

void ChainComplex::cancel(int i, int s, int t) {
  BlockMatrix& d = d_.at(i);
  Rational lambda;
  if (!d[t][s].is_scalar_identity(lambda) || lambda == 0) throw Error("cancel: block is not invertible scalar");
  const Rational inv = 1 / lambda;
  const std::size_t nt = d.size(), ns = d[0].size();
  for (std::size_t t2 = 0; t2 < nt; ++t2) {
    if (static_cast<int>(t2) == t || d[t2][s].is_zero()) continue;
    const PolyMatrix left = d[t2][s].scaled(inv);
    for (std::size_t s2 = 0; s2 < ns; ++s2) {
      if (static_cast<int>(s2) == s || d[t][s2].is_zero()) continue;
      d[t2][s2] = d[t2][s2] - left * d[t][s2];
    }
  }
  d.erase(d.begin() + t);
  for (auto& row : d) row.erase(row.begin() + s);
  if (auto it = d_.find(i - 1); it != d_.end()) it->second.erase(it->second.begin() + s);
  if (auto it = d_.find(i + 1); it != d_.end())
    for (auto& row : it->second) row.erase(row.begin() + t);
  terms_[i].erase(terms_[i].begin() + s);
  terms_[i + 1].erase(terms_[i + 1].begin() + t);
  normalize();
}

PolyMatrix ChainComplex::assembled(int i) const {
  PolyMatrix out(rank_at(i + 1), rank_at(i));
  const auto& d = differential(i);
  const auto& src = terms_at(i);
  const auto& tgt = terms_at(i + 1);
  int r0 = 0;
  for (std::size_t t = 0; t < d.size(); ++t) {
    int c0 = 0;
    for (std::size_t s = 0; s < src.size(); ++s) {
      out.set_block(r0, c0, d[t][s]);
      c0 += src[s].object->rank();
    }
    r0 += tgt[t].object->rank();
  }
  return out;
}

bool ChainComplex::d_squared_zero() const {
  for (const auto& [i, d] : d_)
    if (d_.count(i + 1) && !(assembled(i + 1) * assembled(i)).is_zero()) return false;
  return true;
}

bool ChainComplex::blocks_valid() const {
  for (const auto& [i, d] : d_) {
    const auto& src = terms_at(i);
    const auto& tgt = terms_at(i + 1);
    for (std::size_t t = 0; t < tgt.size(); ++t)
      for (std::size_t s = 0; s < src.size(); ++s)
        if (!d[t][s].is_zero() &&
            !is_bimodule_map(*src[s].object, *tgt[t].object, d[t][s], tgt[t].shift - src[s].shift))
          return false;
  }
  return true;
}

GradedRank ChainComplex::euler_characteristic() const {
  GradedRank out;
  for (const auto& [i, ts] : terms_)
    for (const auto& t : ts) out = graded_rank_add(out, t.graded_rank(), i % 2 == 0 ? 1 : -1);
  return out;
}

std::string ChainComplex::describe() const {
  std::ostringstream os;
  bool first = true;
  for (const auto& [i, ts] : terms_) {
    if (!first) os << "; ";
    first = false;
    os << i << ": ";
    for (std::size_t k = 0; k < ts.size(); ++k) os << (k ? " + " : "") << ts[k].label();
  }
  if (first) os << "0";
  return os.str();
}

namespace {

ComplexTerm catalog_term(int n, int id, int shift) {
  const auto& e = Catalog::get(n).entry(id);
  return ComplexTerm{e.object, shift, id, {-1, -1}};
}

}  // namespace

ChainComplex one_term_complex(int n, const ComplexTerm& t, int degree) {
  ChainComplex c(n);
  c.add_term(degree, t);
  return c;
}

ChainComplex unit_complex(int n) { return one_term_complex(n, catalog_term(n, Catalog::get(n).unit_id(), 0)); }

ChainComplex delta_complex(int i, int n) {
  const Catalog& cat = Catalog::get(n);
  ChainComplex c(n);
  c.add_term(0, catalog_term(n, cat.simple_id(i), 0));
  c.add_term(1, catalog_term(n, cat.unit_id(), 1));
  c.set_block(0, 0, 0, multiplication_map(i, n).matrix);
  return c;
}

ChainComplex nabla_complex(int i, int n) {
  const Catalog& cat = Catalog::get(n);
  ChainComplex c(n);
  c.add_term(-1, catalog_term(n, cat.unit_id(), -1));
  c.add_term(0, catalog_term(n, cat.simple_id(i), 0));
  c.set_block(-1, 0, 0, split_map(i, n).matrix);
  return c;
}

namespace {

ComplexTerm tensor_term(int n, const ComplexTerm& a, const ComplexTerm& b) {
  const int unit = Catalog::get(n).unit_id();
  ComplexTerm t;
  t.shift = a.shift + b.shift;
  if (a.catalog_id == unit) {
    t.object = b.object;
    t.catalog_id = b.catalog_id;
    t.tensor_of = b.tensor_of;
  } else if (b.catalog_id == unit) {
    t.object = a.object;
    t.catalog_id = a.catalog_id;
    t.tensor_of = a.tensor_of;
  } else if (a.catalog_id >= 0 && b.catalog_id >= 0) {
    t.object = catalog_tensor(n, a.catalog_id, b.catalog_id);
    t.tensor_of = {a.catalog_id, b.catalog_id};
  } else {
    t.object = make_ptr(tensor(*a.object, *b.object));
  }
  return t;
}

}  // namespace

ChainComplex tensor_complex(const ChainComplex& c, const ChainComplex& d) {
  if (c.strands() != d.strands()) throw Error("tensor_complex: ring mismatch");
  const int n = c.strands();
  ChainComplex out(n);
  std::map<std::tuple<int, int, int, int>, int> pos;
  for (const auto& [i, cs] : c.terms())
    for (std::size_t a = 0; a < cs.size(); ++a)
      for (const auto& [j, ds] : d.terms())
        for (std::size_t b = 0; b < ds.size(); ++b)
          pos[{i, static_cast<int>(a), j, static_cast<int>(b)}] = out.add_term(i + j, tensor_term(n, cs[a], ds[b]));

  for (const auto& [key, idx] : pos) {
    const auto [i, a, j, b] = key;
    const auto& ca = c.terms_at(i)[a];
    const auto& db = d.terms_at(j)[b];
    const auto& dc = c.differential(i);
    for (std::size_t a2 = 0; a2 < dc.size(); ++a2) {
      if (dc[a2][a].is_zero()) continue;
      out.set_block(i + j, pos.at({i + 1, static_cast<int>(a2), j, b}), idx,
                    tensor_with_identity(dc[a2][a], db.object->rank()));
    }
    const auto& dd = d.differential(j);
    for (std::size_t b2 = 0; b2 < dd.size(); ++b2) {
      if (dd[b2][b].is_zero()) continue;
      PolyMatrix m = identity_tensor(*ca.object, dd[b2][b]);
      if (i % 2 != 0) m = -m;
      out.set_block(i + j, pos.at({i, a, j + 1, static_cast<int>(b2)}), idx, std::move(m));
    }
  }
  return out;
}

ChainComplex shift_complex(const ChainComplex& c, int h, int r) {
  ChainComplex out(c.strands());
  for (const auto& [i, ts] : c.terms())
    for (auto t : ts) {
      t.shift += r;
      out.add_term(i - h, std::move(t));
    }
  for (const auto& [i, ts] : c.terms()) {
    const auto& d = c.differential(i);
    for (std::size_t t = 0; t < d.size(); ++t)
      for (std::size_t s = 0; s < d[t].size(); ++s)
        if (!d[t][s].is_zero()) out.set_block(i - h, t, s, h % 2 ? -d[t][s] : d[t][s]);
  }
  return out;
}

namespace {

struct TermPiece {
  ComplexTerm term;
  PolyMatrix incl;
  PolyMatrix proj;
};

std::vector<TermPiece> split_term(const ComplexTerm& t) {
  const int n = t.object->n;
  if (t.catalog_id >= 0) {
    const auto id = PolyMatrix::identity(t.object->rank());
    return {{t, id, id}};
  }
  const Decomposition* dec;
  Decomposition local;
  if (t.tensor_of.first >= 0) {
    dec = &catalog_tensor_decomposition(n, t.tensor_of.first, t.tensor_of.second);
  } else {
    local = decompose(t.object);
    dec = &local;
  }
  std::vector<TermPiece> out;
  for (const auto& p : dec->pieces) out.push_back({catalog_term(n, p.id, t.shift + p.shift), p.incl, p.proj});
  if (!dec->complete) {
    GradedBimodule rest = *t.object;
    rest.idempotent = dec->remainder;
    rest.label = "[" + t.object->label + "]";
    out.push_back({ComplexTerm{make_ptr(std::move(rest)), t.shift, -1, {-1, -1}}, dec->remainder, dec->remainder});
  }
  return out;
}

}  // namespace

ChainComplex decompose_terms(const ChainComplex& c) {
  ChainComplex out(c.strands());
  std::map<int, std::vector<std::vector<TermPiece>>> pieces;
  std::map<int, std::vector<std::vector<int>>> index;
  for (const auto& [i, ts] : c.terms())
    for (const auto& t : ts) {
      auto ps = split_term(t);
      std::vector<int> idx;
      for (const auto& p : ps) idx.push_back(out.add_term(i, p.term));
      pieces[i].push_back(std::move(ps));
      index[i].push_back(std::move(idx));
    }
  for (const auto& [i, ts] : c.terms()) {
    const auto& d = c.differential(i);
    for (std::size_t t = 0; t < d.size(); ++t)
      for (std::size_t s = 0; s < d[t].size(); ++s) {
        if (d[t][s].is_zero()) continue;
        const auto& tp = pieces[i + 1][t];
        const auto& sp = pieces[i][s];
        for (std::size_t q = 0; q < tp.size(); ++q) {
          const PolyMatrix left = tp[q].proj * d[t][s];
          if (left.is_zero()) continue;
          for (std::size_t p = 0; p < sp.size(); ++p) {
            PolyMatrix m = left * sp[p].incl;
            if (!m.is_zero()) out.set_block(i, index[i + 1][t][q], index[i][s][p], std::move(m));
          }
        }
      }
  }
  return out;
}

namespace {

struct Pivot {
  int degree, s, t, weight;
};

std::optional<Pivot> find_pivot(const ChainComplex& c) {
  for (const auto& [i, ts] : c.terms()) {
    const auto& d = c.differential(i);
    const auto& tgt = c.terms_at(i + 1);
    std::optional<Pivot> best;
    for (std::size_t t = 0; t < d.size(); ++t)
      for (std::size_t s = 0; s < ts.size(); ++s) {
        const auto& a = ts[s];
        const auto& b = tgt[t];
        if (a.catalog_id < 0 || a.catalog_id != b.catalog_id || a.shift != b.shift) continue;
        Rational lambda;
        if (d[t][s].is_zero() || !d[t][s].is_scalar_identity(lambda)) continue;
        const int weight = std::popcount(Catalog::get(c.strands()).entry(a.catalog_id).support);
        if (!best || weight < best->weight)
          best = Pivot{i, static_cast<int>(s), static_cast<int>(t), weight};
      }
    if (best) return best;
  }
  return std::nullopt;
}

}  // namespace

ChainComplex gaussian_eliminate(const ChainComplex& c) {
  ChainComplex out = c;
  while (auto p = find_pivot(out)) out.cancel(p->degree, p->s, p->t);
  out.normalize();
  return out;
}

ChainComplex minimize(const ChainComplex& c) { return gaussian_eliminate(decompose_terms(c)); }

namespace {

ChainComplex letter_complex(int letter, int n) {
  return letter > 0 ? delta_complex(letter, n) : nabla_complex(-letter, n);
}

}  // namespace

ChainComplex rouquier_complex(const BraidWord& b) {
  ChainComplex c = unit_complex(b.strand_count);
  for (int letter : b.letters) c = tensor_complex(c, letter_complex(letter, b.strand_count));
  return c;
}

ChainComplex minimized_rouquier(const BraidWord& b) {
  ChainComplex c = unit_complex(b.strand_count);
  for (int letter : b.letters) c = minimize(tensor_complex(c, letter_complex(letter, b.strand_count)));
  return c;
}

PolyMatrix ChainMap::assembled(int i) const {
  PolyMatrix out(target->rank_at(i), source->rank_at(i));
  auto it = components.find(i);
  if (it == components.end()) return out;
  const auto& src = source->terms_at(i);
  const auto& tgt = target->terms_at(i);
  int r0 = 0;
  for (std::size_t t = 0; t < tgt.size(); ++t) {
    int c0 = 0;
    for (std::size_t s = 0; s < src.size(); ++s) {
      out.set_block(r0, c0, it->second[t][s]);
      c0 += src[s].object->rank();
    }
    r0 += tgt[t].object->rank();
  }
  return out;
}

ChainMap zero_chain_map(std::shared_ptr<const ChainComplex> c, std::shared_ptr<const ChainComplex> d) {
  ChainMap f{std::move(c), std::move(d), {}};
  for (const auto& [i, ss] : f.source->terms()) {
    const auto& tt = f.target->terms_at(i);
    if (tt.empty()) continue;
    BlockMatrix b(tt.size());
    for (std::size_t t = 0; t < tt.size(); ++t)
      for (const auto& s : ss) b[t].emplace_back(tt[t].object->rank(), s.object->rank());
    f.components[i] = std::move(b);
  }
  return f;
}

bool is_chain_map(const ChainMap& f) {
  const ChainComplex& c = *f.source;
  const ChainComplex& d = *f.target;
  for (const auto& [i, b] : f.components) {
    const auto& src = c.terms_at(i);
    const auto& tgt = d.terms_at(i);
    if (b.size() != tgt.size()) return false;
    for (std::size_t t = 0; t < tgt.size(); ++t) {
      if (b[t].size() != src.size()) return false;
      for (std::size_t s = 0; s < src.size(); ++s) {
        const auto& m = b[t][s];
        if (m.rows() != tgt[t].object->rank() || m.cols() != src[s].object->rank()) return false;
        if (!m.is_zero() && !is_bimodule_map(*src[s].object, *tgt[t].object, m, tgt[t].shift - src[s].shift))
          return false;
      }
    }
  }
  std::vector<int> degrees;
  for (const auto& [i, ts] : c.terms()) degrees.push_back(i);
  for (const auto& [i, ts] : d.terms()) degrees.push_back(i - 1);
  std::sort(degrees.begin(), degrees.end());
  degrees.erase(std::unique(degrees.begin(), degrees.end()), degrees.end());
  for (int i : degrees)
    if (!(d.assembled(i) * f.assembled(i) == f.assembled(i + 1) * c.assembled(i))) return false;
  return true;
}

ChainComplex cone(const ChainMap& f) {
  if (!is_chain_map(f)) throw Error("cone: not a chain map");
  const ChainComplex& c = *f.source;
  const ChainComplex& d = *f.target;
  ChainComplex out(c.strands());
  std::vector<int> degrees;
  for (const auto& [i, ts] : c.terms()) degrees.push_back(i - 1);
  for (const auto& [i, ts] : d.terms()) degrees.push_back(i);
  std::sort(degrees.begin(), degrees.end());
  degrees.erase(std::unique(degrees.begin(), degrees.end()), degrees.end());
  for (int i : degrees) {
    for (const auto& t : c.terms_at(i + 1)) out.add_term(i, t);
    for (const auto& t : d.terms_at(i)) out.add_term(i, t);
  }
  for (int i : degrees) {
    const int cs = static_cast<int>(c.terms_at(i + 1).size());
    const int ct = static_cast<int>(c.terms_at(i + 2).size());
    const auto& dc = c.differential(i + 1);
    for (std::size_t t = 0; t < dc.size(); ++t)
      for (std::size_t s = 0; s < dc[t].size(); ++s)
        if (!dc[t][s].is_zero()) out.set_block(i, t, s, -dc[t][s]);
    if (auto it = f.components.find(i + 1); it != f.components.end())
      for (std::size_t t = 0; t < it->second.size(); ++t)
        for (std::size_t s = 0; s < it->second[t].size(); ++s)
          if (!it->second[t][s].is_zero()) out.set_block(i, ct + t, s, it->second[t][s]);
    const auto& dd = d.differential(i);
    for (std::size_t t = 0; t < dd.size(); ++t)
      for (std::size_t s = 0; s < dd[t].size(); ++s)
        if (!dd[t][s].is_zero()) out.set_block(i, ct + t, cs + s, dd[t][s]);
  }
  return out;
}

namespace {

// Flattens matrix entries into equation coordinates.
class EquationIndex {
 public:
  void add(const PolyMatrix& m, int block_key, const Rational& scale, int unknown,
           std::vector<std::map<int, Rational>>& columns) {
    for (int r = 0; r < m.rows(); ++r)
      for (int c = 0; c < m.cols(); ++c)
        for (const auto& [mono, coeff] : m(r, c).terms()) {
          auto [it, fresh] = index_.try_emplace(std::make_tuple(block_key, r, c, mono.bits()),
                                                static_cast<int>(index_.size()));
          Rational& slot = columns[unknown][it->second];
          slot += coeff * scale;
        }
  }
  int size() const { return static_cast<int>(index_.size()); }

 private:
  std::map<std::tuple<int, int, int, std::uint64_t>, int> index_;
};

}  // namespace

std::vector<ChainMap> solve_chain_maps(const ChainComplex& c, const ChainComplex& d) {
  auto src = std::make_shared<const ChainComplex>(c);
  auto tgt = std::make_shared<const ChainComplex>(d);

  struct Block {
    int degree, t, s, offset;
    std::shared_ptr<const HomSpace> space;
  };
  std::vector<Block> blocks;
  std::map<std::tuple<int, int, int>, int> block_of;
  int unknowns = 0;
  for (const auto& [i, ss] : c.terms()) {
    const auto& tt = d.terms_at(i);
    for (std::size_t t = 0; t < tt.size(); ++t)
      for (std::size_t s = 0; s < ss.size(); ++s) {
        auto h = hom(ss[s].object, tt[t].object, tt[t].shift - ss[s].shift);
        if (h->dim() == 0) continue;
        block_of[{i, static_cast<int>(t), static_cast<int>(s)}] = static_cast<int>(blocks.size());
        blocks.push_back({i, static_cast<int>(t), static_cast<int>(s), unknowns, h});
        unknowns += h->dim();
      }
  }
  if (unknowns == 0) return {};

  // Equation block (i, t', s) stands for the component C^i_s -> D^{i+1}_{t'} of d f - f d.
  std::vector<std::map<int, Rational>> columns(unknowns);
  EquationIndex eqs;
  std::map<std::tuple<int, int, int>, int> eq_block;
  auto eq_key = [&](int i, int t, int s) {
    return eq_block.try_emplace({i, t, s}, static_cast<int>(eq_block.size())).first->second;
  };
  for (const auto& b : blocks) {
    const auto& dd = d.differential(b.degree);
    const auto& dc = c.differential(b.degree - 1);
    for (int k = 0; k < b.space->dim(); ++k) {
      const PolyMatrix& m = b.space->basis()[k];
      const int u = b.offset + k;
      for (std::size_t t2 = 0; t2 < dd.size(); ++t2)
        if (!dd[t2][b.t].is_zero()) eqs.add(dd[t2][b.t] * m, eq_key(b.degree, t2, b.s), 1, u, columns);
      // f^i d_C^{i-1}: contributes to equation (i-1, t, s') for s' in C^{i-1}.
      for (std::size_t s0 = 0; !dc.empty() && s0 < dc[b.s].size(); ++s0)
        if (!dc[b.s][s0].is_zero()) eqs.add(m * dc[b.s][s0], eq_key(b.degree - 1, b.t, s0), -1, u, columns);
    }
  }
  std::vector<SparseVec> rows(eqs.size());
  for (int u = 0; u < unknowns; ++u)
    for (const auto& [e, v] : columns[u])
      if (v != 0) rows[e].emplace_back(u, v);
  const auto kernel = sparse_kernel(rows, unknowns);

  std::vector<ChainMap> out;
  for (const auto& vec : kernel) {
    ChainMap f = zero_chain_map(src, tgt);
    std::vector<Rational> dense(unknowns);
    for (const auto& [k, v] : vec) dense[k] = v;
    for (const auto& b : blocks) {
      std::vector<Rational> coeffs(dense.begin() + b.offset, dense.begin() + b.offset + b.space->dim());
      f.components[b.degree][b.t][b.s] = b.space->combine(coeffs);
    }
    out.push_back(std::move(f));
  }
  return out;
}

std::map<int, std::vector<std::pair<std::string, int>>> term_signature(const ChainComplex& c) {
  std::map<int, std::vector<std::pair<std::string, int>>> out;
  for (const auto& [i, ts] : c.terms()) {
    auto& v = out[i];
    for (const auto& t : ts) v.emplace_back(t.catalog_id >= 0 ? Catalog::get(c.strands()).entry(t.catalog_id).label
                                                              : t.object->label,
                                            t.shift);
    std::sort(v.begin(), v.end());
  }
  return out;
}

bool is_minimal(const ChainComplex& c) {
  for (const auto& [i, ts] : c.terms())
    for (const auto& t : ts)
      if (t.catalog_id < 0) return false;
  return !find_pivot(c).has_value();
}

std::optional<ChainMap> find_equivalence(const ChainComplex& c, const ChainComplex& d) {
  const ChainComplex mc = minimize(c);
  const ChainComplex md = minimize(d);
  if (mc.empty() || md.empty()) {
    if (mc.empty() && md.empty())
      return zero_chain_map(std::make_shared<const ChainComplex>(mc), std::make_shared<const ChainComplex>(md));
    return std::nullopt;
  }
  if (is_minimal(mc) && is_minimal(md) && term_signature(mc) != term_signature(md)) return std::nullopt;
  const auto maps = solve_chain_maps(mc, md);
  if (maps.empty()) return std::nullopt;

  auto try_map = [](const ChainMap& f) { return minimize(cone(f)).empty(); };
  if (maps.size() == 1) return try_map(maps[0]) ? std::optional<ChainMap>(maps[0]) : std::nullopt;
  std::mt19937 rng(12345);
  std::uniform_int_distribution<int> coeff(-5, 5);
  for (int attempt = 0; attempt < 4; ++attempt) {
    ChainMap f = zero_chain_map(maps[0].source, maps[0].target);
    for (const auto& g : maps) {
      const Rational a = coeff(rng);
      if (a == 0) continue;
      for (auto& [i, blocks] : f.components)
        for (std::size_t t = 0; t < blocks.size(); ++t)
          for (std::size_t s = 0; s < blocks[t].size(); ++s)
            blocks[t][s] = blocks[t][s] + g.components.at(i)[t][s].scaled(a);
    }
    if (try_map(f)) return f;
  }
  return std::nullopt;
}

bool complexes_equivalent(const ChainComplex& c, const ChainComplex& d) { return find_equivalence(c, d).has_value(); }

ChainComplex koszul_soergel_complex(int n, bool reduced) {
  const Catalog& cat = Catalog::get(n);
  const int id = cat.longest_id();
  const auto& obj = *cat.entry(id).object;
  const int r = obj.rank();
  std::vector<PolyMatrix> ops;
  if (reduced) {
    for (int i = 0; i + 1 < n; ++i)
      ops.push_back(obj.right[i] - obj.right[i + 1] - PolyMatrix::scalar(r, Poly::var(i) - Poly::var(i + 1)));
  } else {
    for (int p = 0; p < n; ++p) ops.push_back(obj.right[p] - PolyMatrix::scalar(r, Poly::var(p)));
  }
  const int m = static_cast<int>(ops.size());

  // Subsets of {0..m-1} by size, each size in lexicographic order.
  std::vector<std::vector<unsigned>> by_size(m + 1);
  for (unsigned mask = 0; mask < (1u << m); ++mask) by_size[std::popcount(mask)].push_back(mask);
  for (auto& v : by_size)
    std::sort(v.begin(), v.end(), [](unsigned a, unsigned b) {
      for (int k = 0; k < 32; ++k) {
        const bool x = a & (1u << k), y = b & (1u << k);
        if (x != y) return x;
      }
      return false;
    });

  ChainComplex out(n);
  for (int k = m; k >= 0; --k)
    for (std::size_t s = 0; s < by_size[k].size(); ++s) out.add_term(-k, catalog_term(n, id, -2 * k));
  for (int k = m; k >= 1; --k) {
    const auto& src = by_size[k];
    const auto& tgt = by_size[k - 1];
    for (std::size_t s = 0; s < src.size(); ++s)
      for (int p = 0; p < m; ++p) {
        if (!(src[s] & (1u << p))) continue;
        const unsigned rest = src[s] & ~(1u << p);
        const int above = std::popcount(src[s] >> (p + 1));
        const auto t = std::find(tgt.begin(), tgt.end(), rest) - tgt.begin();
        out.set_block(-k, static_cast<int>(t), static_cast<int>(s), above % 2 ? -ops[p] : ops[p]);
      }
  }
  return out;
}

}  // namespace khr
