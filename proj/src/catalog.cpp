#include "khr/catalog.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <set>

namespace khr {

namespace {

unsigned letters_of(const std::vector<int>& word) {
  unsigned mask = 0;
  for (int i : word) mask |= 1u << (i - 1);
  return mask;
}

// Maximal runs of consecutive letters, as (first letter, last letter).
std::vector<std::pair<int, int>> letter_blocks(unsigned mask, int n) {
  std::vector<std::pair<int, int>> blocks;
  for (int i = 1; i < n; ++i) {
    if (!(mask & (1u << (i - 1)))) continue;
    if (!blocks.empty() && blocks.back().second == i - 1) {
      blocks.back().second = i;
    } else {
      blocks.emplace_back(i, i);
    }
  }
  return blocks;
}

Permutation parabolic_longest(unsigned mask, int n) {
  std::vector<int> img(n);
  for (int k = 0; k < n; ++k) img[k] = k;
  for (auto [a, b] : letter_blocks(mask, n)) std::reverse(img.begin() + (a - 1), img.begin() + b + 1);
  return Permutation(img);
}

std::string label_of(const std::vector<int>& word) {
  if (word.empty()) return "R";
  std::string s = "B";
  for (int i : word) s += std::to_string(i);
  return s;
}

}  // namespace

std::optional<GradedBimodule> indecomposable(const Permutation& w) {
  const int n = w.size();
  const auto word = reduced_word(w);
  const unsigned mask = letters_of(word);
  std::optional<GradedBimodule> out;
  if (std::set<int>(word.begin(), word.end()).size() == word.size()) {
    out = bott_samelson(word, n);
  } else if (w == parabolic_longest(mask, n)) {
    GradedBimodule m = diagonal(n);
    for (auto [a, b] : letter_blocks(mask, n)) {
      if (a == b) {
        m = tensor(m, bott_samelson({a}, n));
      } else {
        if (n + (b - a + 2) > Monomial::kMaxVars) return std::nullopt;
        m = tensor(m, longest_block(a - 1, b - a + 2, n));
      }
    }
    out = std::move(m);
  }
  if (out) out->label = label_of(word);
  return out;
}

Catalog::Catalog(int n) : n_(n) {
  auto perms = all_permutations(n);
  std::stable_sort(perms.begin(), perms.end(),
                   [](const Permutation& a, const Permutation& b) { return a.length() < b.length(); });
  for (const auto& w : perms) {
    auto obj = indecomposable(w);
    if (!obj) continue;
    CatalogEntry e;
    e.id = static_cast<int>(entries_.size());
    e.w = w;
    e.label = obj->label;
    e.support = letters_of(reduced_word(w));
    e.object = make_ptr(std::move(*obj));
    if (w.is_identity()) unit_id_ = e.id;
    entries_.push_back(std::move(e));
  }
}

const Catalog& Catalog::get(int n) {
  static std::mutex mutex;
  static std::map<int, std::unique_ptr<Catalog>> catalogs;
  if (n < 1 || n > 6) throw Error("catalog supports 1 to 6 strands");
  std::lock_guard lock(mutex);
  auto& slot = catalogs[n];
  if (!slot) slot.reset(new Catalog(n));
  return *slot;
}

std::optional<int> Catalog::find(const Permutation& w) const {
  for (const auto& e : entries_)
    if (e.w == w) return e.id;
  return std::nullopt;
}

int Catalog::simple_id(int i) const {
  auto id = find(Permutation::simple(i, n_));
  if (!id) throw Error("catalog has no simple reflection " + std::to_string(i));
  return *id;
}

int Catalog::longest_id() const {
  auto id = find(Permutation::longest(n_));
  if (!id) throw Error("catalog has no longest element for n = " + std::to_string(n_));
  return *id;
}

namespace {

Rational pairing(const PolyMatrix& proj, const PolyMatrix& incl) {
  Rational lambda;
  const PolyMatrix p = proj * incl;
  if (p.is_zero()) return 0;
  if (!p.is_scalar_identity(lambda)) throw Error("degree-zero endomorphism of a catalog object is not scalar");
  return lambda;
}

PolyMatrix carrier_unit(const GradedBimodule& m) {
  return m.is_karoubi() ? m.idempotent : PolyMatrix::identity(m.rank());
}

}  // namespace

std::optional<Splitting> find_splitting(const BimodulePtr& z, int shift, const BimodulePtr& x) {
  const auto& h1 = hom(z, x, -shift)->basis();
  const auto& h2 = hom(x, z, shift)->basis();
  for (const auto& p : h2)
    for (const auto& i : h1) {
      const Rational lambda = pairing(p, i);
      if (lambda != 0) return Splitting{i.scaled(1 / lambda), p};
    }
  return std::nullopt;
}

Decomposition decompose(const BimodulePtr& x, unsigned support) {
  Decomposition out;
  const Catalog& cat = Catalog::get(x->n);
  GradedRank remaining = graded_rank(*x);
  PolyMatrix e = carrier_unit(*x);

  std::vector<const CatalogEntry*> order;
  for (const auto& entry : cat.entries()) order.push_back(&entry);
  std::stable_sort(order.begin(), order.end(),
                   [](const CatalogEntry* a, const CatalogEntry* b) { return a->w.length() > b->w.length(); });

  for (const CatalogEntry* entry : order) {
    if (remaining.empty()) break;
    if (entry->support & ~support) continue;
    const GradedRank gz = graded_rank(*entry->object);
    const int zlo = gz.begin()->first, zhi = gz.rbegin()->first;
    const int rlo = remaining.begin()->first, rhi = remaining.rbegin()->first;
    for (int k = zlo - rhi; k <= zhi - rlo && !remaining.empty(); ++k) {
      const GradedRank piece_rank = graded_rank_shift(gz, -k);
      if (!graded_rank_nonnegative(graded_rank_add(remaining, piece_rank, -1))) continue;
      std::vector<PolyMatrix> h1, h2;
      for (const auto& f : hom(entry->object, x, -k)->basis()) h1.push_back(e * f);
      for (const auto& f : hom(x, entry->object, k)->basis()) h2.push_back(f * e);
      const std::size_t na = h2.size(), nb = h1.size();
      std::vector<std::vector<Rational>> p(na, std::vector<Rational>(nb));
      for (std::size_t a = 0; a < na; ++a)
        for (std::size_t b = 0; b < nb; ++b) p[a][b] = pairing(h2[a], h1[b]);
      while (true) {
        std::size_t pa = na, pb = nb;
        for (std::size_t a = 0; a < na && pa == na; ++a)
          for (std::size_t b = 0; b < nb; ++b)
            if (p[a][b] != 0) {
              pa = a;
              pb = b;
              break;
            }
        if (pa == na) break;
        const Rational pivot = p[pa][pb];
        Piece piece{entry->id, k, h1[pb].scaled(1 / pivot), h2[pa]};
        e = e - piece.incl * piece.proj;
        remaining = graded_rank_add(remaining, piece_rank, -1);
        // proj * h1[b] = p[pa][b] id and h2[a] * incl = p[a][pb] / pivot id.
        for (std::size_t b = 0; b < nb; ++b)
          if (p[pa][b] != 0) h1[b] = h1[b] - piece.incl.scaled(p[pa][b]);
        for (std::size_t a = 0; a < na; ++a)
          if (p[a][pb] != 0) h2[a] = h2[a] - piece.proj.scaled(p[a][pb] / pivot);
        auto old = p;
        for (std::size_t a = 0; a < na; ++a)
          for (std::size_t b = 0; b < nb; ++b) p[a][b] = old[a][b] - old[a][pb] * old[pa][b] / pivot;
        out.pieces.push_back(std::move(piece));
        if (!graded_rank_nonnegative(graded_rank_add(remaining, piece_rank, -1))) break;
      }
    }
  }
  out.complete = remaining.empty() && e.is_zero();
  out.remainder = out.complete ? PolyMatrix(x->rank(), x->rank()) : e;
  return out;
}

namespace {

struct TensorCache {
  std::mutex mutex;
  std::map<std::tuple<int, int, int>, BimodulePtr> objects;
  std::map<std::tuple<int, int, int>, std::shared_ptr<const Decomposition>> decompositions;
};

TensorCache& tensor_cache() {
  static TensorCache cache;
  return cache;
}

}  // namespace

BimodulePtr catalog_tensor(int n, int left_id, int right_id) {
  auto& cache = tensor_cache();
  const auto key = std::make_tuple(n, left_id, right_id);
  {
    std::lock_guard lock(cache.mutex);
    auto it = cache.objects.find(key);
    if (it != cache.objects.end()) return it->second;
  }
  const Catalog& cat = Catalog::get(n);
  auto obj = make_ptr(tensor(*cat.entry(left_id).object, *cat.entry(right_id).object));
  std::lock_guard lock(cache.mutex);
  return cache.objects.emplace(key, obj).first->second;
}

const Decomposition& catalog_tensor_decomposition(int n, int left_id, int right_id) {
  auto& cache = tensor_cache();
  const auto key = std::make_tuple(n, left_id, right_id);
  {
    std::lock_guard lock(cache.mutex);
    auto it = cache.decompositions.find(key);
    if (it != cache.decompositions.end()) return *it->second;
  }
  const Catalog& cat = Catalog::get(n);
  const BimodulePtr obj = catalog_tensor(n, left_id, right_id);
  auto dec = std::make_shared<const Decomposition>(
      decompose(obj, cat.entry(left_id).support | cat.entry(right_id).support));
  std::lock_guard lock(cache.mutex);
  return *cache.decompositions.emplace(key, dec).first->second;
}

}  // namespace khr
