#include "khr/verify.hpp"

#include <algorithm>
#include <chrono>
#include <condition_variable>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "khr/complex.hpp"
#include "khr/hecke.hpp"

namespace khr {

namespace {

using Clock = std::chrono::steady_clock;
using ComplexPtr = std::shared_ptr<const ChainComplex>;
using Signature = std::map<int, std::vector<std::pair<std::string, int>>>;

ComplexPtr share(ChainComplex c) { return std::make_shared<const ChainComplex>(std::move(c)); }

std::string braid_name(const BraidWord& b) {
  const std::string w = b.to_string();
  return "n=" + std::to_string(b.strand_count) + " [" + w + "]";
}

// Collects checks; a thrown exception becomes a failed check.
class SuiteBuilder {
 public:
  explicit SuiteBuilder(std::string name) : start_(Clock::now()) { report_.suite = std::move(name); }

  void check(std::string name, bool passed, std::string detail = {}) {
    report_.checks.push_back({std::move(name), passed, std::move(detail)});
  }

  void guarded(const std::string& name, const std::function<void()>& body) {
    try {
      body();
    } catch (const std::exception& e) {
      check(name, false, std::string("exception: ") + e.what());
    }
  }

  SuiteReport finish() {
    report_.seconds = std::chrono::duration<double>(Clock::now() - start_).count();
    const bool ok = std::all_of(report_.checks.begin(), report_.checks.end(), [](const auto& c) { return c.passed; });
    report_.status = ok ? SuiteStatus::passed : SuiteStatus::failed;
    return std::move(report_);
  }

 private:
  SuiteReport report_;
  Clock::time_point start_;
};

std::string signature_string(const Signature& s) {
  std::ostringstream os;
  bool first = true;
  for (const auto& [i, v] : s) {
    os << (first ? "" : "; ") << i << ":";
    first = false;
    for (const auto& [label, shift] : v) os << " " << label << "(" << shift << ")";
  }
  return os.str();
}

Signature sorted(Signature s) {
  for (auto& [i, v] : s) std::sort(v.begin(), v.end());
  return s;
}

void check_signature(SuiteBuilder& out, const std::string& name, const ChainComplex& c, const Signature& want) {
  const Signature got = term_signature(c);
  out.check(name, got == sorted(want), "got " + signature_string(got) + ", want " + signature_string(sorted(want)));
}

// First basis map whose block at (degree, t, s) is nonzero.
std::optional<ChainMap> map_through(const std::vector<ChainMap>& maps, int degree, int t, int s) {
  for (const auto& f : maps) {
    auto it = f.components.find(degree);
    if (it == f.components.end()) continue;
    const BlockMatrix& b = it->second;
    if (t < 0 || t >= static_cast<int>(b.size()) || s < 0 || s >= static_cast<int>(b[t].size())) continue;
    if (!b[t][s].is_zero()) return f;
  }
  return std::nullopt;
}

int term_index(const ChainComplex& c, int degree, const std::string& label) {
  const auto& ts = c.terms_at(degree);
  for (int k = 0; k < static_cast<int>(ts.size()); ++k)
    if (ts[k].label() == label) return k;
  return -1;
}

ComplexTerm catalog_term(int n, int id, int shift) {
  const auto& e = Catalog::get(n).entry(id);
  return ComplexTerm{e.object, shift, id, {-1, -1}};
}

// Memoized HHH tables for the suites that revisit braids.
class TableCache {
 public:
  explicit TableCache(int d) : d_(d) {}
  const TriGradedTable& get(const BraidWord& b) {
    const auto key = std::make_pair(b.strand_count, b.letters);
    auto it = tables_.find(key);
    if (it == tables_.end()) it = tables_.emplace(key, hhh(b, d_)).first;
    return it->second;
  }

 private:
  int d_;
  std::map<std::pair<int, std::vector<int>>, TriGradedTable> tables_;
};

std::string join(const std::vector<std::string>& v, std::size_t limit = 4) {
  std::string s;
  for (std::size_t i = 0; i < v.size() && i < limit; ++i) s += (i ? "; " : "") + v[i];
  if (v.size() > limit) s += "; ...";
  return s;
}

}  // namespace

std::string status_name(SuiteStatus s) {
  switch (s) {
    case SuiteStatus::passed: return "passed";
    case SuiteStatus::failed: return "failed";
    case SuiteStatus::skipped: return "skipped";
    case SuiteStatus::timeout: return "timeout";
  }
  return "failed";
}

std::optional<SuiteStatus> status_from_name(const std::string& s) {
  for (auto st : {SuiteStatus::passed, SuiteStatus::failed, SuiteStatus::skipped, SuiteStatus::timeout})
    if (status_name(st) == s) return st;
  return std::nullopt;
}

bool VerifyReport::ok() const {
  return std::none_of(suites.begin(), suites.end(), [](const SuiteReport& s) {
    return s.status == SuiteStatus::failed || s.status == SuiteStatus::timeout;
  });
}

std::vector<BraidWord> reference_braids() {
  return {BraidWord(1, {}),     BraidWord(2, {1}),    BraidWord(2, {1, 1}),
          BraidWord(2, {1, 1, 1}), BraidWord(3, {1, 2}), BraidWord(3, {1, -2})};
}

SuiteReport verify_weights(int max_n) {
  SuiteBuilder out("weights");
  for (int n = 2; n <= max_n; ++n) {
    const std::string name = "trace equals the weighted sum of characters, n=" + std::to_string(n);
    out.guarded(name, [&] { out.check(name, verify_weight_decomposition(n)); });
  }
  return out.finish();
}

SuiteReport verify_jm(int max_n) {
  SuiteBuilder out("jm");
  for (int n = 2; n <= max_n; ++n)
    for (int k = 0; k < n; ++k) {
      const std::string name = "elementary Jucys-Murphy identity, n=" + std::to_string(n) + " k=" + std::to_string(k);
      out.guarded(name, [&] {
        std::vector<std::string> bad;
        const auto perms = all_permutations(n);
        for (const auto& w : perms)
          if (!jm_elementary_identity(HeckeElement::basis(w), k)) bad.push_back(w.to_string());
        out.check(name, bad.empty(),
                  std::to_string(perms.size()) + " basis elements" + (bad.empty() ? "" : ", failing: " + join(bad)));
      });
    }
  return out.finish();
}

SuiteReport verify_euler(int max_degree, EulerNormalization norm) {
  SuiteBuilder out("euler");
  for (const auto& b : reference_braids()) {
    const std::string name = "Euler characteristic matches the trace, " + braid_name(b);
    out.guarded(name, [&] {
      const auto t = hhh(b, max_degree);
      const auto cmp = compare_euler(t, ocneanu_trace(braid_to_hecke(b)), norm.sign, norm.shift);
      std::string detail = "exponents " + std::to_string(cmp.lo) + ".." + std::to_string(cmp.hi);
      if (!cmp.match) detail += ", mismatches: " + join(cmp.mismatches);
      out.check(name, cmp.match, detail);
    });
  }
  const std::string control = "negated normalization is rejected, n=2 [1]";
  out.guarded(control, [&] {
    const BraidWord b(2, {1});
    const auto cmp = compare_euler(hhh(b, max_degree), ocneanu_trace(braid_to_hecke(b)), -norm.sign, norm.shift);
    out.check(control, !cmp.match);
  });
  return out.finish();
}

SuiteReport verify_markov(int max_degree) {
  SuiteBuilder out("markov");
  TableCache tables(max_degree);

  const auto describe = [](const GradingShift& s) {
    return "(" + std::to_string(s.dk) + "," + std::to_string(s.di) + "," + std::to_string(s.dj) + ")";
  };

  for (const auto& b : reference_braids()) {
    const int n = b.strand_count;
    for (int sign : {1, -1}) {
      auto letters = b.letters;
      letters.push_back(sign * n);
      const BraidWord st(n + 1, letters);
      const GradingShift s = sign > 0 ? kPositiveStabilization : kNegativeStabilization;
      const std::string name = "stabilization " + braid_name(b) + " -> " + braid_name(st) + " up to " + describe(s);
      out.guarded(name, [&] { out.check(name, tables_agree_up_to(tables.get(b), tables.get(st), s)); });
    }
    if (n < 2) continue;
    // Conjugation by a generator, by a two-letter word, and cyclic rotation.
    std::vector<std::vector<int>> conjugators{{1}, {-1}};
    if (n >= 3) conjugators.push_back({2, -1});
    std::vector<BraidWord> conjugates;
    for (const auto& g : conjugators) {
      std::vector<int> w = g;
      w.insert(w.end(), b.letters.begin(), b.letters.end());
      for (auto it = g.rbegin(); it != g.rend(); ++it) w.push_back(-*it);
      conjugates.emplace_back(n, w);
    }
    if (b.letters.size() >= 2) {
      std::vector<int> w(b.letters.begin() + 1, b.letters.end());
      w.push_back(b.letters.front());
      if (w != b.letters) conjugates.emplace_back(n, w);
    }
    for (const auto& c : conjugates) {
      const std::string name = "conjugation " + braid_name(b) + " ~ " + braid_name(c) + " exact";
      out.guarded(name, [&] { out.check(name, tables.get(b) == tables.get(c)); });
    }
  }

  const std::string c1 = "sigma_1 and its inverse have different tables";
  out.guarded(c1, [&] { out.check(c1, !(tables.get(BraidWord(2, {1})) == tables.get(BraidWord(2, {-1})))); });
  const std::string c2 = "stabilization without the shift is rejected";
  out.guarded(c2, [&] {
    out.check(c2, !tables_agree_up_to(tables.get(BraidWord(1, {})), tables.get(BraidWord(2, {1})), GradingShift{}));
  });
  return out.finish();
}

SuiteReport verify_appendix_a1() {
  SuiteBuilder out("a1");
  out.guarded("A1 setup", [&] {
    const int n = 2;
    const Catalog& cat = Catalog::get(n);
    const int bs = cat.simple_id(1);
    const GradedBimodule& b = *cat.entry(bs).object;
    // x acts on the left, y on the right, both as the root x_1 - x_2.
    const Poly root = Poly::var(0) - Poly::var(1);
    const PolyMatrix x_plus_y = PolyMatrix::scalar(b.rank(), root) + b.right[0] - b.right[1];

    ChainComplex target(n);
    target.add_term(-1, catalog_term(n, bs, -1));
    target.add_term(0, catalog_term(n, bs, 1));
    target.set_block(-1, 0, 0, -x_plus_y);
    const ComplexPtr t = share(std::move(target));
    out.check("displayed complex has d^2 = 0 and homogeneous differential", t->d_squared_zero() && t->blocks_valid());

    const auto k = koszul_soergel_complex(n, true);
    const auto nabla = nabla_complex(1, n);
    const auto delta = delta_complex(1, n);
    out.check("displayed complex is nabla_s K", complexes_equivalent(*t, tensor_complex(nabla, k)));

    const ComplexPtr src = share(shift_complex(delta, 1, -1));
    ChainMap f = zero_chain_map(src, t);
    f.components[-1][0][0] = PolyMatrix::identity(b.rank());
    // 1 -> x + y: the image of the generator 1 (x) 1.
    f.components[0][0][0] = x_plus_y.block(0, 0, b.rank(), 1);
    const bool is_map = is_chain_map(f);
    out.check("(a) square with components id and 1 -> x + y commutes", is_map,
              is_map ? "" : "component " + f.components[0][0][0].to_string(n));
    if (!is_map) return;

    ChainMap flipped = f;
    flipped.components[0][0][0](0, 0) = -flipped.components[0][0][0](0, 0);
    out.check("negative control: sign-flipped component is not a chain map", !is_chain_map(flipped),
              flipped.components[0][0][0].to_string(n));

    const auto c = minimize(cone(f));
    const auto nabla1 = shift_complex(nabla, 0, 1);
    out.check("(b) cone minimizes to nabla_s(1)", complexes_equivalent(c, nabla1), c.describe());
    out.check("negative control: cone is not Delta_s(1)", !complexes_equivalent(c, shift_complex(delta, 0, 1)),
              c.describe());

    // Convolution with Delta_{w_0} = Delta_s takes H'^0 = nabla_s(1) to R(1)
    // and H'^{-1} = Delta_s(-1) to Delta_s^2(-1).
    const auto unit1 = one_term_complex(n, catalog_term(n, cat.unit_id(), 1));
    out.check("(c) Delta_s nabla_s(1) is R(1)", complexes_equivalent(tensor_complex(delta, nabla1), unit1));
    const auto twist = minimized_rouquier(BraidWord(n, {1, 1}));
    out.check("(c) Delta_s Delta_s(-1) is Delta_s^2(-1)",
              complexes_equivalent(tensor_complex(delta, shift_complex(delta, 0, -1)), shift_complex(twist, 0, -1)));
    out.check("(c) Delta_s applied to the triangle: cone is R(1)",
              complexes_equivalent(tensor_complex(delta, c), unit1));
    out.check("negative control: Delta_s nabla_s(1) is not R(-1)",
              !complexes_equivalent(tensor_complex(delta, nabla1), shift_complex(unit1, 0, -2)));
  });
  return out.finish();
}

SuiteReport verify_appendix_a2() {
  SuiteBuilder out("a2");
  out.guarded("A2 setup", [&] {
    const int n = 3;
    const Catalog& cat = Catalog::get(n);
    const auto labels = [&](const Decomposition& d) {
      std::vector<std::string> v;
      for (const auto& p : d.pieces) v.push_back(cat.entry(p.id).label + "(" + std::to_string(p.shift) + ")");
      std::sort(v.begin(), v.end());
      return v;
    };
    const auto d121 = decompose(make_ptr(bott_samelson({1, 2, 1}, n)));
    out.check("B1 B2 B1 = B121 + B1", d121.complete && labels(d121) == std::vector<std::string>{"B1(0)", "B121(0)"},
              join(labels(d121)));
    // The complement of B1 in B1 B2 B1 is the B121 used below.
    const auto bs121 = make_ptr(bott_samelson({1, 2, 1}, n));
    const auto b1_in = find_splitting(cat.entry(cat.simple_id(1)).object, 0, bs121);
    bool complement_ok = false;
    if (b1_in) {
      const auto rest = make_ptr(split_summand(*bs121, b1_in->incl, b1_in->proj).second);
      const auto& b121 = cat.entry(cat.longest_id()).object;
      complement_ok = graded_rank(*rest) == graded_rank(*b121) && find_splitting(b121, 0, rest).has_value();
    }
    out.check("complement of B1 in B1 B2 B1 is isomorphic to B121", complement_ok);
    const auto d212 = decompose(make_ptr(bott_samelson({2, 1, 2}, n)));
    out.check("B2 B1 B2 = B121 + B2", d212.complete && labels(d212) == std::vector<std::string>{"B121(0)", "B2(0)"},
              join(labels(d212)));

    const auto delta = minimized_rouquier(BraidWord(n, {1, 2, 1}));
    const auto nabla = minimized_rouquier(BraidWord(n, {-1, -2, -1}));
    const auto k = koszul_soergel_complex(n, true);
    check_signature(out, "Delta_w0 terms", delta,
                    {{0, {{"B121", 0}}}, {1, {{"B12", 1}, {"B21", 1}}}, {2, {{"B1", 2}, {"B2", 2}}}, {3, {{"R", 3}}}});
    check_signature(out, "nabla_w0 terms", nabla,
                    {{-3, {{"R", -3}}}, {-2, {{"B1", -2}, {"B2", -2}}}, {-1, {{"B12", -1}, {"B21", -1}}},
                     {0, {{"B121", 0}}}});
    check_signature(out, "K terms", k, {{-2, {{"B121", -4}}}, {-1, {{"B121", -2}, {"B121", -2}}}, {0, {{"B121", 0}}}});
    const ComplexPtr nk = share(minimize(tensor_complex(nabla, k)));
    check_signature(out, "nabla_w0 K terms", *nk,
                    {{-2, {{"B121", -1}}}, {-1, {{"B121", 1}, {"B121", 1}}}, {0, {{"B121", 3}}}});

    // Delta_{w_0}(-1), placed so its head B121 meets the bottom of nabla K.
    const ComplexPtr src = share(shift_complex(delta, 2, -1));
    const auto f1 = map_through(solve_chain_maps(*src, *nk), -2, 0, 0);
    out.check("map Delta_w0(-1) -> nabla_w0 K exists", f1.has_value());
    if (!f1) return;
    const ComplexPtr c1 = share(minimize(cone(*f1)));

    const ComplexPtr top = share(shift_complex(nabla, 0, 3));
    const int head = term_index(*c1, 0, "B121(3)");
    const auto f2 = head < 0 ? std::nullopt : map_through(solve_chain_maps(*c1, *top), 0, 0, head);
    out.check("map onto nabla_w0(3) exists", f2.has_value(), c1->describe());
    if (!f2) return;

    // H'^{-1}: the second cone shifted back into the heart.
    const auto middle = minimize(shift_complex(cone(*f2), -2, 0));
    const auto a = shift_complex(minimized_rouquier(BraidWord(n, {-2, 1, 2})), 0, 1);
    const auto b = shift_complex(minimized_rouquier(BraidWord(n, {-1, -2, 1})), 0, 1);
    check_signature(out, "nabla_2 Delta_12 terms", shift_complex(a, 0, -1),
                    {{-1, {{"B12", -1}}}, {0, {{"B121", 0}, {"B2", 0}, {"B1", 0}}}, {1, {{"B21", 1}, {"R", 1}}}});
    check_signature(out, "nabla_12 Delta_1 terms", shift_complex(b, 0, -1),
                    {{-1, {{"B21", -1}, {"R", -1}}}, {0, {{"B121", 0}, {"B2", 0}, {"B1", 0}}}, {1, {{"B12", 1}}}});

    const bool ranks = middle.euler_characteristic() == graded_rank_add(a.euler_characteristic(), b.euler_characteristic());
    out.check("graded rank of H'^{-1} is the sum for nabla_2 Delta_12(1) and nabla_12 Delta_1(1)", ranks,
              middle.describe());

    const ComplexPtr mp = share(middle), ap = share(a);
    bool extension = false;
    std::string cone_terms;
    for (const auto& g : solve_chain_maps(*ap, *mp)) {
      const auto q = minimize(cone(g));
      cone_terms = q.describe();
      if (complexes_equivalent(q, b)) {
        extension = true;
        break;
      }
    }
    out.check("triangle nabla_2 Delta_12(1) -> H'^{-1} -> nabla_12 Delta_1(1)", extension, cone_terms);
    out.check("negative control: H'^{-1} is not nabla_2 Delta_12(1) alone", !complexes_equivalent(middle, a));

    const auto unit3 = one_term_complex(n, catalog_term(n, cat.unit_id(), 3));
    out.check("H^0 = Delta_w0 nabla_w0(3) is R(3)", complexes_equivalent(tensor_complex(delta, *top), unit3));
    const auto full_twist = minimized_rouquier(BraidWord(n, {1, 2, 1, 1, 2, 1}));
    out.check("H^{-2} = Delta_w0 Delta_w0(-1) is Delta_w0^2(-1)",
              complexes_equivalent(tensor_complex(delta, shift_complex(delta, 0, -1)), shift_complex(full_twist, 0, -1)));
    out.check("H^{-1} subquotient Delta_w0 nabla_2 Delta_12(1) is Delta_21 Delta_12(1)",
              complexes_equivalent(tensor_complex(delta, a),
                                   shift_complex(minimized_rouquier(BraidWord(n, {2, 1, 1, 2})), 0, 1)));
    out.check("H^{-1} subquotient Delta_w0 nabla_12 Delta_1(1) is Delta_1^2(1)",
              complexes_equivalent(tensor_complex(delta, b), shift_complex(minimized_rouquier(BraidWord(n, {1, 1})), 0, 1)));
  });
  return out.finish();
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"weights", "jm", "euler", "markov", "a1", "a2"};
  return names;
}

namespace {

// Runs A.2 on a worker thread; past the budget the worker is abandoned and
// the suite is reported as timed out.
SuiteReport run_with_budget(const std::function<SuiteReport()>& body, const std::string& name, double budget) {
  struct Shared {
    std::mutex m;
    std::condition_variable cv;
    std::optional<SuiteReport> result;
  };
  auto shared = std::make_shared<Shared>();
  const auto start = Clock::now();
  std::thread([shared, body, name] {
    SuiteReport r;
    try {
      r = body();
    } catch (const std::exception& e) {
      r.suite = name;
      r.status = SuiteStatus::failed;
      r.checks.push_back({name, false, std::string("exception: ") + e.what()});
    }
    std::lock_guard lock(shared->m);
    shared->result = std::move(r);
    shared->cv.notify_all();
  }).detach();
  std::unique_lock lock(shared->m);
  const bool done = shared->cv.wait_for(lock, std::chrono::duration<double>(budget), [&] { return shared->result.has_value(); });
  if (done) return *shared->result;
  SuiteReport r;
  r.suite = name;
  r.status = SuiteStatus::timeout;
  r.seconds = std::chrono::duration<double>(Clock::now() - start).count();
  std::ostringstream limit;
  limit << "finished within " << budget << " s";
  r.checks.push_back({limit.str(), false, "time budget exceeded"});
  return r;
}

}  // namespace

VerifyReport verify_all(const VerifyConfig& config) {
  std::set<std::string> chosen;
  bool all = false;
  for (const auto& s : config.suites) {
    if (s == "all") {
      all = true;
      continue;
    }
    if (std::find(suite_names().begin(), suite_names().end(), s) == suite_names().end())
      throw std::invalid_argument("unknown suite: " + s);
    chosen.insert(s);
  }
  for (const auto& s : config.skip)
    if (std::find(suite_names().begin(), suite_names().end(), s) == suite_names().end())
      throw std::invalid_argument("unknown suite: " + s);

  VerifyReport report;
  for (const auto& name : suite_names()) {
    const bool selected = chosen.count(name) || (all && (name != "a2" || config.with_a2));
    if (!selected || config.skip.count(name)) {
      if (selected || all) report.suites.push_back({name, SuiteStatus::skipped, 0, {}});
      continue;
    }
    if (name == "weights") report.suites.push_back(verify_weights());
    else if (name == "jm") report.suites.push_back(verify_jm());
    else if (name == "euler") report.suites.push_back(verify_euler(config.max_degree, config.euler_normalization));
    else if (name == "markov") report.suites.push_back(verify_markov(config.max_degree));
    else if (name == "a1") report.suites.push_back(verify_appendix_a1());
    else report.suites.push_back(run_with_budget(verify_appendix_a2, name, config.a2_budget_seconds));
  }
  return report;
}

}  // namespace khr
