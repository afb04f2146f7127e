#include "khr/report.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace khr {

std::optional<OutputFormat> parse_format(const std::string& s) {
  if (s == "text") return OutputFormat::text;
  if (s == "json") return OutputFormat::json;
  if (s == "csv") return OutputFormat::csv;
  return std::nullopt;
}

int resolve_max_degree(std::optional<int> flag, const char* env_value) {
  int d = kDefaultMaxDegree;
  if (flag) {
    d = *flag;
  } else if (env_value && *env_value) {
    std::size_t used = 0;
    try {
      d = std::stoi(env_value, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || env_value[used] != '\0') throw std::invalid_argument(std::string("KHR_MAX_DEGREE is not an integer: ") + env_value);
  }
  if (d < 0) throw std::invalid_argument("max degree must be nonnegative");
  return d;
}

BraidWord braid_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("n") || !j.contains("word"))
    throw std::invalid_argument("braid JSON needs \"n\" and \"word\"");
  return BraidWord(j.at("n").get<int>(), j.at("word").get<std::vector<int>>());
}

Json braid_to_json(const BraidWord& b) { return {{"n", b.strand_count}, {"word", b.letters}}; }

namespace {

std::map<int, std::string> coefficient_strings(const LaurentScalar& x) {
  std::map<int, std::string> out;
  for (const auto& [k, c] : x.terms()) out[k] = c.to_string();
  return out;
}

Json power_map(const std::map<int, std::string>& m, const std::string& var) {
  Json j = Json::object();
  for (const auto& [k, s] : m) j[var + "^" + std::to_string(k)] = s;
  return j;
}

std::map<int, std::string> power_map_from(const Json& j, const std::string& var) {
  std::map<int, std::string> out;
  for (const auto& [key, value] : j.items()) {
    if (key.rfind(var + "^", 0) != 0) throw std::invalid_argument("bad key " + key);
    out[std::stoi(key.substr(var.size() + 1))] = value.get<std::string>();
  }
  return out;
}

std::string power_sum(const std::map<int, std::string>& m, const std::string& var) {
  if (m.empty()) return "0";
  std::string s;
  for (const auto& [k, c] : m) s += (s.empty() ? "" : " + ") + ("(" + c + ")*" + var + "^" + std::to_string(k));
  return s;
}

std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c);
  return out + "\"";
}

}  // namespace

HomflyReport make_homfly_report(const BraidWord& b) {
  const HomflyValue h = homfly(b);
  return {b.strand_count, b.letters, coefficient_strings(h.raw), coefficient_strings(h.normalized)};
}

Json to_json(const HomflyReport& r) {
  return {{"n", r.n}, {"word", r.word}, {"trace", power_map(r.trace, "a")}, {"normalized", power_map(r.normalized, "alpha")}};
}

HomflyReport homfly_report_from_json(const Json& j) {
  return {j.at("n").get<int>(), j.at("word").get<std::vector<int>>(), power_map_from(j.at("trace"), "a"),
          power_map_from(j.at("normalized"), "alpha")};
}

std::string to_text(const HomflyReport& r) {
  return "trace: " + power_sum(r.trace, "a") + "\nnormalized: " + power_sum(r.normalized, "alpha") + "\n";
}

std::string to_csv(const HomflyReport& r) {
  std::string s = "part,exponent,coefficient\n";
  for (const auto& [k, c] : r.trace) s += "trace," + std::to_string(k) + "," + csv_quote(c) + "\n";
  for (const auto& [k, c] : r.normalized) s += "normalized," + std::to_string(k) + "," + csv_quote(c) + "\n";
  return s;
}

RouquierReport make_rouquier_report(const ChainComplex& c) {
  RouquierReport r;
  for (const auto& [i, ts] : c.terms()) {
    RouquierDegree d{i, {}};
    for (const auto& t : ts) {
      const std::string label =
          t.catalog_id >= 0 ? Catalog::get(c.strands()).entry(t.catalog_id).label : t.object->label;
      d.objects.push_back({label, t.shift, graded_rank_string(t.graded_rank())});
    }
    r.push_back(std::move(d));
  }
  return r;
}

Json to_json(const RouquierReport& r) {
  Json out = Json::array();
  for (const auto& d : r) {
    Json objs = Json::array();
    for (const auto& o : d.objects) objs.push_back({{"label", o.label}, {"shift", o.shift}, {"rank", o.rank}});
    out.push_back({{"degree", d.degree}, {"objects", objs}});
  }
  return out;
}

RouquierReport rouquier_report_from_json(const Json& j) {
  RouquierReport r;
  for (const auto& d : j) {
    RouquierDegree deg{d.at("degree").get<int>(), {}};
    for (const auto& o : d.at("objects"))
      deg.objects.push_back({o.at("label").get<std::string>(), o.at("shift").get<int>(), o.at("rank").get<std::string>()});
    r.push_back(std::move(deg));
  }
  return r;
}

std::string to_text(const RouquierReport& r) {
  std::ostringstream os;
  for (const auto& d : r) {
    os << d.degree << ":";
    for (const auto& o : d.objects) os << "  " << o.label << "(" << o.shift << ") [" << o.rank << "]";
    os << "\n";
  }
  return os.str();
}

std::string to_csv(const RouquierReport& r) {
  std::string s = "degree,label,shift,rank\n";
  for (const auto& d : r)
    for (const auto& o : d.objects)
      s += std::to_string(d.degree) + "," + csv_quote(o.label) + "," + std::to_string(o.shift) + "," + csv_quote(o.rank) + "\n";
  return s;
}

HhhReport make_hhh_report(const BraidWord& b, TriGradedTable table) {
  const bool match = compare_euler(table, ocneanu_trace(braid_to_hecke(b))).match;
  return {std::move(table), match};
}

Json to_json(const HhhReport& r) {
  Json entries = Json::array();
  for (const auto& [key, dim] : r.table.entries) {
    const auto [k, i, j] = key;
    entries.push_back({{"k", k}, {"i", i}, {"j", j}, {"dim", dim}});
  }
  return {{"n", r.table.strands},
          {"truncation", r.table.truncation},
          {"entries", entries},
          {"euler_check", {{"match", r.euler_match}, {"order", r.table.truncation}}}};
}

HhhReport hhh_report_from_json(const Json& j) {
  HhhReport r;
  r.table.strands = j.value("n", 1);
  r.table.truncation = j.at("truncation").get<int>();
  for (const auto& e : j.at("entries"))
    r.table.entries[{e.at("k").get<int>(), e.at("i").get<int>(), e.at("j").get<int>()}] = e.at("dim").get<long>();
  r.euler_match = j.at("euler_check").at("match").get<bool>();
  return r;
}

std::string to_text(const HhhReport& r) {
  return table_to_string(r.table) + "Euler characteristic matches the trace through order " +
         std::to_string(r.table.truncation) + ": " + (r.euler_match ? "yes" : "no") + "\n";
}

std::string to_csv(const TriGradedTable& t) {
  std::string s = "k,i,j,dim\n";
  for (const auto& [key, dim] : t.entries) {
    const auto [k, i, j] = key;
    s += std::to_string(k) + "," + std::to_string(i) + "," + std::to_string(j) + "," + std::to_string(dim) + "\n";
  }
  return s;
}

TriGradedTable table_from_csv(const std::string& csv, int strands, int truncation) {
  TriGradedTable t;
  t.strands = strands;
  t.truncation = truncation;
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  if (line != "k,i,j,dim") throw std::invalid_argument("expected header k,i,j,dim");
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    int k, i, j;
    long dim;
    char c1, c2, c3;
    if (!(row >> k >> c1 >> i >> c2 >> j >> c3 >> dim) || c1 != ',' || c2 != ',' || c3 != ',')
      throw std::invalid_argument("bad row: " + line);
    t.entries[{k, i, j}] = dim;
  }
  return t;
}

Json to_json(const VerifyReport& r) {
  Json suites = Json::array();
  for (const auto& s : r.suites) {
    Json checks = Json::array();
    for (const auto& c : s.checks) checks.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
    suites.push_back({{"suite", s.suite}, {"status", status_name(s.status)}, {"seconds", s.seconds}, {"checks", checks}});
  }
  return {{"ok", r.ok()}, {"suites", suites}};
}

VerifyReport verify_report_from_json(const Json& j) {
  VerifyReport r;
  for (const auto& s : j.at("suites")) {
    const auto status = status_from_name(s.at("status").get<std::string>());
    if (!status) throw std::invalid_argument("bad status " + s.at("status").dump());
    SuiteReport sr{s.at("suite").get<std::string>(), *status, s.at("seconds").get<double>(), {}};
    for (const auto& c : s.at("checks"))
      sr.checks.push_back({c.at("name").get<std::string>(), c.at("passed").get<bool>(), c.at("detail").get<std::string>()});
    r.suites.push_back(std::move(sr));
  }
  return r;
}

std::string to_text(const VerifyReport& r) {
  std::ostringstream os;
  for (const auto& s : r.suites) {
    os << s.suite << ": " << status_name(s.status) << " (" << s.seconds << " s)\n";
    for (const auto& c : s.checks) {
      os << "  [" << (c.passed ? "pass" : "FAIL") << "] " << c.name;
      if (!c.detail.empty()) os << " (" << c.detail << ")";
      os << "\n";
    }
  }
  os << (r.ok() ? "all executed checks passed\n" : "some checks failed\n");
  return os.str();
}

std::string to_csv(const VerifyReport& r) {
  std::string s = "suite,status,check,passed,detail\n";
  for (const auto& su : r.suites) {
    if (su.checks.empty()) s += su.suite + "," + status_name(su.status) + ",,,\n";
    for (const auto& c : su.checks)
      s += su.suite + "," + status_name(su.status) + "," + csv_quote(c.name) + "," + (c.passed ? "true" : "false") + "," +
           csv_quote(c.detail) + "\n";
  }
  return s;
}

namespace {

Json poly_to_json(const Poly& p) {
  Json terms = Json::array();
  for (const auto& [m, c] : p.terms()) {
    std::vector<int> e(Monomial::kMaxVars);
    for (int i = 0; i < Monomial::kMaxVars; ++i) e[i] = m.exponent(i);
    while (!e.empty() && e.back() == 0) e.pop_back();
    terms.push_back({e, c.get_str()});
  }
  return terms;
}

Poly poly_from_json(const Json& j) {
  Poly p;
  for (const auto& t : j) p += Poly::term(Monomial::from_exponents(t.at(0).get<std::vector<int>>()), Rational(t.at(1).get<std::string>()));
  return p;
}

Json matrix_to_json(const PolyMatrix& m) {
  Json entries = Json::array();
  for (int r = 0; r < m.rows(); ++r)
    for (int c = 0; c < m.cols(); ++c)
      if (!m(r, c).is_zero()) entries.push_back({r, c, poly_to_json(m(r, c))});
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"entries", entries}};
}

PolyMatrix matrix_from_json(const Json& j) {
  PolyMatrix m(j.at("rows").get<int>(), j.at("cols").get<int>());
  for (const auto& e : j.at("entries")) m(e.at(0).get<int>(), e.at(1).get<int>()) = poly_from_json(e.at(2));
  return m;
}

std::string cache_name(const BraidWord& b) {
  std::string s = "n" + std::to_string(b.strand_count) + "_w";
  for (int l : b.letters) s += (l < 0 ? "_m" : "_") + std::to_string(std::abs(l));
  return s + "_c" + std::to_string(kConventionVersion) + ".json";
}

}  // namespace

Json complex_to_json(const ChainComplex& c) {
  const Catalog& cat = Catalog::get(c.strands());
  Json degrees = Json::array();
  for (const auto& [i, ts] : c.terms()) {
    Json terms = Json::array();
    for (const auto& t : ts) {
      if (t.catalog_id < 0) throw std::invalid_argument("only complexes of catalog objects can be serialized");
      terms.push_back({{"label", cat.entry(t.catalog_id).label}, {"shift", t.shift}});
    }
    Json blocks = Json::array();
    const BlockMatrix& d = c.differential(i);
    for (std::size_t tt = 0; tt < d.size(); ++tt)
      for (std::size_t s = 0; s < d[tt].size(); ++s)
        if (!d[tt][s].is_zero()) blocks.push_back({{"target", tt}, {"source", s}, {"matrix", matrix_to_json(d[tt][s])}});
    degrees.push_back({{"degree", i}, {"terms", terms}, {"differential", blocks}});
  }
  return {{"n", c.strands()}, {"convention", kConventionVersion}, {"degrees", degrees}};
}

ChainComplex complex_from_json(const Json& j) {
  if (j.at("convention").get<int>() != kConventionVersion) throw std::invalid_argument("convention version mismatch");
  const int n = j.at("n").get<int>();
  const Catalog& cat = Catalog::get(n);
  std::map<std::string, int> ids;
  for (const auto& e : cat.entries()) ids[e.label] = e.id;
  ChainComplex c(n);
  for (const auto& d : j.at("degrees"))
    for (const auto& t : d.at("terms")) {
      const int id = ids.at(t.at("label").get<std::string>());
      c.add_term(d.at("degree").get<int>(), ComplexTerm{cat.entry(id).object, t.at("shift").get<int>(), id, {-1, -1}});
    }
  for (const auto& d : j.at("degrees"))
    for (const auto& b : d.at("differential"))
      c.set_block(d.at("degree").get<int>(), b.at("target").get<int>(), b.at("source").get<int>(),
                  matrix_from_json(b.at("matrix")));
  if (!c.d_squared_zero() || !c.blocks_valid()) throw std::invalid_argument("cached complex is inconsistent");
  return c;
}

ComplexCache::ComplexCache(std::filesystem::path dir) : dir_(std::move(dir)) {
  std::filesystem::create_directories(dir_);
}

std::filesystem::path ComplexCache::path_for(const BraidWord& b) const { return dir_ / cache_name(b); }

std::optional<ChainComplex> ComplexCache::load(const BraidWord& b) const {
  std::ifstream in(path_for(b));
  if (!in) return std::nullopt;
  try {
    const Json j = Json::parse(in);
    if (braid_from_json(j.at("braid")) != b) return std::nullopt;
    return complex_from_json(j.at("complex"));
  } catch (const std::exception&) {
    return std::nullopt;  // stale or corrupt entries are recomputed
  }
}

void ComplexCache::store(const BraidWord& b, const ChainComplex& c) const {
  const auto target = path_for(b);
  const auto tmp = target.string() + ".tmp";
  {
    std::ofstream out(tmp);
    out << Json{{"braid", braid_to_json(b)}, {"complex", complex_to_json(c)}}.dump();
  }
  std::filesystem::rename(tmp, target);
}

ChainComplex ComplexCache::minimized(const BraidWord& b) const {
  if (auto c = load(b)) return *std::move(c);
  ChainComplex c = minimized_rouquier(b);
  bool catalog_only = true;
  for (const auto& [i, ts] : c.terms())
    for (const auto& t : ts) catalog_only = catalog_only && t.catalog_id >= 0;
  if (catalog_only) store(b, c);
  return c;
}

}  // namespace khr
