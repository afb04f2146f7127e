#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "khr/complex.hpp"
#include "khr/hecke.hpp"
#include "khr/hochschild.hpp"
#include "khr/verify.hpp"

namespace khr {

using Json = nlohmann::json;

enum class OutputFormat { text, json, csv };
std::optional<OutputFormat> parse_format(const std::string& s);

inline constexpr int kDefaultMaxDegree = 12;
/// Truncation degree: the flag if given, else KHR_MAX_DEGREE if set, else the
/// default. Throws std::invalid_argument on a malformed or negative value.
int resolve_max_degree(std::optional<int> flag, const char* env_value);

/// Bumped whenever a grading, sign or labelling convention changes; part of
/// every cache key.
inline constexpr int kConventionVersion = 1;

/// Accepts {"n": int, "word": [ints]}.
BraidWord braid_from_json(const Json& j);
Json braid_to_json(const BraidWord& b);

struct HomflyReport {
  int n = 1;
  std::vector<int> word;
  std::map<int, std::string> trace;       // a-exponent -> rational function of v
  std::map<int, std::string> normalized;  // alpha-exponent -> rational function of v
  friend bool operator==(const HomflyReport&, const HomflyReport&) = default;
};
HomflyReport make_homfly_report(const BraidWord& b);
Json to_json(const HomflyReport& r);
HomflyReport homfly_report_from_json(const Json& j);
std::string to_text(const HomflyReport& r);
std::string to_csv(const HomflyReport& r);

struct RouquierObject {
  std::string label;
  int shift = 0;
  std::string rank;  // graded rank as a Laurent polynomial in v
  friend bool operator==(const RouquierObject&, const RouquierObject&) = default;
};
struct RouquierDegree {
  int degree = 0;
  std::vector<RouquierObject> objects;
  friend bool operator==(const RouquierDegree&, const RouquierDegree&) = default;
};
using RouquierReport = std::vector<RouquierDegree>;
RouquierReport make_rouquier_report(const ChainComplex& c);
Json to_json(const RouquierReport& r);
RouquierReport rouquier_report_from_json(const Json& j);
std::string to_text(const RouquierReport& r);
std::string to_csv(const RouquierReport& r);

struct HhhReport {
  TriGradedTable table;
  bool euler_match = false;
  friend bool operator==(const HhhReport&, const HhhReport&) = default;
};
/// Compares the Euler characteristic of the table with the trace of b.
HhhReport make_hhh_report(const BraidWord& b, TriGradedTable table);
Json to_json(const HhhReport& r);
HhhReport hhh_report_from_json(const Json& j);
std::string to_text(const HhhReport& r);
/// Header k,i,j,dim, one row per nonzero entry.
std::string to_csv(const TriGradedTable& t);
TriGradedTable table_from_csv(const std::string& csv, int strands, int truncation);

Json to_json(const VerifyReport& r);
VerifyReport verify_report_from_json(const Json& j);
std::string to_text(const VerifyReport& r);
std::string to_csv(const VerifyReport& r);

/// Exact serialization of a complex whose terms are all catalog objects.
Json complex_to_json(const ChainComplex& c);
ChainComplex complex_from_json(const Json& j);

/// On-disk memo of minimized Rouquier complexes keyed by (n, word,
/// convention version).
class ComplexCache {
 public:
  explicit ComplexCache(std::filesystem::path dir);
  std::filesystem::path path_for(const BraidWord& b) const;
  std::optional<ChainComplex> load(const BraidWord& b) const;
  void store(const BraidWord& b, const ChainComplex& c) const;
  /// Loads, or computes with minimized_rouquier and stores.
  ChainComplex minimized(const BraidWord& b) const;

 private:
  std::filesystem::path dir_;
};

}  // namespace khr
