// khr: HOMFLY-PT traces, Rouquier complexes and triply graded homology of
// braid closures, plus the verification suites.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "khr/report.hpp"

using namespace khr;

namespace {

struct BraidInput {
  int n = 0;
  std::string word;
  std::string input;  // JSON file or "-" for stdin
};

void add_braid_options(CLI::App* cmd, BraidInput& in) {
  cmd->add_option("--n", in.n, "number of strands");
  cmd->add_option("--braid", in.word, "braid word, letters i or -i separated by spaces");
  cmd->add_option("--input", in.input, "JSON file {\"n\": int, \"word\": [ints]}, or - for stdin");
}

BraidWord read_braid(const BraidInput& in) {
  if (!in.input.empty()) {
    Json j;
    if (in.input == "-") {
      j = Json::parse(std::cin);
    } else {
      std::ifstream f(in.input);
      if (!f) throw std::runtime_error("cannot open " + in.input);
      j = Json::parse(f);
    }
    return braid_from_json(j);
  }
  if (in.n < 1) throw std::invalid_argument("--n (at least 1) or --input is required");
  return parse_braid_word(in.word, in.n);
}

void emit(const std::string& s) {
  std::cout << s;
  if (!s.empty() && s.back() != '\n') std::cout << '\n';
  std::cout.flush();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Triply graded Khovanov-Rozansky homology of braid closures"};
  app.require_subcommand(1);

  std::string format_name = "text";
  std::string cache_dir;
  app.add_option("--format", format_name, "output format")->check(CLI::IsMember({"text", "json", "csv"}));
  app.add_option("--cache", cache_dir, "directory memoizing minimized Rouquier complexes");

  BraidInput homfly_in, rouquier_in, hhh_in;
  auto* homfly_cmd = app.add_subcommand("homfly", "normalized HOMFLY-PT invariant and raw trace");
  add_braid_options(homfly_cmd, homfly_in);

  bool minimize_flag = false;
  auto* rouquier_cmd = app.add_subcommand("rouquier", "Rouquier complex of a braid");
  add_braid_options(rouquier_cmd, rouquier_in);
  rouquier_cmd->add_flag("--minimize", minimize_flag, "Gaussian-eliminate to a minimal complex");

  std::optional<int> hhh_degree;
  unsigned threads = 0;
  auto* hhh_cmd = app.add_subcommand("hhh", "triply graded homology table");
  add_braid_options(hhh_cmd, hhh_in);
  hhh_cmd->add_option("--max-degree", hhh_degree, "truncation |j| <= D (default: KHR_MAX_DEGREE, else 12)");
  hhh_cmd->add_option("--threads", threads, "worker threads, 0 = hardware count");

  std::vector<std::string> suites{"all"};
  std::vector<std::string> skip;
  std::optional<int> verify_degree;
  VerifyConfig config;
  auto* verify_cmd = app.add_subcommand("verify", "run verification suites");
  std::vector<std::string> names = suite_names();
  names.push_back("all");
  verify_cmd->add_option("--suite", suites, "suites to run")->check(CLI::IsMember(names))->delimiter(',');
  verify_cmd->add_option("--skip", skip, "suites to skip")->check(CLI::IsMember(suite_names()))->delimiter(',');
  verify_cmd->add_option("--max-degree", verify_degree, "truncation for the Euler and Markov suites");
  verify_cmd->add_flag("--with-a2", config.with_a2, "include the A_2 suite in --suite all");
  verify_cmd->add_option("--a2-budget", config.a2_budget_seconds, "time budget for the A_2 suite in seconds");
  verify_cmd->add_option("--euler-sign", config.euler_normalization.sign,
                         "normalization sign for the Euler suite (for negative controls)");
  verify_cmd->add_option("--euler-shift", config.euler_normalization.shift,
                         "normalization v-shift for the Euler suite (for negative controls)");

  for (auto* cmd : {homfly_cmd, rouquier_cmd, hhh_cmd, verify_cmd}) cmd->fallthrough();

  CLI11_PARSE(app, argc, argv);
  const OutputFormat format = *parse_format(format_name);
  const std::optional<ComplexCache> cache =
      cache_dir.empty() ? std::nullopt : std::optional<ComplexCache>(ComplexCache(cache_dir));
  const auto minimized = [&](const BraidWord& b) { return cache ? cache->minimized(b) : minimized_rouquier(b); };

  try {
    if (*homfly_cmd) {
      const auto r = make_homfly_report(read_braid(homfly_in));
      emit(format == OutputFormat::json ? to_json(r).dump(2) : format == OutputFormat::csv ? to_csv(r) : to_text(r));
      return 0;
    }
    if (*rouquier_cmd) {
      const BraidWord b = read_braid(rouquier_in);
      const auto r = make_rouquier_report(minimize_flag ? minimized(b) : rouquier_complex(b));
      emit(format == OutputFormat::json ? to_json(r).dump(2) : format == OutputFormat::csv ? to_csv(r) : to_text(r));
      return 0;
    }
    if (*hhh_cmd) {
      const BraidWord b = read_braid(hhh_in);
      const int d = resolve_max_degree(hhh_degree, std::getenv("KHR_MAX_DEGREE"));
      const auto r = make_hhh_report(b, hhh_of_complex(minimized(b), d, threads));
      emit(format == OutputFormat::json ? to_json(r).dump(2)
           : format == OutputFormat::csv ? to_csv(r.table)
                                         : to_text(r));
      return r.euler_match ? 0 : 1;
    }
    config.suites = suites;
    config.skip = {skip.begin(), skip.end()};
    config.max_degree = resolve_max_degree(verify_degree, std::getenv("KHR_MAX_DEGREE"));
    const VerifyReport r = verify_all(config);
    emit(format == OutputFormat::json ? to_json(r).dump(2) : format == OutputFormat::csv ? to_csv(r) : to_text(r));
    const int code = r.ok() ? 0 : 1;
    // A timed-out suite leaves a worker running; skip static destructors.
    for (const auto& s : r.suites)
      if (s.status == SuiteStatus::timeout) std::_Exit(code);
    return code;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
