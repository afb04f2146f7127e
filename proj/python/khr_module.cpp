#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstdlib>

#include "khr/report.hpp"

namespace py = pybind11;
using namespace khr;

namespace {

py::object to_python(const Json& j) { return py::module_::import("json").attr("loads")(j.dump()); }

}  // namespace

PYBIND11_MODULE(_khr, m) {
  m.doc() = "Bindings for the khr library";
  py::register_exception<Error>(m, "KhrError", PyExc_ValueError);
  m.attr("CONVENTION_VERSION") = kConventionVersion;

  m.def("suite_names", &suite_names);

  m.def(
      "resolve_max_degree",
      [](std::optional<int> flag) { return resolve_max_degree(flag, std::getenv("KHR_MAX_DEGREE")); },
      py::arg("max_degree") = py::none(), "Flag, else KHR_MAX_DEGREE, else 12.");

  m.def(
      "homfly",
      [](int n, const std::vector<int>& word) {
        HomflyReport r;
        {
          py::gil_scoped_release release;
          r = make_homfly_report(BraidWord(n, word));
        }
        return to_python(to_json(r));
      },
      py::arg("n"), py::arg("word"), "Raw trace and normalized HOMFLY-PT invariant.");

  m.def(
      "rouquier",
      [](int n, const std::vector<int>& word, bool minimize) {
        RouquierReport r;
        {
          py::gil_scoped_release release;
          const BraidWord b(n, word);
          r = make_rouquier_report(minimize ? minimized_rouquier(b) : rouquier_complex(b));
        }
        return to_python(to_json(r));
      },
      py::arg("n"), py::arg("word"), py::arg("minimize") = true, "Chain groups of the Rouquier complex per degree.");

  m.def(
      "hhh",
      [](int n, const std::vector<int>& word, std::optional<int> max_degree, unsigned threads) {
        const int d = resolve_max_degree(max_degree, std::getenv("KHR_MAX_DEGREE"));
        HhhReport r;
        {
          py::gil_scoped_release release;
          const BraidWord b(n, word);
          r = make_hhh_report(b, hhh(b, d, threads));
        }
        return to_python(to_json(r));
      },
      py::arg("n"), py::arg("word"), py::arg("max_degree") = py::none(), py::arg("threads") = 0,
      "Dimensions of HHH^{k,i,j} for |j| <= max_degree, with the Euler check.");

  m.def(
      "verify",
      [](std::vector<std::string> suites, std::vector<std::string> skip, std::optional<int> max_degree, bool with_a2,
         double a2_budget) {
        VerifyConfig c;
        c.suites = std::move(suites);
        c.skip = {skip.begin(), skip.end()};
        c.max_degree = resolve_max_degree(max_degree, std::getenv("KHR_MAX_DEGREE"));
        c.with_a2 = with_a2;
        c.a2_budget_seconds = a2_budget;
        VerifyReport r;
        {
          py::gil_scoped_release release;
          r = verify_all(c);
        }
        return to_python(to_json(r));
      },
      py::arg("suites") = std::vector<std::string>{"all"}, py::arg("skip") = std::vector<std::string>{},
      py::arg("max_degree") = py::none(), py::arg("with_a2") = false, py::arg("a2_budget") = 1800.0,
      "Runs verification suites and returns the JSON report.");
}
