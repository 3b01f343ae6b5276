#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "twistcat/verifier.hpp"

namespace py = pybind11;
using namespace twistcat;

namespace {

py::object big_int(const Integer& v) {
  std::ostringstream os;
  os << v;
  return py::reinterpret_steal<py::object>(
      PyLong_FromString(os.str().c_str(), nullptr, 10));
}

py::list matrix_rows(const LatticeMap& m) {
  py::list rows;
  for (const auto& row : m.m) {
    py::list r;
    for (const Integer& x : row) r.append(big_int(x));
    rows.append(r);
  }
  return rows;
}

}  // namespace

PYBIND11_MODULE(twistcat, m) {
  m.doc() =
      "verifier for spherical twist relations on a cycle of projective lines";

  m.def(
      "act",
      [](const std::string& word, const std::string& object, int n) {
        Word w = parse_word(word, n);
        DObject obj = parse_object(object, n);
        auto res = evaluate_word(w, obj);
        if (std::holds_alternative<StuckState>(res)) {
          const StuckState& stuck = std::get<StuckState>(res);
          throw py::value_error("stuck at " + format_word(stuck.remaining) +
                                " on " + format_object(stuck.object));
        }
        return format_object(std::get<DObject>(res));
      },
      py::arg("word"), py::arg("object"), py::arg("n"),
      "apply a word to an object, both in text form");

  m.def(
      "cohomology",
      [](const std::vector<int>& divisor) {
        CohomDims dims = cohomology(divisor);
        return py::make_tuple(dims.h0, dims.h1);
      },
      py::arg("divisor"), "(h0, h1) of the line bundle O(divisor)");

  m.def(
      "word_matrix",
      [](const std::string& word, int n) {
        return matrix_rows(evaluate_word_matrix(parse_word(word, n), n));
      },
      py::arg("word"), py::arg("n"),
      "matrix of the word on the numerical Grothendieck lattice");

  m.def(
      "free_reduce",
      [](const std::string& word, int n) {
        return format_word(free_reduce(parse_word(word, n)));
      },
      py::arg("word"), py::arg("n"));

  m.def(
      "relators",
      [](int n, const std::string& variant) {
        Variant v;
        if (variant == "boundary")
          v = Variant::Boundary;
        else if (variant == "punctured")
          v = Variant::Punctured;
        else if (variant == "extended")
          v = Variant::Extended;
        else if (variant == "two_alt")
          v = Variant::TwoAlt;
        else if (variant == "extended_two_alt")
          v = Variant::ExtendedTwoAlt;
        else
          throw py::value_error("unknown variant " + variant);
        py::list out;
        for (const Relator& r : relators({n, v})) {
          py::dict d;
          d["name"] = r.name;
          d["lhs"] = format_word(r.lhs);
          d["rhs"] = format_word(r.rhs);
          out.append(d);
        }
        return out;
      },
      py::arg("n"), py::arg("variant") = "extended");

  m.def(
      "verify_suite",
      [](int n, const std::vector<std::string>& families,
         const std::string& rep, std::uint64_t budget, int jobs) {
        std::vector<Family> fams;
        if (families.empty()) {
          fams = applicable_families(n);
        } else {
          for (const std::string& name : families) {
            auto f = parse_family(name);
            if (!f) throw py::value_error("unknown family " + name);
            fams.push_back(*f);
          }
        }
        std::vector<Rep> reps;
        if (rep == "ktheory")
          reps = {Rep::KTheory};
        else if (rep == "sheaf")
          reps = {Rep::Sheaf};
        else if (rep == "both")
          reps = {Rep::KTheory, Rep::Sheaf};
        else
          throw py::value_error("unknown representation " + rep);
        SuiteOptions opts;
        opts.search.budget = budget;
        opts.jobs = jobs;
        return suite_json(verify_relation_suite(n, fams, reps, opts));
      },
      py::arg("n"), py::arg("families") = std::vector<std::string>{},
      py::arg("rep") = "both", py::arg("budget") = SearchOptions{}.budget,
      py::arg("jobs") = 0, "JSON suite report");
}
