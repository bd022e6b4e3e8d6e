// _zqadd: thin pybind11 layer. Structured results cross as JSON text and are
// decoded in zqadd/__init__.py.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <json.hpp>

#include "zqadd/ap_structure.hpp"
#include "zqadd/chains.hpp"
#include "zqadd/config.hpp"
#include "zqadd/digital_carry.hpp"
#include "zqadd/error.hpp"
#include "zqadd/impact.hpp"
#include "zqadd/report.hpp"
#include "zqadd/verify.hpp"
#include "zqadd/zq_core.hpp"

namespace py = pybind11;
using namespace zqadd;
using nlohmann::json;

namespace {

ResidueSet make(std::uint32_t q, const std::vector<std::uint32_t>& elems) {
  return ResidueSet::from_elements(q, elems);
}

template <class T>
std::string dump(const T& v) {
  return json(v).dump();
}

RunConfig run_config(std::uint64_t seed, unsigned workers, const std::string& profile) {
  RunConfig cfg;
  cfg.rng_seed = seed;
  cfg.worker_count = workers == 0 ? 1 : workers;
  cfg.profile = parse_profile(profile);
  return cfg;
}

}  // namespace

PYBIND11_MODULE(_zqadd, m) {
  py::register_exception<InvalidArgument>(m, "InvalidArgument", PyExc_ValueError);
  py::register_exception<BudgetExceeded>(m, "BudgetExceeded", PyExc_RuntimeError);

  py::class_<ResidueSet>(m, "ResidueSet")
      .def(py::init(&make), py::arg("q"), py::arg("elements"))
      .def_property_readonly("q", &ResidueSet::modulus)
      .def("elements", &ResidueSet::elements)
      .def("__len__", &ResidueSet::size)
      .def("__contains__", &ResidueSet::contains)
      .def("translated", &ResidueSet::translated)
      .def("dilated", &ResidueSet::dilated)
      .def("complement", &ResidueSet::complement)
      .def("__add__", [](const ResidueSet& a, const ResidueSet& b) { return sumset(a, b); })
      .def("__eq__", [](const ResidueSet& a, const ResidueSet& b) { return a == b; })
      .def("__repr__", &ResidueSet::to_string);

  m.def("parse_set", [](const std::string& text, std::uint32_t q) { return parse_residue_set(text, q); },
        py::arg("text"), py::arg("q") = 0);
  m.def("interval", &interval);
  m.def("seminorm", &seminorm);
  m.def("period_order", [](const ResidueSet& s) { return period_group(s).order(); });
  m.def("kneser", [](const ResidueSet& a, const ResidueSet& b) { return dump(kneser_check(a, b)); });
  m.def("normalize", [](std::int64_t a, std::uint32_t q) { return dump(normalize_difference(a, q)); });

  m.def("alpha", &alpha);
  m.def("alpha_profile", &alpha_profile);
  m.def("min_alpha", &min_alpha);
  m.def("decompose", [](const ResidueSet& a, std::uint32_t t) { return dump(decompose(a, t)); });
  m.def("uniqueness", [](const ResidueSet& a) { return dump(check_uniqueness(a)); });
  m.def("stability", [](const ResidueSet& a, bool strict) { return dump(stability(a, strict)); },
        py::arg("a"), py::arg("strict") = false);

  m.def(
      "xi",
      [](const ResidueSet& a, std::uint32_t n, bool exact, std::uint64_t max_nodes) {
        if (exact) return dump(xi_naive(a, n));
        SearchLimits lim;
        lim.max_nodes = max_nodes;
        return dump(xi_search(a, n, lim));
      },
      py::arg("a"), py::arg("n"), py::arg("exact") = false, py::arg("max_nodes") = 200'000'000ULL);
  m.def("sidon", [](const ResidueSet& b) { return dump(sidon_check(b)); });
  m.def("ruzsa", [](const ResidueSet& a, const ResidueSet& b) { return dump(ruzsa_bound_check(a, b)); });
  m.def("pluennecke", [](const ResidueSet& a, const ResidueSet& b) { return dump(pluennecke_subset(a, b)); });
  m.def("range_thresholds", [](std::int64_t k) { return dump(range_thresholds(k)); });

  m.def("is_digital", [](const ResidueSet& a) { return is_digital(a).has_value(); });
  m.def("prime_condition", [](std::uint64_t mm, std::uint64_t q) { return prime_condition(mm, q).accepted(); });
  m.def("carries", [](const ResidueSet& a) {
    const auto w = is_digital(a);
    if (!w) throw InvalidArgument("not a digital set: " + a.to_string());
    return dump(carry_stats(*w));
  });
  m.def("digital_set_count", &digital_set_count);
  m.def("digital_set_at", [](std::uint32_t mm, std::uint32_t q, std::uint64_t i) {
    return digital_set_at(mm, q, i).set;
  });
  m.def("carry_extremality", [](std::uint32_t mm) { return dump(verify_carry_extremality(mm)); });

  m.def("xi2_xi3", [](const ResidueSet& a) { return dump(xi2_xi3(a)); });
  m.def("chains", [](const ResidueSet& a, std::uint32_t d1, std::uint32_t d2) {
    return dump(extract_chain_structure(a, d1, d2));
  });
  m.def("construction", [](std::uint32_t mm) { return dump(build_construction(mm)); });
  m.def("projection", [](std::uint32_t mm) { return dump(project_to_prime(build_construction(mm))); });
  m.def(
      "mu",
      [](std::uint32_t p, bool exhaustive) {
        return dump(compute_mu(p, exhaustive ? MuStrategy::exhaustive : MuStrategy::bounded));
      },
      py::arg("p"), py::arg("exhaustive") = true);

  m.def("suites", [] {
    std::vector<std::string> names;
    for (const auto& s : suites()) names.push_back(s.name);
    return names;
  });
  m.def(
      "run_suite",
      [](const std::string& name, std::uint64_t seed, unsigned workers, const std::string& profile) {
        const auto cfg = run_config(seed, workers, profile);
        VerificationReport r;
        {
          py::gil_scoped_release release;
          r = run_suite(name, cfg);
        }
        return dump(r);
      },
      py::arg("name"), py::arg("seed") = 0, py::arg("workers") = 1, py::arg("profile") = "smoke");
}
