#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "adele/trace.hpp"

namespace py = pybind11;
using namespace adele;

namespace {

// Documents cross the boundary as JSON text; the Python side wraps them in
// dicts.

OrbitSumOptions lattice_options() {
  OrbitSumOptions o;
  o.lattice.tol = kDefaultLatticeTol;
  return o;
}

std::string verify(const std::string& text, double tol) {
  const Json doc = parse_json_text(text);
  TraceReport r = verify_trace_formula(hecke_from_json(doc), tol, lattice_options());
  r.metadata.input_sha256 = sha256_hex(text);
  if (doc.contains("generator") && doc["generator"].contains("seed")) r.metadata.seed = doc["generator"]["seed"].get<std::uint64_t>();
  return trace_report_to_json(r).dump();
}

std::string poisson(const std::string& text, double tol) {
  PoissonReport r = poisson_check(poisson_from_json(parse_json_text(text)), tol);
  r.metadata.input_sha256 = sha256_hex(text);
  return poisson_report_to_json(r).dump();
}

std::string chars(const std::string& text, std::uint64_t modulus) {
  return char_decomposition_to_json(char_decompose(hecke_from_json(parse_json_text(text)), modulus)).dump();
}

std::string fourier(const std::string& text) { return localsb_to_json(sb_fourier(localsb_from_json(parse_json_text(text)))).dump(); }

std::string spectral(const std::string& text, double tol) {
  OrbitSumOptions o;
  o.lattice.tol = tol;
  return spectral_to_json(spectral_side(hecke_from_json(parse_json_text(text)), o)).dump();
}

std::string geometric(const std::string& text, double tol) {
  OrbitSumOptions o;
  o.lattice.tol = tol;
  return geometric_to_json(geometric_total(hecke_from_json(parse_json_text(text)), o)).dump();
}

RandomBox make_box(const std::vector<std::uint64_t>& primes, long atoms, long max_level) {
  for (auto p : primes) {
    if (!is_prime(p)) throw std::invalid_argument(std::to_string(p) + " is not prime");
  }
  if (atoms < 0 || max_level < 0) throw std::invalid_argument("atoms and max_level must be non-negative");
  RandomBox box;
  box.primes = primes;
  box.atoms = atoms;
  box.max_level = max_level;
  return box;
}

std::string random_document(std::uint64_t seed, const std::vector<std::uint64_t>& primes, long atoms, long max_level,
                            const std::string& kind) {
  const RandomBox box = make_box(primes, atoms, max_level);
  Json doc;
  if (kind == "hecke") {
    doc = hecke_to_json(random_hecke(seed, box));
  } else if (kind == "poisson") {
    doc = poisson_to_json(random_poisson(seed, box));
  } else {
    throw std::invalid_argument("kind must be hecke or poisson");
  }
  doc["generator"] = {{"seed", seed}, {"primes", box.primes}, {"atoms", atoms}, {"max_level", max_level}, {"kind", kind}};
  return doc.dump();
}

py::tuple lattice_sum_arch(const std::string& arch_text, long denominator, double tol) {
  const BoundedValue v = lattice_sum(arch_from_json(parse_json_text(arch_text)), denominator, tol);
  return py::make_tuple(v.value, v.bound);
}

py::tuple psi(const std::string& x, std::uint64_t p) {
  const ComplexApprox v = cyclo_eval(psi_p(parse_rational(x), Prime(p)));
  return py::make_tuple(v.value(), v.err);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Trace formula for A^1 x| A over Q: compiled core";
  m.attr("__version__") = kVersion;
  m.attr("SCHEMA") = kSchema;

  static py::exception<ParseError> parse_error(m, "ParseError", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr e) {
    try {
      if (e) std::rethrow_exception(e);
    } catch (const ParseError& err) {
      PyErr_SetString(parse_error.ptr(), err.what());
    } catch (const ConductorOverflow& err) {
      PyErr_SetString(PyExc_OverflowError, err.what());
    }
  });

  m.def("verify", &verify, py::arg("document"), py::arg("tol") = 1e-8,
        "Both sides of the trace formula for a Hecke element document; returns the report as JSON text.");
  m.def("poisson", &poisson, py::arg("document"), py::arg("tol") = 1e-8, "Poisson summation check; JSON report.");
  m.def("chars", &chars, py::arg("document"), py::arg("modulus"), "Character decomposition of tr R_K mod N.");
  m.def("fourier", &fourier, py::arg("document"), "Local Fourier transform of a {p, atoms} document.");
  m.def("spectral", &spectral, py::arg("document"), py::arg("tol") = 1e-12);
  m.def("geometric", &geometric, py::arg("document"), py::arg("tol") = 1e-12);
  m.def("random_document", &random_document, py::arg("seed"), py::arg("primes") = std::vector<std::uint64_t>{2, 3, 5},
        py::arg("atoms") = 2, py::arg("max_level") = 2, py::arg("kind") = "hecke");
  m.def("lattice_sum", &lattice_sum_arch, py::arg("arch"), py::arg("denominator"), py::arg("tol"),
        "Sum of a Gaussian-atom list over (1/D)Z; returns (value, bound).");
  m.def("psi_p", &psi, py::arg("x"), py::arg("p"), "psi_p(x) for a rational string x; returns (value, radius).");
  m.def("sha256", &sha256_hex, py::arg("data"));
}
