// Python bindings. Structured results cross the boundary as JSON text and
// are decoded on the Python side.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "uag/corpus.hpp"
#include "uag/equivalence.hpp"
#include "uag/error.hpp"
#include "uag/io.hpp"
#include "uag/verify.hpp"

namespace py = pybind11;
using namespace uag;

namespace {
  std::string dump(io::Json const& j) {
    return j.dump();
  }

  FiniteAlgebra pick(io::AlgebraFile const& f, std::string const& name) {
    for (auto const& a : f.algebras) {
      if (a.name() == name) {
        return a;
      }
    }
    throw InputError("no algebra named \"" + name + "\"");
  }
}  // namespace

PYBIND11_MODULE(_uag, m) {
  m.doc() = "Universal algebraic geometry over finite algebras";

  // translators registered later are tried first: base class goes first
  py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
  py::register_exception<OutsideVariety>(m, "OutsideVariety", PyExc_ValueError);
  py::register_exception<CapExceeded>(m, "CapExceeded", PyExc_RuntimeError);

  py::class_<FiniteAlgebra>(m, "FiniteAlgebra")
      .def_property_readonly("name", &FiniteAlgebra::name)
      .def_property_readonly("size", &FiniteAlgebra::size)
      .def_property_readonly("signature",
                             [](FiniteAlgebra const& a) { return a.signature().to_string(); })
      .def("same_tables", &FiniteAlgebra::same_tables)
      .def("to_json", [](FiniteAlgebra const& a) { return dump(io::to_json(a)); })
      .def("__repr__", [](FiniteAlgebra const& a) {
        return "<FiniteAlgebra " + a.name() + " of size " + std::to_string(a.size()) + ">";
      });

  py::class_<Variety>(m, "Variety")
      .def(py::init([](std::vector<FiniteAlgebra> gens, std::size_t cap) {
             return Variety(std::move(gens), {}, cap);
           }),
           py::arg("generators"), py::arg("cap") = Variety::default_cap)
      .def_property_readonly("signature",
                             [](Variety const& v) { return v.signature().to_string(); })
      .def_property_readonly("generators",
                             [](Variety const& v) {
                               return std::vector<FiniteAlgebra>(v.generators().begin(),
                                                                 v.generators().end());
                             })
      .def("fingerprint", &Variety::fingerprint)
      .def("free_json", [](Variety const& v, std::size_t k) { return dump(io::to_json(*v.free(k))); })
      .def("free_rank_sizes",
           [](Variety const& v, std::size_t up_to) { return free_rank_sizes(v, up_to).sizes; })
      .def("contains", [](Variety const& v, FiniteAlgebra const& H) {
        return variety_membership(H, v);
      });

  m.def("parse_algebras", [](std::string const& text) { return io::parse_algebra_file(text).algebras; });
  m.def("read_algebras", [](std::string const& path) { return io::read_algebra_file(path).algebras; });
  m.def("read_algebra", [](std::string const& path, std::string const& name) {
    return pick(io::read_algebra_file(path), name);
  });
  m.def("read_variety", &io::read_variety, py::arg("path"), py::arg("cap") = Variety::default_cap);

  m.def("star_algebra", [](FiniteAlgebra const& H, std::string const& words) {
    return star_algebra(H, io::parse_words(words, H.signature()));
  });

  m.def("lattice_json", [](Variety const& v, FiniteAlgebra const& H, std::size_t rank) {
    PointSpace S(v.free(rank), H, v.cap());
    return dump(io::lattice_json(closed_lattice(S), S));
  });
  m.def("lattice_dot", [](Variety const& v, FiniteAlgebra const& H, std::size_t rank) {
    PointSpace S(v.free(rank), H, v.cap());
    return io::lattice_dot(closed_lattice(S), S);
  });

  m.def("check_words_json", [](Variety const& v, std::string const& words, std::size_t n_max) {
    auto ws = io::parse_words(words, v.signature());
    return dump(io::to_json(check_op2(ws, v, n_max ? n_max : default_n_max(v.signature())), ws, v));
  });

  m.def("geom_eq_json", [](FiniteAlgebra const& H1, FiniteAlgebra const& H2, Variety const& v,
                           std::size_t n_max) {
    return dump(io::to_json(geom_certificate(H1, H2, v, n_max ? n_max : default_n_max(v.signature())), v));
  });

  m.def("auto_eq_json", [](FiniteAlgebra const& H1, FiniteAlgebra const& H2, Variety const& v,
                           std::size_t depth, std::size_t n_max) {
    return dump(io::to_json(
        auto_equivalent_search(H1, H2, v, depth, n_max ? n_max : default_n_max(v.signature())), v));
  });

  m.def("verify_builtin_text", [] { return to_text(run_verification(corpus::builtin())); });

  auto c = m.def_submodule("corpus", "built-in algebras");
  c.def("s2", &corpus::s2);
  c.def("s2_squared", &corpus::s2_squared);
  c.def("trivial_semilattice", &corpus::trivial_semilattice);
  c.def("left_zero", &corpus::left_zero);
  c.def("cyclic", &corpus::cyclic);
  c.def("trivial_group", &corpus::trivial_group);
  c.def("s3", &corpus::s3);
  c.def("s3_transposed", &corpus::s3_transposed);
}
