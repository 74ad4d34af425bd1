// Python bindings for the main operations.  Reports cross the boundary as
// JSON text; the vb1 package turns them into dictionaries.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "vb1/acceptance.hpp"
#include "vb1/error.hpp"
#include "vb1/fp_group.hpp"
#include "vb1/matrix.hpp"
#include "vb1/pipeline.hpp"
#include "vb1/triangle.hpp"

namespace py = pybind11;

namespace {

vb1::IntMatrix to_matrix(const std::vector<std::vector<long long>>& rows) {
  std::size_t cols = rows.empty() ? 0 : rows[0].size();
  vb1::IntMatrix m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) throw vb1::InvalidArgument("ragged matrix");
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = static_cast<long>(rows[i][j]);
  }
  return m;
}

// Python ints of any size, via their decimal text.
py::object to_python(const vb1::Integer& x) { return py::int_(py::str(x.get_str())); }

py::list to_python(const vb1::IntMatrix& m) {
  py::list out;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    py::list row;
    for (std::size_t j = 0; j < m.cols(); ++j) row.append(to_python(m(i, j)));
    out.append(row);
  }
  return out;
}

vb1::PipelineOptions options(unsigned threads, unsigned power_bound) {
  vb1::PipelineOptions o;
  o.threads = threads;
  o.power_bound = power_bound;
  return o;
}

std::string dump(const vb1::BettiReport& r) { return r.to_json().dump(); }

}  // namespace

PYBIND11_MODULE(_vb1, m) {
  m.doc() = "First Betti numbers of finite covers of punctured-torus mapping tori";

  py::register_exception<vb1::ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<vb1::InvalidArgument>(m, "InvalidArgument", PyExc_ValueError);
  py::register_exception<vb1::ComputationError>(m, "ComputationError", PyExc_RuntimeError);
  py::register_exception<vb1::CertificateError>(m, "CertificateError", PyExc_RuntimeError);

  py::class_<vb1::Perm>(m, "Perm")
      .def(py::init([](const std::string& text, std::size_t degree) { return vb1::Perm::parse(text, degree); }),
           py::arg("cycles"), py::arg("degree") = 0)
      .def_property_readonly("degree", &vb1::Perm::degree)
      .def("cycles",
           [](const vb1::Perm& p) {
             std::vector<std::vector<std::uint32_t>> out;
             for (const auto& c : p.cycles()) {
               std::vector<std::uint32_t> one;
               for (auto x : c) one.push_back(x + 1);
               out.push_back(one);
             }
             return out;
           })
      .def("order", [](const vb1::Perm& p) { return to_python(p.order()); })
      .def("inverse", &vb1::Perm::inverse)
      .def("__mul__", [](const vb1::Perm& a, const vb1::Perm& b) { return a * b; })
      .def("__eq__", [](const vb1::Perm& a, const vb1::Perm& b) { return a == b; })
      .def("__str__", &vb1::Perm::to_string)
      .def("__repr__", [](const vb1::Perm& p) { return "Perm('" + p.to_string() + "')"; });

  m.def(
      "smith_normal_form",
      [](const std::vector<std::vector<long long>>& rows) {
        vb1::SmithForm s = vb1::smith_normal_form(to_matrix(rows));
        py::list diag;
        for (const auto& d : s.diagonal) diag.append(to_python(d));
        return py::make_tuple(diag, s.rank);
      },
      py::arg("rows"), "Smith diagonal and rank of an integer matrix given as a list of rows.");

  m.def(
      "abelianized",
      [](const std::string& word, std::size_t k) { return to_python(vb1::parse_twist_word(word, k).abelianized()); },
      py::arg("word"), py::arg("k") = 1, "Exponent-sum matrix of a twist word; column j is the image of generator j.");

  m.def(
      "abelianization",
      [](const std::string& presentation) {
        vb1::Abelianization a = vb1::abelianization(vb1::FPGroup::parse(presentation));
        py::list torsion;
        for (const auto& t : a.torsion) torsion.append(to_python(t));
        return py::make_tuple(a.betti, torsion);
      },
      py::arg("presentation"), "Betti number and torsion of 'gens: ... ; rels: ...'.");

  m.def(
      "grid_cover",
      [](std::uint32_t r, const std::vector<std::string>& sigma) {
        if (sigma.size() != 4) throw vb1::InvalidArgument("grid covers need four row permutations");
        std::array<vb1::Perm, 4> s;
        for (std::size_t i = 0; i < 4; ++i) s[i] = vb1::Perm::parse(sigma[i], r);
        return vb1::cover_descriptor(vb1::grid_cover(r, s)).dump();
      },
      py::arg("r"), py::arg("sigma"));
  m.def("figure_two_cover", [] { return vb1::cover_descriptor(vb1::figure_two_cover()).dump(); });

  m.def(
      "quotient",
      [](unsigned n, std::uint64_t seed, std::size_t cap, std::size_t min_order) {
        vb1::TriangleSearch search;
        search.seed = seed;
        search.cap = cap;
        search.min_order = min_order;
        return vb1::find_triangle_quotient(n, search).to_json().dump();
      },
      py::arg("n"), py::arg("seed") = 7, py::arg("cap") = 2000, py::arg("min_order") = 1);

  m.def(
      "case1",
      [](const std::string& f, unsigned threads, unsigned power_bound) {
        py::gil_scoped_release release;
        return dump(vb1::run_case1(vb1::Monodromy::twist_word(f), options(threads, power_bound)));
      },
      py::arg("f"), py::arg("threads") = 1, py::arg("power_bound") = 64);
  m.def(
      "case2",
      [](unsigned n, const std::string& f, std::uint64_t seed, std::size_t cap, std::size_t min_order,
         unsigned threads) {
        vb1::PipelineOptions o = options(threads, 64);
        o.search.seed = seed;
        o.search.cap = cap;
        o.search.min_order = min_order;
        py::gil_scoped_release release;
        return dump(vb1::run_case2(n, vb1::Monodromy::twist_word(f), o));
      },
      py::arg("n"), py::arg("f"), py::arg("seed") = 7, py::arg("cap") = 2000, py::arg("min_order") = 13,
      py::arg("threads") = 1);
  m.def(
      "multik",
      [](std::size_t k, const std::string& f, unsigned threads) {
        py::gil_scoped_release release;
        return dump(vb1::run_multik(k, vb1::Monodromy::twist_word(f, k), options(threads, 64)));
      },
      py::arg("k"), py::arg("f"), py::arg("threads") = 1);
  m.def(
      "reduce",
      [](const std::string& f, const std::vector<unsigned>& cones, std::size_t keep, bool feed) {
        if (keep < 1 || keep > cones.size()) throw vb1::InvalidArgument("keep must be a 1-based puncture index");
        py::gil_scoped_release release;
        return dump(vb1::run_reduction(vb1::Monodromy::twist_word(f, cones.size()), cones, keep - 1, {}, feed));
      },
      py::arg("f"), py::arg("cones"), py::arg("keep") = 1, py::arg("feed") = false);
  m.def(
      "selftest",
      [](std::uint64_t seed, std::size_t min_order, unsigned threads) {
        vb1::SelftestOptions o;
        o.seed = seed;
        o.case2_min_order = min_order;
        o.threads = threads;
        py::gil_scoped_release release;
        return vb1::selftest_json(o, vb1::run_selftest(o)).dump();
      },
      py::arg("seed") = 7, py::arg("min_order") = 50, py::arg("threads") = 1);
}
