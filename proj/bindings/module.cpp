#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "sbarc/experiments.hpp"
#include "sbarc/metric.hpp"
#include "sbarc/rankdec.hpp"
#include "sbarc/svg.hpp"

namespace py = pybind11;
using namespace sbarc;

namespace {

ModulePtr realize_on_compressed(const Presentation& pres) {
  return realize(pres, compress_grades(pres));
}

SignedBarcode py_rank_exact(const Presentation& pres) {
  return rank_exact_barcode(pres);
}

SignedBarcode py_mrd_hooks(const Presentation& pres) {
  return mrd_hooks(*realize_on_compressed(pres));
}

SignedBarcode py_mrd_rect(const Presentation& pres) {
  return mrd_rectangles(*realize_on_compressed(pres));
}

std::vector<std::vector<std::vector<double>>> py_usual_betti(
    const Presentation& pres) {
  auto grid = compress_grades(pres);
  auto mod = realize(pres, grid);
  std::vector<std::vector<std::vector<double>>> out;
  for (auto& deg : usual_betti(mod)) {
    std::vector<std::vector<double>> grades;
    for (int g : deg) grades.push_back(grid->grades_of(g));
    out.push_back(std::move(grades));
  }
  return out;
}

std::vector<std::vector<std::vector<std::vector<double>>>> py_upset_betti(
    const Presentation& pres) {
  auto grid_top = compress_grades(pres);
  std::vector<std::vector<double>> axes;
  for (int k = 0; k < grid_top->n(); ++k) axes.push_back(grid_top->axis(k));
  auto grid = build_grid(axes, false);
  auto ub = upset_betti(realize(pres, grid));
  std::vector<std::vector<std::vector<std::vector<double>>>> out;
  for (auto& deg : ub.res.betti) {
    std::vector<std::vector<std::vector<double>>> antichains;
    for (int u : deg) {
      std::vector<std::vector<double>> anti;
      for (int x : ub.poset->upset_antichain(u)) anti.push_back(grid->grades_of(x));
      antichains.push_back(std::move(anti));
    }
    out.push_back(std::move(antichains));
  }
  return out;
}

py::dict py_rank_invariant(const Presentation& pres) {
  auto grid = compress_grades(pres);
  auto mod = realize(pres, grid);
  auto rk = rank_invariant(*mod);
  py::dict out;
  auto as_tuple = [](const std::vector<double>& v) {
    py::tuple t(v.size());
    for (size_t k = 0; k < v.size(); ++k) t[k] = v[k];
    return t;
  };
  for (auto& [key, r] : rk.table)
    out[py::make_tuple(as_tuple(grid->grades_of(key.first)),
                       as_tuple(grid->grades_of(key.second)))] = r;
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "signed barcode invariants of multi-parameter persistence modules";
  m.attr("__version__") = "0.1.0";

  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);

  py::class_<Bar>(m, "Bar")
      .def(py::init<>())
      .def_readwrite("i", &Bar::i)
      .def_readwrite("j", &Bar::j)
      .def("__repr__", [](const Bar& b) {
        auto coord = [](const std::vector<double>& v) {
          std::string s = "(";
          for (size_t k = 0; k < v.size(); ++k) {
            if (k) s += ",";
            s += (v[k] == kInf) ? "inf" : std::to_string(v[k]);
          }
          return s + ")";
        };
        return "Bar(" + coord(b.i) + " -> " + coord(b.j) + ")";
      });

  py::enum_<BarShape>(m, "BarShape")
      .value("hook", BarShape::Hook)
      .value("rectangle", BarShape::Rectangle);

  py::class_<SignedBarcode>(m, "SignedBarcode")
      .def(py::init<>())
      .def_readwrite("n", &SignedBarcode::n)
      .def_readwrite("p", &SignedBarcode::p)
      .def_readwrite("shape", &SignedBarcode::shape)
      .def_readwrite("positive", &SignedBarcode::positive)
      .def_readwrite("negative", &SignedBarcode::negative)
      .def_readwrite("degrees", &SignedBarcode::degrees)
      .def("multiset_equal", &SignedBarcode::multiset_equal)
      .def("__len__", &SignedBarcode::size);

  py::class_<MatchingResult>(m, "MatchingResult")
      .def_readonly("epsilon", &MatchingResult::epsilon)
      .def("pairs",
           [](const MatchingResult& mr) {
             std::vector<std::tuple<int, int, double>> out;
             for (auto& p : mr.pairs) out.emplace_back(p.left, p.right, p.distance);
             return out;
           })
      .def("unmatched_left",
           [](const MatchingResult& mr) {
             std::vector<std::pair<int, double>> out;
             for (auto& u : mr.unmatched_left) out.emplace_back(u.index, u.to_zero);
             return out;
           })
      .def("unmatched_right", [](const MatchingResult& mr) {
        std::vector<std::pair<int, double>> out;
        for (auto& u : mr.unmatched_right) out.emplace_back(u.index, u.to_zero);
        return out;
      });

  py::class_<Presentation>(m, "Presentation")
      .def(py::init<>())
      .def_readwrite("n", &Presentation::n)
      .def_readwrite("p", &Presentation::p)
      .def("__repr__", [](const Presentation& pres) {
        return "Presentation(n=" + std::to_string(pres.n) +
               ", generators=" + std::to_string(pres.generators.size()) +
               ", relations=" + std::to_string(pres.relations.size()) + ")";
      });

  m.def("parse_presentation", &parse_presentation, py::arg("text"));
  m.def("rank_exact_decomposition", &py_rank_exact, py::arg("presentation"));
  m.def("mrd_hooks", &py_mrd_hooks, py::arg("presentation"));
  m.def("mrd_rectangles", &py_mrd_rect, py::arg("presentation"));
  m.def("mrd_rect_of_hook", &mrd_rect_of_hook, py::arg("i"), py::arg("j"));
  m.def("usual_betti", &py_usual_betti, py::arg("presentation"));
  m.def("upset_betti", &py_upset_betti, py::arg("presentation"));
  m.def("rank_invariant", &py_rank_invariant, py::arg("presentation"));

  m.def("hook_to_zero", [](const Bar& b) { return hook_to_zero(b); });
  m.def("rect_to_zero", [](const Bar& b) { return rect_to_zero(b); });
  m.def("hook_distance", [](const Bar& a, const Bar& b) { return hook_distance(a, b); });
  m.def("rect_distance", [](const Bar& a, const Bar& b) { return rect_distance(a, b); });

  m.def(
      "bottleneck",
      [](const std::vector<Bar>& left, const std::vector<Bar>& right,
         BarShape shape) { return bottleneck(left, right, shape); },
      py::arg("left"), py::arg("right"), py::arg("shape") = BarShape::Hook);
  m.def("signed_bottleneck", [](const SignedBarcode& a, const SignedBarcode& b) {
    auto sm = signed_bottleneck(a, b);
    return std::make_pair(sm.epsilon, sm.matching);
  });

  m.def("barcode_to_json", &barcode_to_json);
  m.def("barcode_from_json", &barcode_from_json);
  m.def("barcode_to_svg", &barcode_to_svg);

  m.def(
      "run_experiment",
      [](const std::string& id, uint64_t seed, uint32_t p,
         const std::map<std::string, long>& params) {
        auto report = run_experiment(id, seed, p, 0, params);
        return std::make_pair(report.passed, report.json);
      },
      py::arg("experiment"), py::arg("seed") = 0, py::arg("p") = 2,
      py::arg("params") = std::map<std::string, long>{});

  m.attr("INF") = kInf;
}
