// Copyright 2026 The rmt-lab Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "rmtlab/config.hpp"
#include "rmtlab/ensembles.hpp"
#include "rmtlab/error.hpp"
#include "rmtlab/experiments.hpp"
#include "rmtlab/io.hpp"
#include "rmtlab/linalg.hpp"
#include "rmtlab/smallball.hpp"
#include "rmtlab/spectra.hpp"
#include "rmtlab/vector_geometry.hpp"

namespace py = pybind11;
using namespace rmtlab;

namespace {

using CArray = py::array_t<Complex, py::array::c_style | py::array::forcecast>;

ComplexMatrix to_matrix(const CArray& a) {
  if (a.ndim() != 2) throw py::value_error("expected a 2-D array");
  ComplexMatrix m(a.shape(0), a.shape(1));
  std::copy(a.data(), a.data() + a.size(), m.data().begin());
  return m;
}

CArray to_array(const ComplexMatrix& m) {
  CArray out({m.rows(), m.cols()});
  std::copy(m.data().begin(), m.data().end(), out.mutable_data());
  return out;
}

std::vector<Complex> to_vector(const CArray& a) {
  if (a.ndim() != 1) throw py::value_error("expected a 1-D array");
  return {a.data(), a.data() + a.size()};
}

EnsembleSpec make_spec(std::size_t n, const std::string& dist, std::uint64_t seed, bool truncate,
                       double delta0) {
  EnsembleSpec spec;
  spec.n = n;
  spec.dist = EntryDistribution::parse(dist);
  spec.master_seed = seed;
  spec.truncate = truncate;
  spec.epsilon_exponent = delta0;
  spec.validate();
  return spec;
}

}  // namespace

PYBIND11_MODULE(_rmtlab, m) {
  m.doc() = "Native core of rmtlab";

  static py::exception<Error> error(m, "RmtError", PyExc_RuntimeError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::set_error(error, e.what());
    }
  });

  m.attr("__version__") = std::string(kToolVersion);

  m.def(
      "sample_matrix",
      [](std::size_t n, const std::string& dist, std::uint64_t seed, std::uint64_t trial,
         bool truncate, double delta0) {
        return to_array(sample_matrix(make_spec(n, dist, seed, truncate, delta0), trial));
      },
      py::arg("n"), py::arg("dist") = "complex-gaussian", py::arg("seed") = 0,
      py::arg("trial") = 0, py::arg("truncate") = false, py::arg("delta0") = 0.05,
      "One n x n sample with i.i.d. entries (unscaled).");
  m.def(
      "entry_moments",
      [](const std::string& dist) {
        const auto mo = EntryDistribution::parse(dist).moments();
        return py::dict(py::arg("second_abs") = mo.second_abs, py::arg("third_abs") = mo.third_abs,
                        py::arg("third_abs_bound") = mo.third_abs_bound,
                        py::arg("sigma1_sq") = mo.sigma1_sq, py::arg("sigma2_sq") = mo.sigma2_sq,
                        py::arg("sigma12") = mo.sigma12);
      },
      py::arg("dist"));

  m.def(
      "singular_values",
      [](const CArray& a) { return svd(to_matrix(a), false).singular_values; }, py::arg("a"));
  m.def(
      "eigenvalues", [](const CArray& a) { return eigenvalues(to_matrix(a)).eigenvalues; },
      py::arg("a"));
  m.def(
      "smallest_singular_value", [](const CArray& a) { return smallest_singular_value(to_matrix(a)); },
      py::arg("a"));
  m.def(
      "spectral_norm", [](const CArray& a) { return spectral_norm(to_matrix(a)); }, py::arg("a"));

  m.def(
      "esd2d", [](const CArray& x) { return esd2d(to_matrix(x)).eigenvalues; }, py::arg("x"),
      "Eigenvalues of x / sqrt(n).");
  m.def(
      "empirical_potential",
      [](const CArray& x, Complex z) { return empirical_potential(to_matrix(x), z); },
      py::arg("x"), py::arg("z"), "None when x / sqrt(n) - z I is singular.");
  m.def("circular_potential", &circular_potential, py::arg("z"));
  m.def("log_moment_v", &log_moment_v, py::arg("z"));
  m.def("ring_integral", &ring_integral, py::arg("z"), py::arg("r"));

  m.def(
      "lcd",
      [](std::vector<double> v, double alpha, std::size_t tau, double t_max) {
        LcdParams p;
        p.alpha = alpha;
        p.tau = tau;
        p.t_max = t_max;
        p.validate();
        return lcd(v, p);
      },
      py::arg("v"), py::arg("alpha") = 0.1, py::arg("tau") = 0, py::arg("t_max") = 1e4,
      "None means no admissible t up to t_max.");
  m.def(
      "distance_to_sparse",
      [](const CArray& b, double gamma) { return distance_to_sparse(UnitVector(to_vector(b)), gamma); },
      py::arg("b"), py::arg("gamma"));
  m.def(
      "classify",
      [](const CArray& b, double gamma, double rho) {
        switch (classify(UnitVector(to_vector(b)), gamma, rho)) {
          case VectorClass::kSparse: return "sparse";
          case VectorClass::kCompressible: return "compressible";
          default: return "incompressible";
        }
      },
      py::arg("b"), py::arg("gamma"), py::arg("rho"));

  m.def(
      "empirical_smallball",
      [](const CArray& b, const std::string& dist, double epsilon, std::size_t trials,
         std::uint64_t seed, std::optional<CArray> shift) {
        const auto coeffs = to_vector(b);
        std::vector<Complex> a;
        if (shift) a = to_vector(*shift);
        const auto e = empirical_smallball(coeffs, EntryDistribution::parse(dist), a, epsilon,
                                           trials, seed);
        return py::dict(py::arg("epsilon") = e.epsilon, py::arg("p_hat") = e.p_hat,
                        py::arg("trials") = e.trials, py::arg("half_width") = e.half_width,
                        py::arg("grid_bias") = e.grid_bias);
      },
      py::arg("b"), py::arg("dist"), py::arg("epsilon"), py::arg("trials") = 20000,
      py::arg("seed") = 0, py::arg("shift") = std::nullopt);
  m.def("paley_zygmund_mu", &paley_zygmund_mu, py::arg("lam"), py::arg("b"));
  m.def("berry_esseen_bound", &berry_esseen_bound, py::arg("n"), py::arg("epsilon"),
        py::arg("k1"), py::arg("k2"), py::arg("C"));
  m.def("lcd_bound", &lcd_bound, py::arg("epsilon"), py::arg("n"), py::arg("d"),
        py::arg("alpha"), py::arg("beta"), py::arg("C"), py::arg("c"));

  m.def(
      "canonical_config", [](const std::string& text) { return canonical_config(parse_config(text)); },
      py::arg("text"));
  m.def(
      "config_hash", [](const std::string& text) { return hash_hex(config_hash(parse_config(text))); },
      py::arg("text"));
  m.def(
      "run_experiment_json",
      [](const std::string& text, std::size_t workers) {
        const auto c = parse_config(text);
        Summary s;
        {
          py::gil_scoped_release release;
          s = run_experiment(c, workers);
        }
        return py::make_tuple(summary_json(s), trials_csv(s));
      },
      py::arg("text"), py::arg("workers") = 0);

  m.def(
      "scatter_svg",
      [](std::vector<Complex> eigenvalues, bool unit_circle, double extent) {
        return scatter_svg(Esd2D{std::move(eigenvalues)}, unit_circle, extent);
      },
      py::arg("eigenvalues"), py::arg("unit_circle") = true, py::arg("extent") = 1.5);
  m.def(
      "curve_svg",
      [](const std::vector<std::tuple<double, double, double, double>>& rows,
         const std::string& title, const std::string& x_label, const std::string& y_label) {
        std::vector<CurvePoint> pts;
        for (const auto& [x, y, lo, hi] : rows) pts.push_back({x, y, lo, hi});
        return curve_svg(pts, title, x_label, y_label);
      },
      py::arg("rows"), py::arg("title") = "", py::arg("x_label") = "x", py::arg("y_label") = "y");
}
