#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <vector>

#include "isvd/block_stack.hpp"
#include "isvd/decomposition.hpp"
#include "isvd/detection.hpp"
#include "isvd/errors.hpp"
#include "isvd/linalg.hpp"
#include "isvd/matrix_io.hpp"
#include "isvd/synthesis.hpp"

namespace py = pybind11;

namespace {

using Array = py::array_t<double, py::array::c_style | py::array::forcecast>;

isvd::DenseMatrix to_matrix(const Array& a) {
  if (a.ndim() != 2) throw isvd::ShapeError("expected a 2-D array");
  const auto rows = static_cast<std::size_t>(a.shape(0));
  const auto cols = static_cast<std::size_t>(a.shape(1));
  std::vector<double> entries(a.data(), a.data() + rows * cols);
  return {rows, cols, std::move(entries)};
}

isvd::Vector to_vector(const Array& a) {
  if (a.ndim() != 1) throw isvd::ShapeError("expected a 1-D array");
  return {a.data(), a.data() + a.shape(0)};
}

Array from_vector(const isvd::Vector& v) {
  Array out(static_cast<py::ssize_t>(v.size()));
  std::copy(v.begin(), v.end(), out.mutable_data());
  return out;
}

Array from_matrix(const isvd::DenseMatrix& m) {
  Array out({static_cast<py::ssize_t>(m.rows()), static_cast<py::ssize_t>(m.cols())});
  std::copy(m.entries().begin(), m.entries().end(), out.mutable_data());
  return out;
}

isvd::BlockStack to_stack(const std::vector<Array>& blocks, std::vector<std::string> labels) {
  std::vector<isvd::DenseMatrix> mats;
  for (const auto& b : blocks) mats.push_back(to_matrix(b));
  return isvd::BlockStack(std::move(mats), std::move(labels));
}

isvd::DetectionConfig detection(std::optional<double> sigma, double scale) {
  isvd::DetectionConfig cfg;
  cfg.threshold_scale = scale;
  if (sigma) {
    cfg.sigma_mode = isvd::SigmaMode::fixed;
    cfg.sigma = *sigma;
  }
  return cfg;
}

py::tuple triple_tuple(const isvd::SingularTriple& t) {
  return py::make_tuple(from_vector(t.left), t.value, from_vector(t.right));
}

py::dict truth_dict(const isvd::PlantedTruth& truth) {
  py::list signals;
  for (const auto& s : truth.signals) signals.append(from_vector(s));
  py::dict d;
  d["signals"] = signals;
  d["supports"] = truth.supports;
  d["predicted_eigenvalues"] = truth.predicted_eigenvalues;
  d["eigenvalue_kind"] = truth.eigenvalue_kind == isvd::EigenvalueKind::exact ? "exact" : "approximate";
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Iterative rank-one decomposition of stacked matrices with support detection.";

  py::register_exception<isvd::ShapeError>(m, "ShapeError", PyExc_ValueError);
  py::register_exception<isvd::ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<isvd::ZeroMatrixError>(m, "ZeroMatrixError", PyExc_ValueError);
  py::register_exception<isvd::ConvergenceError>(m, "ConvergenceError", PyExc_RuntimeError);

  m.def(
      "leading_triple",
      [](const Array& a, double tol, std::size_t max_iter, std::uint64_t seed) {
        return triple_tuple(isvd::leading_triple(to_matrix(a), {tol, max_iter}, seed));
      },
      py::arg("a"), py::arg("tol") = 1e-10, py::arg("max_iter") = 10000, py::arg("seed") = 0,
      "Leading (left, value, right) singular triple by power iteration.");

  m.def(
      "spectral_norm",
      [](const Array& a, double tol, std::size_t max_iter, std::uint64_t seed) {
        return isvd::spectral_norm(to_matrix(a), {tol, max_iter}, seed);
      },
      py::arg("a"), py::arg("tol") = 1e-10, py::arg("max_iter") = 10000, py::arg("seed") = 0);

  py::class_<isvd::IsvdFactor>(m, "Factor")
      .def_readonly("iteration", &isvd::IsvdFactor::iteration)
      .def_readonly("global_value", &isvd::IsvdFactor::global_value)
      .def_property_readonly("right_signal",
                             [](const isvd::IsvdFactor& f) { return from_vector(f.right_signal); })
      .def_property_readonly("unit_right",
                             [](const isvd::IsvdFactor& f) { return from_vector(f.unit_right); })
      .def_property_readonly("block_detectors",
                             [](const isvd::IsvdFactor& f) {
                               py::list out;
                               for (const auto& u : f.block_detectors.pieces) out.append(from_vector(u));
                               return out;
                             })
      .def_readonly("block_weights", &isvd::IsvdFactor::block_weights)
      .def_readonly("supports", &isvd::IsvdFactor::supports)
      .def_readonly("block_thresholds", &isvd::IsvdFactor::block_thresholds)
      .def_readonly("block_zero_noise", &isvd::IsvdFactor::block_zero_noise)
      .def_readonly("gap_below", &isvd::IsvdFactor::gap_below);

  py::class_<isvd::IsvdReport>(m, "Report")
      .def_readonly("factors", &isvd::IsvdReport::factors)
      .def_readonly("residual_norms", &isvd::IsvdReport::residual_norms)
      .def_property_readonly("stop_reason",
                             [](const isvd::IsvdReport& r) { return std::string(isvd::to_string(r.stop_reason)); })
      .def_readonly("failure_message", &isvd::IsvdReport::failure_message)
      .def_readonly("stop_threshold", &isvd::IsvdReport::stop_threshold)
      .def_readonly("max_iters", &isvd::IsvdReport::max_iters);

  m.def(
      "decompose",
      [](const std::vector<Array>& blocks, std::optional<double> threshold,
         std::optional<double> relative_threshold, std::optional<std::size_t> max_iters,
         std::optional<double> sigma, double threshold_scale, double tol,
         std::size_t solver_max_iter, std::uint64_t seed, bool reorthogonalize) {
        isvd::IsvdOptions opt;
        if (threshold && relative_threshold) {
          throw std::invalid_argument("give either threshold or relative_threshold, not both");
        }
        if (threshold) opt.stop = isvd::StopThreshold::absolute(*threshold);
        if (relative_threshold) opt.stop = isvd::StopThreshold::relative(*relative_threshold);
        opt.max_iters = max_iters;
        opt.detection = detection(sigma, threshold_scale);
        opt.solver = {tol, solver_max_iter};
        opt.seed = seed;
        opt.reorthogonalize = reorthogonalize;
        return isvd::run(to_stack(blocks, {}), opt);
      },
      py::arg("blocks"), py::kw_only(), py::arg("threshold") = py::none(),
      py::arg("relative_threshold") = py::none(), py::arg("max_iters") = py::none(),
      py::arg("sigma") = py::none(), py::arg("threshold_scale") = 1.0, py::arg("tol") = 1e-10,
      py::arg("solver_max_iter") = 10000, py::arg("seed") = 0, py::arg("reorthogonalize") = false,
      "Run the iterative decomposition on a list of blocks sharing a column count.");

  m.def(
      "universal_threshold",
      [](const Array& u, std::optional<double> sigma, double scale) {
        const auto t = isvd::universal_threshold(to_vector(u), detection(sigma, scale));
        return py::make_tuple(t.tau, t.sigma_hat, t.zero_noise);
      },
      py::arg("u"), py::arg("sigma") = py::none(), py::arg("threshold_scale") = 1.0,
      "Returns (tau, sigma_hat, zero_noise).");

  m.def(
      "detect_support",
      [](const Array& u, double tau) { return isvd::detect_support(to_vector(u), tau); },
      py::arg("u"), py::arg("tau"));

  m.def(
      "gen_theorem2",
      [](std::size_t s1_rows_a1, std::size_t s2_rows_a1, std::size_t s1_rows_a2, std::size_t dim,
         std::uint64_t seed, bool permute_rows) {
        auto inst = isvd::gen_theorem2({s1_rows_a1, s2_rows_a1, s1_rows_a2, dim, seed, permute_rows});
        py::list blocks;
        for (const auto& b : inst.stack.blocks()) blocks.append(from_matrix(b));
        return py::make_tuple(blocks, truth_dict(inst.truth));
      },
      py::arg("s1_rows_a1"), py::arg("s2_rows_a1"), py::arg("s1_rows_a2"), py::arg("dim"),
      py::arg("seed") = 0, py::arg("permute_rows") = false);

  m.def(
      "gen_theorem3",
      [](std::size_t signal_rows, std::size_t total_rows, std::size_t dim, double sigma,
         std::uint64_t seed) {
        auto inst = isvd::gen_theorem3({signal_rows, total_rows, dim, sigma, seed});
        return py::make_tuple(from_matrix(inst.matrix), truth_dict(inst.truth));
      },
      py::arg("signal_rows"), py::arg("total_rows"), py::arg("dim"), py::arg("sigma"),
      py::arg("seed") = 0);

  m.def(
      "gram_residual",
      [](const Array& a, const Array& s, std::size_t rows) {
        return isvd::gram_residual(to_matrix(a), to_vector(s), rows);
      },
      py::arg("a"), py::arg("s"), py::arg("m"));

  m.def(
      "chebyshev_check",
      [](std::size_t dim, std::size_t rows, double sigma, double eps, std::size_t trials,
         std::uint64_t seed) {
        const auto r = isvd::chebyshev_check(dim, rows, sigma, eps, trials, seed);
        py::dict d;
        d["empirical_rate"] = r.empirical_rate;
        d["bound"] = r.bound;
        d["standard_error"] = r.standard_error;
        d["samples"] = r.samples;
        return d;
      },
      py::arg("dim"), py::arg("m"), py::arg("sigma"), py::arg("eps"), py::arg("trials"),
      py::arg("seed") = 0);

  m.def(
      "roc_sweep",
      [](std::size_t signal_rows, std::size_t total_rows, std::size_t dim,
         std::vector<double> sigmas, std::size_t trials, std::uint64_t seed,
         std::optional<double> sigma, double threshold_scale) {
        isvd::RocOptions opt;
        opt.detection = detection(sigma, threshold_scale);
        const auto r = isvd::roc_sweep({signal_rows, total_rows, dim, std::move(sigmas)}, trials,
                                       seed, opt);
        py::list points;
        for (const auto& p : r.points) {
          py::dict d;
          d["snr"] = p.snr;
          d["tpr"] = p.true_positive_rate;
          d["fpr"] = p.false_positive_rate;
          d["trials"] = p.trials;
          points.append(d);
        }
        return py::make_tuple(points, r.critical_snr);
      },
      py::arg("signal_rows"), py::arg("total_rows"), py::arg("dim"), py::arg("noise_sigmas"),
      py::arg("trials"), py::arg("seed") = 0, py::arg("sigma") = py::none(),
      py::arg("threshold_scale") = 1.0,
      "Returns ([{snr, tpr, fpr, trials}, ...], critical_snr or None).");

  m.def(
      "load_matrix",
      [](const std::string& path, bool header) { return from_matrix(isvd::load_matrix(path, isvd::MatrixFormat::automatic, header)); },
      py::arg("path"), py::arg("header") = false);

  m.def(
      "save_matrix",
      [](const std::string& path, const Array& a) { isvd::save_matrix(path, to_matrix(a)); },
      py::arg("path"), py::arg("a"));
}
