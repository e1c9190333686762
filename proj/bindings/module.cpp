#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>

#include "gcsa/density.hpp"
#include "gcsa/estimators.hpp"
#include "gcsa/experiments.hpp"
#include "gcsa/filters.hpp"
#include "gcsa/graph.hpp"
#include "gcsa/processes.hpp"
#include "gcsa/robust.hpp"
#include "gcsa/validation.hpp"

namespace py = pybind11;
using namespace gcsa;

namespace {

PeriodogramForm form_from_string(const std::string& form) {
  if (form == "periodogram") return PeriodogramForm::periodogram;
  if (form == "correlogram") return PeriodogramForm::correlogram;
  if (form == "least_squares" || form == "least-squares")
    return PeriodogramForm::least_squares;
  throw std::invalid_argument("unknown periodogram form: " + form);
}

}  // namespace

PYBIND11_MODULE(_gcsa, m) {
  m.doc() = "Cross-spectral analysis of bivariate graph signals";

  // ---- graphs -----------------------------------------------------------
  py::class_<Edge>(m, "Edge")
      .def(py::init([](int src, int dst, double weight) {
             return Edge{src, dst, weight};
           }),
           py::arg("src"), py::arg("dst"), py::arg("weight") = 1.0)
      .def_readonly("src", &Edge::src)
      .def_readonly("dst", &Edge::dst)
      .def_readonly("weight", &Edge::weight);

  py::class_<Graph>(m, "Graph")
      .def(py::init([](int n_nodes, const std::vector<std::tuple<int, int, double>>& edges) {
             std::vector<Edge> parsed;
             parsed.reserve(edges.size());
             for (const auto& [i, j, w] : edges) parsed.push_back({i, j, w});
             return Graph(n_nodes, std::move(parsed));
           }),
           py::arg("n_nodes"), py::arg("edges"))
      .def_property_readonly("n_nodes", &Graph::n_nodes)
      .def_property_readonly("edges",
                             [](const Graph& g) {
                               std::vector<std::tuple<int, int, double>> out;
                               for (const auto& e : g.edges())
                                 out.emplace_back(e.src, e.dst, e.weight);
                               return out;
                             })
      .def("adjacency_matrix", &Graph::adjacency_matrix)
      .def("degree", &Graph::degree)
      .def("__repr__", [](const Graph& g) {
        return "<gcsa.Graph n=" + std::to_string(g.n_nodes()) + " edges=" +
               std::to_string(g.edges().size()) + ">";
      });

  m.def("karate_club", &karate_club);
  m.def("path_graph", &path_graph, py::arg("n"));
  m.def("sensor_graph", &sensor_graph, py::arg("n"), py::arg("k"),
        py::arg("seed"), py::arg("box") = 20.0);
  m.def("load_edge_list", &load_edge_list, py::arg("csv_text"));
  m.def("graph_to_json", &graph_to_json);
  m.def("graph_from_json", &graph_from_json);
  m.def("hop_distance", &hop_distance, py::arg("graph"), py::arg("i"),
        py::arg("j"));
  m.def("is_connected", &is_connected);
  m.attr("UNREACHABLE") = kUnreachable;

  py::class_<ShiftOperator>(m, "ShiftOperator")
      .def_readonly("matrix", &ShiftOperator::matrix)
      .def_property_readonly("kind", [](const ShiftOperator& s) {
        switch (s.kind) {
          case ShiftKind::laplacian: return "laplacian";
          case ShiftKind::adjacency: return "adjacency";
          default: return "custom";
        }
      });
  m.def("laplacian", &laplacian);
  m.def("adjacency", &adjacency);
  m.def("custom_shift", &custom_shift, py::arg("graph"), py::arg("matrix"));
  m.def("gershgorin_bound", &gershgorin_bound);

  py::class_<SpectralBasis>(m, "SpectralBasis")
      .def_readonly("eigenvalues", &SpectralBasis::eigenvalues)
      .def_readonly("eigenvectors", &SpectralBasis::eigenvectors)
      .def_property_readonly("lambda_max", &SpectralBasis::lambda_max)
      .def("__len__", &SpectralBasis::size);
  m.def("eigendecompose", &eigendecompose);

  // ---- filters ----------------------------------------------------------
  py::class_<FilterKernel>(m, "FilterKernel")
      .def(py::init<std::string, std::function<double(double)>, bool, double>(),
           py::arg("name"), py::arg("evaluator"), py::arg("normalized_domain"),
           py::arg("finite_check_upper") = 1.0)
      .def("__call__", &FilterKernel::operator(), py::arg("lam"),
           py::arg("lambda_max"))
      .def_property_readonly("name", &FilterKernel::name)
      .def_property_readonly("normalized_domain",
                             &FilterKernel::normalized_domain);
  m.def("builtin_kernel",
        py::overload_cast<const std::string&>(&builtin_kernel),
        py::arg("name"));
  m.def("wft_gaussian", &wft_gaussian, py::arg("sigma2"));
  m.def("identity_kernel", &identity_kernel);
  m.def("zero_kernel", &zero_kernel);
  m.def("kernel_values", &kernel_values);
  m.def("exact_filter", &exact_filter, py::arg("basis"), py::arg("kernel"),
        py::arg("x"));
  m.def("filter_matrix", &filter_matrix);
  m.def("frequency_response", &frequency_response);

  py::class_<ChebyshevFilter>(m, "ChebyshevFilter")
      .def_readonly("coeffs", &ChebyshevFilter::coeffs)
      .def_readonly("lambda_max", &ChebyshevFilter::lambda_max)
      .def_readonly("order", &ChebyshevFilter::order);
  py::class_<ChebyshevFit>(m, "ChebyshevFit")
      .def_readonly("filter", &ChebyshevFit::filter)
      .def_readonly("grid_error", &ChebyshevFit::grid_error);
  m.def("chebyshev_fit", &chebyshev_fit, py::arg("kernel"), py::arg("order"),
        py::arg("lambda_max"));
  m.def("chebyshev_eval", &chebyshev_eval);
  m.def("chebyshev_apply", &chebyshev_apply, py::arg("shift"),
        py::arg("filter"), py::arg("x"));
  m.def("filter_to_json", &filter_to_json);
  m.def("filter_from_json", &filter_from_json);

  // ---- processes --------------------------------------------------------
  py::class_<SignalEnsemble>(m, "SignalEnsemble")
      .def(py::init([](const Eigen::MatrixXd& data, std::uint64_t seed) {
             SignalEnsemble e;
             e.data = data;
             e.seed = seed;
             return e;
           }),
           py::arg("data"), py::arg("seed") = 0)
      .def_readonly("data", &SignalEnsemble::data)
      .def_readonly("seed", &SignalEnsemble::seed)
      .def_property_readonly("n", &SignalEnsemble::n)
      .def_property_readonly("realizations", &SignalEnsemble::realizations)
      .def("realization", &SignalEnsemble::realization);
  m.def("generate_white", &generate_white, py::arg("n"), py::arg("R"),
        py::arg("seed"));
  m.def(
      "generate_jws_pair",
      [](const SpectralBasis& basis, const FilterKernel& k1,
         const FilterKernel& k2, int R, std::uint64_t seed, double rho) {
        const JwsPair pair = generate_jws_pair(basis, k1, k2, R, seed, rho);
        return py::make_tuple(pair.x, pair.y);
      },
      py::arg("basis"), py::arg("k1"), py::arg("k2"), py::arg("R"),
      py::arg("seed"), py::arg("rho") = 1.0);
  m.def("gft", &gft);
  m.def("igft", &igft);
  m.def(
      "sample_cross_covariance",
      [](const SignalEnsemble& ex, const SignalEnsemble& ey) {
        return sample_cross_covariance(ex, ey).matrix;
      },
      py::arg("ex"), py::arg("ey"));
  m.def(
      "stationarity_measure",
      [](const SpectralBasis& basis, const Eigen::MatrixXd& sigma) {
        return stationarity_measure(basis,
                                    {sigma, CovarianceKind::cross});
      },
      py::arg("basis"), py::arg("sigma"));
  m.def("true_gcsd", &true_gcsd, py::arg("basis"), py::arg("k1"),
        py::arg("k2"), py::arg("rho") = 1.0);
  m.def("true_gpsd", &true_gpsd);
  m.def("ensemble_to_csv", &ensemble_to_csv);
  m.def("ensemble_from_csv", &ensemble_from_csv);

  // ---- densities and estimators ------------------------------------------
  py::class_<SpectralDensity>(m, "SpectralDensity")
      .def_readonly("frequencies", &SpectralDensity::frequencies)
      .def_readonly("values", &SpectralDensity::values)
      .def_readonly("clipped", &SpectralDensity::clipped)
      .def_property_readonly("kind",
                             [](const SpectralDensity& d) {
                               return to_string(d.kind);
                             })
      .def("__len__", &SpectralDensity::size);
  m.def("density_to_json", &density_to_json);
  m.def("density_from_json", &density_from_json);
  m.def("density_to_csv", &density_to_csv);

  py::class_<WindowBank>(m, "WindowBank")
      .def(py::init([](const std::vector<Eigen::VectorXd>& windows) {
        return make_window_bank(windows);
      }))
      .def_property_readonly("windows",
                             [](const WindowBank& b) { return b.windows; })
      .def("__len__", &WindowBank::size);
  m.def("all_ones_bank", &all_ones_bank, py::arg("n"), py::arg("count"));
  m.def("random_window_bank", &random_window_bank, py::arg("basis"),
        py::arg("count"), py::arg("noise_scale"), py::arg("seed"));
  m.def("window_dual", &window_dual);

  m.def(
      "cross_periodogram",
      [](const SpectralBasis& basis, const SignalEnsemble& ex,
         const SignalEnsemble& ey, const std::string& form,
         bool general_least_squares) {
        return cross_periodogram(basis, ex, ey, form_from_string(form),
                                 general_least_squares);
      },
      py::arg("basis"), py::arg("ex"), py::arg("ey"),
      py::arg("form") = "periodogram",
      py::arg("general_least_squares") = false);
  m.def(
      "periodogram",
      [](const SpectralBasis& basis, const SignalEnsemble& ex,
         const std::string& form) {
        return periodogram(basis, ex, form_from_string(form));
      },
      py::arg("basis"), py::arg("ex"), py::arg("form") = "periodogram");
  m.def("windowed_cross_periodogram", &windowed_cross_periodogram,
        py::arg("basis"), py::arg("x"), py::arg("y"), py::arg("w"));
  m.def("windowed_average_cross_periodogram",
        &windowed_average_cross_periodogram, py::arg("basis"), py::arg("x"),
        py::arg("y"), py::arg("bank"));
  m.def("windowed_expectation", &windowed_expectation, py::arg("basis"),
        py::arg("bank"), py::arg("p_true"));
  py::class_<WftDesign>(m, "WftDesign")
      .def_readonly("tau", &WftDesign::tau)
      .def_readonly("sigma2", &WftDesign::sigma2);
  m.def("wft_design", &wft_design, py::arg("lambda_max"), py::arg("K"));
  m.def("wft_estimator", &wft_estimator, py::arg("basis"), py::arg("x"),
        py::arg("y"), py::arg("K"), py::arg("include_zero") = false);
  m.def("wft_estimator_chebyshev", &wft_estimator_chebyshev, py::arg("shift"),
        py::arg("lambda_max"), py::arg("x"), py::arg("y"), py::arg("K"),
        py::arg("order") = 30, py::arg("probes") = 16, py::arg("seed") = 0);
  m.def("coherence", &coherence, py::arg("p_x"), py::arg("p_y"),
        py::arg("p_xy"), py::arg("floor"));
  m.def("default_coherence_floor", &default_coherence_floor);
  m.def("theoretical_variance", &theoretical_variance, py::arg("p_x"),
        py::arg("p_y"), py::arg("p_xy"), py::arg("R"));
  m.def("windowed_variance_trace", &windowed_variance_trace, py::arg("basis"),
        py::arg("bank"), py::arg("p_x"), py::arg("p_y"), py::arg("p_xy"));

  // ---- robust -------------------------------------------------------------
  py::class_<HuberConfig>(m, "HuberConfig")
      .def(py::init<>())
      .def_readwrite("cutoff", &HuberConfig::cutoff)
      .def_readwrite("max_iter", &HuberConfig::max_iter)
      .def_readwrite("tol", &HuberConfig::tol)
      .def_readwrite("weight_floor", &HuberConfig::weight_floor);
  py::class_<RobustResult>(m, "RobustResult")
      .def_readonly("estimate", &RobustResult::estimate)
      .def_readonly("converged", &RobustResult::converged)
      .def_readonly("iterations", &RobustResult::iterations)
      .def_readonly("objective_history", &RobustResult::objective_history);
  m.def("huber_loss", &huber_loss, py::arg("t"), py::arg("c"));
  m.def("irls_solve", &irls_solve, py::arg("basis"), py::arg("sigma_hat"),
        py::arg("config"), py::arg("init"));
  m.def(
      "m_type_psd",
      [](const SpectralBasis& basis, const Eigen::VectorXd& x,
         const std::optional<WindowBank>& bank, const HuberConfig& config) {
        return m_type_psd(basis, x, bank ? &*bank : nullptr, config);
      },
      py::arg("basis"), py::arg("x"), py::arg("bank") = std::nullopt,
      py::arg("config") = HuberConfig{});
  m.def(
      "m_type_csd",
      [](const SpectralBasis& basis, const Eigen::VectorXd& x,
         const Eigen::VectorXd& y, const std::optional<WindowBank>& bank,
         const HuberConfig& config) {
        return m_type_csd(basis, x, y, bank ? &*bank : nullptr, config);
      },
      py::arg("basis"), py::arg("x"), py::arg("y"),
      py::arg("bank") = std::nullopt, py::arg("config") = HuberConfig{});
  m.def("inject_outlier", &inject_outlier, py::arg("x"), py::arg("node"),
        py::arg("value"));

  // ---- validation helpers -------------------------------------------------
  m.def("mse", &mse, py::arg("est"), py::arg("truth"));
  py::class_<SharedComponentConfig>(m, "SharedComponentConfig")
      .def(py::init<>())
      .def_readwrite("i_shared", &SharedComponentConfig::i_shared)
      .def_readwrite("i_x", &SharedComponentConfig::i_x)
      .def_readwrite("i_y", &SharedComponentConfig::i_y)
      .def_readwrite("amp_shared", &SharedComponentConfig::amp_shared)
      .def_readwrite("amp_private", &SharedComponentConfig::amp_private)
      .def_readwrite("window_count", &SharedComponentConfig::window_count)
      .def_readwrite("noise_scale", &SharedComponentConfig::noise_scale)
      .def_readwrite("wft_filters", &SharedComponentConfig::wft_filters)
      .def_readwrite("seed", &SharedComponentConfig::seed)
      .def_property(
          "estimator",
          [](const SharedComponentConfig& c) {
            return c.estimator == SharedEstimator::wft ? "wft"
                                                       : "windowed_average";
          },
          [](SharedComponentConfig& c, const std::string& name) {
            if (name == "wft") c.estimator = SharedEstimator::wft;
            else if (name == "windowed_average")
              c.estimator = SharedEstimator::windowed_average;
            else
              throw std::invalid_argument("unknown estimator: " + name);
          });
  py::class_<SharedComponentReport>(m, "SharedComponentReport")
      .def_readonly("gcsd_argmax", &SharedComponentReport::gcsd_argmax)
      .def_readonly("psd_x_argmax", &SharedComponentReport::psd_x_argmax)
      .def_readonly("psd_y_argmax", &SharedComponentReport::psd_y_argmax)
      .def_readonly("shared_index", &SharedComponentReport::shared_index)
      .def_readonly("shared_detected", &SharedComponentReport::shared_detected)
      .def_readonly("psd_masks_shared",
                    &SharedComponentReport::psd_masks_shared)
      .def_readonly("gcsd_peak", &SharedComponentReport::gcsd_peak);
  m.def("shared_component_experiment", &shared_component_experiment,
        py::arg("basis"), py::arg("config"));

  m.attr("__version__") = "0.1.0";
}
