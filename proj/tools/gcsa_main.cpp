// gcsa: cross-spectral analysis of bivariate graph signals.
//
// Subcommands cover the full pipeline: graph ingestion/eigendecomposition,
// stationary process generation, spectral density estimation, coherence,
// Huber M-type robust estimation, and the Monte-Carlo validation suite.
// Every command echoes a config JSON next to its outputs; `gcsa replay`
// re-runs a saved config and reproduces outputs bit for bit.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "gcsa/estimators.hpp"
#include "gcsa/experiments.hpp"
#include "gcsa/filters.hpp"
#include "gcsa/graph.hpp"
#include "gcsa/processes.hpp"
#include "gcsa/random.hpp"
#include "gcsa/robust.hpp"
#include "gcsa/validation.hpp"

namespace fs = std::filesystem;
using namespace gcsa;

namespace {

// ---------------------------------------------------------------------------
// Shared helpers
// ---------------------------------------------------------------------------

void atomic_write(const std::string& path, const std::string& content) {
  const fs::path target(path);
  if (target.has_parent_path()) fs::create_directories(target.parent_path());
  const fs::path tmp = target.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out << content;
  }
  fs::rename(tmp, target);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

/// Graph sources: "karate", "path:N", "sensor:N[,K[,seed]]", or a file path
/// (.json graph export or edge-list CSV).
Graph load_graph_source(const std::string& source) {
  if (source == "karate") return karate_club();
  if (source.rfind("path:", 0) == 0)
    return path_graph(std::stoi(source.substr(5)));
  if (source.rfind("sensor:", 0) == 0) {
    std::istringstream args(source.substr(7));
    std::string field;
    std::vector<std::string> fields;
    while (std::getline(args, field, ',')) fields.push_back(field);
    if (fields.empty() || fields.size() > 3)
      throw std::runtime_error("--graph sensor:N[,K[,seed]] is malformed");
    const int n = std::stoi(fields[0]);
    const int k = fields.size() > 1 ? std::stoi(fields[1]) : 5;
    const std::uint64_t seed =
        fields.size() > 2 ? std::stoull(fields[2]) : 0;
    return sensor_graph(n, k, seed);
  }
  const std::string text = read_file(source);
  if (!text.empty() && text[0] == '{') return graph_from_json(text);
  return load_edge_list(text);
}

std::vector<FilterKernel> parse_kernels(const std::string& arg) {
  std::vector<FilterKernel> kernels;
  std::string token;
  int depth = 0;
  for (const char c : arg) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == ',' && depth == 0) {
      kernels.push_back(builtin_kernel(token));
      token.clear();
    } else {
      token += c;
    }
  }
  if (!token.empty()) kernels.push_back(builtin_kernel(token));
  if (kernels.empty()) throw std::runtime_error("--kernels is empty");
  return kernels;
}

void write_config_echo(const std::string& out_base,
                       const std::vector<std::string>& argv) {
  nlohmann::json j;
  j["command"] = argv;
  atomic_write(out_base + ".config.json", j.dump(2) + "\n");
}

void write_density(const std::string& path, const SpectralDensity& d,
                   const std::vector<std::string>& argv) {
  atomic_write(path, density_to_json(d) + "\n");
  const fs::path p(path);
  const std::string csv_path =
      (p.parent_path() / p.stem()).string() + ".csv";
  atomic_write(csv_path, density_to_csv(d));
  write_config_echo((p.parent_path() / p.stem()).string(), argv);
}

std::uint64_t env_default_seed() {
  if (const char* env = std::getenv("GCSA_SEED")) return std::stoull(env);
  return 0;
}

// Signal assembly for the robust command: "idx:amp[,idx:amp...]" linear
// combinations of Laplacian eigenvectors (0-based indices).
Eigen::VectorXd eigenvector_combo(const SpectralBasis& basis,
                                  const std::string& arg) {
  Eigen::VectorXd x = Eigen::VectorXd::Zero(basis.size());
  std::istringstream in(arg);
  std::string term;
  while (std::getline(in, term, ',')) {
    const auto colon = term.find(':');
    if (colon == std::string::npos)
      throw std::runtime_error("--combo term '" + term + "' is not idx:amp");
    const int idx = std::stoi(term.substr(0, colon));
    const double amp = std::stod(term.substr(colon + 1));
    if (idx < 0 || idx >= basis.size())
      throw std::runtime_error("--combo eigenvector index out of range");
    x += amp * basis.eigenvectors.col(idx);
  }
  return x;
}

void apply_outliers(Eigen::VectorXd& x, const std::vector<std::string>& args) {
  for (const auto& arg : args) {
    const auto colon = arg.find(':');
    if (colon == std::string::npos)
      throw std::runtime_error("--outlier '" + arg + "' is not node:value");
    x = inject_outlier(x, std::stoi(arg.substr(0, colon)),
                       std::stod(arg.substr(colon + 1)));
  }
}

int abs_argmax(const SpectralDensity& d) {
  int arg = 0;
  for (int i = 1; i < d.size(); ++i)
    if (std::abs(d.values(i)) > std::abs(d.values(arg))) arg = i;
  return arg;
}

// ---------------------------------------------------------------------------
// Subcommand options
// ---------------------------------------------------------------------------

struct GraphCmd {
  std::string source;
  std::string out_graph = "graph.json";
  std::string out_spectrum = "spectrum.csv";
};

struct GenerateCmd {
  std::string graph = "karate";
  std::string kernels = "mex,heat";
  int realizations = 1;
  std::uint64_t seed = 0;
  double rho = 1.0;
  std::string out = "ensemble";
};

struct EstimateCmd {
  std::string graph = "karate";
  std::string estimator = "cross";
  std::string form = "periodogram";
  std::string x_file, y_file;
  std::string combo_x, combo_y;
  std::string kernels;
  int realizations = 1;
  std::uint64_t seed = 0;
  double rho = 1.0;
  int window_count = 100;
  double noise_scale = 0.1;
  std::uint64_t window_seed = 0;
  int wft_filters = 50;
  std::string out = "density.json";
};

struct CoherenceCmd {
  std::string graph = "karate";
  std::string kernels = "mex,heat";
  double rho = 1.0;
  int realizations = 1000;
  std::uint64_t seed = 0;
  double floor = -1.0;  // negative: auto (1e-12 * max p_x)
  bool population = false;
  std::string out = "coherence.json";
};

struct RobustCmd {
  std::string graph = "karate";
  std::string combo_x = "19:3";
  std::string combo_y;
  std::string x_file, y_file;
  std::vector<std::string> outliers_x, outliers_y;
  int window_count = 100;
  double noise_scale = 0.1;
  std::uint64_t window_seed = 0;
  double huber_c = 0.25;
  double irls_tol = 1e-8;
  int irls_max_iter = 200;
  std::string out = "robust";
};

struct ValidateCmd {
  std::string suite = "all";
  bool large = false;
  std::uint64_t seed = 7;
  std::string out;
};

// ---------------------------------------------------------------------------
// Subcommand implementations
// ---------------------------------------------------------------------------

int run_graph(const GraphCmd& cmd, const std::vector<std::string>& argv) {
  const Graph g = load_graph_source(cmd.source);
  const SpectralBasis basis = eigendecompose(laplacian(g));
  atomic_write(cmd.out_graph, graph_to_json(g) + "\n");
  std::ostringstream spectrum;
  spectrum << "index,lambda\n";
  for (int i = 0; i < basis.size(); ++i)
    spectrum << i << ',' << basis.eigenvalues(i) << '\n';
  atomic_write(cmd.out_spectrum, spectrum.str());
  write_config_echo(fs::path(cmd.out_graph).stem().string(), argv);
  std::cout << "nodes: " << g.n_nodes() << "\nedges: " << g.edges().size()
            << "\nlambda_max: " << basis.lambda_max() << "\nconnected: "
            << (is_connected(g) ? "yes" : "NO (spectral results span components)")
            << "\n";
  return 0;
}

int run_generate(const GenerateCmd& cmd, const std::vector<std::string>& argv) {
  const Graph g = load_graph_source(cmd.graph);
  const SpectralBasis basis = eigendecompose(laplacian(g));
  const auto kernels = parse_kernels(cmd.kernels);
  if (kernels.size() == 1) {
    const JwsPair pair = generate_jws_pair(basis, kernels[0], kernels[0],
                                           cmd.realizations, cmd.seed, 1.0);
    atomic_write(cmd.out + "_x.csv", ensemble_to_csv(pair.x));
  } else {
    const JwsPair pair = generate_jws_pair(basis, kernels[0], kernels[1],
                                           cmd.realizations, cmd.seed, cmd.rho);
    atomic_write(cmd.out + "_x.csv", ensemble_to_csv(pair.x));
    atomic_write(cmd.out + "_y.csv", ensemble_to_csv(pair.y));
  }
  write_config_echo(cmd.out, argv);
  return 0;
}

int run_estimate(const EstimateCmd& cmd, const std::vector<std::string>& argv) {
  const Graph g = load_graph_source(cmd.graph);
  const SpectralBasis basis = eigendecompose(laplacian(g));

  SignalEnsemble ex, ey;
  if (!cmd.x_file.empty()) {
    ex = ensemble_from_csv(read_file(cmd.x_file));
    ey = cmd.y_file.empty() ? ex : ensemble_from_csv(read_file(cmd.y_file));
  } else if (!cmd.combo_x.empty()) {
    ex.data = eigenvector_combo(basis, cmd.combo_x).transpose();
    ey.data = cmd.combo_y.empty()
                  ? ex.data
                  : eigenvector_combo(basis, cmd.combo_y).transpose();
  } else {
    if (cmd.kernels.empty())
      throw std::runtime_error("one of --x, --combo-x, or --kernels is required");
    const auto kernels = parse_kernels(cmd.kernels);
    const FilterKernel& k2 = kernels.size() > 1 ? kernels[1] : kernels[0];
    const JwsPair pair = generate_jws_pair(basis, kernels[0], k2,
                                           cmd.realizations, cmd.seed, cmd.rho);
    ex = pair.x;
    ey = kernels.size() > 1 ? pair.y : pair.x;
  }
  if (ex.n() != basis.size())
    throw std::runtime_error("--x dimension does not match --graph");

  SpectralDensity density;
  if (cmd.estimator == "periodogram") {
    PeriodogramForm form = PeriodogramForm::periodogram;
    if (cmd.form == "correlogram") form = PeriodogramForm::correlogram;
    else if (cmd.form == "least-squares") form = PeriodogramForm::least_squares;
    else if (cmd.form != "periodogram")
      throw std::runtime_error("--form must be periodogram|correlogram|least-squares");
    density = periodogram(basis, ex, form);
  } else if (cmd.estimator == "cross") {
    PeriodogramForm form = PeriodogramForm::periodogram;
    if (cmd.form == "correlogram") form = PeriodogramForm::correlogram;
    else if (cmd.form == "least-squares") form = PeriodogramForm::least_squares;
    density = cross_periodogram(basis, ex, ey, form);
  } else if (cmd.estimator == "windowed-average") {
    // Single-realization estimator: uses realization 0 of each input.
    const WindowBank bank = random_window_bank(basis, cmd.window_count,
                                               cmd.noise_scale, cmd.window_seed);
    density = windowed_average_cross_periodogram(basis, ex.realization(0),
                                                 ey.realization(0), bank);
  } else if (cmd.estimator == "wft") {
    density = wft_estimator(basis, ex.realization(0), ey.realization(0),
                            cmd.wft_filters);
  } else {
    throw std::runtime_error(
        "--estimator must be periodogram|cross|windowed-average|wft");
  }
  write_density(cmd.out, density, argv);
  return 0;
}

int run_coherence(const CoherenceCmd& cmd, const std::vector<std::string>& argv) {
  const Graph g = load_graph_source(cmd.graph);
  const SpectralBasis basis = eigendecompose(laplacian(g));
  const auto kernels = parse_kernels(cmd.kernels);
  if (kernels.size() != 2)
    throw std::runtime_error("--kernels must name exactly two kernels");

  SpectralDensity px, py, pxy;
  if (cmd.population) {
    px = true_gpsd(basis, kernels[0]);
    py = true_gpsd(basis, kernels[1]);
    pxy = true_gcsd(basis, kernels[0], kernels[1], cmd.rho);
  } else {
    const JwsPair pair = generate_jws_pair(basis, kernels[0], kernels[1],
                                           cmd.realizations, cmd.seed, cmd.rho);
    px = cross_periodogram(basis, pair.x, pair.x);
    py = cross_periodogram(basis, pair.y, pair.y);
    pxy = cross_periodogram(basis, pair.x, pair.y);
  }
  const double floor =
      cmd.floor >= 0.0 ? cmd.floor : default_coherence_floor(px);
  const SpectralDensity c = coherence(px, py, pxy, floor);
  write_density(cmd.out, c, argv);
  int clipped = 0;
  for (const bool flag : c.clipped) clipped += flag;
  if (clipped > 0)
    std::cout << "warning: " << clipped
              << " coherence value(s) clipped into [0, 1]\n";
  return 0;
}

int run_robust(const RobustCmd& cmd, const std::vector<std::string>& argv) {
  const Graph g = load_graph_source(cmd.graph);
  const SpectralBasis basis = eigendecompose(laplacian(g));

  Eigen::VectorXd x, y;
  if (!cmd.x_file.empty()) {
    x = ensemble_from_csv(read_file(cmd.x_file)).realization(0);
    y = cmd.y_file.empty() ? x
                           : ensemble_from_csv(read_file(cmd.y_file)).realization(0);
  } else {
    x = eigenvector_combo(basis, cmd.combo_x);
    y = cmd.combo_y.empty() ? x : eigenvector_combo(basis, cmd.combo_y);
  }
  apply_outliers(x, cmd.outliers_x);
  const bool self = cmd.combo_y.empty() && cmd.y_file.empty();
  if (self && !cmd.outliers_y.empty())
    throw std::runtime_error("--outlier-y given but no y signal");
  if (!self) apply_outliers(y, cmd.outliers_y);
  if (self) y = x;

  const WindowBank bank = random_window_bank(basis, cmd.window_count,
                                             cmd.noise_scale, cmd.window_seed);
  HuberConfig config;
  config.cutoff = cmd.huber_c;
  config.tol = cmd.irls_tol;
  config.max_iter = cmd.irls_max_iter;

  const RobustResult robust = self ? m_type_psd(basis, x, &bank, config)
                                   : m_type_csd(basis, x, y, &bank, config);
  const SpectralDensity plain =
      windowed_average_cross_periodogram(basis, x, y, bank);

  atomic_write(cmd.out + "_robust.json", density_to_json(robust.estimate) + "\n");
  atomic_write(cmd.out + "_robust.csv", density_to_csv(robust.estimate));
  atomic_write(cmd.out + "_plain.json", density_to_json(plain) + "\n");
  atomic_write(cmd.out + "_plain.csv", density_to_csv(plain));

  nlohmann::json meta;
  meta["command"] = argv;
  meta["converged"] = robust.converged;
  meta["iterations"] = robust.iterations;
  meta["robust_argmax"] = abs_argmax(robust.estimate);
  meta["plain_argmax"] = abs_argmax(plain);
  atomic_write(cmd.out + ".config.json", meta.dump(2) + "\n");

  std::cout << "converged: " << (robust.converged ? "yes" : "NO")
            << "\niterations: " << robust.iterations
            << "\nrobust argmax: " << abs_argmax(robust.estimate)
            << "\nplain argmax: " << abs_argmax(plain) << "\n";
  return 0;
}

int run_validate(const ValidateCmd& cmd, const std::vector<std::string>& argv) {
  std::vector<McReport> reports;
  std::vector<std::string> lines;
  bool all_ok = true;
  const std::uint64_t seed = cmd.seed;

  auto note = [&](const std::string& line, bool ok) {
    lines.push_back((ok ? "[PASS] " : "[FAIL] ") + line);
    std::cout << lines.back() << "\n";
    all_ok = all_ok && ok;
  };

  const bool want_all = cmd.suite == "all";
  if (want_all || cmd.suite == "moments") {
    const SpectralBasis basis = eigendecompose(laplacian(karate_club()));
    McGate gate;
    gate.mean_pass_fraction = 0.99;
    const McReport report = mc_cross_periodogram_moments(
        basis, builtin_kernel(BuiltinKernel::mex),
        builtin_kernel(BuiltinKernel::heat), 1, 2000, mix_seed(seed, 1), gate);
    reports.push_back(report);
    std::cout << report_to_text(report) << "\n";
    all_ok = all_ok && report.passed;
  }
  if (want_all || cmd.suite == "windowed") {
    const SpectralBasis basis =
        eigendecompose(laplacian(sensor_graph(10, 3, mix_seed(seed, 2))));
    const WindowBank bank =
        random_window_bank(basis, 20, 0.1, mix_seed(seed, 3));
    const McReport bias = mc_windowed_bias(
        basis, bank, builtin_kernel(BuiltinKernel::mex),
        builtin_kernel(BuiltinKernel::heat), 2000, mix_seed(seed, 4));
    reports.push_back(bias);
    std::cout << report_to_text(bias) << "\n";
    const SpectralBasis small =
        eigendecompose(laplacian(sensor_graph(6, 3, mix_seed(seed, 5))));
    const WindowBank small_bank =
        random_window_bank(small, 2, 0.1, mix_seed(seed, 6));
    const McReport trace = mc_windowed_variance_trace(
        small, small_bank, builtin_kernel(BuiltinKernel::heat),
        builtin_kernel(BuiltinKernel::high), 2000, mix_seed(seed, 7));
    reports.push_back(trace);
    std::cout << report_to_text(trace) << "\n";
    all_ok = all_ok && bias.passed && trace.passed;
  }
  if (want_all || cmd.suite == "r-scaling") {
    const SpectralBasis basis = eigendecompose(laplacian(karate_club()));
    const RScalingReport report = r_scaling_experiment(
        basis, builtin_kernel(BuiltinKernel::mex),
        builtin_kernel(BuiltinKernel::heat), {1, 10, 100, 1000}, 40,
        mix_seed(seed, 8), 0.95);
    note("MSE strictly decreasing across R in " +
             std::to_string(report.strictly_decreasing) + "/" +
             std::to_string(report.seeds) + " seeds",
         report.passed);
  }
  if (want_all || cmd.suite == "shared") {
    // Down-scaled stand-ins for large rail/road networks; --large runs a
    // road-network-scale instance instead of the 500-node default.
    struct Scenario {
      int n, k, i_shared, i_x, i_y, m, wft_k;
    };
    std::vector<Scenario> scenarios = {{200, 5, 150, 50, 100, 100, 50}};
    if (cmd.large)
      scenarios.push_back({2642, 5, 500, 1000, 2000, 100, 100});
    else
      scenarios.push_back({500, 5, 95, 189, 378, 100, 100});
    for (const auto& sc : scenarios) {
      const SpectralBasis basis = eigendecompose(
          laplacian(sensor_graph(sc.n, sc.k, mix_seed(seed, 9 + sc.n))));
      SharedComponentConfig config;
      config.i_shared = sc.i_shared;
      config.i_x = sc.i_x;
      config.i_y = sc.i_y;
      config.window_count = sc.m;
      config.wft_filters = sc.wft_k;
      config.seed = mix_seed(seed, 10 + sc.n);
      config.estimator = SharedEstimator::windowed_average;
      const SharedComponentReport wa = shared_component_experiment(basis, config);
      config.estimator = SharedEstimator::wft;
      const SharedComponentReport wf = shared_component_experiment(basis, config);
      note("shared component on sensor-" + std::to_string(sc.n) +
               ": windowed-average argmax " + std::to_string(wa.gcsd_argmax) +
               " (shared " + std::to_string(wa.shared_index) + "), wft argmax " +
               std::to_string(wf.gcsd_argmax) + " (nearest grid " +
               std::to_string(wf.shared_index) + ")",
           wa.shared_detected && wa.psd_masks_shared &&
               std::abs(wf.gcsd_argmax - wf.shared_index) <= 1);
    }
  }
  if (want_all || cmd.suite == "robust") {
    const SpectralBasis basis = eigendecompose(laplacian(karate_club()));
    for (const bool cross : {false, true}) {
      RobustBreakdownConfig config;
      config.cross = cross;
      config.seeds = 20;
      config.seed = mix_seed(seed, cross ? 12 : 11);
      const RobustBreakdownReport report =
          robust_breakdown_experiment(basis, config);
      note(std::string("robust breakdown (") + (cross ? "csd" : "psd") +
               "): robust argmax kept " + std::to_string(report.robust_match) +
               "/" + std::to_string(report.seeds) + ", plain displaced " +
               std::to_string(report.nonrobust_differ) + "/" +
               std::to_string(report.seeds),
           report.passed);
    }
  }

  if (!cmd.out.empty()) {
    nlohmann::json j;
    j["command"] = argv;
    j["passed"] = all_ok;
    j["lines"] = lines;
    auto arr = nlohmann::json::array();
    for (const auto& report : reports)
      arr.push_back(nlohmann::json::parse(report_to_json(report)));
    j["reports"] = std::move(arr);
    atomic_write(cmd.out, j.dump(2) + "\n");
  }
  std::cout << (all_ok ? "all gates passed\n" : "some gates FAILED\n");
  return all_ok ? 0 : 1;
}

int run_cli(int argc, char** argv);

int run_replay(const std::string& replay_path, char* prog) {
  const auto config = nlohmann::json::parse(read_file(replay_path));
  std::vector<std::string> saved_args =
      config.at("command").get<std::vector<std::string>>();
  std::vector<char*> forged;
  forged.push_back(prog);
  for (auto& token : saved_args) forged.push_back(token.data());
  return run_cli(static_cast<int>(forged.size()), forged.data());
}

int run_cli(int argc, char** argv) {
  CLI::App app{"Cross-spectral analysis of bivariate graph signals"};
  app.require_subcommand(1);

  const std::vector<std::string> raw_argv(argv + 1, argv + argc);
  const std::uint64_t default_seed = env_default_seed();

  GraphCmd graph_cmd;
  auto* graph_app = app.add_subcommand("graph", "Build a graph and its spectrum");
  graph_app->add_option("--source", graph_cmd.source,
                        "karate | path:N | sensor:N[,K[,seed]] | file")
      ->required();
  graph_app->add_option("--out-graph", graph_cmd.out_graph);
  graph_app->add_option("--out-spectrum", graph_cmd.out_spectrum);

  GenerateCmd gen_cmd;
  gen_cmd.seed = default_seed;
  auto* gen_app =
      app.add_subcommand("generate", "Generate jointly stationary ensembles");
  gen_app->add_option("--graph", gen_cmd.graph);
  gen_app->add_option("--kernels", gen_cmd.kernels,
                      "one or two of mex,heat,ds,high,wft_gaussian(s2)");
  gen_app->add_option("--R", gen_cmd.realizations);
  gen_app->add_option("--seed", gen_cmd.seed);
  gen_app->add_option("--rho", gen_cmd.rho, "input correlation in [0,1]");
  gen_app->add_option("--out", gen_cmd.out, "output prefix");

  EstimateCmd est_cmd;
  est_cmd.seed = default_seed;
  auto* est_app = app.add_subcommand("estimate", "Estimate GPSD/GCSD");
  est_app->add_option("--graph", est_cmd.graph);
  est_app->add_option("--estimator", est_cmd.estimator,
                      "periodogram | cross | windowed-average | wft");
  est_app->add_option("--form", est_cmd.form,
                      "periodogram | correlogram | least-squares");
  est_app->add_option("--x", est_cmd.x_file, "ensemble CSV for X");
  est_app->add_option("--y", est_cmd.y_file, "ensemble CSV for Y");
  est_app->add_option("--combo-x", est_cmd.combo_x,
                      "idx:amp[,...] eigenvector combination for X");
  est_app->add_option("--combo-y", est_cmd.combo_y);
  est_app->add_option("--kernels", est_cmd.kernels);
  est_app->add_option("--R", est_cmd.realizations);
  est_app->add_option("--seed", est_cmd.seed);
  est_app->add_option("--rho", est_cmd.rho);
  est_app->add_option("--M", est_cmd.window_count, "window count");
  est_app->add_option("--noise-scale", est_cmd.noise_scale);
  est_app->add_option("--window-seed", est_cmd.window_seed);
  est_app->add_option("--K", est_cmd.wft_filters, "WFT filter count");
  est_app->add_option("--out", est_cmd.out, "density JSON path");

  CoherenceCmd coh_cmd;
  coh_cmd.seed = default_seed;
  auto* coh_app = app.add_subcommand("coherence", "Graph coherence");
  coh_app->add_option("--graph", coh_cmd.graph);
  coh_app->add_option("--kernels", coh_cmd.kernels)->required();
  coh_app->add_option("--rho", coh_cmd.rho);
  coh_app->add_option("--R", coh_cmd.realizations);
  coh_app->add_option("--seed", coh_cmd.seed);
  coh_app->add_option("--floor", coh_cmd.floor, "density floor (default auto)");
  coh_app->add_flag("--population", coh_cmd.population,
                    "use population densities instead of estimates");
  coh_app->add_option("--out", coh_cmd.out);

  RobustCmd rob_cmd;
  auto* rob_app = app.add_subcommand("robust", "Huber M-type estimation");
  rob_app->add_option("--graph", rob_cmd.graph);
  rob_app->add_option("--combo-x", rob_cmd.combo_x,
                      "idx:amp[,...] eigenvector combination");
  rob_app->add_option("--combo-y", rob_cmd.combo_y);
  rob_app->add_option("--x", rob_cmd.x_file, "signal CSV (first row used)");
  rob_app->add_option("--y", rob_cmd.y_file);
  rob_app->add_option("--outlier", rob_cmd.outliers_x,
                      "node:value outlier in x (repeatable)");
  rob_app->add_option("--outlier-y", rob_cmd.outliers_y);
  rob_app->add_option("--M", rob_cmd.window_count);
  rob_app->add_option("--noise-scale", rob_cmd.noise_scale);
  rob_app->add_option("--window-seed", rob_cmd.window_seed);
  rob_app->add_option("--huber-c", rob_cmd.huber_c);
  rob_app->add_option("--irls-tol", rob_cmd.irls_tol);
  rob_app->add_option("--irls-max-iter", rob_cmd.irls_max_iter);
  rob_app->add_option("--out", rob_cmd.out, "output prefix");

  ValidateCmd val_cmd;
  auto* val_app =
      app.add_subcommand("validate", "Monte-Carlo validation gates");
  val_app->add_option("--suite", val_cmd.suite,
                      "all | moments | windowed | r-scaling | shared | robust");
  val_app->add_flag("--large", val_cmd.large, "road-network-scale graphs");
  val_app->add_option("--seed", val_cmd.seed);
  val_app->add_option("--out", val_cmd.out, "report JSON path");

  std::string replay_path;
  auto* replay_app =
      app.add_subcommand("replay", "Re-run a saved config echo");
  replay_app->add_option("config", replay_path, "*.config.json")->required();

  try {
    app.parse(argc, argv);
    if (graph_app->parsed()) return run_graph(graph_cmd, raw_argv);
    if (gen_app->parsed()) return run_generate(gen_cmd, raw_argv);
    if (est_app->parsed()) return run_estimate(est_cmd, raw_argv);
    if (coh_app->parsed()) return run_coherence(coh_cmd, raw_argv);
    if (rob_app->parsed()) return run_robust(rob_cmd, raw_argv);
    if (val_app->parsed()) return run_validate(val_cmd, raw_argv);
    if (replay_app->parsed()) return run_replay(replay_path, argv[0]);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) { return run_cli(argc, argv); }
