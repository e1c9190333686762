#include "gcsa/graph.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace gcsa {

namespace {

void check_edge(int n_nodes, const Edge& e) {
  if (e.src < 0 || e.src >= n_nodes || e.dst < 0 || e.dst >= n_nodes)
    throw std::invalid_argument("edge index out of range: (" +
                                std::to_string(e.src) + ", " +
                                std::to_string(e.dst) + ")");
  if (e.src == e.dst)
    throw std::invalid_argument("self-loop at node " + std::to_string(e.src));
  if (!(e.weight > 0.0) || !std::isfinite(e.weight))
    throw std::invalid_argument("edge weight must be positive and finite, got " +
                                std::to_string(e.weight));
}

}  // namespace

Graph::Graph(int n_nodes, std::vector<Edge> edges,
             std::vector<std::string> labels)
    : n_nodes_(n_nodes), labels_(std::move(labels)) {
  if (n_nodes <= 0) throw std::invalid_argument("n_nodes must be positive");
  if (!labels_.empty() && static_cast<int>(labels_.size()) != n_nodes)
    throw std::invalid_argument("label count does not match n_nodes");

  for (auto& e : edges) {
    check_edge(n_nodes, e);
    if (e.src > e.dst) std::swap(e.src, e.dst);
  }
  std::sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) {
    return std::tie(a.src, a.dst) < std::tie(b.src, b.dst);
  });
  for (std::size_t k = 0; k < edges.size(); ++k) {
    if (k > 0 && edges[k].src == edges[k - 1].src &&
        edges[k].dst == edges[k - 1].dst) {
      if (edges[k].weight != edges[k - 1].weight)
        throw std::invalid_argument(
            "duplicate edge (" + std::to_string(edges[k].src) + ", " +
            std::to_string(edges[k].dst) + ") with conflicting weights");
      continue;
    }
    edges_.push_back(edges[k]);
  }

  adjacency_.resize(n_nodes_);
  for (const auto& e : edges_) {
    adjacency_[e.src].emplace_back(e.dst, e.weight);
    adjacency_[e.dst].emplace_back(e.src, e.weight);
  }
  for (auto& nb : adjacency_) std::sort(nb.begin(), nb.end());
}

const std::vector<std::pair<int, double>>& Graph::neighbors(int i) const {
  if (i < 0 || i >= n_nodes_)
    throw std::out_of_range("node index out of range");
  return adjacency_[i];
}

Eigen::MatrixXd Graph::adjacency_matrix() const {
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n_nodes_, n_nodes_);
  for (const auto& e : edges_) {
    a(e.src, e.dst) = e.weight;
    a(e.dst, e.src) = e.weight;
  }
  return a;
}

double Graph::degree(int i) const {
  double d = 0.0;
  for (const auto& [j, w] : neighbors(i)) d += w;
  return d;
}

Graph load_edge_list(const std::string& csv_text) {
  std::vector<Edge> edges;
  std::istringstream in(csv_text);
  std::string line;
  int line_no = 0;
  int max_index = -1;
  while (std::getline(in, line)) {
    ++line_no;
    // strip trailing CR and surrounding whitespace
    while (!line.empty() && (line.back() == '\r' || line.back() == ' '))
      line.pop_back();
    if (line.empty() || line[0] == '#') continue;

    std::vector<std::string> fields;
    std::istringstream ls(line);
    std::string field;
    while (std::getline(ls, field, ',')) fields.push_back(field);
    if (fields.size() < 2 || fields.size() > 3)
      throw std::invalid_argument("malformed edge row at line " +
                                  std::to_string(line_no) + ": " + line);
    Edge e;
    try {
      std::size_t pos = 0;
      e.src = std::stoi(fields[0], &pos);
      if (pos != fields[0].size()) throw std::invalid_argument(fields[0]);
      e.dst = std::stoi(fields[1], &pos);
      if (pos != fields[1].size()) throw std::invalid_argument(fields[1]);
      e.weight = fields.size() == 3 ? std::stod(fields[2]) : 1.0;
    } catch (const std::exception&) {
      if (line_no == 1) continue;  // optional header row
      throw std::invalid_argument("malformed edge row at line " +
                                  std::to_string(line_no) + ": " + line);
    }
    if (e.src < 0 || e.dst < 0)
      throw std::invalid_argument("negative node index at line " +
                                  std::to_string(line_no));
    max_index = std::max({max_index, e.src, e.dst});
    edges.push_back(e);
  }
  if (edges.empty()) throw std::invalid_argument("edge list is empty");
  return Graph(max_index + 1, std::move(edges));
}

Graph load_edge_list_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open edge list file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return load_edge_list(buf.str());
}

std::string graph_to_json(const Graph& g) {
  nlohmann::json j;
  j["n"] = g.n_nodes();
  auto edges = nlohmann::json::array();
  for (const auto& e : g.edges())
    edges.push_back(nlohmann::json::array({e.src, e.dst, e.weight}));
  j["edges"] = std::move(edges);
  return j.dump();
}

Graph graph_from_json(const std::string& json_text) {
  const auto j = nlohmann::json::parse(json_text);
  std::vector<Edge> edges;
  for (const auto& row : j.at("edges"))
    edges.push_back({row.at(0).get<int>(), row.at(1).get<int>(),
                     row.at(2).get<double>()});
  return Graph(j.at("n").get<int>(), std::move(edges));
}

Graph karate_club() {
  static const int kEdges[78][2] = {
      {0, 1},   {0, 2},   {0, 3},   {0, 4},   {0, 5},   {0, 6},
      {0, 7},   {0, 8},   {0, 10},  {0, 11},  {0, 12},  {0, 13},
      {0, 17},  {0, 19},  {0, 21},  {0, 31},  {1, 2},   {1, 3},
      {1, 7},   {1, 13},  {1, 17},  {1, 19},  {1, 21},  {1, 30},
      {2, 3},   {2, 7},   {2, 8},   {2, 9},   {2, 13},  {2, 27},
      {2, 28},  {2, 32},  {3, 7},   {3, 12},  {3, 13},  {4, 6},
      {4, 10},  {5, 6},   {5, 10},  {5, 16},  {6, 16},  {8, 30},
      {8, 32},  {8, 33},  {9, 33},  {13, 33}, {14, 32}, {14, 33},
      {15, 32}, {15, 33}, {18, 32}, {18, 33}, {19, 33}, {20, 32},
      {20, 33}, {22, 32}, {22, 33}, {23, 25}, {23, 27}, {23, 29},
      {23, 32}, {23, 33}, {24, 25}, {24, 27}, {24, 31}, {25, 31},
      {26, 29}, {26, 33}, {27, 33}, {28, 31}, {28, 33}, {29, 32},
      {29, 33}, {30, 32}, {30, 33}, {31, 32}, {31, 33}, {32, 33}};
  std::vector<Edge> edges;
  edges.reserve(78);
  for (const auto& e : kEdges) edges.push_back({e[0], e[1], 1.0});
  return Graph(34, std::move(edges));
}

ShiftOperator laplacian(const Graph& g) {
  const int n = g.n_nodes();
  Eigen::MatrixXd l = -g.adjacency_matrix();
  for (int i = 0; i < n; ++i) l(i, i) = g.degree(i);
  return {std::move(l), ShiftKind::laplacian};
}

ShiftOperator adjacency(const Graph& g) {
  return {g.adjacency_matrix(), ShiftKind::adjacency};
}

ShiftOperator custom_shift(const Graph& g, Eigen::MatrixXd matrix) {
  const int n = g.n_nodes();
  if (matrix.rows() != n || matrix.cols() != n)
    throw std::invalid_argument("shift operator dimension mismatch");
  const double scale = matrix.norm();
  if ((matrix - matrix.transpose()).norm() > 1e-10 * std::max(scale, 1.0))
    throw std::invalid_argument("shift operator is not symmetric");
  Eigen::MatrixXd a = g.adjacency_matrix();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j && a(i, j) == 0.0 && matrix(i, j) != 0.0)
        throw std::invalid_argument(
            "shift operator has support outside the graph at (" +
            std::to_string(i) + ", " + std::to_string(j) + ")");
  return {std::move(matrix), ShiftKind::custom};
}

SpectralBasis eigendecompose(const ShiftOperator& s) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(s.matrix);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("eigendecomposition did not converge");
  SpectralBasis basis{solver.eigenvalues(), solver.eigenvectors()};
  // Sign convention: first entry of largest magnitude in each column > 0.
  const int n = basis.size();
  for (int c = 0; c < n; ++c) {
    int arg = 0;
    double best = 0.0;
    for (int r = 0; r < n; ++r) {
      const double mag = std::abs(basis.eigenvectors(r, c));
      if (mag > best) {
        best = mag;
        arg = r;
      }
    }
    if (basis.eigenvectors(arg, c) < 0.0) basis.eigenvectors.col(c) *= -1.0;
  }
  return basis;
}

std::vector<int> hop_distances(const Graph& g, int source) {
  if (source < 0 || source >= g.n_nodes())
    throw std::out_of_range("node index out of range");
  std::vector<int> dist(g.n_nodes(), kUnreachable);
  std::deque<int> queue{source};
  dist[source] = 0;
  while (!queue.empty()) {
    const int u = queue.front();
    queue.pop_front();
    for (const auto& [v, w] : g.neighbors(u)) {
      if (dist[v] == kUnreachable) {
        dist[v] = dist[u] + 1;
        queue.push_back(v);
      }
    }
  }
  return dist;
}

int hop_distance(const Graph& g, int i, int j) {
  if (j < 0 || j >= g.n_nodes())
    throw std::out_of_range("node index out of range");
  return hop_distances(g, i)[j];
}

bool is_connected(const Graph& g) {
  const auto dist = hop_distances(g, 0);
  return std::none_of(dist.begin(), dist.end(),
                      [](int d) { return d == kUnreachable; });
}

double gershgorin_bound(const ShiftOperator& s) {
  double bound = 0.0;
  for (int i = 0; i < s.matrix.rows(); ++i) {
    double radius = 0.0;
    for (int j = 0; j < s.matrix.cols(); ++j)
      if (j != i) radius += std::abs(s.matrix(i, j));
    bound = std::max(bound, s.matrix(i, i) + radius);
  }
  return bound;
}

}  // namespace gcsa
