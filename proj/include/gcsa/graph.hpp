#pragma once

#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace gcsa {

struct Edge {
  int src = 0;
  int dst = 0;
  double weight = 1.0;
};

/// Undirected weighted graph with strictly positive edge weights and no
/// self-loops. Edges are canonicalized to src < dst and sorted; duplicate
/// (i,j)/(j,i) entries collapse if their weights agree and are rejected
/// otherwise. Immutable after construction.
class Graph {
 public:
  Graph(int n_nodes, std::vector<Edge> edges,
        std::vector<std::string> labels = {});

  int n_nodes() const { return n_nodes_; }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<std::string>& labels() const { return labels_; }

  /// Adjacency list: neighbors(i) -> (neighbor index, weight), sorted.
  const std::vector<std::pair<int, double>>& neighbors(int i) const;

  Eigen::MatrixXd adjacency_matrix() const;
  double degree(int i) const;

 private:
  int n_nodes_;
  std::vector<Edge> edges_;
  std::vector<std::string> labels_;
  std::vector<std::vector<std::pair<int, double>>> adjacency_;
};

/// Parses `src,dst[,weight]` rows (weight defaults to 1.0). A non-numeric
/// first row is treated as a header and skipped. Node count is inferred as
/// max index + 1.
Graph load_edge_list(const std::string& csv_text);
Graph load_edge_list_file(const std::string& path);

/// JSON round-trip format: { "n": N, "edges": [[i, j, w], ...] }.
std::string graph_to_json(const Graph& g);
Graph graph_from_json(const std::string& json_text);

/// Zachary's karate club network: 34 nodes, 78 unit-weight edges.
Graph karate_club();

enum class ShiftKind { laplacian, adjacency, custom };

/// Real symmetric graph shift operator. The sparsity pattern respects the
/// graph: entry (i,j) is nonzero only if i == j or (i,j) is an edge.
struct ShiftOperator {
  Eigen::MatrixXd matrix;
  ShiftKind kind = ShiftKind::custom;
};

/// Combinatorial Laplacian L = D - A. Row sums are exactly zero.
ShiftOperator laplacian(const Graph& g);
ShiftOperator adjacency(const Graph& g);

/// Wraps a user-supplied matrix as a shift operator, enforcing symmetry
/// (1e-10 relative Frobenius) and the graph sparsity pattern.
ShiftOperator custom_shift(const Graph& g, Eigen::MatrixXd matrix);

/// Eigendecomposition S = V diag(lambda) V^T with ascending eigenvalues,
/// orthonormal columns, and a deterministic sign convention: in each column
/// the first entry of largest magnitude is made positive.
struct SpectralBasis {
  Eigen::VectorXd eigenvalues;
  Eigen::MatrixXd eigenvectors;

  int size() const { return static_cast<int>(eigenvalues.size()); }
  double lambda_max() const { return eigenvalues(eigenvalues.size() - 1); }
};

SpectralBasis eigendecompose(const ShiftOperator& s);

inline constexpr int kUnreachable = -1;

/// Shortest unweighted path length (BFS); kUnreachable for disconnected
/// pairs and 0 iff i == j.
int hop_distance(const Graph& g, int i, int j);

/// BFS distances from one source; kUnreachable where disconnected.
std::vector<int> hop_distances(const Graph& g, int source);

bool is_connected(const Graph& g);

/// Upper bound on the largest eigenvalue of a symmetric shift operator
/// (right edge of the Gershgorin disks). Never underestimates.
double gershgorin_bound(const ShiftOperator& s);

}  // namespace gcsa
