#include "gcsa/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>
#include <vector>

#include "gcsa/random.hpp"

namespace gcsa {

Graph path_graph(int n) {
  if (n < 2) throw std::invalid_argument("path graph needs >= 2 nodes");
  std::vector<Edge> edges;
  edges.reserve(n - 1);
  for (int i = 0; i + 1 < n; ++i) edges.push_back({i, i + 1, 1.0});
  return Graph(n, std::move(edges));
}

Graph sensor_graph(int n, int k, std::uint64_t seed, double box) {
  if (n < 2) throw std::invalid_argument("sensor graph needs >= 2 nodes");
  if (k < 1 || k >= n)
    throw std::invalid_argument("neighbor count must satisfy 1 <= k < n");

  GaussianStream stream(seed, 0);
  std::vector<double> xs(n), ys(n);
  for (int i = 0; i < n; ++i) {
    xs[i] = box * stream.uniform();
    ys[i] = box * stream.uniform();
  }
  auto dist = [&](int i, int j) {
    const double dx = xs[i] - xs[j];
    const double dy = ys[i] - ys[j];
    return std::sqrt(dx * dx + dy * dy);
  };

  // Union of directed k-NN edges.
  std::set<std::pair<int, int>> pairs;
  std::vector<std::pair<double, int>> order(n);
  for (int i = 0; i < n; ++i) {
    int count = 0;
    for (int j = 0; j < n; ++j)
      if (j != i) order[count++] = {dist(i, j), j};
    std::partial_sort(order.begin(), order.begin() + k, order.begin() + count);
    for (int m = 0; m < k; ++m) {
      const int j = order[m].second;
      pairs.emplace(std::min(i, j), std::max(i, j));
    }
  }

  double ave = 0.0;
  for (const auto& [i, j] : pairs) ave += dist(i, j);
  ave /= static_cast<double>(pairs.size());

  std::vector<Edge> edges;
  edges.reserve(pairs.size());
  for (const auto& [i, j] : pairs) {
    const double d = dist(i, j);
    edges.push_back({i, j, std::exp(-d * d / (ave * ave))});
  }
  return Graph(n, std::move(edges));
}

}  // namespace gcsa
