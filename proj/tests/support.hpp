#pragma once

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "etk/graph.hpp"

namespace etk::test {

inline std::filesystem::path data_dir() {
  if (const char* env = std::getenv("ETK_DATA_DIR")) return env;
  return ETK_SOURCE_DATA_DIR;
}

inline std::filesystem::path mutag_dir() { return data_dir() / "MUTAG"; }

inline Graph make_graph(int n, const std::vector<std::pair<int, int>>& pairs, std::vector<int> categories = {}) {
  std::vector<Edge> edges;
  for (auto [u, v] : pairs) edges.push_back({u, v, 1.0});
  return Graph(n, std::move(edges), std::move(categories));
}

inline Graph k2() { return make_graph(2, {{0, 1}}); }
inline Graph triangle() { return make_graph(3, {{0, 1}, {1, 2}, {0, 2}}); }
inline Graph path(int n) {
  std::vector<std::pair<int, int>> pairs;
  for (int v = 0; v + 1 < n; ++v) pairs.emplace_back(v, v + 1);
  return make_graph(n, pairs);
}
inline Graph cycle(int n) {
  std::vector<std::pair<int, int>> pairs;
  for (int v = 0; v < n; ++v) pairs.emplace_back(v, (v + 1) % n);
  return make_graph(n, pairs);
}
inline Graph star(int n) {
  std::vector<std::pair<int, int>> pairs;
  for (int v = 1; v < n; ++v) pairs.emplace_back(0, v);
  return make_graph(n, pairs);
}
// Triangles {0,1,2} and {3,4,5} joined by the edge 2-3.
inline Graph two_triangles_bridge() {
  return make_graph(6, {{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}, {2, 3}});
}

// Random spanning tree plus extra edges with probability `density`.
inline Graph random_connected(std::mt19937_64& rng, int n, double density) {
  std::vector<std::pair<int, int>> pairs;
  std::vector<std::vector<char>> used(n, std::vector<char>(n, 0));
  for (int v = 1; v < n; ++v) {
    const int u = std::uniform_int_distribution<int>(0, v - 1)(rng);
    pairs.emplace_back(u, v);
    used[u][v] = 1;
  }
  std::bernoulli_distribution extra(density);
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      if (!used[u][v] && extra(rng)) pairs.emplace_back(u, v);
    }
  }
  return make_graph(n, pairs);
}

// Same graph with vertex v renamed to perm[v].
inline Graph permuted(const Graph& g, const std::vector<int>& perm) {
  std::vector<Edge> edges;
  for (const Edge& e : g.edges()) edges.push_back({perm[e.u], perm[e.v], e.weight});
  std::vector<int> categories;
  if (g.has_categories()) {
    categories.resize(g.vertex_count());
    for (int v = 0; v < g.vertex_count(); ++v) categories[perm[v]] = g.category(v);
  }
  return Graph(g.vertex_count(), std::move(edges), std::move(categories), g.graph_class());
}

class TempDir {
 public:
  TempDir() {
    std::random_device rd;
    path_ = std::filesystem::temp_directory_path() / ("etk-test-" + std::to_string(rd()) + std::to_string(rd()));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  void write(const std::string& file, const std::string& text) const {
    std::ofstream(path_ / file, std::ios::binary) << text;
  }

 private:
  std::filesystem::path path_;
};

inline std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace etk::test
