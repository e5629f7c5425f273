#pragma once

#include <span>
#include <utility>
#include <vector>

namespace etk {

struct Edge {
  int u = 0;
  int v = 0;
  double weight = 1.0;

  friend bool operator==(const Edge&, const Edge&) = default;
};

// Weighted undirected simple graph. Immutable after construction.
//
// Edges are stored normalized (u < v) and sorted. Self-loops, duplicate
// edges, out-of-range endpoints and negative or non-finite weights are
// rejected with InputError.
class Graph {
 public:
  Graph() = default;
  Graph(int vertex_count, std::vector<Edge> edges, std::vector<int> categories = {},
        int graph_class = 0);

  int vertex_count() const noexcept { return vertex_count_; }
  int edge_count() const noexcept { return static_cast<int>(edges_.size()); }
  std::span<const Edge> edges() const noexcept { return edges_; }

  // Weighted degree d_v.
  double degree(int v) const { return degrees_[v]; }
  std::span<const double> degrees() const noexcept { return degrees_; }

  // vol(V) = sum of degrees = 2 * total edge weight.
  double volume() const noexcept { return volume_; }

  // (neighbor, weight) pairs, sorted by neighbor.
  std::span<const std::pair<int, double>> neighbors(int v) const;

  bool has_categories() const noexcept { return !categories_.empty(); }
  int category(int v) const { return categories_[v]; }
  std::span<const int> categories() const noexcept { return categories_; }

  int graph_class() const noexcept { return graph_class_; }

  // Connected components, each sorted ascending, ordered by smallest vertex.
  std::vector<std::vector<int>> components() const;
  bool is_connected() const;

  // Subgraph induced by `vertices` (renumbered in the given order).
  Graph induced_subgraph(std::span<const int> vertices) const;

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.vertex_count_ == b.vertex_count_ && a.edges_ == b.edges_ &&
           a.categories_ == b.categories_ && a.graph_class_ == b.graph_class_;
  }

 private:
  int vertex_count_ = 0;
  std::vector<Edge> edges_;
  std::vector<int> categories_;
  int graph_class_ = 0;
  std::vector<double> degrees_;
  double volume_ = 0.0;
  std::vector<std::size_t> adjacency_offsets_;
  std::vector<std::pair<int, double>> adjacency_;
};

}  // namespace etk
