#include "etk/graph.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "etk/errors.hpp"

namespace etk {

Graph::Graph(int vertex_count, std::vector<Edge> edges, std::vector<int> categories,
             int graph_class)
    : vertex_count_(vertex_count),
      edges_(std::move(edges)),
      categories_(std::move(categories)),
      graph_class_(graph_class) {
  if (vertex_count_ < 0) throw InputError("negative vertex count");
  if (!categories_.empty() && static_cast<int>(categories_.size()) != vertex_count_) {
    throw InputError("category vector has " + std::to_string(categories_.size()) +
                     " entries for " + std::to_string(vertex_count_) + " vertices");
  }
  for (Edge& e : edges_) {
    if (e.u < 0 || e.v < 0 || e.u >= vertex_count_ || e.v >= vertex_count_) {
      throw InputError("edge (" + std::to_string(e.u) + ", " + std::to_string(e.v) +
                       ") out of range for " + std::to_string(vertex_count_) + " vertices");
    }
    if (e.u == e.v) throw InputError("self-loop at vertex " + std::to_string(e.u));
    if (!std::isfinite(e.weight) || e.weight < 0.0) {
      throw InputError("invalid weight on edge (" + std::to_string(e.u) + ", " +
                       std::to_string(e.v) + ")");
    }
    if (e.u > e.v) std::swap(e.u, e.v);
  }
  std::sort(edges_.begin(), edges_.end(),
            [](const Edge& a, const Edge& b) { return std::pair(a.u, a.v) < std::pair(b.u, b.v); });
  for (std::size_t i = 1; i < edges_.size(); ++i) {
    if (edges_[i].u == edges_[i - 1].u && edges_[i].v == edges_[i - 1].v) {
      throw InputError("duplicate edge (" + std::to_string(edges_[i].u) + ", " +
                       std::to_string(edges_[i].v) + ")");
    }
  }

  degrees_.assign(vertex_count_, 0.0);
  std::vector<std::size_t> counts(vertex_count_ + 1, 0);
  for (const Edge& e : edges_) {
    degrees_[e.u] += e.weight;
    degrees_[e.v] += e.weight;
    ++counts[e.u + 1];
    ++counts[e.v + 1];
  }
  volume_ = std::accumulate(degrees_.begin(), degrees_.end(), 0.0);

  std::partial_sum(counts.begin(), counts.end(), counts.begin());
  adjacency_offsets_ = counts;
  adjacency_.resize(2 * edges_.size());
  std::vector<std::size_t> cursor(counts.begin(), counts.end() - 1);
  for (const Edge& e : edges_) {
    adjacency_[cursor[e.u]++] = {e.v, e.weight};
    adjacency_[cursor[e.v]++] = {e.u, e.weight};
  }
  for (int v = 0; v < vertex_count_; ++v) {
    std::sort(adjacency_.begin() + adjacency_offsets_[v],
              adjacency_.begin() + adjacency_offsets_[v + 1]);
  }
}

std::span<const std::pair<int, double>> Graph::neighbors(int v) const {
  return std::span(adjacency_).subspan(adjacency_offsets_[v],
                                       adjacency_offsets_[v + 1] - adjacency_offsets_[v]);
}

std::vector<std::vector<int>> Graph::components() const {
  std::vector<int> component(vertex_count_, -1);
  std::vector<std::vector<int>> result;
  std::vector<int> stack;
  for (int start = 0; start < vertex_count_; ++start) {
    if (component[start] != -1) continue;
    const int id = static_cast<int>(result.size());
    result.emplace_back();
    component[start] = id;
    stack.push_back(start);
    while (!stack.empty()) {
      const int v = stack.back();
      stack.pop_back();
      result[id].push_back(v);
      for (const auto& [w, weight] : neighbors(v)) {
        if (component[w] == -1) {
          component[w] = id;
          stack.push_back(w);
        }
      }
    }
    std::sort(result[id].begin(), result[id].end());
  }
  return result;
}

bool Graph::is_connected() const { return components().size() <= 1; }

Graph Graph::induced_subgraph(std::span<const int> vertices) const {
  std::vector<int> local(vertex_count_, -1);
  for (std::size_t i = 0; i < vertices.size(); ++i) local[vertices[i]] = static_cast<int>(i);
  std::vector<Edge> edges;
  for (const Edge& e : edges_) {
    if (local[e.u] >= 0 && local[e.v] >= 0) edges.push_back({local[e.u], local[e.v], e.weight});
  }
  std::vector<int> categories;
  if (has_categories()) {
    for (int v : vertices) categories.push_back(categories_[v]);
  }
  return Graph(static_cast<int>(vertices.size()), std::move(edges), std::move(categories),
               graph_class_);
}

}  // namespace etk
