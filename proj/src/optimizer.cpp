#include "etk/optimizer.hpp"

#include <algorithm>
#include <limits>
#include <queue>
#include <string>
#include <unordered_map>

#include "etk/entropy.hpp"
#include "etk/errors.hpp"

namespace etk {
namespace {

// Fusions must beat this to count as a strict decrease.
constexpr double kStrictDecrease = 1e-12;

struct Candidate {
  double delta;
  int lo;
  int hi;

  // Orders the priority queue so the smallest (delta, lo, hi) is on top.
  friend bool operator>(const Candidate& a, const Candidate& b) {
    if (a.delta != b.delta) return a.delta > b.delta;
    if (a.lo != b.lo) return a.lo > b.lo;
    return a.hi > b.hi;
  }
};

void check_height(int k) {
  if (k < 2) throw InputError("tree height must be at least 2, got " + std::to_string(k));
}

// Entropy change of fusing root children a and b under a new parent.
double fusion_delta(const EncodingTree& tree, int a, int b, double between) {
  const TreeNode& x = tree[a];
  const TreeNode& y = tree[b];
  const double total = tree[tree.root()].vol;
  const double vol = x.vol + y.vol;
  const double cut = x.cut + y.cut - 2.0 * between;
  const double after = node_term(x.cut, x.vol, vol, total) + node_term(y.cut, y.vol, vol, total) +
                       node_term(cut, vol, total, total);
  const double before = node_term(x.cut, x.vol, total, total) + node_term(y.cut, y.vol, total, total);
  return after - before;
}

// Entropy change of splicing out internal node id.
double removal_delta(const EncodingTree& tree, int id) {
  const TreeNode& n = tree[id];
  const double total = tree[tree.root()].vol;
  const double parent_vol = tree[n.parent].vol;
  double delta = -node_term(n.cut, n.vol, parent_vol, total);
  for (int c : n.children) {
    const TreeNode& child = tree[c];
    delta += node_term(child.cut, child.vol, parent_vol, total) -
             node_term(child.cut, child.vol, n.vol, total);
  }
  return delta;
}

// Subtree height of every live node (leaves 0).
std::vector<int> subtree_heights(const EncodingTree& tree) {
  std::vector<int> h(tree.capacity(), 0);
  const std::vector<int> order = tree.preorder();
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    for (int c : tree[*it].children) h[*it] = std::max(h[*it], h[c] + 1);
  }
  return h;
}

class Merger {
 public:
  Merger(const Graph& graph, OptimizerStats* stats, bool record_trace)
      : tree_(one_level_tree(graph)),
        stats_(stats),
        record_trace_(stats != nullptr && record_trace),
        adjacency_(tree_.capacity()),
        height_(tree_.capacity(), 0) {
    for (const Edge& e : graph.edges()) {
      adjacency_[e.u][e.v] += e.weight;
      adjacency_[e.v][e.u] += e.weight;
    }
    for (const Edge& e : graph.edges()) push(e.u, e.v);
    entropy_ = cached_entropy(tree_);
  }

  EncodingTree run() {
    while (!queue_.empty()) {
      const Candidate top = queue_.top();
      queue_.pop();
      if (!is_root_child(top.lo) || !is_root_child(top.hi)) continue;
      if (!(top.delta < -kStrictDecrease)) break;
      fuse(top.lo, top.hi, top.delta);
    }
    // Root children left without a strictly improving fusion.
    while (tree_[tree_.root()].children.size() > 2) {
      const auto& children = tree_[tree_.root()].children;
      Candidate best{std::numeric_limits<double>::infinity(), 0, 0};
      for (std::size_t i = 0; i < children.size(); ++i) {
        for (std::size_t j = i + 1; j < children.size(); ++j) {
          const int lo = std::min(children[i], children[j]);
          const int hi = std::max(children[i], children[j]);
          const Candidate c{fusion_delta(tree_, lo, hi, weight_between(lo, hi)), lo, hi};
          if (best > c) best = c;
        }
      }
      fuse(best.lo, best.hi, best.delta);
    }
    return std::move(tree_);
  }

 private:
  bool is_root_child(int id) const { return tree_[id].parent == tree_.root(); }

  double weight_between(int a, int b) const {
    const auto it = adjacency_[a].find(b);
    return it == adjacency_[a].end() ? 0.0 : it->second;
  }

  void push(int a, int b) {
    const int lo = std::min(a, b);
    const int hi = std::max(a, b);
    queue_.push({fusion_delta(tree_, lo, hi, weight_between(lo, hi)), lo, hi});
  }

  void fuse(int a, int b, double delta) {
    const double between = weight_between(a, b);
    const int root = tree_.root();
    const int parent = tree_.add_node(tree_[a].vol + tree_[b].vol,
                                      tree_[a].cut + tree_[b].cut - 2.0 * between);
    tree_.detach(a);
    tree_.detach(b);
    tree_.attach(parent, root);
    tree_.attach(a, parent);
    tree_.attach(b, parent);

    // Small-to-large union of the module adjacency maps.
    const int big = adjacency_[a].size() >= adjacency_[b].size() ? a : b;
    const int small = big == a ? b : a;
    std::unordered_map<int, double> union_map = std::move(adjacency_[big]);
    for (const auto& [z, w] : adjacency_[small]) union_map[z] += w;
    union_map.erase(a);
    union_map.erase(b);
    adjacency_[a].clear();
    adjacency_[b].clear();
    adjacency_.push_back(std::move(union_map));
    const auto& merged = adjacency_.back();
    for (const auto& [z, w] : merged) {
      auto& other = adjacency_[z];
      other.erase(a);
      other.erase(b);
      other[parent] = w;
    }
    for (const auto& [z, w] : merged) push(z, parent);

    height_.push_back(std::max(height_[a], height_[b]) + 1);
    entropy_ += delta;
    if (stats_ != nullptr) {
      ++stats_->merge_steps;
      stats_->max_intermediate_height = std::max(stats_->max_intermediate_height, height_.back() + 1);
      if (record_trace_) stats_->merge_trace.push_back(entropy_);
    }
  }

  EncodingTree tree_;
  OptimizerStats* stats_;
  bool record_trace_;
  std::vector<std::unordered_map<int, double>> adjacency_;
  std::vector<int> height_;
  std::priority_queue<Candidate, std::vector<Candidate>, std::greater<>> queue_;
  double entropy_ = 0.0;
};

EncodingTree merge_impl(const Graph& graph, OptimizerStats* stats, bool record_trace) {
  EncodingTree tree = Merger(graph, stats, record_trace).run();
  if (stats != nullptr) stats->max_intermediate_height = std::max(stats->max_intermediate_height, tree.height());
  return tree;
}

}  // namespace

EncodingTree merge_phase(const Graph& graph, OptimizerStats* stats) {
  return merge_impl(graph, stats, stats != nullptr);
}

EncodingTree compress_phase(EncodingTree tree, int k, OptimizerStats* stats) {
  if (k < 1) throw InputError("compress height must be positive");
  while (true) {
    const std::vector<int> depth = tree.depths();
    const std::vector<int> below = subtree_heights(tree);
    if (below[tree.root()] <= k) break;
    int best = kNoNode;
    double best_delta = std::numeric_limits<double>::infinity();
    for (int id = 0; id < tree.capacity(); ++id) {
      if (!tree.alive(id) || id == tree.root() || tree[id].is_leaf()) continue;
      if (depth[id] + below[id] <= k) continue;
      const double delta = removal_delta(tree, id);
      if (delta < best_delta) {
        best_delta = delta;
        best = id;
      }
    }
    tree.splice_out(best);
    if (stats != nullptr) ++stats->compress_steps;
  }
  return tree;
}

EncodingTree pad_to_height(EncodingTree tree, int k) {
  const std::vector<int> depth = tree.depths();
  for (int id = 0; id < static_cast<int>(depth.size()); ++id) {
    if (!tree.alive(id) || !tree[id].is_leaf()) continue;
    if (depth[id] > k) {
      throw InputError("cannot pad: leaf at depth " + std::to_string(depth[id]) + " exceeds height " +
                       std::to_string(k));
    }
    for (int d = depth[id]; d < k; ++d) tree.insert_above(id);
  }
  return tree;
}

OptimizedTree optimize_encoding_tree(const Graph& graph, const OptimizerConfig& config) {
  check_height(config.height);
  if (!(graph.volume() > 0.0)) throw DegenerateGraphError("graph has no edges (vol(V) = 0)");
  if (!graph.is_connected()) {
    throw InputError("graph is disconnected; use optimize_disconnected");
  }
  OptimizedTree out;
  OptimizerStats& stats = out.stats;
  stats.entropy_trace.push_back(cached_entropy(one_level_tree(graph)));
  EncodingTree tree = merge_impl(graph, &stats, config.report_stats);
  stats.entropy_trace.push_back(cached_entropy(tree));
  tree = compress_phase(std::move(tree), config.height, &stats);
  tree.compact();
  stats.nodes_before_padding = tree.node_count();
  stats.entropy_trace.push_back(cached_entropy(tree));
  tree = pad_to_height(std::move(tree), config.height);
  tree.canonicalize();
  stats.entropy_trace.push_back(cached_entropy(tree));
  out.tree = std::move(tree);
  return out;
}

OptimizedTree optimize_disconnected(const Graph& graph, const OptimizerConfig& config) {
  check_height(config.height);
  if (!(graph.volume() > 0.0)) throw DegenerateGraphError("graph has no edges (vol(V) = 0)");
  const std::vector<std::vector<int>> components = graph.components();
  if (components.size() == 1) return optimize_encoding_tree(graph, config);

  OptimizedTree out;
  OptimizerStats& stats = out.stats;
  stats.entropy_trace.push_back(cached_entropy(one_level_tree(graph)));

  EncodingTree tree(graph.vertex_count());
  const int root = tree.add_node(graph.volume(), 0.0);
  tree.set_root(root);
  for (const std::vector<int>& component : components) {
    if (component.size() == 1) {
      tree.set_caches(component[0], 0.0, 0.0);
      tree.attach(component[0], root);
      continue;
    }
    const Graph sub = graph.induced_subgraph(component);
    OptimizerStats sub_stats;
    EncodingTree part = compress_phase(merge_impl(sub, &sub_stats, false), config.height, &sub_stats);
    stats.merge_steps += sub_stats.merge_steps;
    stats.compress_steps += sub_stats.compress_steps;
    stats.max_intermediate_height = std::max(stats.max_intermediate_height, sub_stats.max_intermediate_height);

    // Copy the component tree, dropping its root.
    std::vector<int> global(part.capacity(), kNoNode);
    for (int id : part.preorder()) {
      const TreeNode& n = part[id];
      if (id == part.root()) {
        global[id] = root;
        continue;
      }
      const int g = n.is_leaf() ? component[n.leaf_vertex] : tree.add_node();
      tree.set_caches(g, n.vol, n.cut);
      tree.attach(g, global[n.parent]);
      global[id] = g;
    }
  }
  tree.compact();
  stats.nodes_before_padding = tree.node_count();
  stats.entropy_trace.push_back(cached_entropy(tree));
  tree = pad_to_height(std::move(tree), config.height);
  tree.canonicalize();
  stats.entropy_trace.push_back(cached_entropy(tree));
  out.tree = std::move(tree);
  return out;
}

}  // namespace etk
