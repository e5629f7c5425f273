#include "etk/entropy.hpp"

#include <cmath>
#include <string>

#include "etk/errors.hpp"

namespace etk {

double node_term(double cut, double vol, double parent_vol, double total_vol) {
  if (cut == 0.0 || vol == 0.0) return 0.0;
  return -(cut / total_vol) * std::log2(vol / parent_vol);
}

EncodingTree one_level_tree(const Graph& graph) {
  if (!(graph.volume() > 0.0)) throw DegenerateGraphError("graph has no edges (vol(V) = 0)");
  const int n = graph.vertex_count();
  EncodingTree tree(n);
  const int root = tree.add_node(graph.volume(), 0.0);
  for (int v = 0; v < n; ++v) {
    tree.set_caches(v, graph.degree(v), graph.degree(v));
    tree.attach(v, root);
  }
  tree.set_root(root);
  return tree;
}

void check_leaf_bijection(const Graph& graph, const EncodingTree& tree) {
  if (tree.root() == kNoNode) throw InputError("encoding tree has no root");
  std::vector<char> seen(graph.vertex_count(), 0);
  int leaves = 0;
  for (int id : tree.preorder()) {
    const TreeNode& n = tree[id];
    if (n.is_leaf()) {
      if (n.leaf_vertex >= graph.vertex_count() || seen[n.leaf_vertex]) {
        throw InputError("tree leaf " + std::to_string(id) + " maps to invalid or repeated vertex " +
                         std::to_string(n.leaf_vertex));
      }
      seen[n.leaf_vertex] = 1;
      ++leaves;
    } else if (n.children.empty()) {
      throw InputError("internal tree node " + std::to_string(id) + " has no children");
    }
  }
  if (leaves != graph.vertex_count()) {
    throw InputError("tree has " + std::to_string(leaves) + " leaves for " +
                     std::to_string(graph.vertex_count()) + " vertices");
  }
}

EncodingTree recompute_caches(const Graph& graph, EncodingTree tree) {
  check_leaf_bijection(graph, tree);
  const std::vector<int> order = tree.preorder();
  const std::vector<int> depth = tree.depths();
  std::vector<int> leaf_of(graph.vertex_count());
  for (int id : order) {
    if (tree[id].is_leaf()) leaf_of[tree[id].leaf_vertex] = id;
  }

  // Weight of edges whose endpoints first meet at each node.
  std::vector<double> internal(tree.capacity(), 0.0);
  for (const Edge& e : graph.edges()) {
    int a = leaf_of[e.u];
    int b = leaf_of[e.v];
    while (depth[a] > depth[b]) a = tree[a].parent;
    while (depth[b] > depth[a]) b = tree[b].parent;
    while (a != b) {
      a = tree[a].parent;
      b = tree[b].parent;
    }
    internal[a] += e.weight;
  }

  std::vector<double> vol(tree.capacity(), 0.0);
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const int id = *it;
    const TreeNode& n = tree[id];
    if (n.is_leaf()) vol[id] = graph.degree(n.leaf_vertex);
    for (int c : n.children) {
      vol[id] += vol[c];
      internal[id] += internal[c];
    }
  }
  for (int id : order) tree.set_caches(id, vol[id], vol[id] - 2.0 * internal[id]);
  return tree;
}

double cached_entropy(const EncodingTree& tree) {
  const double total = tree[tree.root()].vol;
  if (!(total > 0.0)) throw DegenerateGraphError("vol(V) = 0");
  double sum = 0.0;
  for (int id = 0; id < tree.capacity(); ++id) {
    if (!tree.alive(id) || id == tree.root()) continue;
    const TreeNode& n = tree[id];
    sum += node_term(n.cut, n.vol, tree[n.parent].vol, total);
  }
  return sum;
}

double structural_entropy(const Graph& graph, const EncodingTree& tree) {
  if (!(graph.volume() > 0.0)) throw DegenerateGraphError("graph has no edges (vol(V) = 0)");
  return cached_entropy(recompute_caches(graph, tree));
}

}  // namespace etk
