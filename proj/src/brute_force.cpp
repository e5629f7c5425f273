#include "etk/brute_force.hpp"

#include <bit>
#include <functional>
#include <limits>
#include <string>
#include <unordered_map>
#include <vector>

#include "etk/entropy.hpp"
#include "etk/errors.hpp"

namespace etk {
namespace {

using Mask = unsigned;
using Partition = std::vector<Mask>;

// Calls fn(blocks) for every set partition of the bits in `set`. Blocks are
// emitted in order of their smallest element.
void for_each_partition(Mask set, const std::function<void(const Partition&)>& fn) {
  std::vector<int> elements;
  for (int v = 0; v < 32; ++v) {
    if (set >> v & 1u) elements.push_back(v);
  }
  Partition blocks;
  std::function<void(std::size_t)> place = [&](std::size_t i) {
    if (i == elements.size()) {
      fn(blocks);
      return;
    }
    const Mask bit = 1u << elements[i];
    for (std::size_t b = 0; b < blocks.size(); ++b) {
      blocks[b] |= bit;
      place(i + 1);
      blocks[b] &= ~bit;
    }
    blocks.push_back(bit);
    place(i + 1);
    blocks.pop_back();
  };
  place(0);
}

struct SubsetTables {
  std::vector<double> vol;
  std::vector<double> cut;
};

SubsetTables subset_tables(const Graph& graph) {
  const Mask full = 1u << graph.vertex_count();
  SubsetTables t{std::vector<double>(full, 0.0), std::vector<double>(full, 0.0)};
  for (Mask s = 1; s < full; ++s) {
    for (int v = 0; v < graph.vertex_count(); ++v) {
      if (s >> v & 1u) t.vol[s] += graph.degree(v);
    }
    for (const Edge& e : graph.edges()) {
      if (((s >> e.u) & 1u) != ((s >> e.v) & 1u)) t.cut[s] += e.weight;
    }
  }
  return t;
}

}  // namespace

MinEntropyResult brute_force_min_entropy(const Graph& graph, int k) {
  const int n = graph.vertex_count();
  if (n > kBruteForceMaxVertices) {
    throw InputError("brute force limited to " + std::to_string(kBruteForceMaxVertices) +
                     " vertices, got " + std::to_string(n));
  }
  if (k != 2 && k != 3) throw InputError("brute force supports k = 2 or 3, got " + std::to_string(k));
  if (!(graph.volume() > 0.0)) throw DegenerateGraphError("graph has no edges (vol(V) = 0)");

  const double total = graph.volume();
  const SubsetTables t = subset_tables(graph);

  // Leaves of a block hang directly below it.
  auto leaves_cost = [&](Mask block) {
    double sum = 0.0;
    for (int v = 0; v < n; ++v) {
      if (block >> v & 1u) sum += node_term(graph.degree(v), graph.degree(v), t.vol[block], total);
    }
    return sum;
  };

  // Best split of `block` into sub-blocks (k = 3 only), memoized per block.
  std::unordered_map<Mask, std::pair<double, Partition>> inner_best;
  auto inner = [&](Mask block) -> const std::pair<double, Partition>& {
    auto it = inner_best.find(block);
    if (it != inner_best.end()) return it->second;
    std::pair<double, Partition> best{std::numeric_limits<double>::infinity(), {}};
    for_each_partition(block, [&](const Partition& sub) {
      double cost = 0.0;
      for (Mask s : sub) cost += node_term(t.cut[s], t.vol[s], t.vol[block], total) + leaves_cost(s);
      if (cost < best.first) best = {cost, sub};
    });
    return inner_best.emplace(block, std::move(best)).first->second;
  };

  const Mask all = (1u << n) - 1u;
  double best_bits = std::numeric_limits<double>::infinity();
  Partition best_top;
  for_each_partition(all, [&](const Partition& top) {
    double cost = 0.0;
    for (Mask b : top) {
      cost += node_term(t.cut[b], t.vol[b], total, total);
      cost += k == 2 ? leaves_cost(b) : inner(b).first;
    }
    if (cost < best_bits) {
      best_bits = cost;
      best_top = top;
    }
  });

  EncodingTree tree(n);
  const int root = tree.add_node(total, 0.0);
  tree.set_root(root);
  auto hang_leaves = [&](Mask block, int parent) {
    for (int v = 0; v < n; ++v) {
      if (block >> v & 1u) {
        tree.set_caches(v, graph.degree(v), graph.degree(v));
        tree.attach(v, parent);
      }
    }
  };
  for (Mask b : best_top) {
    const int module = tree.add_node(t.vol[b], t.cut[b]);
    tree.attach(module, root);
    if (k == 2) {
      hang_leaves(b, module);
      continue;
    }
    for (Mask s : inner(b).second) {
      const int sub = tree.add_node(t.vol[s], t.cut[s]);
      tree.attach(sub, module);
      hang_leaves(s, sub);
    }
  }
  return {std::move(tree), best_bits};
}

}  // namespace etk
