#pragma once

#include "etk/encoding_tree.hpp"
#include "etk/graph.hpp"

namespace etk {

// Contribution of one non-root node to the structural entropy, in bits:
//   -(cut / total_vol) * log2(vol / parent_vol)
// Exactly 0 when cut == 0 (also covers degree-0 leaves, where vol == 0).
double node_term(double cut, double vol, double parent_vol, double total_vol);

// Root with one leaf child per vertex; height 1.
// Throws DegenerateGraphError when the graph has no edge weight.
EncodingTree one_level_tree(const Graph& graph);

// Throws InputError unless the tree's leaves are exactly the graph's vertices.
void check_leaf_bijection(const Graph& graph, const EncodingTree& tree);

// Recomputes vol and cut of every node from the graph.
EncodingTree recompute_caches(const Graph& graph, EncodingTree tree);

// Structural entropy of `graph` on `tree`, in bits. vol and cut are derived
// from the graph, not read from the tree's caches. Sums over non-root nodes in
// id order.
double structural_entropy(const Graph& graph, const EncodingTree& tree);

// Same sum using the tree's cached vol/cut and vol(root) as vol(V).
double cached_entropy(const EncodingTree& tree);

}  // namespace etk
