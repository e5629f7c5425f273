#pragma once

#include "etk/encoding_tree.hpp"
#include "etk/graph.hpp"

namespace etk {

struct MinEntropyResult {
  EncodingTree tree;  // uniform height k
  double bits = 0.0;
};

inline constexpr int kBruteForceMaxVertices = 9;

// Exact minimum structural entropy over all trees of height <= k, by
// exhaustive enumeration. k = 2 walks every set partition of V; k = 3 walks
// every partition of V together with every partition of each block. Only
// meant for tiny graphs (n <= 9) as a reference for the greedy optimizer.
// Ties keep the first tree in enumeration order.
MinEntropyResult brute_force_min_entropy(const Graph& graph, int k);

}  // namespace etk
