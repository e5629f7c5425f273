#pragma once

#include <vector>

#include "etk/encoding_tree.hpp"
#include "etk/graph.hpp"

namespace etk {

// Only one rule exists today: among equal deltas prefer the candidate with the
// lexicographically smallest (min id, max id).
enum class TieBreak { kSmallestIds };

struct OptimizerConfig {
  int height = 2;  // k, at least 2
  TieBreak tie_break = TieBreak::kSmallestIds;
  bool report_stats = false;  // also record the per-fusion merge trace
};

struct OptimizerStats {
  int merge_steps = 0;
  int compress_steps = 0;
  int max_intermediate_height = 0;  // tallest tree seen during merging
  int nodes_before_padding = 0;
  // Entropy after each phase: one-level start, merge, compress, padding.
  // Disconnected graphs record start, assembled, padded.
  std::vector<double> entropy_trace;
  // Entropy after each fusion of the merge phase (report_stats only).
  std::vector<double> merge_trace;
};

struct OptimizedTree {
  EncodingTree tree;
  OptimizerStats stats;
};

// Bottom-up binary merging. Starting from the one-level tree, repeatedly fuse
// the two adjacent root children whose new common parent lowers the entropy
// the most, until no fusion lowers it strictly. Leftover root children are
// then fused by smallest delta until the root has at most two children.
EncodingTree merge_phase(const Graph& graph, OptimizerStats* stats = nullptr);

// While the tree is taller than k, splice out the internal node (among those
// with a leaf deeper than k below them) whose removal raises the entropy the
// least. Uses the cached vol/cut only.
EncodingTree compress_phase(EncodingTree tree, int k, OptimizerStats* stats = nullptr);

// Inserts unary nodes directly above shallow leaves so every leaf sits at
// depth k. Entropy is unchanged.
EncodingTree pad_to_height(EncodingTree tree, int k);

// merge -> compress -> pad for a connected graph with at least one edge.
// The result is canonicalized (leaf ids equal vertex ids, children sorted).
OptimizedTree optimize_encoding_tree(const Graph& graph, const OptimizerConfig& config);

// Optimizes every connected component on its own, then merges the component
// roots into one global root; isolated vertices hang directly below it.
// Connected graphs give the same result as optimize_encoding_tree.
OptimizedTree optimize_disconnected(const Graph& graph, const OptimizerConfig& config);

// Entry point for arbitrary graphs with at least one edge.
inline OptimizedTree build_encoding_tree(const Graph& graph, const OptimizerConfig& config) {
  return optimize_disconnected(graph, config);
}

}  // namespace etk
