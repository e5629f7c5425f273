#pragma once

#include <span>
#include <string>
#include <vector>

#include "etk/dataset.hpp"
#include "etk/optimizer.hpp"
#include "etk/svm.hpp"
#include "etk/wl_kernel.hpp"

namespace etk {

// Height-k encoding tree of every graph, in dataset order. Failures are
// rethrown as InputError naming the graph.
std::vector<OptimizedTree> build_trees(const Dataset& dataset, const OptimizerConfig& config,
                                       int threads = 1);

struct FeatureSet {
  int height = 0;
  LabelDictionary dictionary;
  std::vector<FeatureVector> features;
  std::vector<std::size_t> node_visits;
};

// Sequential interning pass over the trees in dataset order, then the
// dictionary is frozen.
FeatureSet report_trees(std::span<const OptimizedTree> trees, const InitialLabeling& labeling);

struct KernelChoice {
  KernelMatrix matrix;
  GammaChoice gamma;  // unused for linear
};

// Kernel of the requested mode from the feature set's linear Gram matrix.
KernelChoice make_kernel(const FeatureSet& set, const KernelMatrix& linear_gram, KernelMode mode,
                         bool normalize);

}  // namespace etk
