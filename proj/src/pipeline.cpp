#include "etk/pipeline.hpp"

#include <string>

#include "etk/errors.hpp"
#include "etk/parallel.hpp"

namespace etk {

std::vector<OptimizedTree> build_trees(const Dataset& dataset, const OptimizerConfig& config, int threads) {
  std::vector<OptimizedTree> trees(dataset.graphs.size());
  parallel_for(dataset.graphs.size(), threads, [&](std::size_t g) {
    try {
      trees[g] = build_encoding_tree(dataset.graphs[g], config);
    } catch (const InputError& e) {
      throw InputError(dataset.name + " graph " + std::to_string(g) + ": " + e.what());
    }
  });
  return trees;
}

FeatureSet report_trees(std::span<const OptimizedTree> trees, const InitialLabeling& labeling) {
  if (trees.size() != labeling.labels.size()) {
    throw InputError("labeling covers " + std::to_string(labeling.labels.size()) + " graphs, got " +
                     std::to_string(trees.size()) + " trees");
  }
  FeatureSet set;
  set.height = trees.empty() ? 0 : trees.front().tree.height();
  set.features.reserve(trees.size());
  for (std::size_t g = 0; g < trees.size(); ++g) {
    if (trees[g].tree.height() != set.height) {
      throw InputError("tree " + std::to_string(g) + " has height " + std::to_string(trees[g].tree.height()) +
                       ", expected " + std::to_string(set.height));
    }
    ReportingResult r = hierarchical_report(trees[g].tree, labeling.labels[g], set.dictionary);
    set.features.push_back(std::move(r.features));
    set.node_visits.push_back(r.node_visits);
  }
  set.dictionary.freeze();
  return set;
}

KernelChoice make_kernel(const FeatureSet& set, const KernelMatrix& linear_gram, KernelMode mode,
                         bool normalize) {
  KernelChoice out;
  const KernelMatrix base = normalize ? normalize_kernel(linear_gram) : linear_gram;
  if (mode == KernelMode::kLinear) {
    out.matrix = base;
    return out;
  }
  const GammaPolicy policy = mode == KernelMode::kRbfAuto ? GammaPolicy::kAuto : GammaPolicy::kScale;
  out.gamma = resolve_gamma(set.features, set.dictionary.size(), policy, normalize);
  out.matrix = rbf_from_gram(base, out.gamma.gamma);
  return out;
}

}  // namespace etk
