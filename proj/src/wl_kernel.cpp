#include "etk/wl_kernel.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <map>

#include "etk/errors.hpp"

namespace etk {
namespace {

std::atomic<std::uint64_t> next_dictionary_id{1};

std::string join_sorted(std::vector<int>& labels) {
  std::sort(labels.begin(), labels.end());
  std::string s;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (i > 0) s += ',';
    s += std::to_string(labels[i]);
  }
  return s;
}

template <typename Compress>
ReportingResult report(const EncodingTree& tree, std::span<const int> leaf_labels, std::uint64_t dict_id,
                       Compress&& compress) {
  const int height = tree.height();
  const std::vector<int> depth = tree.depths();
  std::vector<std::vector<int>> layers(height + 1);
  for (int id = 0; id < tree.capacity(); ++id) {
    if (!tree.alive(id)) continue;
    const TreeNode& n = tree[id];
    if (n.is_leaf() && depth[id] != height) {
      throw InputError("hierarchical reporting needs uniform leaf depth; leaf " + std::to_string(id) +
                       " at depth " + std::to_string(depth[id]) + " of " + std::to_string(height));
    }
    layers[height - depth[id]].push_back(id);
  }

  ReportingResult out;
  out.features.dictionary_id = dict_id;
  out.features.by_height.resize(height + 1);
  out.node_labels.assign(tree.capacity(), -1);
  std::vector<int> child_labels;
  for (int h = 0; h <= height; ++h) {
    std::map<int, long> counts;
    for (int id : layers[h]) {
      const TreeNode& n = tree[id];
      int label;
      if (h == 0) {
        if (n.leaf_vertex >= static_cast<int>(leaf_labels.size())) {
          throw InputError("no initial label for vertex " + std::to_string(n.leaf_vertex));
        }
        label = compress(0, std::to_string(leaf_labels[n.leaf_vertex]));
      } else {
        child_labels.clear();
        for (int c : n.children) child_labels.push_back(out.node_labels[c]);
        label = compress(h, join_sorted(child_labels));
      }
      out.node_labels[id] = label;
      ++counts[label];
      ++out.node_visits;
    }
    out.features.by_height[h].assign(counts.begin(), counts.end());
  }
  return out;
}

}  // namespace

LabelDictionary::LabelDictionary() : id_(next_dictionary_id++) {}

std::string LabelDictionary::make_key(int height, std::string_view multiset) {
  std::string key = std::to_string(height);
  key += ':';
  key += multiset;
  return key;
}

int LabelDictionary::intern(int height, std::string_view multiset) {
  std::string key = make_key(height, multiset);
  if (auto it = index_.find(key); it != index_.end()) return it->second;
  if (frozen_) throw InputError("label '" + key + "' not in frozen dictionary");
  const int label = size();
  index_.emplace(key, label);
  keys_.push_back(std::move(key));
  heights_.push_back(height);
  return label;
}

std::optional<int> LabelDictionary::find(int height, std::string_view multiset) const {
  if (auto it = index_.find(make_key(height, multiset)); it != index_.end()) return it->second;
  return std::nullopt;
}

long FeatureVector::count_at(int height) const {
  long sum = 0;
  for (const auto& [label, count] : by_height[height]) sum += count;
  return sum;
}

double FeatureVector::squared_norm() const {
  double sum = 0.0;
  for (const auto& layer : by_height) {
    for (const auto& [label, count] : layer) sum += static_cast<double>(count) * count;
  }
  return sum;
}

ReportingResult hierarchical_report(const EncodingTree& tree, std::span<const int> leaf_labels,
                                    LabelDictionary& dict) {
  return report(tree, leaf_labels, dict.id(),
                [&](int h, const std::string& s) { return dict.intern(h, s); });
}

ReportingResult hierarchical_report(const EncodingTree& tree, std::span<const int> leaf_labels,
                                    const LabelDictionary& dict) {
  return report(tree, leaf_labels, dict.id(), [&](int h, const std::string& s) {
    const auto label = dict.find(h, s);
    if (!label) throw InputError("unknown label '" + std::to_string(h) + ":" + s + "'");
    return *label;
  });
}

double kernel_value(const FeatureVector& a, const FeatureVector& b) {
  if (a.dictionary_id != b.dictionary_id) {
    throw InputError("feature vectors come from different label dictionaries");
  }
  double sum = 0.0;
  const std::size_t layers = std::min(a.by_height.size(), b.by_height.size());
  for (std::size_t h = 0; h < layers; ++h) {
    const auto& x = a.by_height[h];
    const auto& y = b.by_height[h];
    std::size_t i = 0;
    std::size_t j = 0;
    while (i < x.size() && j < y.size()) {
      if (x[i].first < y[j].first) {
        ++i;
      } else if (y[j].first < x[i].first) {
        ++j;
      } else {
        sum += static_cast<double>(x[i].second) * y[j].second;
        ++i;
        ++j;
      }
    }
  }
  return sum;
}

double squared_distance(const FeatureVector& a, const FeatureVector& b) {
  return std::max(0.0, a.squared_norm() + b.squared_norm() - 2.0 * kernel_value(a, b));
}

double KernelMatrix::trace() const {
  double t = 0.0;
  for (int i = 0; i < size_; ++i) t += (*this)(i, i);
  return t;
}

KernelMatrix gram_matrix(std::span<const FeatureVector> features) {
  const int n = static_cast<int>(features.size());
  KernelMatrix k(n);
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      const double v = kernel_value(features[i], features[j]);
      k(i, j) = v;
      k(j, i) = v;
    }
  }
  return k;
}

KernelMatrix gram_matrix(std::span<const EncodingTree> trees, const InitialLabeling& labeling,
                         LabelDictionary& dict) {
  if (trees.size() != labeling.labels.size()) {
    throw InputError("labeling covers " + std::to_string(labeling.labels.size()) + " graphs, got " +
                     std::to_string(trees.size()) + " trees");
  }
  std::vector<FeatureVector> features;
  features.reserve(trees.size());
  for (std::size_t i = 0; i < trees.size(); ++i) {
    if (trees[i].height() != trees.front().height()) {
      throw InputError("tree " + std::to_string(i) + " has height " + std::to_string(trees[i].height()) +
                       ", expected " + std::to_string(trees.front().height()));
    }
    features.push_back(hierarchical_reporting(trees[i], labeling.labels[i], dict));
  }
  return gram_matrix(features);
}

KernelMatrix normalize_kernel(const KernelMatrix& kernel) {
  const int n = kernel.size();
  KernelMatrix out(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double d = std::sqrt(kernel(i, i) * kernel(j, j));
      out(i, j) = d > 0.0 ? kernel(i, j) / d : 0.0;
    }
  }
  return out;
}

GammaChoice resolve_gamma(std::span<const FeatureVector> features, int feature_count,
                          GammaPolicy policy, bool normalized) {
  if (feature_count <= 0) throw InputError("no features");
  GammaChoice choice{1.0 / feature_count, GammaPolicy::kAuto, false};
  if (policy == GammaPolicy::kAuto) return choice;

  double sum = 0.0;
  double sum_sq = 0.0;
  for (const FeatureVector& fv : features) {
    const double scale = normalized ? std::sqrt(fv.squared_norm()) : 1.0;
    if (scale == 0.0) continue;
    for (const auto& layer : fv.by_height) {
      for (const auto& [label, count] : layer) {
        const double x = count / scale;
        sum += x;
        sum_sq += x * x;
      }
    }
  }
  const double entries = static_cast<double>(features.size()) * feature_count;
  const double mean = sum / entries;
  const double variance = sum_sq / entries - mean * mean;
  if (!(variance > 0.0)) {
    choice.fell_back = true;
    return choice;
  }
  return {1.0 / (feature_count * variance), GammaPolicy::kScale, false};
}

double rbf_on_features(const FeatureVector& a, const FeatureVector& b, double gamma) {
  return std::exp(-gamma * squared_distance(a, b));
}

KernelMatrix rbf_from_gram(const KernelMatrix& gram, double gamma) {
  const int n = gram.size();
  KernelMatrix out(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double d2 = std::max(0.0, gram(i, i) + gram(j, j) - 2.0 * gram(i, j));
      out(i, j) = std::exp(-gamma * d2);
    }
  }
  return out;
}

}  // namespace etk
