#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "etk/dataset.hpp"
#include "etk/encoding_tree.hpp"

namespace etk {

// Injective compression of multiset strings to integer labels.
//
// Keys are "<height>:<sorted child labels joined by ','>", so the alphabets of
// different heights never share an id. Ids are issued 0, 1, 2, ... in intern
// order. After freeze() only lookups are allowed, and concurrent readers are
// safe.
class LabelDictionary {
 public:
  LabelDictionary();
  LabelDictionary(const LabelDictionary&) = delete;
  LabelDictionary& operator=(const LabelDictionary&) = delete;
  LabelDictionary(LabelDictionary&&) = default;
  LabelDictionary& operator=(LabelDictionary&&) = default;

  int intern(int height, std::string_view multiset);
  std::optional<int> find(int height, std::string_view multiset) const;

  int size() const noexcept { return static_cast<int>(keys_.size()); }
  int height_of(int label) const { return heights_[label]; }
  const std::string& key_of(int label) const { return keys_[label]; }

  void freeze() noexcept { frozen_ = true; }
  bool frozen() const noexcept { return frozen_; }

  // Identity used to reject mixing vectors from different dictionaries.
  std::uint64_t id() const noexcept { return id_; }

 private:
  static std::string make_key(int height, std::string_view multiset);

  std::unordered_map<std::string, int> index_;
  std::vector<std::string> keys_;
  std::vector<int> heights_;
  std::uint64_t id_;
  bool frozen_ = false;
};

// Sparse per-height label histogram of one tree, i.e. the explicit feature
// map of the WL-ET kernel. by_height[i] is sorted by label.
struct FeatureVector {
  std::uint64_t dictionary_id = 0;
  std::vector<std::vector<std::pair<int, long>>> by_height;

  int height() const { return static_cast<int>(by_height.size()) - 1; }
  long count_at(int height) const;
  double squared_norm() const;
};

struct ReportingResult {
  FeatureVector features;
  std::vector<int> node_labels;  // compressed label of every node, by id
  std::size_t node_visits = 0;
};

// Propagates labels from the leaves to the root. Leaves get
// f("0:<initial label>"); a node at height i gets f of its children's labels
// sorted ascending. Nodes are processed height by height in id order.
// Requires every leaf at the same depth; throws InputError otherwise.
ReportingResult hierarchical_report(const EncodingTree& tree, std::span<const int> leaf_labels,
                                    LabelDictionary& dict);
// Lookup-only variant for a frozen dictionary; unknown labels throw.
ReportingResult hierarchical_report(const EncodingTree& tree, std::span<const int> leaf_labels,
                                    const LabelDictionary& dict);

inline FeatureVector hierarchical_reporting(const EncodingTree& tree,
                                            std::span<const int> leaf_labels,
                                            LabelDictionary& dict) {
  return hierarchical_report(tree, leaf_labels, dict).features;
}

// <phi(T1), phi(T2)>. Throws InputError on dictionary mismatch.
double kernel_value(const FeatureVector& a, const FeatureVector& b);
double squared_distance(const FeatureVector& a, const FeatureVector& b);

// Dense symmetric N x N matrix, row-major.
class KernelMatrix {
 public:
  KernelMatrix() = default;
  explicit KernelMatrix(int size) : size_(size), values_(static_cast<std::size_t>(size) * size, 0.0) {}

  int size() const noexcept { return size_; }
  double operator()(int i, int j) const { return values_[static_cast<std::size_t>(i) * size_ + j]; }
  double& operator()(int i, int j) { return values_[static_cast<std::size_t>(i) * size_ + j]; }
  std::span<const double> row(int i) const {
    return std::span(values_).subspan(static_cast<std::size_t>(i) * size_, size_);
  }
  std::span<const double> values() const noexcept { return values_; }
  double trace() const;

  friend bool operator==(const KernelMatrix&, const KernelMatrix&) = default;

 private:
  int size_ = 0;
  std::vector<double> values_;
};

// All-pairs kernel_value.
KernelMatrix gram_matrix(std::span<const FeatureVector> features);

// One reporting pass per tree (interning into `dict` in dataset order), then
// all pairs. Throws InputError if tree heights differ.
KernelMatrix gram_matrix(std::span<const EncodingTree> trees, const InitialLabeling& labeling,
                         LabelDictionary& dict);

// k(x, y) / sqrt(k(x, x) k(y, y)); rows with zero norm stay zero.
KernelMatrix normalize_kernel(const KernelMatrix& kernel);

enum class GammaPolicy { kAuto, kScale };

struct GammaChoice {
  double gamma = 0.0;
  GammaPolicy policy = GammaPolicy::kAuto;
  bool fell_back = false;  // scale requested but feature variance was zero
};

// auto: 1 / F. scale: 1 / (F * Var(X)) over all N x F entries of the dense
// feature matrix, with F = feature_count (dictionary size). With `normalized`,
// X holds unit-norm rows.
GammaChoice resolve_gamma(std::span<const FeatureVector> features, int feature_count,
                          GammaPolicy policy, bool normalized = false);

// exp(-gamma * ||a - b||^2).
double rbf_on_features(const FeatureVector& a, const FeatureVector& b, double gamma);

// RBF matrix from the Gram matrix of inner products.
KernelMatrix rbf_from_gram(const KernelMatrix& gram, double gamma);

}  // namespace etk
