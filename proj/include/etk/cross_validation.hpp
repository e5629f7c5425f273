#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "etk/dataset.hpp"
#include "etk/svm.hpp"
#include "etk/wl_kernel.hpp"

namespace etk {

struct CvOptions {
  std::vector<int> heights{2, 3, 4, 5};
  std::vector<double> c_grid{1e-2, 1e-1, 1.0, 10.0, 100.0, 1000.0};
  std::vector<KernelMode> kernel_modes{KernelMode::kLinear};
  std::uint64_t seed = 0;
  int folds = 10;
  bool normalize = false;
  std::optional<LabelMode> label_mode;  // dataset default when unset
  double tol = 1e-3;
  long max_iterations = 1'000'000;
  int threads = 1;
};

struct CvGridPoint {
  int height = 0;
  KernelMode mode = KernelMode::kLinear;
  double C = 0.0;
  double gamma = 0.0;  // 0 for linear
  std::vector<double> fold_accuracies;
  std::vector<double> train_accuracies;
  double mean = 0.0;
  double std = 0.0;  // sample standard deviation over folds
  double train_mean = 0.0;
};

struct CvReport {
  std::string dataset;
  std::uint64_t seed = 0;
  int folds = 0;
  bool normalize = false;
  std::string label_mode;
  std::vector<double> c_grid;
  std::vector<int> heights;
  std::vector<std::string> kernel_modes;

  // Best grid point by mean test accuracy (first in grid order on ties).
  CvGridPoint best;
  std::vector<CvGridPoint> grid;  // heights, then kernel modes, then C
  std::vector<std::string> warnings;
};

struct CvTimings {
  double optimize_ms = 0.0;
  double kernel_ms = 0.0;
  double train_ms = 0.0;
};

// Stratified fold id per example: each class is shuffled with a generator
// seeded from `seed`, then classes are dealt round robin over the folds.
// Classes with fewer members than folds get a warning.
std::vector<int> stratified_folds(std::span<const int> classes, int class_count, int folds,
                                  std::uint64_t seed, std::vector<std::string>* warnings = nullptr);

// Sample mean and standard deviation.
std::pair<double, double> mean_and_std(std::span<const double> values);

struct KernelCandidate {
  int height = 0;
  KernelMode mode = KernelMode::kLinear;
  double gamma = 0.0;
  KernelMatrix matrix;
};

// 10-fold (options.folds) evaluation of every (kernel, C) pair on precomputed
// kernels, one-vs-one SVM per fold.
CvReport cross_validate_kernels(std::span<const KernelCandidate> kernels, std::span<const int> classes,
                                int class_count, const CvOptions& options);

// Full pipeline: trees for every height, WL-ET features, kernels, then
// cross_validate_kernels.
CvReport cross_validate(const Dataset& dataset, const CvOptions& options, CvTimings* timings = nullptr);

// Structured text (JSON) form; byte-identical for identical reports.
std::string to_json(const CvReport& report);

}  // namespace etk
