#pragma once

#include <span>
#include <string>
#include <vector>

#include "etk/wl_kernel.hpp"

namespace etk {

enum class KernelMode { kLinear, kRbfAuto, kRbfScale };

std::string to_string(KernelMode mode);
KernelMode parse_kernel_mode(const std::string& text);

struct SmoOptions {
  double C = 1.0;
  double tol = 1e-3;
  long max_iterations = 1'000'000;
};

// Binary C-SVM in dual form. Decision value:
//   f(x) = sum_s dual_coefficients[s] * k(x, support[s]) + bias
struct SvmModel {
  std::vector<double> dual_coefficients;  // alpha_i * y_i
  std::vector<int> support_indices;       // rows of the kernel matrix
  double bias = 0.0;
  double C = 1.0;
  KernelMode kernel_mode = KernelMode::kLinear;

  std::vector<double> alphas;  // every training row, in `rows` order
  double dual_objective = 0.0;  // sum(alpha) - 1/2 alpha^T Q alpha
  double kkt_violation = 0.0;   // max violating pair gap at exit
  long iterations = 0;
};

// SMO with maximal-violating-pair working set selection, no shrinking.
// `rows` selects the training examples from `kernel`; `labels` are +1/-1.
// Stops once the violating pair gap drops below options.tol. Throws
// NumericalError (with the gap reached) after options.max_iterations.
SvmModel smo_train(const KernelMatrix& kernel, std::span<const int> rows, std::span<const int> labels,
                   const SmoOptions& options, KernelMode mode = KernelMode::kLinear);

// `kernel_row[s]` = k(x, support_indices[s]).
double predict(const SvmModel& model, std::span<const double> kernel_row);

// Decision value for row `index` of the same kernel matrix.
double decision_value(const SvmModel& model, const KernelMatrix& kernel, int index);

struct PairwiseModel {
  int positive_class = 0;  // +1 side
  int negative_class = 0;
  SvmModel model;
};

// One-vs-one reduction over the classes present in `rows`.
struct MulticlassModel {
  int class_count = 0;
  std::vector<int> present_classes;
  std::vector<PairwiseModel> pairs;
};

MulticlassModel train_one_vs_one(const KernelMatrix& kernel, std::span<const int> rows,
                                 std::span<const int> classes, int class_count, const SmoOptions& options,
                                 KernelMode mode = KernelMode::kLinear);

// Majority vote; ties go to the smallest class index.
int predict_one_vs_one(const MulticlassModel& model, const KernelMatrix& kernel, int index);

}  // namespace etk
