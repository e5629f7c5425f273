#include "etk/svm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "etk/errors.hpp"

namespace etk {
namespace {

constexpr double kTau = 1e-12;

}  // namespace

std::string to_string(KernelMode mode) {
  switch (mode) {
    case KernelMode::kLinear:
      return "linear";
    case KernelMode::kRbfAuto:
      return "rbf-auto";
    case KernelMode::kRbfScale:
      return "rbf-scale";
  }
  return "?";
}

KernelMode parse_kernel_mode(const std::string& text) {
  if (text == "linear") return KernelMode::kLinear;
  if (text == "rbf-auto") return KernelMode::kRbfAuto;
  if (text == "rbf-scale") return KernelMode::kRbfScale;
  throw InputError("unknown kernel mode '" + text + "' (expected linear, rbf-auto or rbf-scale)");
}

SvmModel smo_train(const KernelMatrix& kernel, std::span<const int> rows, std::span<const int> labels,
                   const SmoOptions& options, KernelMode mode) {
  const int n = static_cast<int>(rows.size());
  if (static_cast<int>(labels.size()) != n) throw InputError("smo_train: rows and labels differ in length");
  if (!(options.C > 0.0)) throw InputError("smo_train: C must be positive");
  bool has_pos = false;
  bool has_neg = false;
  for (int y : labels) {
    if (y != 1 && y != -1) throw InputError("smo_train: labels must be +1 or -1");
    (y > 0 ? has_pos : has_neg) = true;
  }
  if (!has_pos || !has_neg) throw InputError("smo_train: need at least one example per class");

  const double C = options.C;
  auto q = [&](int i, int j) { return labels[i] * labels[j] * kernel(rows[i], rows[j]); };
  std::vector<double> alpha(n, 0.0);
  std::vector<double> grad(n, -1.0);  // gradient of 1/2 a'Qa - e'a
  std::vector<double> diag(n);
  for (int i = 0; i < n; ++i) diag[i] = kernel(rows[i], rows[i]);

  auto in_up = [&](int t) { return labels[t] > 0 ? alpha[t] < C : alpha[t] > 0.0; };
  auto in_low = [&](int t) { return labels[t] > 0 ? alpha[t] > 0.0 : alpha[t] < C; };

  SvmModel model;
  model.C = C;
  model.kernel_mode = mode;
  long iter = 0;
  double gap = 0.0;
  std::vector<double> qi(n);
  std::vector<double> qj(n);
  while (true) {
    double gmax = -std::numeric_limits<double>::infinity();
    double gmin = std::numeric_limits<double>::infinity();
    int i = -1;
    int j = -1;
    for (int t = 0; t < n; ++t) {
      const double v = -labels[t] * grad[t];
      if (in_up(t) && v > gmax) {
        gmax = v;
        i = t;
      }
      if (in_low(t) && v < gmin) {
        gmin = v;
        j = t;
      }
    }
    gap = gmax - gmin;
    if (i < 0 || j < 0 || gap < options.tol) break;
    if (iter >= options.max_iterations) {
      throw NumericalError("SMO did not converge after " + std::to_string(iter) +
                           " iterations (violating pair gap " + std::to_string(gap) + ", tol " +
                           std::to_string(options.tol) + ", C " + std::to_string(C) + ")");
    }
    ++iter;

    for (int t = 0; t < n; ++t) {
      qi[t] = q(i, t);
      qj[t] = q(j, t);
    }
    const double old_ai = alpha[i];
    const double old_aj = alpha[j];
    if (labels[i] != labels[j]) {
      double quad = diag[i] + diag[j] + 2.0 * qi[j];
      if (quad <= 0.0) quad = kTau;
      const double delta = (-grad[i] - grad[j]) / quad;
      const double diff = alpha[i] - alpha[j];
      alpha[i] += delta;
      alpha[j] += delta;
      if (diff > 0.0) {
        if (alpha[j] < 0.0) {
          alpha[j] = 0.0;
          alpha[i] = diff;
        }
      } else if (alpha[i] < 0.0) {
        alpha[i] = 0.0;
        alpha[j] = -diff;
      }
      if (diff > 0.0) {
        if (alpha[i] > C) {
          alpha[i] = C;
          alpha[j] = C - diff;
        }
      } else if (alpha[j] > C) {
        alpha[j] = C;
        alpha[i] = C + diff;
      }
    } else {
      double quad = diag[i] + diag[j] - 2.0 * qi[j];
      if (quad <= 0.0) quad = kTau;
      const double delta = (grad[i] - grad[j]) / quad;
      const double sum = alpha[i] + alpha[j];
      alpha[i] -= delta;
      alpha[j] += delta;
      if (sum > C) {
        if (alpha[i] > C) {
          alpha[i] = C;
          alpha[j] = sum - C;
        }
      } else if (alpha[j] < 0.0) {
        alpha[j] = 0.0;
        alpha[i] = sum;
      }
      if (sum > C) {
        if (alpha[j] > C) {
          alpha[j] = C;
          alpha[i] = sum - C;
        }
      } else if (alpha[i] < 0.0) {
        alpha[i] = 0.0;
        alpha[j] = sum;
      }
    }
    const double dai = alpha[i] - old_ai;
    const double daj = alpha[j] - old_aj;
    for (int t = 0; t < n; ++t) grad[t] += qi[t] * dai + qj[t] * daj;
  }

  // Offset: average over free vectors, else midpoint of the feasible range.
  double upper = std::numeric_limits<double>::infinity();
  double lower = -std::numeric_limits<double>::infinity();
  double free_sum = 0.0;
  int free_count = 0;
  for (int t = 0; t < n; ++t) {
    const double yg = labels[t] * grad[t];
    if (alpha[t] >= C) {
      if (labels[t] < 0) upper = std::min(upper, yg); else lower = std::max(lower, yg);
    } else if (alpha[t] <= 0.0) {
      if (labels[t] > 0) upper = std::min(upper, yg); else lower = std::max(lower, yg);
    } else {
      free_sum += yg;
      ++free_count;
    }
  }
  const double rho = free_count > 0 ? free_sum / free_count : (upper + lower) / 2.0;

  double objective = 0.0;
  for (int t = 0; t < n; ++t) objective += alpha[t] * (grad[t] - 1.0);
  model.dual_objective = -objective / 2.0;
  model.bias = -rho;
  model.kkt_violation = std::max(0.0, gap);
  model.iterations = iter;
  for (int t = 0; t < n; ++t) {
    if (alpha[t] > 0.0) {
      model.support_indices.push_back(rows[t]);
      model.dual_coefficients.push_back(alpha[t] * labels[t]);
    }
  }
  model.alphas = std::move(alpha);
  if (!std::isfinite(model.bias) || !std::isfinite(model.dual_objective)) {
    throw NumericalError("SMO produced a non-finite solution");
  }
  return model;
}

double predict(const SvmModel& model, std::span<const double> kernel_row) {
  if (kernel_row.size() != model.support_indices.size()) {
    throw InputError("predict: kernel row has " + std::to_string(kernel_row.size()) + " entries for " +
                     std::to_string(model.support_indices.size()) + " support vectors");
  }
  double sum = model.bias;
  for (std::size_t s = 0; s < kernel_row.size(); ++s) sum += model.dual_coefficients[s] * kernel_row[s];
  return sum;
}

double decision_value(const SvmModel& model, const KernelMatrix& kernel, int index) {
  double sum = model.bias;
  for (std::size_t s = 0; s < model.support_indices.size(); ++s) {
    sum += model.dual_coefficients[s] * kernel(index, model.support_indices[s]);
  }
  return sum;
}

MulticlassModel train_one_vs_one(const KernelMatrix& kernel, std::span<const int> rows,
                                 std::span<const int> classes, int class_count, const SmoOptions& options,
                                 KernelMode mode) {
  std::vector<std::vector<int>> by_class(class_count);
  for (int r : rows) {
    const int c = classes[r];
    if (c < 0 || c >= class_count) throw InputError("class label out of range");
    by_class[c].push_back(r);
  }
  MulticlassModel out;
  out.class_count = class_count;
  for (int c = 0; c < class_count; ++c) {
    if (!by_class[c].empty()) out.present_classes.push_back(c);
  }
  for (std::size_t a = 0; a < out.present_classes.size(); ++a) {
    for (std::size_t b = a + 1; b < out.present_classes.size(); ++b) {
      const int pos = out.present_classes[a];
      const int neg = out.present_classes[b];
      std::vector<int> pair_rows = by_class[pos];
      pair_rows.insert(pair_rows.end(), by_class[neg].begin(), by_class[neg].end());
      std::vector<int> labels(by_class[pos].size(), 1);
      labels.resize(pair_rows.size(), -1);
      out.pairs.push_back({pos, neg, smo_train(kernel, pair_rows, labels, options, mode)});
    }
  }
  return out;
}

int predict_one_vs_one(const MulticlassModel& model, const KernelMatrix& kernel, int index) {
  if (model.present_classes.empty()) throw InputError("predict: model has no classes");
  if (model.pairs.empty()) return model.present_classes.front();
  std::vector<int> votes(model.class_count, 0);
  for (const PairwiseModel& p : model.pairs) {
    ++votes[decision_value(p.model, kernel, index) > 0.0 ? p.positive_class : p.negative_class];
  }
  return static_cast<int>(std::max_element(votes.begin(), votes.end()) - votes.begin());
}

}  // namespace etk
