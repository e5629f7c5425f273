#include "etk/cross_validation.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <random>

#include <json.hpp>

#include "etk/errors.hpp"
#include "etk/parallel.hpp"
#include "etk/pipeline.hpp"

namespace etk {
namespace {

double elapsed_ms(std::chrono::steady_clock::time_point since) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - since).count();
}

struct FoldResult {
  double test = 0.0;
  double train = 0.0;
};

double accuracy(const MulticlassModel& model, const KernelMatrix& kernel, std::span<const int> rows,
                std::span<const int> classes) {
  if (rows.empty()) return 0.0;
  int correct = 0;
  for (int r : rows) correct += predict_one_vs_one(model, kernel, r) == classes[r];
  return static_cast<double>(correct) / static_cast<double>(rows.size());
}

nlohmann::json to_json_value(const CvGridPoint& p) {
  nlohmann::json j;
  j["height"] = p.height;
  j["kernel"] = to_string(p.mode);
  j["C"] = p.C;
  j["gamma"] = p.gamma;
  j["mean"] = p.mean;
  j["std"] = p.std;
  j["train_mean"] = p.train_mean;
  j["fold_accuracies"] = p.fold_accuracies;
  j["train_accuracies"] = p.train_accuracies;
  return j;
}

}  // namespace

std::vector<int> stratified_folds(std::span<const int> classes, int class_count, int folds,
                                  std::uint64_t seed, std::vector<std::string>* warnings) {
  if (folds < 2) throw InputError("need at least 2 folds");
  if (static_cast<int>(classes.size()) < folds) {
    throw InputError("cannot split " + std::to_string(classes.size()) + " examples into " +
                     std::to_string(folds) + " folds");
  }
  std::vector<std::vector<int>> members(class_count);
  for (std::size_t i = 0; i < classes.size(); ++i) members[classes[i]].push_back(static_cast<int>(i));
  std::mt19937_64 rng(seed);
  std::vector<int> fold(classes.size(), 0);
  std::size_t dealt = 0;
  for (int c = 0; c < class_count; ++c) {
    if (!members[c].empty() && static_cast<int>(members[c].size()) < folds && warnings != nullptr) {
      warnings->push_back("class " + std::to_string(c) + " has " + std::to_string(members[c].size()) +
                          " members (< " + std::to_string(folds) + " folds); stratification is best effort");
    }
    std::shuffle(members[c].begin(), members[c].end(), rng);
    for (int i : members[c]) fold[i] = static_cast<int>(dealt++ % folds);
  }
  return fold;
}

std::pair<double, double> mean_and_std(std::span<const double> values) {
  if (values.empty()) return {0.0, 0.0};
  const double n = static_cast<double>(values.size());
  const double mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
  if (values.size() < 2) return {mean, 0.0};
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  return {mean, std::sqrt(ss / (n - 1.0))};
}

CvReport cross_validate_kernels(std::span<const KernelCandidate> kernels, std::span<const int> classes,
                                int class_count, const CvOptions& options) {
  if (kernels.empty()) throw InputError("no kernels to evaluate");
  if (options.c_grid.empty()) throw InputError("empty C grid");
  CvReport report;
  report.seed = options.seed;
  report.folds = options.folds;
  report.normalize = options.normalize;
  report.c_grid = options.c_grid;

  const std::vector<int> fold = stratified_folds(classes, class_count, options.folds, options.seed, &report.warnings);
  std::vector<std::vector<int>> test_rows(options.folds);
  std::vector<std::vector<int>> train_rows(options.folds);
  for (int i = 0; i < static_cast<int>(classes.size()); ++i) {
    for (int f = 0; f < options.folds; ++f) (f == fold[i] ? test_rows : train_rows)[f].push_back(i);
  }

  const std::size_t per_kernel = options.c_grid.size() * options.folds;
  std::vector<FoldResult> results(kernels.size() * per_kernel);
  parallel_for(results.size(), options.threads, [&](std::size_t task) {
    const std::size_t k = task / per_kernel;
    const std::size_t c = task % per_kernel / options.folds;
    const int f = static_cast<int>(task % options.folds);
    const SmoOptions smo{options.c_grid[c], options.tol, options.max_iterations};
    const MulticlassModel model =
        train_one_vs_one(kernels[k].matrix, train_rows[f], classes, class_count, smo, kernels[k].mode);
    results[task] = {accuracy(model, kernels[k].matrix, test_rows[f], classes),
                     accuracy(model, kernels[k].matrix, train_rows[f], classes)};
  });

  for (std::size_t k = 0; k < kernels.size(); ++k) {
    for (std::size_t c = 0; c < options.c_grid.size(); ++c) {
      CvGridPoint p;
      p.height = kernels[k].height;
      p.mode = kernels[k].mode;
      p.C = options.c_grid[c];
      p.gamma = kernels[k].gamma;
      for (int f = 0; f < options.folds; ++f) {
        const FoldResult& r = results[k * per_kernel + c * options.folds + f];
        p.fold_accuracies.push_back(r.test);
        p.train_accuracies.push_back(r.train);
      }
      std::tie(p.mean, p.std) = mean_and_std(p.fold_accuracies);
      p.train_mean = mean_and_std(p.train_accuracies).first;
      if (report.grid.empty() || p.mean > report.best.mean) report.best = p;
      report.grid.push_back(std::move(p));
    }
  }
  return report;
}

CvReport cross_validate(const Dataset& dataset, const CvOptions& options, CvTimings* timings) {
  if (dataset.graphs.empty()) throw InputError("dataset is empty");
  if (options.heights.empty() || options.kernel_modes.empty()) throw InputError("empty height or kernel grid");
  const LabelMode label_mode = options.label_mode.value_or(default_label_mode(dataset));
  const InitialLabeling labeling = assign_initial_labels(dataset, label_mode);
  std::vector<int> classes;
  for (const Graph& g : dataset.graphs) classes.push_back(g.graph_class());

  CvTimings local;
  std::vector<KernelCandidate> kernels;
  std::vector<std::string> warnings;
  for (int height : options.heights) {
    auto start = std::chrono::steady_clock::now();
    OptimizerConfig config;
    config.height = height;
    const std::vector<OptimizedTree> trees = build_trees(dataset, config, options.threads);
    local.optimize_ms += elapsed_ms(start);

    start = std::chrono::steady_clock::now();
    const FeatureSet set = report_trees(trees, labeling);
    const KernelMatrix gram = gram_matrix(set.features);
    for (KernelMode mode : options.kernel_modes) {
      KernelChoice choice = make_kernel(set, gram, mode, options.normalize);
      if (choice.gamma.fell_back) {
        warnings.push_back("height " + std::to_string(height) +
                           ": zero feature variance, rbf-scale fell back to rbf-auto");
      }
      kernels.push_back({height, mode, mode == KernelMode::kLinear ? 0.0 : choice.gamma.gamma,
                         std::move(choice.matrix)});
    }
    local.kernel_ms += elapsed_ms(start);
  }

  const auto start = std::chrono::steady_clock::now();
  CvReport report = cross_validate_kernels(kernels, classes, dataset.class_count, options);
  local.train_ms += elapsed_ms(start);

  report.dataset = dataset.name;
  report.label_mode = to_string(label_mode);
  report.heights = options.heights;
  for (KernelMode mode : options.kernel_modes) report.kernel_modes.push_back(to_string(mode));
  report.warnings.insert(report.warnings.begin(), warnings.begin(), warnings.end());
  if (timings != nullptr) *timings = local;
  return report;
}

std::string to_json(const CvReport& report) {
  nlohmann::json j;
  j["dataset"] = report.dataset;
  j["seed"] = report.seed;
  j["folds"] = report.folds;
  j["normalize"] = report.normalize;
  j["label_mode"] = report.label_mode;
  j["c_grid"] = report.c_grid;
  j["heights"] = report.heights;
  j["kernel_modes"] = report.kernel_modes;
  j["fold_accuracies"] = report.best.fold_accuracies;
  j["mean"] = report.best.mean;
  j["std"] = report.best.std;
  j["chosen"] = {{"height", report.best.height},
                 {"kernel", to_string(report.best.mode)},
                 {"C", report.best.C},
                 {"gamma", report.best.gamma}};
  nlohmann::json grid = nlohmann::json::array();
  for (const CvGridPoint& p : report.grid) grid.push_back(to_json_value(p));
  j["grid"] = std::move(grid);
  j["warnings"] = report.warnings;
  return j.dump(2) + "\n";
}

}  // namespace etk
