#include "cli.hpp"

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "etk/cross_validation.hpp"
#include "etk/dataset.hpp"
#include "etk/entropy.hpp"
#include "etk/errors.hpp"
#include "etk/kernel_io.hpp"
#include "etk/pipeline.hpp"
#include "etk/tree_io.hpp"

namespace etk::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;
using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

struct Common {
  std::string dataset_dir;
  std::string name;
  int threads = 1;
  std::string labels = "auto";
};

struct Context {
  std::vector<std::string> argv;
  std::ostream& out;
  std::ostream& err;
};

// Run record written next to every output.
class Manifest {
 public:
  Manifest(const Context& ctx, std::string command, const Common& common) {
    doc_["command"] = std::move(command);
    doc_["argv"] = ctx.argv;
    doc_["dataset"] = {{"dir", common.dataset_dir}, {"name", common.name}};
    doc_["config"] = {{"threads", common.threads}, {"labels", common.labels}};
    doc_["timings_ms"] = json::object();
    doc_["outputs"] = json::array();
  }

  json& config() { return doc_["config"]; }
  void dataset_info(const Dataset& d) {
    doc_["dataset"]["graphs"] = d.graphs.size();
    doc_["dataset"]["classes"] = d.class_count;
  }
  void timing(const std::string& stage, double ms) { doc_["timings_ms"][stage] = ms; }
  void output(const std::string& path) { doc_["outputs"].push_back(path); }

  void write(const fs::path& primary_output) const {
    const fs::path path = primary_output.string() + ".manifest.json";
    std::ofstream f(path);
    if (!f) throw InputError("cannot write " + path.string());
    f << doc_.dump(2) << '\n';
  }

 private:
  json doc_;
};

std::ofstream open_output(const fs::path& path) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream f(path, std::ios::binary);
  if (!f) throw InputError("cannot write " + path.string());
  return f;
}

Dataset load(const Common& common, Manifest& manifest) {
  const auto start = Clock::now();
  Dataset d = parse_tudataset(common.dataset_dir, common.name);
  manifest.timing("parse", ms_since(start));
  manifest.dataset_info(d);
  return d;
}

LabelMode label_mode_for(const Common& common, const Dataset& d) {
  return common.labels == "auto" ? default_label_mode(d) : parse_label_mode(common.labels);
}

std::vector<OptimizedTree> optimize_all(const Dataset& d, int height, const Common& common, Manifest& manifest) {
  const auto start = Clock::now();
  OptimizerConfig config;
  config.height = height;
  std::vector<OptimizedTree> trees = build_trees(d, config, common.threads);
  manifest.timing("optimize", ms_since(start));
  return trees;
}

void add_common(CLI::App* sub, Common& common) {
  sub->add_option("dataset-dir", common.dataset_dir, "Directory with the TUDataset files")->required();
  sub->add_option("name", common.name, "Dataset name (file prefix)")->required();
  sub->add_option("--threads", common.threads, "Worker threads")->check(CLI::PositiveNumber);
  sub->add_option("--labels", common.labels, "Initial labels: auto, degree, degree-category")
      ->check(CLI::IsMember({"auto", "degree", "degree-category"}));
}

struct OptimizeArgs {
  Common common;
  int height = 2;
  std::string out;
  bool stats = false;
};

int cmd_optimize(const OptimizeArgs& a, const Context& ctx) {
  Manifest manifest(ctx, "optimize", a.common);
  manifest.config()["height"] = a.height;
  const Dataset d = load(a.common, manifest);
  const std::vector<OptimizedTree> trees = optimize_all(d, a.height, a.common, manifest);

  std::ofstream f = open_output(a.out);
  double before = 0.0;
  double after = 0.0;
  long merges = 0;
  long compressions = 0;
  int tallest = 0;
  for (std::size_t g = 0; g < trees.size(); ++g) {
    const OptimizerStats& s = trees[g].stats;
    before += s.entropy_trace.front();
    after += s.entropy_trace.back();
    merges += s.merge_steps;
    compressions += s.compress_steps;
    tallest = std::max(tallest, s.max_intermediate_height);
    write_tree_record(f, {static_cast<int>(g), d.graphs[g].graph_class(), s.entropy_trace.back(), trees[g].tree});
  }
  manifest.output(a.out);
  manifest.write(a.out);
  const double n = static_cast<double>(trees.size());
  ctx.out << d.name << ": " << trees.size() << " trees of height " << a.height << " -> " << a.out << '\n'
          << "mean structural entropy: one-level " << before / n << " bits, optimized " << after / n
          << " bits\n";
  if (a.stats) {
    ctx.out << "merge steps " << merges << ", compress steps " << compressions << ", max intermediate height "
            << tallest << '\n';
  }
  return kExitOk;
}

struct GramArgs {
  Common common;
  int height = 2;
  std::string out;
  std::string kernel = "linear";
  bool normalize = false;
  std::string features_out;
};

int cmd_gram(const GramArgs& a, const Context& ctx) {
  Manifest manifest(ctx, "gram", a.common);
  manifest.config()["height"] = a.height;
  manifest.config()["kernel"] = a.kernel;
  manifest.config()["normalize"] = a.normalize;
  const KernelMode mode = parse_kernel_mode(a.kernel);
  const Dataset d = load(a.common, manifest);
  const std::vector<OptimizedTree> trees = optimize_all(d, a.height, a.common, manifest);

  const auto start = Clock::now();
  const InitialLabeling labeling = assign_initial_labels(d, label_mode_for(a.common, d));
  const FeatureSet set = report_trees(trees, labeling);
  const KernelChoice kernel = make_kernel(set, gram_matrix(set.features), mode, a.normalize);
  manifest.timing("kernel", ms_since(start));
  if (kernel.gamma.fell_back) ctx.err << "warning: zero feature variance, rbf-scale fell back to rbf-auto\n";

  GramHeader header;
  header.dataset = d.name;
  header.kernel = a.kernel;
  header.extra["height"] = std::to_string(a.height);
  if (mode != KernelMode::kLinear) header.extra["gamma"] = format_double(kernel.gamma.gamma);
  if (a.normalize) header.extra["normalize"] = "1";
  std::ofstream f = open_output(a.out);
  write_gram(f, header, kernel.matrix);
  manifest.output(a.out);
  if (!a.features_out.empty()) {
    std::vector<int> classes;
    for (const Graph& g : d.graphs) classes.push_back(g.graph_class());
    std::ofstream ff = open_output(a.features_out);
    write_feature_vectors(ff, set.features, classes);
    manifest.output(a.features_out);
  }
  manifest.write(a.out);
  ctx.out << d.name << ": " << kernel.matrix.size() << "x" << kernel.matrix.size() << " " << a.kernel
          << " kernel, height " << a.height << ", " << set.dictionary.size() << " labels -> " << a.out << '\n';
  return kExitOk;
}

struct ClassifyArgs {
  Common common;
  std::vector<int> heights{2, 3, 4, 5};
  std::vector<std::string> kernels{"linear"};
  std::vector<double> c_grid{1e-2, 1e-1, 1.0, 10.0, 100.0, 1000.0};
  std::uint64_t seed = 0;
  int folds = 10;
  bool normalize = false;
  std::string out;
};

int cmd_classify(const ClassifyArgs& a, const Context& ctx) {
  Manifest manifest(ctx, "classify", a.common);
  manifest.config()["heights"] = a.heights;
  manifest.config()["kernels"] = a.kernels;
  manifest.config()["c_grid"] = a.c_grid;
  manifest.config()["seed"] = a.seed;
  manifest.config()["folds"] = a.folds;
  manifest.config()["normalize"] = a.normalize;

  CvOptions options;
  options.heights = a.heights;
  options.kernel_modes.clear();
  for (const std::string& k : a.kernels) options.kernel_modes.push_back(parse_kernel_mode(k));
  options.c_grid = a.c_grid;
  options.seed = a.seed;
  options.folds = a.folds;
  options.normalize = a.normalize;
  options.threads = a.common.threads;

  const Dataset d = load(a.common, manifest);
  options.label_mode = label_mode_for(a.common, d);
  CvTimings timings;
  const CvReport report = cross_validate(d, options, &timings);
  manifest.timing("optimize", timings.optimize_ms);
  manifest.timing("kernel", timings.kernel_ms);
  manifest.timing("train", timings.train_ms);

  const std::string out = a.out.empty() ? d.name + ".cv.json" : a.out;
  std::ofstream f = open_output(out);
  f << to_json(report);
  manifest.output(out);
  manifest.write(out);

  for (const std::string& w : report.warnings) ctx.err << "warning: " << w << '\n';
  std::ostringstream row;
  row.setf(std::ios::fixed);
  row.precision(1);
  row << d.name << "  WL-ET  " << 100.0 * report.best.mean << "±" << 100.0 * report.best.std;
  row.precision(6);
  row.unsetf(std::ios::fixed);
  row << "  (height " << report.best.height << ", " << to_string(report.best.mode) << ", C=" << report.best.C
      << ", " << report.folds << " folds, seed " << report.seed << ")";
  ctx.out << row.str() << '\n';
  return kExitOk;
}

struct ExportArgs {
  Common common;
  int height = 2;
  std::string out;
  std::string leaf_features;
};

int cmd_export(const ExportArgs& a, const Context& ctx) {
  Manifest manifest(ctx, "export", a.common);
  manifest.config()["height"] = a.height;
  const Dataset d = load(a.common, manifest);
  const std::vector<OptimizedTree> trees = optimize_all(d, a.height, a.common, manifest);
  std::ofstream f = open_output(a.out);
  for (std::size_t g = 0; g < trees.size(); ++g) {
    write_tree_record(f, {static_cast<int>(g), d.graphs[g].graph_class(), trees[g].stats.entropy_trace.back(),
                          trees[g].tree});
  }
  manifest.output(a.out);

  const std::string sidecar = a.leaf_features.empty() ? a.out + ".leaves" : a.leaf_features;
  std::ofstream lf = open_output(sidecar);
  for (std::size_t g = 0; g < d.graphs.size(); ++g) {
    const Graph& graph = d.graphs[g];
    lf << g;
    for (int v = 0; v < graph.vertex_count(); ++v) {
      lf << ' ' << v << ':' << format_double(graph.degree(v));
      if (graph.has_categories()) lf << ':' << graph.category(v);
    }
    lf << '\n';
  }
  manifest.output(sidecar);
  manifest.write(a.out);
  ctx.out << d.name << ": exported " << trees.size() << " trees of height " << a.height << " -> " << a.out
          << " (leaf features " << sidecar << ")\n";
  return kExitOk;
}

int cmd_replay(const std::string& manifest_path, const Context& ctx) {
  std::ifstream f(manifest_path);
  if (!f) throw InputError("cannot read manifest " + manifest_path);
  json doc;
  try {
    doc = json::parse(f);
  } catch (const json::exception& e) {
    throw ParseError(manifest_path, 0, e.what());
  }
  const std::vector<std::string> argv = doc.at("argv").get<std::vector<std::string>>();
  if (argv.size() < 2 || argv[1] == "replay") throw InputError("manifest has no replayable command");
  return run_cli(argv, ctx.out, ctx.err);
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Encoding-tree graph classification toolkit"};
  app.require_subcommand(1);

  OptimizeArgs opt;
  auto* optimize = app.add_subcommand("optimize", "Optimize every graph into a height-k encoding tree");
  add_common(optimize, opt.common);
  optimize->add_option("--height", opt.height, "Tree height k")->check(CLI::Range(2, 64));
  optimize->add_option("--out", opt.out, "Output trees file (JSON lines)")->required();
  optimize->add_flag("--stats", opt.stats, "Print optimizer statistics");

  GramArgs gram;
  auto* gram_cmd = app.add_subcommand("gram", "Write the WL-ET Gram matrix");
  add_common(gram_cmd, gram.common);
  gram_cmd->add_option("--height", gram.height, "Tree height k")->check(CLI::Range(2, 64));
  gram_cmd->add_option("--out", gram.out, "Output matrix file")->required();
  gram_cmd->add_option("--kernel", gram.kernel, "linear, rbf-auto or rbf-scale");
  gram_cmd->add_flag("--normalize", gram.normalize, "L2-normalize feature vectors");
  gram_cmd->add_option("--features", gram.features_out, "Also write sparse feature vectors here");

  ClassifyArgs cls;
  auto* classify = app.add_subcommand("classify", "10-fold cross-validated SVM on WL-ET kernels");
  add_common(classify, cls.common);
  classify->add_option("--heights", cls.heights, "Tree heights to search")->delimiter(',')->check(CLI::Range(2, 64));
  classify->add_option("--kernel", cls.kernels, "Kernel modes to search")->delimiter(',');
  classify->add_option("--c-grid", cls.c_grid, "SVM C values to search")->delimiter(',');
  classify->add_option("--seed", cls.seed, "Fold shuffling seed");
  classify->add_option("--folds", cls.folds, "Number of folds")->check(CLI::Range(2, 1000));
  classify->add_flag("--normalize", cls.normalize, "L2-normalize feature vectors");
  classify->add_option("--out", cls.out, "CV report file (default <name>.cv.json)");

  ExportArgs exp;
  auto* export_cmd = app.add_subcommand("export", "Export trees and leaf features for downstream training");
  add_common(export_cmd, exp.common);
  export_cmd->add_option("--height", exp.height, "Tree height k")->check(CLI::Range(2, 64));
  export_cmd->add_option("--out", exp.out, "Output trees file (JSON lines)")->required();
  export_cmd->add_option("--leaf-features", exp.leaf_features, "Leaf feature file (default <out>.leaves)");

  std::string manifest_path;
  auto* replay = app.add_subcommand("replay", "Re-run the command recorded in a manifest");
  replay->add_option("manifest", manifest_path, "Manifest file")->required();

  std::vector<const char*> argv;
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInput;
  }

  const Context ctx{args, out, err};
  const std::string stage = app.get_subcommands().front()->get_name();
  try {
    if (*optimize) return cmd_optimize(opt, ctx);
    if (*gram_cmd) return cmd_gram(gram, ctx);
    if (*classify) return cmd_classify(cls, ctx);
    if (*export_cmd) return cmd_export(exp, ctx);
    return cmd_replay(manifest_path, ctx);
  } catch (const InputError& e) {
    err << "etk " << stage << ": input error: " << e.what() << '\n';
    return kExitInput;
  } catch (const NumericalError& e) {
    err << "etk " << stage << ": numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "etk " << stage << ": " << e.what() << '\n';
    return kExitInput;
  }
}

}  // namespace etk::cli
