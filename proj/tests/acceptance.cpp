// Acceptance checks on synthetic graphs and MUTAG. One PASS/FAIL line per
// criterion; exit status is the number of failures.

#include <Eigen/Dense>
#include <cmath>
#include <random>
#include <sstream>

#include "acceptance_support.hpp"
#include "cli.hpp"
#include "etk/brute_force.hpp"
#include "etk/entropy.hpp"
#include "etk/optimizer.hpp"
#include "etk/pipeline.hpp"
#include "support.hpp"

namespace etk {
namespace {

using acceptance::fmt;

constexpr double kEntropyTol = 1e-9;
constexpr double kEntropyOracleSeconds = 1.0;
constexpr double kSandwichSeconds = 30.0;
constexpr double kPsdRelativeTol = 1e-9;
constexpr double kKernelSeconds = 10.0;
constexpr double kMutagReferenceMean = 89.5;
constexpr double kMutagReferenceStd = 6.1;

double degree_entropy(const Graph& g) {
  double total = 0.0;
  for (const Edge& e : g.edges()) total += 2.0 * e.weight;
  double h = 0.0;
  for (int v = 0; v < g.vertex_count(); ++v) {
    const double p = g.degree(v) / total;
    h -= p * std::log2(p);
  }
  return h;
}

void entropy_oracle(acceptance::Report& report) {
  acceptance::Stopwatch clock;
  std::mt19937_64 rng(101);
  double worst = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    const int n = std::uniform_int_distribution<int>(4, 9)(rng);
    const Graph g = test::random_connected(rng, n, std::uniform_real_distribution<double>(0.1, 0.8)(rng));
    worst = std::max(worst, std::abs(structural_entropy(g, one_level_tree(g)) - degree_entropy(g)));
  }
  const double s = clock.seconds();
  report.line(worst <= kEntropyTol && s < kEntropyOracleSeconds, "entropy-oracle",
              fmt("200 graphs, max |diff| %.2e (tol %.0e), %.3f s", worst, kEntropyTol, s));
}

void sandwich(acceptance::Report& report) {
  acceptance::Stopwatch clock;
  OptimizerConfig config;
  config.height = 2;
  std::mt19937_64 rng(102);
  int violations = 0;
  double worst_gap = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const int n = std::uniform_int_distribution<int>(3, 8)(rng);
    const Graph g = test::random_connected(rng, n, std::uniform_real_distribution<double>(0.1, 0.7)(rng));
    const double oracle = brute_force_min_entropy(g, 2).bits;
    const double greedy = structural_entropy(g, optimize_encoding_tree(g, config).tree);
    const double flat = structural_entropy(g, one_level_tree(g));
    if (oracle > greedy + kEntropyTol || greedy > flat + kEntropyTol) ++violations;
    worst_gap = std::max(worst_gap, greedy - oracle);
  }
  const Graph c4 = test::cycle(4);
  const double c4_bits = structural_entropy(c4, optimize_encoding_tree(c4, config).tree);
  const Graph bridge = test::two_triangles_bridge();
  const EncodingTree bt = optimize_encoding_tree(bridge, config).tree;
  const bool triangles = bt[0].parent == bt[1].parent && bt[1].parent == bt[2].parent &&
                         bt[3].parent == bt[4].parent && bt[4].parent == bt[5].parent && bt[0].parent != bt[3].parent;
  const bool bridge_optimal =
      std::abs(structural_entropy(bridge, bt) - brute_force_min_entropy(bridge, 2).bits) <= kEntropyTol;
  const double s = clock.seconds();
  const bool pass = violations == 0 && std::abs(c4_bits - 1.5) <= kEntropyTol && triangles && bridge_optimal &&
                    s < kSandwichSeconds;
  report.line(pass, "brute-force-sandwich",
              fmt("100 graphs, %d violations, max greedy-oracle gap %.4f bits; 4-cycle %.12f bits; "
                  "bridge triangles %s; %.2f s",
                  violations, worst_gap, c4_bits, triangles && bridge_optimal ? "yes" : "no", s));
}

EncodingTree star_tree(int leaves) {
  EncodingTree t(leaves);
  const int root = t.add_node(static_cast<double>(leaves));
  for (int v = 0; v < leaves; ++v) t.attach(v, root);
  t.set_root(root);
  return t;
}

void kernel_correctness(acceptance::Report& report, const Dataset& mutag) {
  acceptance::Stopwatch clock;
  const std::vector<EncodingTree> toy{star_tree(3), star_tree(3)};
  const InitialLabeling toy_labels{LabelMode::kDegree, {{0, 0, 1}, {0, 1, 1}}, {}};
  LabelDictionary dict;
  const KernelMatrix tk = gram_matrix(toy, toy_labels, dict);
  const bool toy_ok = tk(0, 0) == 6.0 && tk(0, 1) == 4.0 && tk(1, 0) == 4.0 && tk(1, 1) == 6.0;

  OptimizerConfig config;
  config.height = 2;
  const std::vector<OptimizedTree> trees = build_trees(mutag, config);
  const FeatureSet set = report_trees(trees, assign_initial_labels(mutag, default_label_mode(mutag)));
  const KernelMatrix k = gram_matrix(set.features);
  const int n = k.size();
  bool symmetric = true;
  Eigen::MatrixXd m(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      m(i, j) = k(i, j);
      symmetric = symmetric && k(i, j) == k(j, i);
    }
  }
  const double min_eig = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(m).eigenvalues().minCoeff();
  const double floor = -kPsdRelativeTol * k.trace();
  const double s = clock.seconds();
  report.line(toy_ok && n == 188 && symmetric && min_eig >= floor && s < kKernelSeconds, "kernel-correctness",
              fmt("toy [[%g,%g],[%g,%g]]; MUTAG %dx%d symmetric %s, min eigenvalue %.3e (floor %.3e), %.2f s",
                  tk(0, 0), tk(0, 1), tk(1, 0), tk(1, 1), n, n, symmetric ? "yes" : "no", min_eig, floor, s));
}

void complexity(acceptance::Report& report, const Dataset& mutag) {
  const InitialLabeling labels = assign_initial_labels(mutag, default_label_mode(mutag));
  long visit_violations = 0;
  long node_violations = 0;
  double worst_visit_ratio = 0.0;
  double worst_node_ratio = 0.0;
  for (int k = 2; k <= 5; ++k) {
    OptimizerConfig config;
    config.height = k;
    const std::vector<OptimizedTree> trees = build_trees(mutag, config);
    const FeatureSet set = report_trees(trees, labels);
    for (std::size_t g = 0; g < trees.size(); ++g) {
      const double n = mutag.graphs[g].vertex_count();
      const double visits = static_cast<double>(set.node_visits[g]);
      const double nodes = trees[g].stats.nodes_before_padding;
      visit_violations += visits > n * k + 1;
      node_violations += nodes > 2 * n;
      worst_visit_ratio = std::max(worst_visit_ratio, visits / (n * k + 1));
      worst_node_ratio = std::max(worst_node_ratio, nodes / (2 * n));
    }
  }
  report.line(visit_violations == 0 && node_violations == 0, "complexity-invariants",
              fmt("MUTAG k=2..5: visits <= nk+1 violated %ld times (max ratio %.3f); "
                  "pre-padding nodes <= 2n violated %ld times (max ratio %.3f)",
                  visit_violations, worst_visit_ratio, node_violations, worst_node_ratio));
}

void table_mutag(acceptance::Report& report, const Dataset& mutag) {
  acceptance::Stopwatch clock;
  const CvReport r = cross_validate(mutag, acceptance::full_grid(KernelMode::kRbfScale, 1));
  const double mean = 100.0 * r.best.mean;
  report.line(std::abs(mean - kMutagReferenceMean) <= kMutagReferenceStd, "accuracy-mutag",
              fmt("%s vs %.1f±%.1f, %.1f s", acceptance::accuracy_row(r).c_str(), kMutagReferenceMean, kMutagReferenceStd,
                  clock.seconds()));
}

void determinism(acceptance::Report& report) {
  const test::TempDir dir;
  std::string outputs[2];
  std::string printed[2];
  int codes[2];
  for (int i = 0; i < 2; ++i) {
    const std::string path = (dir.path() / ("cv" + std::to_string(i) + ".json")).string();
    std::ostringstream out, err;
    codes[i] = cli::run_cli({"etk", "classify", test::mutag_dir().string(), "MUTAG", "--out", path}, out, err);
    outputs[i] = test::read_file(path);
    printed[i] = out.str();
  }
  const bool same = codes[0] == 0 && codes[1] == 0 && !outputs[0].empty() && outputs[0] == outputs[1] &&
                    printed[0] == printed[1];
  report.line(same, "determinism",
              fmt("two classify runs: exit %d/%d, reports %zu bytes, byte-identical %s", codes[0], codes[1],
                  outputs[0].size(), outputs[0] == outputs[1] ? "yes" : "no"));
}

}  // namespace
}  // namespace etk

int main() {
  etk::acceptance::Report report;
  etk::entropy_oracle(report);
  etk::sandwich(report);
  const etk::Dataset mutag = etk::parse_tudataset(etk::test::mutag_dir(), "MUTAG");
  etk::kernel_correctness(report, mutag);
  etk::complexity(report, mutag);
  etk::table_mutag(report, mutag);
  etk::determinism(report);
  return report.failures();
}
