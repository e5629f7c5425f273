#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "etk/brute_force.hpp"
#include "etk/entropy.hpp"
#include "etk/errors.hpp"
#include "support.hpp"

namespace etk {
namespace {

constexpr double kTol = 1e-9;

// Height-2 tree with one module per block.
EncodingTree partition_tree(const Graph& g, const std::vector<std::vector<int>>& blocks) {
  EncodingTree t(g.vertex_count());
  const int root = t.add_node();
  for (const auto& block : blocks) {
    const int m = t.add_node();
    for (int v : block) t.attach(v, m);
    t.attach(m, root);
  }
  t.set_root(root);
  return recompute_caches(g, std::move(t));
}

// Entropy of a two-level partition evaluated straight from the edge list.
double partition_entropy_oracle(const Graph& g, const std::vector<int>& block_of) {
  const int n = g.vertex_count();
  int blocks = 0;
  for (int b : block_of) blocks = std::max(blocks, b + 1);
  std::vector<double> deg(n, 0.0), vol(blocks, 0.0), cut(blocks, 0.0);
  double total = 0.0;
  for (const Edge& e : g.edges()) {
    deg[e.u] += e.weight;
    deg[e.v] += e.weight;
    total += 2 * e.weight;
    if (block_of[e.u] != block_of[e.v]) {
      cut[block_of[e.u]] += e.weight;
      cut[block_of[e.v]] += e.weight;
    }
  }
  for (int v = 0; v < n; ++v) vol[block_of[v]] += deg[v];
  double h = 0.0;
  for (int v = 0; v < n; ++v) {
    if (deg[v] > 0) h -= deg[v] / total * std::log2(deg[v] / vol[block_of[v]]);
  }
  for (int b = 0; b < blocks; ++b) {
    if (cut[b] > 0) h -= cut[b] / total * std::log2(vol[b] / total);
  }
  return h;
}

// Minimum over every set partition, enumerated as restricted growth strings.
double exhaustive_partition_minimum(const Graph& g) {
  const int n = g.vertex_count();
  std::vector<int> a(n, 0);
  double best = std::numeric_limits<double>::infinity();
  auto rec = [&](auto&& self, int i, int max_block) -> void {
    if (i == n) {
      best = std::min(best, partition_entropy_oracle(g, a));
      return;
    }
    for (int b = 0; b <= max_block + 1; ++b) {
      a[i] = b;
      self(self, i + 1, std::max(max_block, b));
    }
  };
  a[0] = 0;
  rec(rec, 1, 0);
  return best;
}

double degree_entropy(const Graph& g) {
  double total = 0.0;
  for (const Edge& e : g.edges()) total += 2 * e.weight;
  double h = 0.0;
  for (int v = 0; v < g.vertex_count(); ++v) {
    const double p = g.degree(v) / total;
    if (p > 0) h -= p * std::log2(p);
  }
  return h;
}

TEST(OneLevelTree, K2Caches) {
  const EncodingTree t = one_level_tree(test::k2());
  EXPECT_EQ(t.root(), 2);
  EXPECT_EQ(t.height(), 1);
  EXPECT_DOUBLE_EQ(t[2].vol, 2.0);
  EXPECT_DOUBLE_EQ(t[2].cut, 0.0);
  for (int v : {0, 1}) {
    EXPECT_DOUBLE_EQ(t[v].vol, 1.0);
    EXPECT_DOUBLE_EQ(t[v].cut, 1.0);
  }
}

TEST(OneLevelTree, SymmetricGraphsHaveUniformLeaves) {
  for (const Graph& g : {test::triangle(), test::cycle(4)}) {
    const EncodingTree t = one_level_tree(g);
    for (int v = 0; v < g.vertex_count(); ++v) {
      EXPECT_DOUBLE_EQ(t[v].vol, 2.0);
      EXPECT_DOUBLE_EQ(t[v].cut, 2.0);
    }
  }
}

TEST(OneLevelTree, EdgelessGraphIsDegenerate) {
  EXPECT_THROW(one_level_tree(Graph(3, {})), DegenerateGraphError);
  EXPECT_THROW(structural_entropy(Graph(3, {}), EncodingTree(3)), DegenerateGraphError);
}

TEST(StructuralEntropy, HandValues) {
  EXPECT_NEAR(structural_entropy(test::k2(), one_level_tree(test::k2())), 1.0, kTol);
  EXPECT_NEAR(structural_entropy(test::triangle(), one_level_tree(test::triangle())), std::log2(3.0), kTol);
  const Graph c4 = test::cycle(4);
  EXPECT_NEAR(structural_entropy(c4, partition_tree(c4, {{0, 1}, {2, 3}})), 1.5, kTol);
}

TEST(StructuralEntropy, CutZeroModulesContributeNothing) {
  const Graph g = test::make_graph(4, {{0, 1}, {2, 3}});
  const EncodingTree t = partition_tree(g, {{0, 1}, {2, 3}});
  EXPECT_DOUBLE_EQ(t[5].cut, 0.0);
  EXPECT_DOUBLE_EQ(t[6].cut, 0.0);
  EXPECT_NEAR(structural_entropy(g, t), 1.0, kTol);
}

TEST(StructuralEntropy, MatchesDegreeEntropyOnOneLevelTree) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    const Graph g = test::random_connected(rng, 3 + trial % 20, 0.3);
    EXPECT_NEAR(structural_entropy(g, one_level_tree(g)), degree_entropy(g), kTol);
  }
}

TEST(StructuralEntropy, MatchesPartitionOracle) {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 100; ++trial) {
    const Graph g = test::random_connected(rng, 6, 0.4);
    std::vector<int> block_of(6);
    for (int& b : block_of) b = std::uniform_int_distribution<int>(0, 2)(rng);
    std::vector<std::vector<int>> blocks(3);
    for (int v = 0; v < 6; ++v) blocks[block_of[v]].push_back(v);
    std::erase_if(blocks, [](const auto& b) { return b.empty(); });
    // Renumber blocks densely for the oracle.
    std::vector<int> dense(6);
    for (std::size_t b = 0; b < blocks.size(); ++b) {
      for (int v : blocks[b]) dense[v] = static_cast<int>(b);
    }
    const EncodingTree t = partition_tree(g, blocks);
    EXPECT_NEAR(structural_entropy(g, t), partition_entropy_oracle(g, dense), kTol);
    EXPECT_NEAR(cached_entropy(t), structural_entropy(g, t), kTol);
  }
}

TEST(StructuralEntropy, UnaryChainInsertionIsNeutral) {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 50; ++trial) {
    const Graph g = test::random_connected(rng, 8, 0.3);
    EncodingTree t = partition_tree(g, {{0, 1, 2}, {3, 4}, {5, 6, 7}});
    const double before = structural_entropy(g, t);
    t.insert_above(trial % 8);
    t.insert_above(8 + 1 + trial % 3);
    t.insert_above(trial % 8);
    EXPECT_NEAR(structural_entropy(g, t), before, kTol);
    EXPECT_NEAR(cached_entropy(t), before, kTol);
  }
}

TEST(StructuralEntropy, NonNegativeAndZeroOnlyWithoutCuts) {
  std::mt19937_64 rng(14);
  for (int trial = 0; trial < 50; ++trial) {
    const Graph g = test::random_connected(rng, 7, 0.3);
    EXPECT_GT(structural_entropy(g, one_level_tree(g)), 0.0);
  }
}

TEST(StructuralEntropy, RejectsLeafMismatch) {
  EXPECT_THROW(structural_entropy(test::triangle(), one_level_tree(test::k2())), InputError);
}

TEST(RecomputeCaches, IdempotentOnOneLevelTree) {
  const EncodingTree t = one_level_tree(test::k2());
  EXPECT_EQ(recompute_caches(test::k2(), t), t);
}

TEST(RecomputeCaches, RestoresCachesAfterEdits) {
  const Graph g = test::two_triangles_bridge();
  EncodingTree t = partition_tree(g, {{0, 1, 2}, {3, 4, 5}});
  const EncodingTree fresh = t;
  t.set_caches(6, 0.0, 0.0);
  t.set_caches(7, 99.0, 1.0);
  t.set_caches(2, 5.0, 5.0);
  EXPECT_EQ(recompute_caches(g, t), fresh);
  EXPECT_DOUBLE_EQ(fresh[7].vol, 7.0);
  EXPECT_DOUBLE_EQ(fresh[7].cut, 1.0);
  EXPECT_DOUBLE_EQ(fresh[6].vol, 14.0);
  EXPECT_DOUBLE_EQ(fresh[6].cut, 0.0);
}

TEST(BruteForce, HandAnalyzedCases) {
  EXPECT_NEAR(brute_force_min_entropy(test::cycle(4), 2).bits, 1.5, kTol);
  EXPECT_NEAR(brute_force_min_entropy(test::k2(), 2).bits, 1.0, kTol);
  const Graph g = test::two_triangles_bridge();
  const MinEntropyResult r = brute_force_min_entropy(g, 2);
  EXPECT_NEAR(r.bits, partition_entropy_oracle(g, {0, 0, 0, 1, 1, 1}), kTol);
  EXPECT_EQ(r.tree.height(), 2);
  const int a = r.tree[0].parent;
  EXPECT_EQ(r.tree[1].parent, a);
  EXPECT_EQ(r.tree[2].parent, a);
  const int b = r.tree[3].parent;
  EXPECT_NE(a, b);
  EXPECT_EQ(r.tree[4].parent, b);
  EXPECT_EQ(r.tree[5].parent, b);
}

TEST(BruteForce, MatchesExhaustivePartitionOracle) {
  std::mt19937_64 rng(15);
  for (int trial = 0; trial < 40; ++trial) {
    const Graph g = test::random_connected(rng, 3 + trial % 5, 0.35);
    const MinEntropyResult r = brute_force_min_entropy(g, 2);
    EXPECT_NEAR(r.bits, exhaustive_partition_minimum(g), kTol);
    EXPECT_NEAR(structural_entropy(g, r.tree), r.bits, kTol);
  }
}

TEST(BruteForce, DeeperTreesNeverWorse) {
  std::mt19937_64 rng(16);
  for (int trial = 0; trial < 20; ++trial) {
    const Graph g = test::random_connected(rng, 4 + trial % 4, 0.3);
    const MinEntropyResult r2 = brute_force_min_entropy(g, 2);
    const MinEntropyResult r3 = brute_force_min_entropy(g, 3);
    EXPECT_LE(r3.bits, r2.bits + kTol);
    EXPECT_EQ(r3.tree.height(), 3);
    EXPECT_NEAR(structural_entropy(g, r3.tree), r3.bits, kTol);
  }
}

TEST(BruteForce, Guards) {
  EXPECT_THROW(brute_force_min_entropy(test::path(10), 2), InputError);
  EXPECT_THROW(brute_force_min_entropy(test::path(4), 4), InputError);
  EXPECT_THROW(brute_force_min_entropy(Graph(3, {}), 2), DegenerateGraphError);
}

}  // namespace
}  // namespace etk
