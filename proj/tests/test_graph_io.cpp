#include <gtest/gtest.h>

#include <numeric>
#include <set>

#include "etk/dataset.hpp"
#include "etk/errors.hpp"
#include "support.hpp"

namespace etk {
namespace {

using test::TempDir;

void write_toy(const TempDir& dir, const std::string& edges, const std::string& indicator,
               const std::string& labels) {
  dir.write("T_A.txt", edges);
  dir.write("T_graph_indicator.txt", indicator);
  dir.write("T_graph_labels.txt", labels);
}

std::string parse_error_message(const TempDir& dir) {
  try {
    parse_tudataset(dir.path(), "T");
  } catch (const ParseError& e) {
    return e.what();
  }
  return "";
}

TEST(ParseTudataset, MutagShape) {
  const Dataset d = parse_tudataset(test::mutag_dir(), "MUTAG");
  EXPECT_EQ(d.graphs.size(), 188u);
  EXPECT_EQ(d.class_count, 2);
  EXPECT_TRUE(d.has_categories());
  double vertices = 0.0;
  for (const Graph& g : d.graphs) vertices += g.vertex_count();
  EXPECT_NEAR(vertices / 188.0, 17.9, 0.05);
}

TEST(ParseTudataset, DegreeSumIsTwiceEdgeWeight) {
  const Dataset d = parse_tudataset(test::mutag_dir(), "MUTAG");
  for (const Graph& g : d.graphs) {
    double weight = 0.0;
    for (const Edge& e : g.edges()) weight += e.weight;
    const auto degrees = g.degrees();
    EXPECT_DOUBLE_EQ(std::accumulate(degrees.begin(), degrees.end(), 0.0), 2.0 * weight);
    EXPECT_DOUBLE_EQ(g.volume(), 2.0 * weight);
  }
}

TEST(ParseTudataset, ReversedDuplicateIsOneEdge) {
  TempDir dir;
  write_toy(dir, "1, 2\n2, 1\n", "1\n1\n", "1\n");
  const Dataset d = parse_tudataset(dir.path(), "T");
  ASSERT_EQ(d.graphs.size(), 1u);
  EXPECT_EQ(d.graphs[0].edge_count(), 1);
  EXPECT_EQ(d.graphs[0].edges()[0], (Edge{0, 1, 1.0}));
}

TEST(ParseTudataset, EmptyEdgeFileGivesEdgelessGraph) {
  TempDir dir;
  write_toy(dir, "", "1\n1\n1\n", "5\n");
  const Dataset d = parse_tudataset(dir.path(), "T");
  ASSERT_EQ(d.graphs.size(), 1u);
  EXPECT_EQ(d.graphs[0].vertex_count(), 3);
  EXPECT_EQ(d.graphs[0].edge_count(), 0);
}

TEST(ParseTudataset, RenumbersVerticesAndRemapsClasses) {
  TempDir dir;
  write_toy(dir, "1, 2\n3, 4\n4, 5\n", "1\n1\n2\n2\n2\n", "-1\n7\n");
  const Dataset d = parse_tudataset(dir.path(), "T");
  ASSERT_EQ(d.graphs.size(), 2u);
  EXPECT_EQ(d.class_count, 2);
  EXPECT_EQ(d.graphs[0].graph_class(), 0);
  EXPECT_EQ(d.graphs[1].graph_class(), 1);
  EXPECT_EQ(d.original_class_labels, (std::vector<int>{-1, 7}));
  EXPECT_EQ(d.graphs[1].vertex_count(), 3);
  EXPECT_EQ(d.graphs[1].edges()[0], (Edge{0, 1, 1.0}));
  EXPECT_EQ(d.graphs[1].edges()[1], (Edge{1, 2, 1.0}));
}

TEST(ParseTudataset, MissingFileNamesPath) {
  TempDir dir;
  dir.write("T_A.txt", "1, 2\n");
  dir.write("T_graph_indicator.txt", "1\n1\n");
  const std::string message = parse_error_message(dir);
  EXPECT_NE(message.find("T_graph_labels.txt"), std::string::npos) << message;
}

TEST(ParseTudataset, MissingDirectoryIsInputError) {
  EXPECT_THROW(parse_tudataset("/nonexistent/etk", "T"), InputError);
}

TEST(ParseTudataset, CrossGraphEdgeNamesFileAndLine) {
  TempDir dir;
  write_toy(dir, "1, 2\n2, 3\n", "1\n1\n2\n2\n", "1\n2\n");
  EXPECT_NE(parse_error_message(dir).find("T_A.txt:2"), std::string::npos);
}

TEST(ParseTudataset, SelfLoopRejected) {
  TempDir dir;
  write_toy(dir, "1, 2\n2, 2\n", "1\n1\n", "1\n");
  EXPECT_NE(parse_error_message(dir).find("T_A.txt:2"), std::string::npos);
}

TEST(ParseTudataset, NonIntegerTokenRejected) {
  TempDir dir;
  write_toy(dir, "1, 2\n", "1\nx\n", "1\n");
  EXPECT_NE(parse_error_message(dir).find("T_graph_indicator.txt:2"), std::string::npos);
}

TEST(ParseTudataset, VertexOutOfRangeRejected) {
  TempDir dir;
  write_toy(dir, "1, 9\n", "1\n1\n", "1\n");
  EXPECT_NE(parse_error_message(dir).find("T_A.txt:1"), std::string::npos);
}

TEST(ParseTudataset, RoundTripIsIdentity) {
  const Dataset d = parse_tudataset(test::mutag_dir(), "MUTAG");
  TempDir dir;
  write_tudataset(d, dir.path(), "RT");
  const Dataset back = parse_tudataset(dir.path(), "RT");
  ASSERT_EQ(back.graphs.size(), d.graphs.size());
  for (std::size_t g = 0; g < d.graphs.size(); ++g) EXPECT_EQ(back.graphs[g], d.graphs[g]) << "graph " << g;
  EXPECT_EQ(back.class_count, d.class_count);
}

TEST(Graph, RejectsSelfLoopAndDuplicates) {
  EXPECT_THROW(test::make_graph(2, {{1, 1}}), InputError);
  EXPECT_THROW(test::make_graph(2, {{0, 1}, {1, 0}}), InputError);
  EXPECT_THROW(test::make_graph(2, {{0, 2}}), InputError);
}

TEST(Graph, Components) {
  const Graph g = test::make_graph(5, {{3, 4}, {0, 1}});
  EXPECT_FALSE(g.is_connected());
  EXPECT_EQ(g.components(), (std::vector<std::vector<int>>{{0, 1}, {2}, {3, 4}}));
  EXPECT_TRUE(test::triangle().is_connected());
}

TEST(InitialLabels, TriangleSharesOneLabel) {
  const std::vector<Graph> graphs{test::triangle()};
  const InitialLabeling l = assign_initial_labels(graphs, LabelMode::kDegree);
  EXPECT_EQ(l.labels[0], (std::vector<int>{0, 0, 0}));
}

TEST(InitialLabels, PathEndpointsShareLabel) {
  const std::vector<Graph> graphs{test::path(3)};
  const InitialLabeling l = assign_initial_labels(graphs, LabelMode::kDegree);
  EXPECT_EQ(l.labels[0][0], l.labels[0][2]);
  EXPECT_NE(l.labels[0][0], l.labels[0][1]);
}

TEST(InitialLabels, CategorySplitsEqualDegrees) {
  const std::vector<Graph> graphs{test::make_graph(3, {{0, 1}, {1, 2}, {0, 2}}, {0, 1, 0})};
  const InitialLabeling l = assign_initial_labels(graphs, LabelMode::kDegreeAndCategory);
  // Interning table: (2, 0) -> 0, (2, 1) -> 1.
  EXPECT_EQ(l.labels[0], (std::vector<int>{0, 1, 0}));
  EXPECT_EQ(l.tuples, (std::vector<std::pair<double, int>>{{2.0, 0}, {2.0, 1}}));
}

TEST(InitialLabels, CategoryModeNeedsCategories) {
  const std::vector<Graph> graphs{test::triangle()};
  EXPECT_THROW(assign_initial_labels(graphs, LabelMode::kDegreeAndCategory), InputError);
}

TEST(InitialLabels, SharedAcrossGraphs) {
  const std::vector<Graph> graphs{test::path(3), test::star(4)};
  const InitialLabeling l = assign_initial_labels(graphs, LabelMode::kDegree);
  EXPECT_EQ(l.labels[0][0], l.labels[1][1]);  // both degree 1
}

TEST(InitialLabels, EqualityMatchesTuplesOnMutag) {
  const Dataset d = parse_tudataset(test::mutag_dir(), "MUTAG");
  for (LabelMode mode : {LabelMode::kDegree, LabelMode::kDegreeAndCategory}) {
    const InitialLabeling l = assign_initial_labels(d, mode);
    std::vector<std::pair<std::pair<double, int>, int>> seen;
    for (std::size_t g = 0; g < d.graphs.size(); ++g) {
      for (int v = 0; v < d.graphs[g].vertex_count(); ++v) {
        const int cat = mode == LabelMode::kDegree ? -1 : d.graphs[g].category(v);
        seen.push_back({{d.graphs[g].degree(v), cat}, l.labels[g][v]});
      }
    }
    for (std::size_t i = 0; i < seen.size(); i += 7) {
      for (std::size_t j = 0; j < seen.size(); j += 5) {
        ASSERT_EQ(seen[i].first == seen[j].first, seen[i].second == seen[j].second);
      }
    }
  }
}

TEST(InitialLabels, ModeNames) {
  EXPECT_EQ(parse_label_mode(to_string(LabelMode::kDegree)), LabelMode::kDegree);
  EXPECT_EQ(parse_label_mode(to_string(LabelMode::kDegreeAndCategory)), LabelMode::kDegreeAndCategory);
  EXPECT_THROW(parse_label_mode("bogus"), InputError);
}

}  // namespace
}  // namespace etk
