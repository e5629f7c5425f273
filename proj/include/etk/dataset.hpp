#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "etk/graph.hpp"

namespace etk {

struct Dataset {
  std::string name;
  std::vector<Graph> graphs;
  int class_count = 0;
  // original_class_labels[c] is the label value that dense class c came from.
  std::vector<int> original_class_labels;

  bool has_categories() const { return !graphs.empty() && graphs.front().has_categories(); }
};

// Reads the TUDataset flat-file layout from `dir`:
//   <name>_A.txt               "u, v" per line, 1-indexed global vertex ids
//   <name>_graph_indicator.txt one 1-indexed graph id per vertex
//   <name>_graph_labels.txt    one class label per graph
//   <name>_node_labels.txt     optional, one categorical label per vertex
// Edges are deduplicated, vertices renumbered from 0 inside each graph and
// class labels remapped to [0, class_count) in ascending order of value.
// Throws ParseError naming the file and line on malformed input.
Dataset parse_tudataset(const std::filesystem::path& dir, const std::string& name);

// Writes `dataset` in the same layout (each edge listed in both directions).
void write_tudataset(const Dataset& dataset, const std::filesystem::path& dir,
                     const std::string& name);

enum class LabelMode { kDegree, kDegreeAndCategory };

std::string to_string(LabelMode mode);
LabelMode parse_label_mode(const std::string& text);

// Degree and category when every graph carries categories, degree otherwise.
LabelMode default_label_mode(const Dataset& dataset);

// Initial vertex labels. Ids are interned per distinct (degree, category)
// tuple in first-seen order (graph order, then vertex order) and shared by
// the whole dataset. In degree mode the category slot is -1.
struct InitialLabeling {
  LabelMode mode = LabelMode::kDegree;
  std::vector<std::vector<int>> labels;
  std::vector<std::pair<double, int>> tuples;
};

InitialLabeling assign_initial_labels(std::span<const Graph> graphs, LabelMode mode);
inline InitialLabeling assign_initial_labels(const Dataset& dataset, LabelMode mode) {
  return assign_initial_labels(std::span<const Graph>(dataset.graphs), mode);
}

}  // namespace etk
