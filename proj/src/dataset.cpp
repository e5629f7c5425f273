#include "etk/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <set>

#include "etk/errors.hpp"

namespace etk {
namespace {

namespace fs = std::filesystem;

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

long parse_int(std::string_view token, const std::string& file, long line) {
  token = trim(token);
  long value = 0;
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (token.empty() || ec != std::errc() || ptr != token.data() + token.size()) {
    throw ParseError(file, line, "expected an integer, got '" + std::string(token) + "'");
  }
  return value;
}

// Calls fn(line_number, text) for every non-blank line.
template <typename Fn>
void for_each_line(const fs::path& path, Fn&& fn) {
  std::ifstream in(path);
  if (!in) throw ParseError(path.string(), 0, "cannot open file");
  std::string text;
  long line = 0;
  while (std::getline(in, text)) {
    ++line;
    if (trim(text).empty()) continue;
    fn(line, std::string_view(text));
  }
}

std::vector<long> read_column(const fs::path& path) {
  std::vector<long> values;
  const std::string file = path.string();
  for_each_line(path, [&](long line, std::string_view text) {
    values.push_back(parse_int(text, file, line));
  });
  return values;
}

fs::path require(const fs::path& dir, const std::string& name, const std::string& suffix) {
  fs::path p = dir / (name + suffix);
  if (!fs::is_regular_file(p)) throw ParseError(p.string(), 0, "missing mandatory file");
  return p;
}

}  // namespace

Dataset parse_tudataset(const fs::path& dir, const std::string& name) {
  if (!fs::is_directory(dir)) throw ParseError(dir.string(), 0, "dataset directory not found");
  const fs::path edges_path = require(dir, name, "_A.txt");
  const fs::path indicator_path = require(dir, name, "_graph_indicator.txt");
  const fs::path labels_path = require(dir, name, "_graph_labels.txt");
  const fs::path node_labels_path = dir / (name + "_node_labels.txt");

  const std::vector<long> graph_labels = read_column(labels_path);
  const long graph_count = static_cast<long>(graph_labels.size());
  if (graph_count == 0) throw ParseError(labels_path.string(), 0, "no graphs");

  const std::vector<long> indicator = read_column(indicator_path);
  std::vector<int> vertex_graph(indicator.size());
  std::vector<int> local_id(indicator.size());
  std::vector<int> sizes(graph_count, 0);
  for (std::size_t i = 0; i < indicator.size(); ++i) {
    if (indicator[i] < 1 || indicator[i] > graph_count) {
      throw ParseError(indicator_path.string(), static_cast<long>(i + 1),
                       "graph id " + std::to_string(indicator[i]) + " outside [1, " +
                           std::to_string(graph_count) + "]");
    }
    vertex_graph[i] = static_cast<int>(indicator[i] - 1);
    local_id[i] = sizes[vertex_graph[i]]++;
  }
  for (long g = 0; g < graph_count; ++g) {
    if (sizes[g] == 0) {
      throw ParseError(indicator_path.string(), 0, "graph " + std::to_string(g + 1) + " has no vertices");
    }
  }

  std::vector<std::set<std::pair<int, int>>> edge_sets(graph_count);
  const std::string edges_file = edges_path.string();
  const long vertex_total = static_cast<long>(indicator.size());
  for_each_line(edges_path, [&](long line, std::string_view text) {
    const auto comma = text.find(',');
    if (comma == std::string_view::npos) throw ParseError(edges_file, line, "expected 'u, v'");
    const long u = parse_int(text.substr(0, comma), edges_file, line);
    const long v = parse_int(text.substr(comma + 1), edges_file, line);
    for (long x : {u, v}) {
      if (x < 1 || x > vertex_total) {
        throw ParseError(edges_file, line, "vertex " + std::to_string(x) + " outside [1, " +
                                               std::to_string(vertex_total) + "]");
      }
    }
    if (u == v) throw ParseError(edges_file, line, "self-loop at vertex " + std::to_string(u));
    const int gu = vertex_graph[u - 1];
    if (gu != vertex_graph[v - 1]) {
      throw ParseError(edges_file, line, "edge joins vertices of graphs " + std::to_string(gu + 1) +
                                             " and " + std::to_string(vertex_graph[v - 1] + 1));
    }
    const int a = local_id[u - 1];
    const int b = local_id[v - 1];
    edge_sets[gu].insert({std::min(a, b), std::max(a, b)});
  });

  std::vector<std::vector<int>> categories(graph_count);
  if (fs::is_regular_file(node_labels_path)) {
    const std::vector<long> node_labels = read_column(node_labels_path);
    if (node_labels.size() != indicator.size()) {
      throw ParseError(node_labels_path.string(), 0,
                       std::to_string(node_labels.size()) + " node labels for " +
                           std::to_string(indicator.size()) + " vertices");
    }
    for (long g = 0; g < graph_count; ++g) categories[g].resize(sizes[g]);
    for (std::size_t i = 0; i < node_labels.size(); ++i) {
      categories[vertex_graph[i]][local_id[i]] = static_cast<int>(node_labels[i]);
    }
  }

  Dataset dataset;
  dataset.name = name;
  std::set<long> distinct(graph_labels.begin(), graph_labels.end());
  std::map<long, int> dense;
  for (long label : distinct) {
    dense.emplace(label, static_cast<int>(dataset.original_class_labels.size()));
    dataset.original_class_labels.push_back(static_cast<int>(label));
  }
  dataset.class_count = static_cast<int>(dense.size());
  dataset.graphs.reserve(graph_count);
  for (long g = 0; g < graph_count; ++g) {
    std::vector<Edge> edges;
    edges.reserve(edge_sets[g].size());
    for (const auto& [a, b] : edge_sets[g]) edges.push_back({a, b, 1.0});
    dataset.graphs.emplace_back(sizes[g], std::move(edges), std::move(categories[g]),
                                dense.at(graph_labels[g]));
  }
  return dataset;
}

void write_tudataset(const Dataset& dataset, const fs::path& dir, const std::string& name) {
  fs::create_directories(dir);
  auto open = [&](const std::string& suffix) {
    std::ofstream out(dir / (name + suffix));
    if (!out) throw InputError("cannot write " + (dir / (name + suffix)).string());
    return out;
  };
  std::ofstream edges = open("_A.txt");
  std::ofstream indicator = open("_graph_indicator.txt");
  std::ofstream labels = open("_graph_labels.txt");
  std::ofstream node_labels;
  if (dataset.has_categories()) node_labels = open("_node_labels.txt");

  long offset = 0;
  for (std::size_t g = 0; g < dataset.graphs.size(); ++g) {
    const Graph& graph = dataset.graphs[g];
    for (const Edge& e : graph.edges()) {
      edges << offset + e.u + 1 << ", " << offset + e.v + 1 << '\n';
      edges << offset + e.v + 1 << ", " << offset + e.u + 1 << '\n';
    }
    for (int v = 0; v < graph.vertex_count(); ++v) {
      indicator << g + 1 << '\n';
      if (node_labels.is_open()) node_labels << graph.category(v) << '\n';
    }
    const int cls = graph.graph_class();
    labels << (dataset.original_class_labels.empty() ? cls : dataset.original_class_labels[cls])
           << '\n';
    offset += graph.vertex_count();
  }
}

std::string to_string(LabelMode mode) {
  return mode == LabelMode::kDegree ? "degree" : "degree-category";
}

LabelMode parse_label_mode(const std::string& text) {
  if (text == "degree") return LabelMode::kDegree;
  if (text == "degree-category") return LabelMode::kDegreeAndCategory;
  throw InputError("unknown label mode '" + text + "'");
}

LabelMode default_label_mode(const Dataset& dataset) {
  const bool all = std::all_of(dataset.graphs.begin(), dataset.graphs.end(),
                               [](const Graph& g) { return g.has_categories(); });
  return all && !dataset.graphs.empty() ? LabelMode::kDegreeAndCategory : LabelMode::kDegree;
}

InitialLabeling assign_initial_labels(std::span<const Graph> graphs, LabelMode mode) {
  InitialLabeling result;
  result.mode = mode;
  std::map<std::pair<double, int>, int> table;
  result.labels.reserve(graphs.size());
  for (std::size_t g = 0; g < graphs.size(); ++g) {
    const Graph& graph = graphs[g];
    if (mode == LabelMode::kDegreeAndCategory && !graph.has_categories() &&
        graph.vertex_count() > 0) {
      throw InputError("graph " + std::to_string(g) +
                       " has no categorical labels; degree-category mode requires them");
    }
    std::vector<int> labels(graph.vertex_count());
    for (int v = 0; v < graph.vertex_count(); ++v) {
      const std::pair<double, int> key{graph.degree(v), mode == LabelMode::kDegree ? -1 : graph.category(v)};
      auto [it, inserted] = table.emplace(key, static_cast<int>(result.tuples.size()));
      if (inserted) result.tuples.push_back(key);
      labels[v] = it->second;
    }
    result.labels.push_back(std::move(labels));
  }
  return result;
}

}  // namespace etk
