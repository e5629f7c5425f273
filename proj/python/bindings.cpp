#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <sstream>

#include "etk/brute_force.hpp"
#include "etk/cross_validation.hpp"
#include "etk/dataset.hpp"
#include "etk/entropy.hpp"
#include "etk/errors.hpp"
#include "etk/optimizer.hpp"
#include "etk/pipeline.hpp"
#include "etk/svm.hpp"
#include "etk/tree_io.hpp"

namespace py = pybind11;
using namespace etk;

namespace {

Graph make_graph(int n, const std::vector<std::pair<int, int>>& edges, const std::vector<double>& weights,
                 std::vector<int> categories, int graph_class) {
  if (!weights.empty() && weights.size() != edges.size()) throw InputError("weights and edges differ in length");
  std::vector<Edge> list;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    list.push_back({edges[i].first, edges[i].second, weights.empty() ? 1.0 : weights[i]});
  }
  return Graph(n, std::move(list), std::move(categories), graph_class);
}

py::array_t<double> to_numpy(const KernelMatrix& k) {
  py::array_t<double> out({k.size(), k.size()});
  std::copy(k.values().begin(), k.values().end(), out.mutable_data());
  return out;
}

KernelMatrix from_numpy(const py::array_t<double, py::array::c_style | py::array::forcecast>& a) {
  if (a.ndim() != 2 || a.shape(0) != a.shape(1)) throw InputError("kernel must be a square matrix");
  const int n = static_cast<int>(a.shape(0));
  KernelMatrix k(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) k(i, j) = a.at(i, j);
  }
  return k;
}

std::string tree_json(const EncodingTree& tree, double entropy) {
  std::ostringstream out;
  write_tree_record(out, {0, 0, entropy, tree});
  std::string s = out.str();
  if (!s.empty() && s.back() == '\n') s.pop_back();
  return s;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Structural entropy encoding trees and the WL-ET graph kernel";

  py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
  py::register_exception<NumericalError>(m, "NumericalError", PyExc_ArithmeticError);

  py::class_<Graph>(m, "Graph")
      .def(py::init(&make_graph), py::arg("vertex_count"), py::arg("edges"),
           py::arg("weights") = std::vector<double>{}, py::arg("categories") = std::vector<int>{},
           py::arg("graph_class") = 0)
      .def_property_readonly("vertex_count", &Graph::vertex_count)
      .def_property_readonly("edge_count", &Graph::edge_count)
      .def_property_readonly("volume", &Graph::volume)
      .def_property_readonly("graph_class", &Graph::graph_class)
      .def_property_readonly("edges",
                             [](const Graph& g) {
                               std::vector<std::tuple<int, int, double>> out;
                               for (const Edge& e : g.edges()) out.emplace_back(e.u, e.v, e.weight);
                               return out;
                             })
      .def_property_readonly("degrees",
                             [](const Graph& g) { return std::vector<double>(g.degrees().begin(), g.degrees().end()); })
      .def_property_readonly("categories",
                             [](const Graph& g) {
                               return std::vector<int>(g.categories().begin(), g.categories().end());
                             })
      .def("components", &Graph::components)
      .def("is_connected", &Graph::is_connected)
      .def("__eq__", [](const Graph& a, const Graph& b) { return a == b; })
      .def("__repr__", [](const Graph& g) {
        return "<Graph n=" + std::to_string(g.vertex_count()) + " m=" + std::to_string(g.edge_count()) + ">";
      });

  py::class_<Dataset>(m, "Dataset")
      .def_readonly("name", &Dataset::name)
      .def_readonly("graphs", &Dataset::graphs)
      .def_readonly("class_count", &Dataset::class_count)
      .def_readonly("original_class_labels", &Dataset::original_class_labels)
      .def("__len__", [](const Dataset& d) { return d.graphs.size(); });

  m.def("load_tudataset", &parse_tudataset, py::arg("directory"), py::arg("name"),
        "Read a TUDataset directory (<name>_A.txt, _graph_indicator.txt, _graph_labels.txt).");

  py::class_<EncodingTree>(m, "EncodingTree")
      .def_property_readonly("root", &EncodingTree::root)
      .def_property_readonly("height", &EncodingTree::height)
      .def_property_readonly("node_count", &EncodingTree::node_count)
      .def_property_readonly("leaf_count", &EncodingTree::leaf_count)
      .def("parent", [](const EncodingTree& t, int id) { return t.node(id).parent; })
      .def("children", [](const EncodingTree& t, int id) { return t.node(id).children; })
      .def("vol", [](const EncodingTree& t, int id) { return t.node(id).vol; })
      .def("cut", [](const EncodingTree& t, int id) { return t.node(id).cut; })
      .def("depths", &EncodingTree::depths)
      .def("to_json", &tree_json, py::arg("entropy") = 0.0, "One export line in the tree file format.")
      .def("__eq__", [](const EncodingTree& a, const EncodingTree& b) { return a == b; });

  m.def("one_level_tree", &one_level_tree, py::arg("graph"));
  m.def("structural_entropy", &structural_entropy, py::arg("graph"), py::arg("tree"));

  m.def(
      "optimize",
      [](const Graph& g, int height) {
        OptimizerConfig config;
        config.height = height;
        config.report_stats = true;
        OptimizedTree out = build_encoding_tree(g, config);
        py::dict stats;
        stats["merge_steps"] = out.stats.merge_steps;
        stats["compress_steps"] = out.stats.compress_steps;
        stats["max_intermediate_height"] = out.stats.max_intermediate_height;
        stats["nodes_before_padding"] = out.stats.nodes_before_padding;
        stats["entropy_trace"] = out.stats.entropy_trace;
        return py::make_tuple(std::move(out.tree), stats);
      },
      py::arg("graph"), py::arg("height") = 2,
      "Height-k encoding tree of (approximately) minimal structural entropy, with optimizer statistics.");

  m.def(
      "brute_force_min_entropy",
      [](const Graph& g, int k) {
        MinEntropyResult r = brute_force_min_entropy(g, k);
        return py::make_tuple(std::move(r.tree), r.bits);
      },
      py::arg("graph"), py::arg("height") = 2);

  m.def(
      "gram_matrix",
      [](const Dataset& d, int height, const std::string& kernel, bool normalize, const std::string& labels,
         int threads) {
        OptimizerConfig config;
        config.height = height;
        const LabelMode mode = labels == "auto" ? default_label_mode(d) : parse_label_mode(labels);
        const std::vector<OptimizedTree> trees = build_trees(d, config, threads);
        const FeatureSet set = report_trees(trees, assign_initial_labels(d, mode));
        const KernelChoice k = make_kernel(set, gram_matrix(set.features), parse_kernel_mode(kernel), normalize);
        return py::make_tuple(to_numpy(k.matrix), k.gamma.gamma);
      },
      py::arg("dataset"), py::arg("height") = 2, py::arg("kernel") = "linear", py::arg("normalize") = false,
      py::arg("labels") = "auto", py::arg("threads") = 1,
      "WL-ET kernel matrix of a dataset; returns (matrix, gamma).");

  m.def(
      "cross_validate",
      [](const Dataset& d, std::vector<int> heights, std::vector<double> c_grid, std::vector<std::string> kernels,
         std::uint64_t seed, int folds, bool normalize, int threads) {
        CvOptions options;
        options.heights = std::move(heights);
        options.c_grid = std::move(c_grid);
        options.kernel_modes.clear();
        for (const auto& k : kernels) options.kernel_modes.push_back(parse_kernel_mode(k));
        options.seed = seed;
        options.folds = folds;
        options.normalize = normalize;
        options.threads = threads;
        std::string json;
        {
          py::gil_scoped_release release;
          json = to_json(cross_validate(d, options));
        }
        return py::module_::import("json").attr("loads")(json);
      },
      py::arg("dataset"), py::arg("heights") = std::vector<int>{2, 3, 4, 5},
      py::arg("c_grid") = std::vector<double>{1e-2, 1e-1, 1.0, 10.0, 100.0, 1000.0},
      py::arg("kernels") = std::vector<std::string>{"linear"}, py::arg("seed") = 0, py::arg("folds") = 10,
      py::arg("normalize") = false, py::arg("threads") = 1,
      "Stratified k-fold SVM evaluation over the grid; returns the report as a dict.");

  m.def(
      "smo_train",
      [](const py::array_t<double, py::array::c_style | py::array::forcecast>& kernel, std::vector<int> labels,
         double C, double tol) {
        const KernelMatrix k = from_numpy(kernel);
        std::vector<int> rows(labels.size());
        for (std::size_t i = 0; i < rows.size(); ++i) rows[i] = static_cast<int>(i);
        const SvmModel model = smo_train(k, rows, labels, {C, tol, 1'000'000});
        std::vector<double> decision(k.size());
        for (int i = 0; i < k.size(); ++i) decision[i] = decision_value(model, k, i);
        py::dict out;
        out["alphas"] = model.alphas;
        out["bias"] = model.bias;
        out["support"] = model.support_indices;
        out["dual_objective"] = model.dual_objective;
        out["kkt_violation"] = model.kkt_violation;
        out["decision"] = decision;
        return out;
      },
      py::arg("kernel"), py::arg("labels"), py::arg("C") = 1.0, py::arg("tol") = 1e-3,
      "Binary C-SVM on a precomputed kernel; labels are +1/-1.");
}
