#include "etk/tree_io.hpp"

#include <istream>
#include <ostream>
#include <string>

#include <json.hpp>

#include "etk/errors.hpp"

namespace etk {

using nlohmann::json;

void write_tree_record(std::ostream& out, const TreeRecord& record) {
  const EncodingTree& tree = record.tree;
  const int height = tree.height();
  const std::vector<int> depth = tree.depths();
  json nodes = json::array();
  for (int id = 0; id < tree.capacity(); ++id) {
    if (!tree.alive(id)) throw std::logic_error("write_tree_record: tree is not compacted");
    const TreeNode& n = tree[id];
    json node;
    node["id"] = id;
    node["parent"] = n.parent == kNoNode ? json(nullptr) : json(n.parent);
    node["height"] = height - depth[id];
    if (n.is_leaf()) node["leaf"] = n.leaf_vertex;
    node["vol"] = n.vol;
    node["cut"] = n.cut;
    nodes.push_back(std::move(node));
  }
  json line;
  line["graph"] = record.graph_index;
  line["class"] = record.graph_class;
  line["height"] = height;
  line["vertices"] = tree.leaf_count();
  line["entropy"] = record.entropy;
  line["nodes"] = std::move(nodes);
  out << line.dump() << '\n';
}

std::vector<TreeRecord> read_tree_records(std::istream& in) {
  std::vector<TreeRecord> records;
  std::string text;
  long line_no = 0;
  while (std::getline(in, text)) {
    ++line_no;
    if (text.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      const json line = json::parse(text);
      TreeRecord r;
      r.graph_index = line.at("graph").get<int>();
      r.graph_class = line.at("class").get<int>();
      r.entropy = line.at("entropy").get<double>();
      const int vertices = line.at("vertices").get<int>();
      const json& nodes = line.at("nodes");
      EncodingTree tree(vertices);
      for (int id = vertices; id < static_cast<int>(nodes.size()); ++id) tree.add_node();
      for (int id = 0; id < static_cast<int>(nodes.size()); ++id) {
        const json& n = nodes.at(id);
        if (n.at("id").get<int>() != id) throw ParseError("<trees>", line_no, "node ids must be dense");
        const bool leaf = n.contains("leaf");
        if (leaf != (id < vertices) || (leaf && n.at("leaf").get<int>() != id)) {
          throw ParseError("<trees>", line_no, "leaves must come first with id == vertex");
        }
        tree.set_caches(id, n.at("vol").get<double>(), n.at("cut").get<double>());
      }
      int root = kNoNode;
      for (int id = 0; id < static_cast<int>(nodes.size()); ++id) {
        const json& parent = nodes.at(id).at("parent");
        if (parent.is_null()) {
          if (root != kNoNode) throw ParseError("<trees>", line_no, "more than one root");
          root = id;
          continue;
        }
        const int p = parent.get<int>();
        if (p < 0 || p >= static_cast<int>(nodes.size())) {
          throw ParseError("<trees>", line_no, "parent id out of range");
        }
        tree.attach(id, p);
      }
      if (root == kNoNode) throw ParseError("<trees>", line_no, "no root");
      tree.set_root(root);
      if (static_cast<int>(tree.preorder().size()) != tree.node_count()) {
        throw ParseError("<trees>", line_no, "nodes not reachable from the root");
      }
      r.tree = std::move(tree);
      records.push_back(std::move(r));
    } catch (const json::exception& e) {
      throw ParseError("<trees>", line_no, e.what());
    } catch (const std::logic_error& e) {
      throw ParseError("<trees>", line_no, e.what());
    }
  }
  return records;
}

}  // namespace etk
