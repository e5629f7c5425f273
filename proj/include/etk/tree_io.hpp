#pragma once

#include <iosfwd>
#include <vector>

#include "etk/encoding_tree.hpp"

namespace etk {

// One exported encoding tree. The line format (one JSON object per line) is
//
//   {"graph":3,"class":1,"height":2,"vertices":17,"entropy":2.71,
//    "nodes":[{"id":0,"parent":18,"height":0,"leaf":0,"vol":2.0,"cut":2.0},...]}
//
// Node ids are dense, leaves come first with id == leaf vertex, the root has
// "parent":null, and a node's "height" is the tree height minus its depth.
struct TreeRecord {
  int graph_index = 0;
  int graph_class = 0;
  double entropy = 0.0;
  EncodingTree tree;  // canonical form
};

void write_tree_record(std::ostream& out, const TreeRecord& record);

// Parses every line of `in`. Children are attached in ascending id order.
// Throws ParseError on malformed records.
std::vector<TreeRecord> read_tree_records(std::istream& in);

}  // namespace etk
