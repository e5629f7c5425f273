#pragma once

#include <span>
#include <vector>

namespace etk {

inline constexpr int kNoNode = -1;

struct TreeNode {
  int parent = kNoNode;
  std::vector<int> children;
  int leaf_vertex = -1;  // graph vertex, leaves only
  double vol = 0.0;      // sum of degrees of the vertices below
  double cut = 0.0;      // g: weight of edges with exactly one endpoint below

  bool is_leaf() const noexcept { return leaf_vertex >= 0; }

  friend bool operator==(const TreeNode&, const TreeNode&) = default;
};

// Rooted tree whose leaves are the vertices of a graph.
//
// Nodes live in an arena addressed by integer id. Trees built by this library
// keep leaf ids equal to vertex ids (leaves are created first). Removing a node
// leaves a hole in the arena until compact() is called.
class EncodingTree {
 public:
  EncodingTree() = default;

  // Leaves 0..leaf_count-1 for vertices 0..leaf_count-1, no root yet.
  explicit EncodingTree(int leaf_count);

  int root() const noexcept { return root_; }
  void set_root(int id);

  int add_node(double vol = 0.0, double cut = 0.0);

  // Arena size, including removed slots.
  int capacity() const noexcept { return static_cast<int>(nodes_.size()); }
  int node_count() const noexcept { return live_count_; }
  int leaf_count() const noexcept { return leaf_count_; }
  bool alive(int id) const { return alive_[id] != 0; }

  const TreeNode& node(int id) const { return nodes_[id]; }
  const TreeNode& operator[](int id) const { return nodes_[id]; }
  void set_caches(int id, double vol, double cut);

  // Appends `child` to `parent`'s children. `child` must be detached.
  void attach(int child, int parent);

  // Removes `child` from its parent's children list.
  void detach(int child);

  // Removes internal non-root `id`, moving its children (in order) into its
  // parent at its position.
  void splice_out(int id);

  // Inserts a unary node between `child` and its parent; the new node copies
  // the child's caches. Returns its id.
  int insert_above(int child);

  // Depth of every live node from the root (root = 0); -1 for removed slots.
  std::vector<int> depths() const;

  // Maximum leaf depth.
  int height() const;

  // Nodes in depth-first preorder from the root, children in stored order.
  std::vector<int> preorder() const;

  // Renumbers live nodes densely, preserving relative id order.
  void compact();

  // compact() plus every child list sorted ascending. Two trees with the same
  // shape and ids compare equal after this.
  void canonicalize();

  friend bool operator==(const EncodingTree& a, const EncodingTree& b) {
    return a.root_ == b.root_ && a.nodes_ == b.nodes_ && a.alive_ == b.alive_;
  }

 private:
  std::vector<TreeNode> nodes_;
  std::vector<char> alive_;
  int root_ = kNoNode;
  int leaf_count_ = 0;
  int live_count_ = 0;
};

}  // namespace etk
