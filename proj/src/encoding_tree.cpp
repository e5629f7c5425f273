#include "etk/encoding_tree.hpp"

#include <algorithm>
#include <stdexcept>

namespace etk {

EncodingTree::EncodingTree(int leaf_count)
    : nodes_(leaf_count), alive_(leaf_count, 1), leaf_count_(leaf_count), live_count_(leaf_count) {
  for (int v = 0; v < leaf_count; ++v) nodes_[v].leaf_vertex = v;
}

void EncodingTree::set_root(int id) {
  if (nodes_[id].parent != kNoNode) throw std::logic_error("root must not have a parent");
  root_ = id;
}

int EncodingTree::add_node(double vol, double cut) {
  TreeNode n;
  n.vol = vol;
  n.cut = cut;
  nodes_.push_back(std::move(n));
  alive_.push_back(1);
  ++live_count_;
  return capacity() - 1;
}

void EncodingTree::set_caches(int id, double vol, double cut) {
  nodes_[id].vol = vol;
  nodes_[id].cut = cut;
}

void EncodingTree::attach(int child, int parent) {
  if (nodes_[child].parent != kNoNode) throw std::logic_error("attach: child already has a parent");
  if (nodes_[parent].is_leaf()) throw std::logic_error("attach: leaves cannot have children");
  nodes_[child].parent = parent;
  nodes_[parent].children.push_back(child);
}

void EncodingTree::detach(int child) {
  const int parent = nodes_[child].parent;
  if (parent == kNoNode) return;
  auto& siblings = nodes_[parent].children;
  siblings.erase(std::find(siblings.begin(), siblings.end(), child));
  nodes_[child].parent = kNoNode;
}

void EncodingTree::splice_out(int id) {
  TreeNode& n = nodes_[id];
  if (id == root_ || n.is_leaf()) throw std::logic_error("splice_out: only internal non-root nodes");
  auto& siblings = nodes_[n.parent].children;
  auto pos = std::find(siblings.begin(), siblings.end(), id);
  pos = siblings.erase(pos);
  siblings.insert(pos, n.children.begin(), n.children.end());
  for (int c : n.children) nodes_[c].parent = n.parent;
  n.children.clear();
  n.parent = kNoNode;
  alive_[id] = 0;
  --live_count_;
}

int EncodingTree::insert_above(int child) {
  const int parent = nodes_[child].parent;
  if (parent == kNoNode) throw std::logic_error("insert_above: node has no parent");
  const int id = add_node(nodes_[child].vol, nodes_[child].cut);
  auto& siblings = nodes_[parent].children;
  *std::find(siblings.begin(), siblings.end(), child) = id;
  nodes_[id].parent = parent;
  nodes_[id].children.push_back(child);
  nodes_[child].parent = id;
  return id;
}

std::vector<int> EncodingTree::preorder() const {
  std::vector<int> order;
  if (root_ == kNoNode) return order;
  order.reserve(live_count_);
  std::vector<int> stack{root_};
  while (!stack.empty()) {
    const int id = stack.back();
    stack.pop_back();
    order.push_back(id);
    const auto& ch = nodes_[id].children;
    for (auto it = ch.rbegin(); it != ch.rend(); ++it) stack.push_back(*it);
  }
  return order;
}

std::vector<int> EncodingTree::depths() const {
  std::vector<int> depth(nodes_.size(), -1);
  for (int id : preorder()) {
    const int p = nodes_[id].parent;
    depth[id] = p == kNoNode ? 0 : depth[p] + 1;
  }
  return depth;
}

int EncodingTree::height() const {
  const std::vector<int> depth = depths();
  int h = 0;
  for (std::size_t id = 0; id < nodes_.size(); ++id) {
    if (alive_[id] && nodes_[id].is_leaf()) h = std::max(h, depth[id]);
  }
  return h;
}

void EncodingTree::compact() {
  std::vector<int> remap(nodes_.size(), kNoNode);
  int next = 0;
  for (std::size_t id = 0; id < nodes_.size(); ++id) {
    if (alive_[id]) remap[id] = next++;
  }
  std::vector<TreeNode> packed;
  packed.reserve(next);
  for (std::size_t id = 0; id < nodes_.size(); ++id) {
    if (!alive_[id]) continue;
    TreeNode n = std::move(nodes_[id]);
    if (n.parent != kNoNode) n.parent = remap[n.parent];
    for (int& c : n.children) c = remap[c];
    packed.push_back(std::move(n));
  }
  nodes_ = std::move(packed);
  alive_.assign(nodes_.size(), 1);
  if (root_ != kNoNode) root_ = remap[root_];
  live_count_ = next;
}

void EncodingTree::canonicalize() {
  compact();
  for (TreeNode& n : nodes_) std::sort(n.children.begin(), n.children.end());
}

}  // namespace etk
