#include "bloofi/bloofi_tree.hpp"

#include <algorithm>
#include <cmath>
#include <iterator>
#include <limits>
#include <sstream>

#include "bloofi/errors.hpp"

namespace bloofi {

namespace {

std::size_t index_in_parent(const BloofiNode* parent, const BloofiNode* child) {
  for (std::size_t i = 0; i < parent->child_count(); ++i) {
    if (&parent->child(i) == child) return i;
  }
  throw std::logic_error("bloofi: child not found under its parent");
}

}  // namespace

BloofiTree::BloofiTree(FamilyPtr family, BloofiOptions options)
    : family_(std::move(family)), options_(options) {
  if (!family_) throw ParameterError("bloofi tree needs a hash family");
  if (options_.order < 2) throw ParameterError("bloofi order must be at least 2");
}

BloofiTree::~BloofiTree() = default;
BloofiTree::BloofiTree(BloofiTree&&) noexcept = default;
BloofiTree& BloofiTree::operator=(BloofiTree&&) noexcept = default;

void BloofiTree::require_compatible(const BloomFilter& filter) const {
  if (!filter.compatible_with(*family_)) {
    throw UsageError("filter uses a different hash family than the index");
  }
}

void BloofiTree::touch(const BloofiNode* node) {
  if (node->stamp_ != epoch_) {
    node->stamp_ = epoch_;
    ++access_cost_;
  }
}

BloofiTree::NodePtr BloofiTree::make_leaf(FilterId id, const BitVector& bits) {
  ++node_count_;
  return NodePtr(new BloofiNode(id, true, bits));
}

BloofiTree::NodePtr BloofiTree::make_inner() {
  ++node_count_;
  return NodePtr(new BloofiNode(next_inner_id_++, false, BitVector(family_->m())));
}

bool BloofiTree::exempt_from_split(const BloofiNode& node) const {
  return options_.no_split_all_ones && node.val_.all();
}

// ---------------------------------------------------------------- search

std::vector<FilterId> BloofiTree::find_matches(std::uint64_t element) {
  family_->positions(element, scratch_positions_);
  return find_matches_at(scratch_positions_);
}

std::vector<FilterId> BloofiTree::find_matches_at(std::span<const std::size_t> positions) {
  begin_op();
  std::vector<FilterId> out;
  if (root_) collect(root_.get(), positions, out);
  return out;
}

void BloofiTree::collect(const BloofiNode* node, std::span<const std::size_t> positions,
                         std::vector<FilterId>& out) {
  touch(node);
  if (!matches_positions(node->val_, positions)) return;
  if (node->leaf_) {
    out.push_back(node->id_);
    return;
  }
  for (const auto& child : node->children_) collect(child.get(), positions, out);
}

// ---------------------------------------------------------------- insert

void BloofiTree::insert(FilterId id, const BloomFilter& filter) {
  require_compatible(filter);
  if (leaves_.contains(id)) throw UsageError("filter id " + std::to_string(id) + " already indexed");
  begin_op();
  auto leaf = make_leaf(id, filter.bits());
  leaves_.emplace(id, leaf.get());
  insert_leaf(std::move(leaf), false);
}

void BloofiTree::insert_leaf(NodePtr leaf, bool rightmost) {
  touch(leaf.get());
  if (!root_) {
    root_ = std::move(leaf);
    return;
  }
  if (root_->leaf_) {
    touch(root_.get());
    grow_root(std::move(leaf));
    return;
  }
  if (auto sibling = descend_and_insert(root_.get(), leaf, rightmost)) {
    grow_root(std::move(sibling));
  }
}

// Inserts `leaf` below `node` and returns the node split off from `node`, if
// any, for the caller to place next to it.
BloofiTree::NodePtr BloofiTree::descend_and_insert(BloofiNode* node, NodePtr& leaf,
                                                   bool rightmost) {
  touch(node);
  node->val_ |= leaf->val_;

  BloofiNode* closest = nullptr;
  if (rightmost) {
    closest = node->children_.back().get();
    touch(closest);
  } else {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& child : node->children_) {
      touch(child.get());
      const double d = distance(child->val_, leaf->val_, options_.metric);
      if (d < best) {
        best = d;
        closest = child.get();
      }
    }
  }

  if (closest->leaf_) return insert_into_parent(std::move(leaf), closest);
  auto sibling = descend_and_insert(closest, leaf, rightmost);
  if (!sibling) return nullptr;
  return insert_into_parent(std::move(sibling), closest);
}

BloofiTree::NodePtr BloofiTree::insert_into_parent(NodePtr entry, BloofiNode* after) {
  BloofiNode* parent = after->parent_;
  touch(parent);
  touch(entry.get());
  entry->parent_ = parent;
  const auto pos = index_in_parent(parent, after);
  parent->children_.insert(parent->children_.begin() + static_cast<std::ptrdiff_t>(pos + 1),
                           std::move(entry));
  if (parent->children_.size() <= max_fanout() || exempt_from_split(*parent)) return nullptr;
  return split(parent);
}

// Moves the last `order` children of node into a new node and returns it.
BloofiTree::NodePtr BloofiTree::split(BloofiNode* node) {
  touch(node);
  auto sibling = make_inner();
  touch(sibling.get());
  const auto first = node->children_.end() - static_cast<std::ptrdiff_t>(options_.order);
  for (auto it = first; it != node->children_.end(); ++it) {
    touch(it->get());
    (*it)->parent_ = sibling.get();
    sibling->children_.push_back(std::move(*it));
  }
  node->children_.erase(first, node->children_.end());
  recompute(node);
  recompute(sibling.get());
  return sibling;
}

void BloofiTree::grow_root(NodePtr sibling) {
  auto new_root = make_inner();
  touch(new_root.get());
  touch(sibling.get());
  new_root->val_ = root_->val_ | sibling->val_;
  root_->parent_ = new_root.get();
  sibling->parent_ = new_root.get();
  new_root->children_.push_back(std::move(root_));
  new_root->children_.push_back(std::move(sibling));
  root_ = std::move(new_root);
}

// ---------------------------------------------------------------- delete

void BloofiTree::remove(FilterId id) {
  auto it = leaves_.find(id);
  if (it == leaves_.end()) throw UsageError("filter id " + std::to_string(id) + " is not indexed");
  BloofiNode* leaf = it->second;
  leaves_.erase(it);
  begin_op();
  touch(leaf);
  if (leaf == root_.get()) {
    root_.reset();
    node_count_ = 0;
    return;
  }
  remove_node(leaf);
}

void BloofiTree::remove_node(BloofiNode* node) {
  BloofiNode* parent = node->parent_;
  touch(parent);
  touch(node);
  parent->children_.erase(parent->children_.begin() +
                          static_cast<std::ptrdiff_t>(index_in_parent(parent, node)));
  --node_count_;

  if (parent == root_.get()) {
    if (parent->children_.size() == 1) {
      auto child = std::move(parent->children_.front());
      touch(child.get());
      child->parent_ = nullptr;
      root_ = std::move(child);
      --node_count_;
    } else {
      recompute_to_root(parent);
    }
    return;
  }

  if (parent->children_.size() >= options_.order) {
    recompute_to_root(parent);
    return;
  }

  // Underflow: borrow from the right sibling if there is one, else the left.
  BloofiNode* grandparent = parent->parent_;
  touch(grandparent);
  const auto pos = index_in_parent(grandparent, parent);
  const bool use_right = pos + 1 < grandparent->children_.size();
  BloofiNode* sibling = grandparent->children_[use_right ? pos + 1 : pos - 1].get();
  touch(sibling);

  auto& mine = parent->children_;
  auto& theirs = sibling->children_;
  if (theirs.size() > options_.order) {
    const auto count = static_cast<std::ptrdiff_t>((theirs.size() - mine.size()) / 2);
    if (use_right) {
      for (auto it = theirs.begin(); it != theirs.begin() + count; ++it) {
        touch(it->get());
        (*it)->parent_ = parent;
        mine.push_back(std::move(*it));
      }
      theirs.erase(theirs.begin(), theirs.begin() + count);
    } else {
      const auto first = theirs.end() - count;
      for (auto it = first; it != theirs.end(); ++it) {
        touch(it->get());
        (*it)->parent_ = parent;
      }
      mine.insert(mine.begin(), std::make_move_iterator(first), std::make_move_iterator(theirs.end()));
      theirs.erase(first, theirs.end());
    }
    settle(sibling);
    recompute_to_root(parent);
    return;
  }

  // Merge: hand every child to the sibling, then drop the emptied parent.
  for (auto& child : mine) {
    touch(child.get());
    child->parent_ = sibling;
  }
  if (use_right) {
    theirs.insert(theirs.begin(), std::make_move_iterator(mine.begin()),
                  std::make_move_iterator(mine.end()));
  } else {
    theirs.insert(theirs.end(), std::make_move_iterator(mine.begin()),
                  std::make_move_iterator(mine.end()));
  }
  mine.clear();
  recompute(sibling);
  remove_node(parent);
}

void BloofiTree::recompute(BloofiNode* node) {
  touch(node);
  node->val_.clear();
  for (const auto& child : node->children_) {
    touch(child.get());
    node->val_ |= child->val_;
  }
}

// Recomputes node's value and splits it if it holds more than 2d children
// without being all ones (a value that lost its saturation during a delete).
void BloofiTree::settle(BloofiNode* node) {
  recompute(node);
  if (node->children_.size() <= max_fanout() || exempt_from_split(*node)) return;

  std::vector<NodePtr> pieces;
  while (node->children_.size() > max_fanout()) pieces.push_back(split(node));

  if (node == root_.get()) {
    auto new_root = make_inner();
    touch(new_root.get());
    node->parent_ = new_root.get();
    new_root->children_.push_back(std::move(root_));
    root_ = std::move(new_root);
  }
  BloofiNode* parent = node->parent_;
  touch(parent);
  const auto pos = static_cast<std::ptrdiff_t>(index_in_parent(parent, node));
  // Pieces were peeled from the back, so inserting each right after node
  // restores the original child order.
  for (auto& piece : pieces) {
    piece->parent_ = parent;
    parent->children_.insert(parent->children_.begin() + pos + 1, std::move(piece));
  }
}

void BloofiTree::recompute_to_root(BloofiNode* node) {
  while (node != nullptr) {
    settle(node);
    node = node->parent_;
  }
}

// ---------------------------------------------------------------- update

void BloofiTree::update(FilterId id, const BloomFilter& filter) {
  require_compatible(filter);
  auto it = leaves_.find(id);
  if (it == leaves_.end()) throw UsageError("filter id " + std::to_string(id) + " is not indexed");
  if (!it->second->val_.is_subset_of(filter.bits())) {
    throw UsageError("in-place update cannot clear bits of filter " + std::to_string(id) +
                     "; rebuild the index instead");
  }
  begin_op();
  for (BloofiNode* node = it->second; node != nullptr; node = node->parent_) {
    touch(node);
    node->val_ |= filter.bits();
  }
}

// ---------------------------------------------------------------- bulk / rebuild

BloofiTree BloofiTree::bulk_build(FamilyPtr family, BloofiOptions options,
                                  std::span<const std::pair<FilterId, BloomFilter>> filters) {
  BloofiTree tree(std::move(family), options);
  std::vector<BitVector> bits;
  bits.reserve(filters.size());
  for (const auto& [id, filter] : filters) {
    tree.require_compatible(filter);
    bits.push_back(filter.bits());
  }
  for (auto idx : nearest_neighbor_order(bits, options.metric)) {
    const auto id = filters[idx].first;
    if (tree.leaves_.contains(id)) {
      throw UsageError("filter id " + std::to_string(id) + " appears twice");
    }
    tree.begin_op();
    auto leaf = tree.make_leaf(id, bits[idx]);
    tree.leaves_.emplace(id, leaf.get());
    tree.insert_leaf(std::move(leaf), true);
  }
  return tree;
}

void BloofiTree::rebuild() {
  std::vector<const BloofiNode*> leaves;
  if (root_) collect_leaves(root_.get(), leaves);
  std::vector<std::pair<FilterId, BitVector>> saved;
  saved.reserve(leaves.size());
  for (const auto* leaf : leaves) saved.emplace_back(leaf->id_, leaf->val_);

  root_.reset();
  leaves_.clear();
  node_count_ = 0;
  for (auto& [id, bits] : saved) insert(id, BloomFilter(family_, std::move(bits)));
}

void BloofiTree::collect_leaves(const BloofiNode* node,
                                std::vector<const BloofiNode*>& out) const {
  if (node->leaf_) {
    out.push_back(node);
    return;
  }
  for (const auto& child : node->children_) collect_leaves(child.get(), out);
}

BloofiTree BloofiTree::from_layout(FamilyPtr family, BloofiOptions options,
                                   const BloofiLayout& layout) {
  BloofiTree tree(std::move(family), options);
  tree.root_ = tree.build_layout(layout);
  if (auto problem = tree.validate()) throw UsageError("invalid layout: " + *problem);
  return tree;
}

BloofiTree::NodePtr BloofiTree::build_layout(const BloofiLayout& layout) {
  if (layout.children.empty()) {
    if (layout.bits.size() != family_->m()) throw UsageError("layout leaf has the wrong length");
    if (leaves_.contains(layout.id)) {
      throw UsageError("filter id " + std::to_string(layout.id) + " appears twice");
    }
    auto leaf = make_leaf(layout.id, layout.bits);
    leaves_.emplace(layout.id, leaf.get());
    return leaf;
  }
  auto node = make_inner();
  for (const auto& child_layout : layout.children) {
    auto child = build_layout(child_layout);
    child->parent_ = node.get();
    node->val_ |= child->val_;
    node->children_.push_back(std::move(child));
  }
  return node;
}

// ---------------------------------------------------------------- inspection

const BitVector* BloofiTree::leaf_value(FilterId id) const {
  auto it = leaves_.find(id);
  return it == leaves_.end() ? nullptr : &it->second->val_;
}

std::size_t BloofiTree::height() const {
  std::size_t h = 0;
  for (const BloofiNode* n = root_.get(); n != nullptr && !n->leaf_; n = n->children_.front().get()) {
    ++h;
  }
  return h;
}

std::size_t BloofiTree::storage_bytes() const {
  return node_count_ * words_for_bits(family_->m()) * sizeof(std::uint64_t);
}

std::optional<std::string> BloofiTree::validate() const {
  std::ostringstream err;
  const std::size_t d = options_.order;
  std::size_t nodes = 0;
  std::size_t leaves = 0;
  std::optional<std::size_t> leaf_depth;

  if (root_ && root_->parent_ != nullptr) return "root has a parent";

  struct Frame {
    const BloofiNode* node;
    std::size_t depth;
  };
  std::vector<Frame> stack;
  if (root_) stack.push_back({root_.get(), 0});
  while (!stack.empty()) {
    auto [node, depth] = stack.back();
    stack.pop_back();
    ++nodes;
    if (node->val_.size() != family_->m()) return "node value has the wrong length";
    if (node->leaf_) {
      ++leaves;
      if (!node->children_.empty()) return "leaf with children";
      auto it = leaves_.find(node->id_);
      if (it == leaves_.end() || it->second != node) {
        err << "leaf " << node->id_ << " missing from the id map";
        return err.str();
      }
      if (leaf_depth && *leaf_depth != depth) {
        err << "leaves at depths " << *leaf_depth << " and " << depth;
        return err.str();
      }
      leaf_depth = depth;
      continue;
    }
    const std::size_t fanout = node->children_.size();
    const bool is_root = node == root_.get();
    const std::size_t min_fanout = is_root ? 2 : d;
    if (fanout < min_fanout) {
      err << "inner node " << node->id_ << " has " << fanout << " children, minimum " << min_fanout;
      return err.str();
    }
    if (fanout > 2 * d && !(options_.no_split_all_ones && node->val_.all())) {
      err << "inner node " << node->id_ << " has " << fanout << " children, maximum " << 2 * d;
      return err.str();
    }
    BitVector aggregate(family_->m());
    for (const auto& child : node->children_) {
      if (child->parent_ != node) {
        err << "child of node " << node->id_ << " does not point back to it";
        return err.str();
      }
      aggregate |= child->val_;
      stack.push_back({child.get(), depth + 1});
    }
    if (aggregate != node->val_) {
      err << "inner node " << node->id_ << " is not the OR of its children";
      return err.str();
    }
  }

  if (leaves != leaves_.size()) return "id map and leaf count disagree";
  if (nodes != node_count_) {
    err << "node count " << node_count_ << " but " << nodes << " reachable";
    return err.str();
  }
  const std::size_t n = leaves;
  if (n >= 1) {
    const std::size_t bound = n + (n - 1 + d - 2) / (d - 1);  // ceil(N + (N-1)/(d-1))
    if (nodes > bound) {
      err << nodes << " nodes exceeds bound " << bound << " for N=" << n;
      return err.str();
    }
  }
  if (n >= 2) {
    const std::size_t h = height();
    // A root with >= 2 children and inner nodes with >= d children hold at
    // least 2 * d^(h-1) leaves.
    double min_leaves = 2.0 * std::pow(static_cast<double>(d), static_cast<double>(h) - 1.0);
    if (min_leaves > static_cast<double>(n)) {
      err << "height " << h << " too large for N=" << n << " at order " << d;
      return err.str();
    }
  }
  return std::nullopt;
}

std::vector<std::size_t> nearest_neighbor_order(std::span<const BitVector> filters, Metric metric) {
  std::vector<std::size_t> order;
  if (filters.empty()) return order;
  order.reserve(filters.size());
  std::vector<bool> used(filters.size(), false);
  BitVector current(filters.front().size());
  for (std::size_t step = 0; step < filters.size(); ++step) {
    std::size_t best_idx = 0;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < filters.size(); ++i) {
      if (used[i]) continue;
      const double d = distance(current, filters[i], metric);
      if (d < best) {
        best = d;
        best_idx = i;
      }
    }
    used[best_idx] = true;
    order.push_back(best_idx);
    current = filters[best_idx];
  }
  return order;
}

}  // namespace bloofi
