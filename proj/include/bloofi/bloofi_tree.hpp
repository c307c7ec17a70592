#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "bloofi/bit_vector.hpp"
#include "bloofi/bloom_filter.hpp"
#include "bloofi/distance.hpp"
#include "bloofi/membership_index.hpp"

namespace bloofi {

class BloofiTree;

/// One node of a Bloofi tree. Leaves carry an indexed filter; inner nodes carry
/// the OR of their children. Read-only outside BloofiTree.
class BloofiNode {
 public:
  /// Caller-supplied filter id for leaves, generated id for inner nodes.
  std::uint64_t id() const { return id_; }
  bool is_leaf() const { return leaf_; }
  const BitVector& value() const { return val_; }
  const BloofiNode* parent() const { return parent_; }
  std::size_t child_count() const { return children_.size(); }
  const BloofiNode& child(std::size_t i) const { return *children_[i]; }

 private:
  friend class BloofiTree;

  BloofiNode(std::uint64_t id, bool leaf, BitVector val)
      : id_(id), leaf_(leaf), val_(std::move(val)) {}

  std::uint64_t id_;
  bool leaf_;
  BitVector val_;
  BloofiNode* parent_ = nullptr;
  std::vector<std::unique_ptr<BloofiNode>> children_;
  mutable std::uint64_t stamp_ = 0;
};

struct BloofiOptions {
  /// Minimum fanout of non-root inner nodes; maximum is 2 * order.
  std::size_t order = 2;
  Metric metric = Metric::kHamming;
  /// Leave full nodes whose value is all ones unsplit.
  bool no_split_all_ones = true;
};

/// Explicit tree shape, used to restore a known structure. Inner values are
/// computed from the leaves.
struct BloofiLayout {
  FilterId id = 0;
  BitVector bits;
  std::vector<BloofiLayout> children;

  static BloofiLayout leaf(FilterId id, BitVector bits) { return {id, std::move(bits), {}}; }
  static BloofiLayout inner(std::vector<BloofiLayout> children) {
    return {0, BitVector{}, std::move(children)};
  }
};

/// Hierarchical Bloom filter index: a B+-tree-like tree whose leaves are the
/// indexed filters and whose inner nodes hold the OR of their children, so a
/// search descends only into subtrees whose aggregate matches.
///
/// Not thread-safe; searches update the access counter.
class BloofiTree final : public MembershipIndex {
 public:
  BloofiTree(FamilyPtr family, BloofiOptions options);
  ~BloofiTree() override;

  BloofiTree(BloofiTree&&) noexcept;
  BloofiTree& operator=(BloofiTree&&) noexcept;

  /// Greedy nearest-neighbour ordering of the filters followed by insertion
  /// next to the right-most leaf each time.
  static BloofiTree bulk_build(FamilyPtr family, BloofiOptions options,
                               std::span<const std::pair<FilterId, BloomFilter>> filters);

  /// Builds exactly the given shape. Throws UsageError if the result breaks
  /// a structural invariant.
  static BloofiTree from_layout(FamilyPtr family, BloofiOptions options, const BloofiLayout& layout);

  std::string_view name() const override { return "bloofi"; }
  const FamilyPtr& family() const override { return family_; }

  void insert(FilterId id, const BloomFilter& filter) override;
  void remove(FilterId id) override;
  /// ORs filter into the leaf and every ancestor. The new filter must contain
  /// every bit of the current leaf value, otherwise UsageError.
  void update(FilterId id, const BloomFilter& filter) override;
  std::vector<FilterId> find_matches(std::uint64_t element) override;
  std::vector<FilterId> find_matches_at(std::span<const std::size_t> positions);

  /// Reconstructs the tree by re-inserting the current leaves in leaf order.
  void rebuild();

  bool contains(FilterId id) const override { return leaves_.contains(id); }
  std::size_t size() const override { return leaves_.size(); }
  std::size_t storage_bytes() const override;
  std::uint64_t access_cost() const override { return access_cost_; }
  void reset_cost() override { access_cost_ = 0; }

  const BloofiOptions& options() const { return options_; }
  const BloofiNode* root() const { return root_.get(); }
  /// Filter stored at the leaf for id, or nullptr.
  const BitVector* leaf_value(FilterId id) const;
  std::size_t node_count() const { return node_count_; }
  /// Edges from the root to the leaves; 0 for an empty or single-leaf tree.
  std::size_t height() const;

  /// Checks parent links, exact OR aggregation, fanout bounds (with the
  /// all-ones exemption), equal leaf depth, the node-count bound, the id map
  /// and the height bound 2 * d^(h-1) <= N. Returns a description of the
  /// first violation, or nullopt.
  std::optional<std::string> validate() const;

 private:
  using NodePtr = std::unique_ptr<BloofiNode>;

  void require_compatible(const BloomFilter& filter) const;
  void begin_op() { ++epoch_; }
  void touch(const BloofiNode* node);

  NodePtr make_leaf(FilterId id, const BitVector& bits);
  NodePtr make_inner();
  std::size_t max_fanout() const { return 2 * options_.order; }
  bool exempt_from_split(const BloofiNode& node) const;

  void insert_leaf(NodePtr leaf, bool rightmost);
  NodePtr descend_and_insert(BloofiNode* node, NodePtr& leaf, bool rightmost);
  NodePtr insert_into_parent(NodePtr entry, BloofiNode* after);
  NodePtr split(BloofiNode* node);
  void grow_root(NodePtr sibling);

  void remove_node(BloofiNode* node);
  void recompute(BloofiNode* node);
  void settle(BloofiNode* node);
  void recompute_to_root(BloofiNode* node);

  void collect(const BloofiNode* node, std::span<const std::size_t> positions,
               std::vector<FilterId>& out);
  void collect_leaves(const BloofiNode* node, std::vector<const BloofiNode*>& out) const;
  NodePtr build_layout(const BloofiLayout& layout);

  FamilyPtr family_;
  BloofiOptions options_;
  NodePtr root_;
  std::unordered_map<FilterId, BloofiNode*> leaves_;
  std::size_t node_count_ = 0;
  std::uint64_t next_inner_id_ = 1;
  std::uint64_t access_cost_ = 0;
  std::uint64_t epoch_ = 0;
  std::vector<std::size_t> scratch_positions_;
};

/// Order in which bulk construction inserts filters: start from the filter
/// closest to the empty filter, then repeatedly take the remaining filter
/// closest to the previous one. Ties go to the earlier input. O(N^2).
std::vector<std::size_t> nearest_neighbor_order(std::span<const BitVector> filters, Metric metric);

}  // namespace bloofi
