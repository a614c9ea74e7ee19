#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "ctxmine/datamodel.hpp"
#include "ctxmine/ratio.hpp"

namespace ctxmine {

enum class RankingMode {
  per_node,  // re-rank remaining contexts on each node's subset
  global,    // rank once on the full dataset and reuse that order
};

struct MiningConfig {
  Ratio threshold{4, 5};
  std::uint64_t min_support = 1;
  /// When set, only rules with these consequents are extracted.
  std::optional<std::vector<std::string>> class_filter;
  /// Also mark a child redundant against its nearest ancestor that meets the
  /// threshold, not only its parent.
  bool strict_redundancy = false;
  RankingMode ranking = RankingMode::per_node;

  /// Throws ConfigError unless 0 < threshold <= 1 and min_support >= 1.
  void validate() const;
};

/// Node of an association generation tree.
///
/// Every node carries the dominant behavior of the instances that reach it
/// and its confidence (dominant count / instance count). A pure node
/// (confidence 1) is never expanded. A child is flagged redundant when it
/// shares its parent's behavior and both meet the threshold.
struct AgtNode {
  std::optional<Condition> branch;  // absent at the root
  std::optional<std::string> split_attribute;
  std::string dominant_behavior;
  Ratio confidence;
  std::uint64_t support = 0;
  bool redundant = false;
  std::vector<AgtNode> children;
  int node_id = 0;

  [[nodiscard]] std::uint64_t instance_count() const { return confidence.den; }
};

/// Builds the tree top-down. Children follow the domain declaration order of
/// the split attribute; node ids are assigned in depth-first creation order
/// starting at 1 for the root. Throws EmptyInputError for an empty dataset and
/// ConfigError when the schema has no context attributes.
AgtNode build_tree(const Dataset& ds, const MiningConfig& cfg);

/// Rules from every non-root node that meets the threshold and min_support,
/// is not redundant, and passes the class filter. The whole tree is visited,
/// including subtrees below redundant nodes. Ordered by node id.
std::vector<Rule> extract_rules(const AgtNode& root, const MiningConfig& cfg);

/// build_tree followed by extract_rules.
std::vector<Rule> mine_agt(const Dataset& ds, const MiningConfig& cfg);

/// Visits nodes in depth-first order together with their root path.
template <typename Fn>
void walk(const AgtNode& node, Fn&& fn, std::vector<const AgtNode*>& path) {
  path.push_back(&node);
  fn(node, path);
  for (const auto& child : node.children) walk(child, fn, path);
  path.pop_back();
}

template <typename Fn>
void walk(const AgtNode& root, Fn&& fn) {
  std::vector<const AgtNode*> path;
  walk(root, fn, path);
}

std::size_t node_count(const AgtNode& root);

/// Graphviz rendering, one box per node labelled "id | branch | class conf%".
/// Redundant nodes are dashed and filled grey.
void write_dot(std::ostream& out, const AgtNode& root, const MiningConfig& cfg);

}  // namespace ctxmine
