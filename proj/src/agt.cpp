#include "ctxmine/agt.hpp"

#include <algorithm>

#include "ctxmine/error.hpp"
#include "ctxmine/precedence.hpp"

namespace ctxmine {

void MiningConfig::validate() const {
  if (threshold.num == 0 || threshold > Ratio{1, 1})
    throw ConfigError("confidence threshold must be in (0, 1], got " + format_decimal(threshold));
  if (min_support < 1) throw ConfigError("min_support must be at least 1");
}

namespace {

class TreeBuilder {
 public:
  TreeBuilder(const MiningConfig& cfg, std::vector<std::string> global_order)
      : cfg_(cfg), global_order_(std::move(global_order)) {}

  AgtNode build(const Dataset& ds) {
    AgtNode root = make_node(ds, std::nullopt);
    std::vector<std::string> contexts;
    for (const auto& attr : ds.schema().attributes()) contexts.push_back(attr.name);
    expand(root, ds, std::move(contexts), std::nullopt);
    return root;
  }

 private:
  bool meets(const AgtNode& n) const { return n.confidence >= cfg_.threshold; }

  AgtNode make_node(const Dataset& ds, std::optional<Condition> branch) {
    const auto counts = class_counts(ds);
    const auto& labels = ds.schema().behavior_classes();
    std::size_t best = 0;
    for (std::size_t c = 1; c < counts.size(); ++c) {
      if (counts[c] > counts[best] || (counts[c] == counts[best] && labels[c] < labels[best])) best = c;
    }
    AgtNode node;
    node.branch = std::move(branch);
    node.dominant_behavior = labels[best];
    node.support = counts[best];
    node.confidence = Ratio{counts[best], ds.size()};
    node.node_id = next_id_++;
    return node;
  }

  std::string choose_split(const Dataset& ds, const std::vector<std::string>& contexts) const {
    if (cfg_.ranking == RankingMode::global) {
      for (const auto& name : global_order_) {
        if (std::find(contexts.begin(), contexts.end(), name) != contexts.end()) return name;
      }
      throw InvariantViolation("global ranking lost a context attribute");
    }
    return rank_contexts(ds, contexts).entries.front().attribute;
  }

  // `anchor` is the behavior of the nearest ancestor meeting the threshold,
  // used only in strict mode.
  void expand(AgtNode& node, const Dataset& ds, std::vector<std::string> contexts,
              std::optional<std::string> anchor) {
    if (node.support == ds.size()) return;  // pure
    if (contexts.empty()) return;

    const std::string split = choose_split(ds, contexts);
    node.split_attribute = split;
    contexts.erase(std::find(contexts.begin(), contexts.end(), split));

    if (meets(node)) anchor = node.dominant_behavior;
    const auto a = ds.schema().attribute_index(split);
    for (const auto& value : ds.schema().attributes()[a].domain) {
      Dataset sub = subset(ds, split, value);
      if (sub.empty()) continue;
      AgtNode child = make_node(sub, Condition{split, value});
      if (meets(child)) {
        const bool same_as_parent = meets(node) && node.dominant_behavior == child.dominant_behavior;
        const bool same_as_anchor = cfg_.strict_redundancy && anchor && *anchor == child.dominant_behavior;
        child.redundant = same_as_parent || same_as_anchor;
      }
      node.children.push_back(std::move(child));
      expand(node.children.back(), sub, contexts, anchor);
    }
  }

  const MiningConfig& cfg_;
  std::vector<std::string> global_order_;
  int next_id_ = 1;
};

bool passes_filter(const MiningConfig& cfg, const std::string& cls) {
  if (!cfg.class_filter) return true;
  return std::find(cfg.class_filter->begin(), cfg.class_filter->end(), cls) != cfg.class_filter->end();
}

std::string dot_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  return out;
}

}  // namespace

AgtNode build_tree(const Dataset& ds, const MiningConfig& cfg) {
  cfg.validate();
  if (ds.empty()) throw EmptyInputError("cannot build a tree from an empty dataset");
  if (ds.schema().attribute_count() == 0) throw ConfigError("dataset has no context attributes");

  std::vector<std::string> global_order;
  if (cfg.ranking == RankingMode::global) {
    std::vector<std::string> all;
    for (const auto& attr : ds.schema().attributes()) all.push_back(attr.name);
    for (const auto& e : rank_contexts(ds, all).entries) global_order.push_back(e.attribute);
  }
  return TreeBuilder(cfg, std::move(global_order)).build(ds);
}

std::vector<Rule> extract_rules(const AgtNode& root, const MiningConfig& cfg) {
  std::vector<std::pair<int, Rule>> found;
  walk(root, [&](const AgtNode& node, const std::vector<const AgtNode*>& path) {
    if (!node.branch) return;
    if (node.redundant || node.confidence < cfg.threshold || node.support < cfg.min_support) return;
    if (!passes_filter(cfg, node.dominant_behavior)) return;
    std::vector<Condition> conditions;
    for (const auto* step : path) {
      if (step->branch) conditions.push_back(*step->branch);
    }
    found.emplace_back(node.node_id,
                       Rule{make_antecedent(std::move(conditions)), node.dominant_behavior, node.support,
                            node.confidence.den});
  });
  std::stable_sort(found.begin(), found.end(), [](const auto& x, const auto& y) { return x.first < y.first; });

  std::vector<Rule> rules;
  rules.reserve(found.size());
  for (auto& [id, rule] : found) rules.push_back(std::move(rule));
  return rules;
}

std::vector<Rule> mine_agt(const Dataset& ds, const MiningConfig& cfg) { return extract_rules(build_tree(ds, cfg), cfg); }

std::size_t node_count(const AgtNode& root) {
  std::size_t n = 0;
  walk(root, [&](const AgtNode&, const auto&) { ++n; });
  return n;
}

void write_dot(std::ostream& out, const AgtNode& root, const MiningConfig& cfg) {
  out << "digraph agt {\n";
  out << "  node [shape=box, fontname=\"Helvetica\"];\n";
  walk(root, [&](const AgtNode& node, const std::vector<const AgtNode*>& path) {
    const std::string branch = node.branch ? node.branch->attribute + "=" + node.branch->value : "root";
    std::string label = dot_escape(std::to_string(node.node_id) + " | " + branch + " | " + node.dominant_behavior +
                                   " " + format_percent(node.confidence, 1));
    if (node.redundant) label += "\\nREDUNDANT";
    out << "  n" << node.node_id << " [label=\"" << label << "\"";
    if (node.redundant) {
      out << ", style=\"dashed,filled\", fillcolor=\"lightgrey\"";
    } else if (node.branch && node.confidence >= cfg.threshold) {
      out << ", penwidth=2";
    }
    out << "];\n";
    if (path.size() >= 2) out << "  n" << path[path.size() - 2]->node_id << " -> n" << node.node_id << ";\n";
  });
  out << "}\n";
}

}  // namespace ctxmine
