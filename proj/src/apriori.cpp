#include "ctxmine/apriori.hpp"

#include <algorithm>
#include <unordered_map>
#include <unordered_set>

#include "ctxmine/error.hpp"

namespace ctxmine {

namespace {

using ItemId = std::uint32_t;
using Itemset = std::vector<ItemId>;  // ascending item ids, one per attribute

struct ItemsetHash {
  std::size_t operator()(const Itemset& s) const noexcept {
    std::size_t h = 0xcbf29ce484222325ull;
    for (auto id : s) {
      h ^= id + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    }
    return h;
  }
};

struct Counts {
  std::uint64_t support = 0;
  std::vector<std::uint64_t> per_class;
};

// Item ids number (attribute, value) pairs consecutively in schema order, so
// sorting ids also sorts by attribute.
class ItemSpace {
 public:
  explicit ItemSpace(const ContextSchema& schema) {
    for (std::size_t a = 0; a < schema.attribute_count(); ++a) {
      offset_.push_back(static_cast<ItemId>(attr_of_.size()));
      for (std::size_t v = 0; v < schema.attributes()[a].domain.size(); ++v) {
        attr_of_.push_back(static_cast<std::uint32_t>(a));
        value_of_.push_back(static_cast<std::uint32_t>(v));
      }
    }
  }

  [[nodiscard]] std::size_t size() const { return attr_of_.size(); }
  [[nodiscard]] ItemId id(std::size_t attr, std::uint32_t value) const { return offset_[attr] + value; }
  [[nodiscard]] std::uint32_t attr(ItemId id) const { return attr_of_[id]; }
  [[nodiscard]] std::uint32_t value(ItemId id) const { return value_of_[id]; }

 private:
  std::vector<ItemId> offset_;
  std::vector<std::uint32_t> attr_of_;
  std::vector<std::uint32_t> value_of_;
};

std::uint64_t binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  std::uint64_t r = 1;
  for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// Calls fn for every k-combination of `items` (kept in ascending order).
template <typename Fn>
void for_each_combination(const Itemset& items, std::size_t k, Fn&& fn) {
  if (k > items.size()) return;
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  Itemset combo(k);
  while (true) {
    for (std::size_t i = 0; i < k; ++i) combo[i] = items[idx[i]];
    fn(combo);
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == items.size() - k + (i - 1)) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

std::vector<Itemset> join_and_prune(const std::vector<Itemset>& frequent, const ItemSpace& space) {
  const std::unordered_set<Itemset, ItemsetHash> known(frequent.begin(), frequent.end());
  std::vector<Itemset> candidates;
  const std::size_t prefix = frequent.empty() ? 0 : frequent.front().size() - 1;

  for (std::size_t i = 0; i < frequent.size(); ++i) {
    for (std::size_t j = i + 1; j < frequent.size(); ++j) {
      const auto& x = frequent[i];
      const auto& y = frequent[j];
      if (!std::equal(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(prefix), y.begin())) break;
      if (space.attr(x.back()) == space.attr(y.back())) continue;

      Itemset cand = x;
      cand.push_back(y.back());
      // Every (k-1)-subset must be frequent; the two that drop one of the
      // last two items are x and y themselves.
      bool keep = true;
      Itemset probe;
      for (std::size_t drop = 0; drop + 2 < cand.size() && keep; ++drop) {
        probe.clear();
        for (std::size_t m = 0; m < cand.size(); ++m) {
          if (m != drop) probe.push_back(cand[m]);
        }
        keep = known.contains(probe);
      }
      if (keep) candidates.push_back(std::move(cand));
    }
  }
  return candidates;
}

}  // namespace

std::vector<FrequentItemset> mine_frequent(const Dataset& ds, std::uint64_t min_support) {
  if (min_support < 1) throw ConfigError("min_support must be at least 1");
  const auto& schema = ds.schema();
  const ItemSpace space(schema);
  const auto classes = schema.class_count();

  std::vector<Itemset> rows;
  rows.reserve(ds.size());
  for (const auto& inst : ds.instances()) {
    Itemset items;
    for (std::size_t a = 0; a < inst.values.size(); ++a) items.push_back(space.id(a, inst.values[a]));
    rows.push_back(std::move(items));
  }

  std::vector<std::pair<Itemset, Counts>> found;

  // level 1
  std::vector<Counts> singles(space.size(), Counts{0, std::vector<std::uint64_t>(classes, 0)});
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (auto id : rows[r]) {
      ++singles[id].support;
      ++singles[id].per_class[ds.instances()[r].behavior];
    }
  }
  std::vector<Itemset> level;
  for (ItemId id = 0; id < space.size(); ++id) {
    if (singles[id].support >= min_support) {
      level.push_back({id});
      found.emplace_back(Itemset{id}, std::move(singles[id]));
    }
  }

  for (std::size_t k = 2; !level.empty() && k <= schema.attribute_count(); ++k) {
    auto candidates = join_and_prune(level, space);
    if (candidates.empty()) break;

    std::unordered_map<Itemset, std::size_t, ItemsetHash> index;
    index.reserve(candidates.size());
    for (std::size_t c = 0; c < candidates.size(); ++c) index.emplace(candidates[c], c);
    std::vector<Counts> counts(candidates.size(), Counts{0, std::vector<std::uint64_t>(classes, 0)});

    // Enumerate each row's k-subsets when that is cheaper than testing every
    // candidate against the row.
    const bool enumerate = binomial(schema.attribute_count(), k) <= candidates.size();
    for (std::size_t r = 0; r < rows.size(); ++r) {
      const auto cls = ds.instances()[r].behavior;
      if (enumerate) {
        for_each_combination(rows[r], k, [&](const Itemset& combo) {
          if (auto it = index.find(combo); it != index.end()) {
            ++counts[it->second].support;
            ++counts[it->second].per_class[cls];
          }
        });
      } else {
        const auto& values = ds.instances()[r].values;
        for (std::size_t c = 0; c < candidates.size(); ++c) {
          const bool match = std::all_of(candidates[c].begin(), candidates[c].end(),
                                         [&](ItemId id) { return values[space.attr(id)] == space.value(id); });
          if (match) {
            ++counts[c].support;
            ++counts[c].per_class[cls];
          }
        }
      }
    }

    level.clear();
    for (std::size_t c = 0; c < candidates.size(); ++c) {
      if (counts[c].support < min_support) continue;
      level.push_back(candidates[c]);
      found.emplace_back(std::move(candidates[c]), std::move(counts[c]));
    }
  }

  std::vector<FrequentItemset> out;
  out.reserve(found.size());
  for (auto& [items, counts] : found) {
    std::vector<Condition> conditions;
    for (auto id : items) {
      const auto& attr = schema.attributes()[space.attr(id)];
      conditions.push_back({attr.name, attr.domain[space.value(id)]});
    }
    out.push_back({make_antecedent(std::move(conditions)), counts.support, std::move(counts.per_class)});
  }
  return out;
}

std::vector<Rule> generate_cars(const Dataset& ds, const std::vector<FrequentItemset>& frequent, const Ratio& threshold,
                                 std::uint64_t min_support) {
  if (threshold.num == 0 || threshold > Ratio{1, 1}) throw ConfigError("confidence threshold must be in (0, 1]");
  const auto& labels = ds.schema().behavior_classes();
  const std::uint64_t floor = std::max<std::uint64_t>(min_support, 1);

  std::vector<Rule> rules;
  for (const auto& itemset : frequent) {
    if (itemset.support == 0) continue;
    if (itemset.class_counts.size() != labels.size()) throw InvariantViolation("itemset class histogram mismatch");
    for (std::size_t c = 0; c < labels.size(); ++c) {
      const auto support = itemset.class_counts[c];
      if (support < floor) continue;
      if (Ratio{support, itemset.support} < threshold) continue;
      rules.push_back({itemset.items, labels[c], support, itemset.support});
    }
  }
  return rules;
}

std::vector<Rule> mine_apriori(const Dataset& ds, const Ratio& threshold, std::uint64_t min_support) {
  return generate_cars(ds, mine_frequent(ds, min_support), threshold, min_support);
}

namespace {

std::string key_of(const Antecedent& a, std::uint64_t mask, const std::string& consequent) {
  std::string key = consequent;
  key.push_back('\x1d');
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!(mask >> i & 1u)) continue;
    key += a[i].attribute;
    key.push_back('\x1f');
    key += a[i].value;
    key.push_back('\x1e');
  }
  return key;
}

}  // namespace

std::vector<Rule> filter_redundant(const std::vector<Rule>& rules) {
  std::unordered_set<std::string> present;
  std::size_t widest = 0;
  for (const auto& r : rules) {
    present.insert(key_of(r.antecedent, ~std::uint64_t{0}, r.consequent));
    widest = std::max(widest, r.antecedent.size());
  }

  std::vector<Rule> kept;
  for (const auto& r : rules) {
    bool redundant = false;
    if (widest < 20) {
      const std::uint64_t full = (std::uint64_t{1} << r.antecedent.size()) - 1;
      for (std::uint64_t mask = 0; mask < full && !redundant; ++mask) {
        redundant = present.contains(key_of(r.antecedent, mask, r.consequent));
      }
    } else {
      redundant = std::any_of(rules.begin(), rules.end(), [&](const Rule& other) {
        return other.consequent == r.consequent && other.antecedent.size() < r.antecedent.size() &&
               is_subset(other.antecedent, r.antecedent);
      });
    }
    if (!redundant) kept.push_back(r);
  }
  return kept;
}

}  // namespace ctxmine
