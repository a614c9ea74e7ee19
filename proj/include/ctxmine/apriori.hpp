#pragma once

#include <cstdint>
#include <vector>

#include "ctxmine/datamodel.hpp"
#include "ctxmine/ratio.hpp"

namespace ctxmine {

/// A set of context conditions covering at least min_support instances.
/// class_counts[c] is the number of covered instances with behavior class c
/// (schema order), so support == sum(class_counts).
struct FrequentItemset {
  Antecedent items;
  std::uint64_t support = 0;
  std::vector<std::uint64_t> class_counts;
};

/// Level-wise Apriori over context conditions. Candidates of size k are joined
/// from frequent (k-1)-sets sharing a prefix and pruned when any (k-1)-subset
/// is infrequent. An itemset never holds two conditions on one attribute.
/// Behavior classes are not items. Output is ordered by size, then by schema
/// attribute/value order.
std::vector<FrequentItemset> mine_frequent(const Dataset& ds, std::uint64_t min_support);

/// Class association rules A => C for every frequent A and class C with
/// support(A => C) >= min_support and confidence >= threshold. Follows the
/// order of `frequent`, classes in schema order within an itemset.
std::vector<Rule> generate_cars(const Dataset& ds, const std::vector<FrequentItemset>& frequent, const Ratio& threshold,
                                 std::uint64_t min_support = 1);

/// mine_frequent + generate_cars.
std::vector<Rule> mine_apriori(const Dataset& ds, const Ratio& threshold, std::uint64_t min_support = 1);

/// Drops every rule whose antecedent strictly contains the antecedent of
/// another input rule with the same consequent. Input order is preserved.
std::vector<Rule> filter_redundant(const std::vector<Rule>& rules);

}  // namespace ctxmine
