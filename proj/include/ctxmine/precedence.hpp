#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "ctxmine/datamodel.hpp"

namespace ctxmine {

/// Gains closer than this are treated as tied and ordered by attribute name.
inline constexpr double kGainTieTolerance = 1e-12;

struct RankedContext {
  std::string attribute;
  double gain = 0.0;
};

struct PrecedenceRanking {
  std::vector<RankedContext> entries;  // highest precedence first
  std::size_t instance_count = 0;
  std::uint64_t schema_hash = 0;

  [[nodiscard]] bool empty() const { return entries.empty(); }
};

/// Shannon entropy (base 2) of a class histogram; zero counts contribute 0.
double entropy(std::span<const std::uint64_t> counts);

/// Entropy of the behavior class distribution of `ds`; 0 for an empty set.
double entropy(const Dataset& ds);

/// Entropy of `ds` minus the size-weighted entropy of its partition by `attr`.
/// Throws SchemaError for an unknown attribute.
double information_gain(const Dataset& ds, std::string_view attr);

/// Ranks `candidates` by information gain, descending. Gains within
/// kGainTieTolerance of each other are ordered by ascending attribute name.
PrecedenceRanking rank_contexts(const Dataset& ds, const std::vector<std::string>& candidates);

}  // namespace ctxmine
