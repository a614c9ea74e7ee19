#include "ctxmine/precedence.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "ctxmine/error.hpp"

namespace ctxmine {

double entropy(std::span<const std::uint64_t> counts) {
  const auto total = std::accumulate(counts.begin(), counts.end(), std::uint64_t{0});
  if (total == 0) return 0.0;
  double h = 0.0;
  for (auto c : counts) {
    if (c == 0) continue;
    const double p = static_cast<double>(c) / static_cast<double>(total);
    h -= p * std::log2(p);
  }
  // -0.0 and tiny negative rounding for pure sets
  return std::max(h, 0.0);
}

double entropy(const Dataset& ds) {
  const auto counts = class_counts(ds);
  return entropy(std::span<const std::uint64_t>(counts));
}

double information_gain(const Dataset& ds, std::string_view attr) {
  const auto& schema = ds.schema();
  const auto a = schema.attribute_index(attr);
  if (ds.empty()) return 0.0;

  const auto classes = schema.class_count();
  const auto values = schema.attributes()[a].domain.size();
  // histogram[value * classes + class]
  std::vector<std::uint64_t> histogram(values * classes, 0);
  std::vector<std::uint64_t> overall(classes, 0);
  for (const auto& inst : ds.instances()) {
    ++histogram[inst.values[a] * classes + inst.behavior];
    ++overall[inst.behavior];
  }

  const double n = static_cast<double>(ds.size());
  double remainder = 0.0;
  for (std::size_t v = 0; v < values; ++v) {
    const std::span<const std::uint64_t> part(histogram.data() + v * classes, classes);
    const auto size = std::accumulate(part.begin(), part.end(), std::uint64_t{0});
    if (size == 0) continue;
    remainder += static_cast<double>(size) / n * entropy(part);
  }
  const double h = entropy(std::span<const std::uint64_t>(overall));
  return std::clamp(h - remainder, 0.0, h);
}

PrecedenceRanking rank_contexts(const Dataset& ds, const std::vector<std::string>& candidates) {
  PrecedenceRanking ranking;
  ranking.instance_count = ds.size();
  ranking.schema_hash = ds.schema().hash();

  std::vector<RankedContext> pool;
  pool.reserve(candidates.size());
  for (const auto& name : candidates) pool.push_back({name, information_gain(ds, name)});
  std::sort(pool.begin(), pool.end(), [](const auto& x, const auto& y) { return x.attribute < y.attribute; });
  pool.erase(std::unique(pool.begin(), pool.end(), [](const auto& x, const auto& y) { return x.attribute == y.attribute; }),
             pool.end());

  // Selection over the name-sorted pool: the first name whose gain is within
  // tolerance of the maximum wins each position.
  while (!pool.empty()) {
    double best = pool.front().gain;
    for (const auto& e : pool) best = std::max(best, e.gain);
    const auto pick = std::find_if(pool.begin(), pool.end(),
                                   [&](const auto& e) { return e.gain >= best - kGainTieTolerance; });
    ranking.entries.push_back(*pick);
    pool.erase(pick);
  }
  return ranking;
}

}  // namespace ctxmine
