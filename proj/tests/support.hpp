#pragma once

// Shared helpers for the unit and acceptance suites: random categorical
// datasets and an exhaustive rule enumerator that shares no code with the
// miners.

#include <algorithm>
#include <cstdint>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "ctxmine/datamodel.hpp"

namespace testsupport {

using namespace ctxmine;

struct RandomShape {
  int max_attributes = 4;
  int max_values = 4;
  int max_classes = 3;
  int max_instances = 12;
  int min_instances = 1;
};

inline Dataset random_dataset(std::mt19937_64& rng, const RandomShape& shape = {}) {
  auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  const int attrs = pick(1, shape.max_attributes);
  std::vector<Attribute> attributes;
  for (int a = 0; a < attrs; ++a) {
    Attribute attr{std::string(1, static_cast<char>('A' + a)), {}};
    const int vals = pick(1, shape.max_values);
    for (int v = 0; v < vals; ++v) attr.domain.push_back("v" + std::to_string(v));
    attributes.push_back(std::move(attr));
  }
  // shuffle attribute declaration order so name order and schema order differ
  std::shuffle(attributes.begin(), attributes.end(), rng);
  std::vector<std::string> classes;
  const int ncls = pick(2, shape.max_classes);
  for (int c = 0; c < ncls; ++c) classes.push_back("c" + std::to_string(c));
  auto schema = std::make_shared<const ContextSchema>(attributes, classes);
  std::vector<Instance> rows;
  const int n = pick(shape.min_instances, shape.max_instances);
  for (int i = 0; i < n; ++i) {
    Instance inst;
    for (const auto& attr : schema->attributes()) {
      inst.values.push_back(static_cast<std::uint32_t>(pick(0, static_cast<int>(attr.domain.size()) - 1)));
    }
    inst.behavior = static_cast<std::uint32_t>(pick(0, ncls - 1));
    rows.push_back(std::move(inst));
  }
  return Dataset(schema, std::move(rows));
}

// Every non-empty antecedent over distinct attributes, every class; keeps the
// rules with support >= min_support and support/coverage >= t. Counting is a
// plain scan of the rows for each candidate.
inline std::vector<Rule> brute_force_cars(const Dataset& ds, const Ratio& t, std::uint64_t min_support = 1) {
  const auto& schema = ds.schema();
  const std::size_t na = schema.attribute_count();
  std::vector<Rule> out;
  // choice[a] == 0 means attribute a unused, else value index + 1
  std::vector<std::size_t> choice(na, 0);
  while (true) {
    std::size_t i = 0;
    while (i < na && ++choice[i] > schema.attributes()[i].domain.size()) choice[i++] = 0;
    if (i == na) break;
    std::vector<Condition> conds;
    for (std::size_t a = 0; a < na; ++a) {
      if (choice[a] != 0) conds.push_back({schema.attributes()[a].name, schema.attributes()[a].domain[choice[a] - 1]});
    }
    std::uint64_t coverage = 0;
    std::vector<std::uint64_t> per_class(schema.class_count(), 0);
    for (std::size_t r = 0; r < ds.size(); ++r) {
      bool match = true;
      for (std::size_t a = 0; a < na && match; ++a) {
        if (choice[a] != 0 && ds.instances()[r].values[a] != choice[a] - 1) match = false;
      }
      if (!match) continue;
      ++coverage;
      ++per_class[ds.instances()[r].behavior];
    }
    if (coverage == 0) continue;
    for (std::size_t c = 0; c < per_class.size(); ++c) {
      const std::uint64_t s = per_class[c];
      if (s < min_support) continue;
      // s / coverage >= t.num / t.den
      if (static_cast<unsigned __int128>(s) * t.den < static_cast<unsigned __int128>(t.num) * coverage) continue;
      out.push_back({make_antecedent(conds), schema.behavior_classes()[c], s, coverage});
    }
  }
  return out;
}

inline std::vector<Rule> sorted(std::vector<Rule> rules) {
  std::sort(rules.begin(), rules.end(), rule_less);
  return rules;
}

}  // namespace testsupport
