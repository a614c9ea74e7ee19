#include "ctxmine/datamodel.hpp"

#include <algorithm>
#include <numeric>
#include <tuple>

#include "ctxmine/error.hpp"

namespace ctxmine {

namespace {

constexpr std::uint64_t kFnvOffset = 1469598103934665603ull;
constexpr std::uint64_t kFnvPrime = 1099511628211ull;

void fnv_mix(std::uint64_t& h, std::string_view s) {
  for (unsigned char c : s) {
    h ^= c;
    h *= kFnvPrime;
  }
  // field separator so ("ab","c") != ("a","bc")
  h ^= 0xffu;
  h *= kFnvPrime;
}

}  // namespace

ContextSchema::ContextSchema(std::vector<Attribute> attributes, std::vector<std::string> behavior_classes)
    : attributes_(std::move(attributes)), classes_(std::move(behavior_classes)) {
  if (classes_.empty()) throw SchemaError("schema needs at least one behavior class");
  for (std::uint32_t i = 0; i < classes_.size(); ++i) {
    if (classes_[i].empty()) throw SchemaError("empty behavior class label");
    if (!class_lookup_.emplace(classes_[i], i).second)
      throw SchemaError("duplicate behavior class '" + classes_[i] + "'");
  }

  value_lookup_.resize(attributes_.size());
  for (std::size_t a = 0; a < attributes_.size(); ++a) {
    const auto& attr = attributes_[a];
    if (attr.name.empty()) throw SchemaError("empty attribute name");
    if (!attr_lookup_.emplace(attr.name, a).second) throw SchemaError("duplicate attribute '" + attr.name + "'");
    if (attr.domain.empty()) throw SchemaError("attribute '" + attr.name + "' has an empty domain");
    for (std::uint32_t v = 0; v < attr.domain.size(); ++v) {
      if (attr.domain[v].empty()) throw SchemaError("attribute '" + attr.name + "' has an empty value");
      if (!value_lookup_[a].emplace(attr.domain[v], v).second)
        throw SchemaError("attribute '" + attr.name + "' repeats value '" + attr.domain[v] + "'");
    }
  }
}

std::optional<std::size_t> ContextSchema::find_attribute(std::string_view name) const {
  const auto it = attr_lookup_.find(std::string(name));
  if (it == attr_lookup_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::uint32_t> ContextSchema::find_value(std::size_t attr, std::string_view value) const {
  const auto& map = value_lookup_.at(attr);
  const auto it = map.find(std::string(value));
  if (it == map.end()) return std::nullopt;
  return it->second;
}

std::optional<std::uint32_t> ContextSchema::find_class(std::string_view label) const {
  const auto it = class_lookup_.find(std::string(label));
  if (it == class_lookup_.end()) return std::nullopt;
  return it->second;
}

std::size_t ContextSchema::attribute_index(std::string_view name) const {
  if (auto idx = find_attribute(name)) return *idx;
  throw SchemaError("unknown attribute '" + std::string(name) + "'");
}

std::uint32_t ContextSchema::value_index(std::size_t attr, std::string_view value) const {
  if (auto idx = find_value(attr, value)) return *idx;
  throw SchemaError("value '" + std::string(value) + "' is not in the domain of '" + attributes_.at(attr).name + "'");
}

std::uint32_t ContextSchema::class_index(std::string_view label) const {
  if (auto idx = find_class(label)) return *idx;
  throw SchemaError("unknown behavior class '" + std::string(label) + "'");
}

std::uint64_t ContextSchema::hash() const {
  std::uint64_t h = kFnvOffset;
  for (const auto& attr : attributes_) {
    fnv_mix(h, attr.name);
    for (const auto& v : attr.domain) fnv_mix(h, v);
    fnv_mix(h, "\x1e");
  }
  for (const auto& c : classes_) fnv_mix(h, c);
  return h;
}

bool ContextSchema::same_attributes(const ContextSchema& other) const {
  return std::equal(attributes_.begin(), attributes_.end(), other.attributes_.begin(),
                    [](const Attribute& a, const Attribute& b) { return a.name == b.name && a.domain == b.domain; });
}

Antecedent make_antecedent(std::vector<Condition> conditions) {
  std::sort(conditions.begin(), conditions.end());
  for (std::size_t i = 1; i < conditions.size(); ++i) {
    if (conditions[i].attribute == conditions[i - 1].attribute)
      throw SchemaError("antecedent uses attribute '" + conditions[i].attribute + "' twice");
  }
  return conditions;
}

bool is_subset(const Antecedent& inner, const Antecedent& outer) {
  return std::includes(outer.begin(), outer.end(), inner.begin(), inner.end());
}

std::string to_string(const Antecedent& a) {
  std::string out;
  for (const auto& c : a) {
    if (!out.empty()) out += ", ";
    out += c.attribute + "=" + c.value;
  }
  return out.empty() ? "{}" : out;
}

Dataset::Dataset(std::shared_ptr<const ContextSchema> schema, std::vector<Instance> instances)
    : schema_(std::move(schema)), instances_(std::move(instances)) {
  if (!schema_) throw InvariantViolation("dataset without schema");
  for (const auto& inst : instances_) {
    if (inst.values.size() != schema_->attribute_count())
      throw SchemaError("instance has " + std::to_string(inst.values.size()) + " values, schema has " +
                        std::to_string(schema_->attribute_count()) + " attributes");
    for (std::size_t a = 0; a < inst.values.size(); ++a) {
      if (inst.values[a] >= schema_->attributes()[a].domain.size())
        throw SchemaError("value index out of domain for '" + schema_->attributes()[a].name + "'");
    }
    if (inst.behavior >= schema_->class_count()) throw SchemaError("behavior index out of range");
  }
}

Dataset Dataset::from_records(std::shared_ptr<const ContextSchema> schema, const std::vector<Record>& records) {
  std::vector<Instance> encoded;
  encoded.reserve(records.size());
  for (std::size_t row = 0; row < records.size(); ++row) {
    const auto& rec = records[row];
    if (rec.values.size() != schema->attribute_count()) {
      throw SchemaError("record " + std::to_string(row) + " has " + std::to_string(rec.values.size()) +
                        " values, expected " + std::to_string(schema->attribute_count()));
    }
    Instance inst;
    inst.values.resize(schema->attribute_count());
    for (std::size_t a = 0; a < schema->attribute_count(); ++a) {
      const auto& name = schema->attributes()[a].name;
      const auto it = rec.values.find(name);
      if (it == rec.values.end()) throw SchemaError("record " + std::to_string(row) + " lacks attribute '" + name + "'");
      inst.values[a] = schema->value_index(a, it->second);
    }
    inst.behavior = schema->class_index(rec.behavior);
    encoded.push_back(std::move(inst));
  }
  return Dataset(std::move(schema), std::move(encoded));
}

const std::string& Dataset::value(std::size_t row, std::size_t attr) const {
  return schema_->attributes()[attr].domain[instances_.at(row).values.at(attr)];
}

const std::string& Dataset::behavior(std::size_t row) const {
  return schema_->behavior_classes()[instances_.at(row).behavior];
}

Record Dataset::record(std::size_t row) const {
  Record rec;
  for (std::size_t a = 0; a < schema_->attribute_count(); ++a) rec.values[schema_->attributes()[a].name] = value(row, a);
  rec.behavior = behavior(row);
  return rec;
}

Dataset subset(const Dataset& ds, std::string_view attr, std::string_view value) {
  const auto a = ds.schema().attribute_index(attr);
  const auto v = ds.schema().value_index(a, value);
  std::vector<Instance> kept;
  for (const auto& inst : ds.instances()) {
    if (inst.values[a] == v) kept.push_back(inst);
  }
  return Dataset(ds.schema_ptr(), std::move(kept));
}

std::vector<std::uint64_t> class_counts(const Dataset& ds) {
  std::vector<std::uint64_t> counts(ds.schema().class_count(), 0);
  for (const auto& inst : ds.instances()) ++counts[inst.behavior];
  return counts;
}

RuleStats rule_stats(const Dataset& ds, const Antecedent& antecedent, std::string_view consequent) {
  const auto& schema = ds.schema();
  std::vector<std::pair<std::size_t, std::uint32_t>> tests;
  tests.reserve(antecedent.size());
  for (const auto& c : antecedent) {
    const auto a = schema.attribute_index(c.attribute);
    tests.emplace_back(a, schema.value_index(a, c.value));
  }
  const auto cls = schema.class_index(consequent);

  RuleStats stats;
  for (const auto& inst : ds.instances()) {
    const bool match =
        std::all_of(tests.begin(), tests.end(), [&](const auto& t) { return inst.values[t.first] == t.second; });
    if (!match) continue;
    ++stats.coverage;
    if (inst.behavior == cls) ++stats.support;
  }
  return stats;
}

bool rule_less(const Rule& a, const Rule& b) {
  return std::tie(a.antecedent, a.consequent, a.support, a.coverage) <
         std::tie(b.antecedent, b.consequent, b.support, b.coverage);
}

std::uint64_t fingerprint(const Dataset& ds) {
  const auto& schema = ds.schema();
  std::vector<std::size_t> order(schema.attribute_count());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t x, std::size_t y) { return schema.attributes()[x].name < schema.attributes()[y].name; });

  std::uint64_t h = kFnvOffset;
  for (auto a : order) fnv_mix(h, schema.attributes()[a].name);
  fnv_mix(h, std::to_string(ds.size()));
  for (std::size_t row = 0; row < ds.size(); ++row) {
    for (auto a : order) fnv_mix(h, ds.value(row, a));
    fnv_mix(h, ds.behavior(row));
  }
  return h;
}

}  // namespace ctxmine
