#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "ctxmine/ratio.hpp"

namespace ctxmine {

/// A nominal context attribute and its declared values. Declaration order of
/// the domain is significant: tree children are created in this order.
struct Attribute {
  std::string name;
  std::vector<std::string> domain;
};

/// Attributes plus the set of behavior class labels. Validated on
/// construction and immutable afterwards.
class ContextSchema {
 public:
  ContextSchema(std::vector<Attribute> attributes, std::vector<std::string> behavior_classes);

  [[nodiscard]] const std::vector<Attribute>& attributes() const { return attributes_; }
  [[nodiscard]] const std::vector<std::string>& behavior_classes() const { return classes_; }
  [[nodiscard]] std::size_t attribute_count() const { return attributes_.size(); }
  [[nodiscard]] std::size_t class_count() const { return classes_.size(); }

  [[nodiscard]] std::optional<std::size_t> find_attribute(std::string_view name) const;
  [[nodiscard]] std::optional<std::uint32_t> find_value(std::size_t attr, std::string_view value) const;
  [[nodiscard]] std::optional<std::uint32_t> find_class(std::string_view label) const;

  // Throwing lookups (SchemaError).
  [[nodiscard]] std::size_t attribute_index(std::string_view name) const;
  [[nodiscard]] std::uint32_t value_index(std::size_t attr, std::string_view value) const;
  [[nodiscard]] std::uint32_t class_index(std::string_view label) const;

  [[nodiscard]] std::uint64_t hash() const;

  friend bool operator==(const ContextSchema& a, const ContextSchema& b) {
    return a.attributes_.size() == b.attributes_.size() && a.classes_ == b.classes_ && a.same_attributes(b);
  }

 private:
  bool same_attributes(const ContextSchema& other) const;

  std::vector<Attribute> attributes_;
  std::vector<std::string> classes_;
  std::unordered_map<std::string, std::size_t> attr_lookup_;
  std::vector<std::unordered_map<std::string, std::uint32_t>> value_lookup_;
  std::unordered_map<std::string, std::uint32_t> class_lookup_;
};

/// One event, encoded against its schema: values[i] indexes the domain of
/// attribute i, behavior indexes the class list.
struct Instance {
  std::vector<std::uint32_t> values;
  std::uint32_t behavior = 0;

  friend bool operator==(const Instance&, const Instance&) = default;
};

/// Name-keyed form of an instance, used at API boundaries.
struct Record {
  std::map<std::string, std::string> values;
  std::string behavior;
};

/// (attribute, value) test. Antecedents are kept sorted by attribute name so
/// that equal condition sets compare equal.
struct Condition {
  std::string attribute;
  std::string value;

  friend auto operator<=>(const Condition&, const Condition&) = default;
};

using Antecedent = std::vector<Condition>;

/// Sorts conditions into canonical order; throws SchemaError when two
/// conditions name the same attribute.
Antecedent make_antecedent(std::vector<Condition> conditions);

/// True when `inner` is a (not necessarily proper) subset of `outer`. Both
/// must be canonical.
bool is_subset(const Antecedent& inner, const Antecedent& outer);

std::string to_string(const Antecedent& a);

/// Immutable ordered collection of instances sharing a schema. Copies share
/// the schema; the empty dataset is legal.
class Dataset {
 public:
  explicit Dataset(std::shared_ptr<const ContextSchema> schema, std::vector<Instance> instances = {});

  /// Validates each record against the schema (every attribute exactly once,
  /// known values and class) and encodes it. Throws SchemaError.
  static Dataset from_records(std::shared_ptr<const ContextSchema> schema, const std::vector<Record>& records);

  [[nodiscard]] const ContextSchema& schema() const { return *schema_; }
  [[nodiscard]] const std::shared_ptr<const ContextSchema>& schema_ptr() const { return schema_; }
  [[nodiscard]] const std::vector<Instance>& instances() const { return instances_; }
  [[nodiscard]] std::size_t size() const { return instances_.size(); }
  [[nodiscard]] bool empty() const { return instances_.empty(); }

  [[nodiscard]] const std::string& value(std::size_t row, std::size_t attr) const;
  [[nodiscard]] const std::string& behavior(std::size_t row) const;
  [[nodiscard]] Record record(std::size_t row) const;

 private:
  std::shared_ptr<const ContextSchema> schema_;
  std::vector<Instance> instances_;
};

/// Instances of `ds` with `attr` = `value`, in original order.
Dataset subset(const Dataset& ds, std::string_view attr, std::string_view value);

/// Per-class instance counts, indexed like schema().behavior_classes().
std::vector<std::uint64_t> class_counts(const Dataset& ds);

/// Support/coverage of "antecedent => consequent". Confidence is undefined when
/// nothing matches the antecedent.
struct RuleStats {
  std::uint64_t support = 0;
  std::uint64_t coverage = 0;

  [[nodiscard]] bool covered() const { return coverage > 0; }
  [[nodiscard]] std::optional<Ratio> confidence() const {
    if (coverage == 0) return std::nullopt;
    return Ratio{support, coverage};
  }
};

RuleStats rule_stats(const Dataset& ds, const Antecedent& antecedent, std::string_view consequent);

/// A class association rule. Confidence is support / coverage.
struct Rule {
  Antecedent antecedent;
  std::string consequent;
  std::uint64_t support = 0;
  std::uint64_t coverage = 0;

  [[nodiscard]] Ratio confidence() const { return Ratio{support, coverage}; }

  friend bool operator==(const Rule&, const Rule&) = default;
};

/// Total order on (antecedent, consequent, support, coverage); used to compare
/// rule sets independent of emission order.
bool rule_less(const Rule& a, const Rule& b);

/// Content hash of a dataset that does not depend on attribute column order or
/// domain declaration order: attribute names sorted, each instance rendered in
/// that order with its class.
std::uint64_t fingerprint(const Dataset& ds);

}  // namespace ctxmine
