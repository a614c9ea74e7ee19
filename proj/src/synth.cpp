#include "ctxmine/synth.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <json.hpp>

#include "ctxmine/csv.hpp"
#include "ctxmine/error.hpp"

namespace ctxmine {

namespace {

class Random {
 public:
  explicit Random(std::uint64_t seed) : engine_(seed) {}

  // uniform in [0, bound)
  std::uint64_t below(std::uint64_t bound) {
    if (bound <= 1) return 0;
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % bound;
    std::uint64_t x;
    do {
      x = engine_();
    } while (x >= limit);
    return x % bound;
  }

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[below(i)]);
  }

 private:
  std::mt19937_64 engine_;
};

using Encoded = std::vector<std::pair<std::size_t, std::uint32_t>>;  // (attr, value)

bool matches(const std::vector<std::uint32_t>& values, const Encoded& ante) {
  return std::all_of(ante.begin(), ante.end(), [&](const auto& c) { return values[c.first] == c.second; });
}

constexpr int kMaxAttempts = 10000;

}  // namespace

Dataset generate(const ContextSchema& schema, const std::vector<PlantedRuleSpec>& specs, std::size_t n,
                 std::uint64_t seed) {
  if (n < 1) throw GenerationError("instance count must be at least 1");
  const auto classes = schema.class_count();

  std::vector<Encoded> antecedents;
  std::vector<std::size_t> quotas;
  std::vector<std::size_t> hits;
  std::size_t planted = 0;
  for (std::size_t i = 0; i < specs.size(); ++i) {
    const auto& s = specs[i];
    const auto name = "planted rule " + std::to_string(i + 1);
    if (s.antecedent.empty()) throw GenerationError(name + " has an empty antecedent");
    Encoded enc;
    for (const auto& c : make_antecedent(s.antecedent)) {
      const auto a = schema.attribute_index(c.attribute);
      enc.emplace_back(a, schema.value_index(a, c.value));
    }
    (void)schema.class_index(s.consequent);
    if (s.target_confidence.num == 0 || s.target_confidence > Ratio{1, 1})
      throw GenerationError(name + ": target confidence must be in (0, 1]");
    if (!(s.weight > 0.0) || !std::isfinite(s.weight)) throw GenerationError(name + ": weight must be positive");
    if (s.target_confidence < Ratio{1, 1} && classes < 2)
      throw GenerationError(name + ": a confidence below 1 needs a second class");

    const auto quota = static_cast<std::size_t>(std::llround(s.weight * static_cast<double>(n)));
    if (quota == 0) throw GenerationError(name + ": weight too small for " + std::to_string(n) + " instances");
    const auto& t = s.target_confidence;
    const std::size_t hit = static_cast<std::size_t>((2 * quota * t.num + t.den) / (2 * t.den));
    if (std::abs(static_cast<double>(hit) / static_cast<double>(quota) - t.to_double()) > 0.02 + 1e-12)
      throw GenerationError(name + ": quota of " + std::to_string(quota) + " cannot hold confidence " +
                            format_percent(t) + " within 2 points");
    antecedents.push_back(std::move(enc));
    quotas.push_back(quota);
    hits.push_back(hit);
    planted += quota;
  }
  if (planted > n)
    throw GenerationError("planted quotas need " + std::to_string(planted) + " instances, only " + std::to_string(n) +
                          " requested");
  for (std::size_t i = 0; i < specs.size(); ++i) {
    for (std::size_t j = 0; j < specs.size(); ++j) {
      if (i != j && is_subset(make_antecedent(specs[j].antecedent), make_antecedent(specs[i].antecedent)))
        throw GenerationError("planted rule " + std::to_string(i + 1) + " contains the antecedent of rule " +
                              std::to_string(j + 1));
    }
  }

  Random rng(seed);
  const auto draw_context = [&](const Encoded* fixed, std::size_t owner) {
    std::vector<std::uint32_t> values(schema.attribute_count());
    for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
      for (std::size_t a = 0; a < values.size(); ++a)
        values[a] = static_cast<std::uint32_t>(rng.below(schema.attributes()[a].domain.size()));
      if (fixed) {
        for (const auto& [a, v] : *fixed) values[a] = v;
      }
      bool clash = false;
      for (std::size_t j = 0; j < antecedents.size() && !clash; ++j) clash = j != owner && matches(values, antecedents[j]);
      if (!clash) return values;
    }
    throw GenerationError("cannot draw contexts that avoid the other planted antecedents");
  };

  std::vector<Instance> instances;
  instances.reserve(n);
  for (std::size_t i = 0; i < specs.size(); ++i) {
    const auto cls = schema.class_index(specs[i].consequent);
    for (std::size_t k = 0; k < quotas[i]; ++k) {
      Instance inst;
      inst.values = draw_context(&antecedents[i], i);
      if (k < hits[i]) {
        inst.behavior = cls;
      } else {
        auto other = static_cast<std::uint32_t>(rng.below(classes - 1));
        inst.behavior = other >= cls ? other + 1 : other;
      }
      instances.push_back(std::move(inst));
    }
  }
  const auto none = std::numeric_limits<std::size_t>::max();
  while (instances.size() < n) {
    Instance inst;
    inst.values = draw_context(nullptr, none);
    inst.behavior = static_cast<std::uint32_t>(rng.below(classes));
    instances.push_back(std::move(inst));
  }
  rng.shuffle(instances);

  auto shared = std::make_shared<const ContextSchema>(schema);
  return Dataset(std::move(shared), std::move(instances));
}

namespace {

using json = nlohmann::json;

std::string ratio_text(const json& j) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_number_integer()) return std::to_string(j.get<long long>());
  if (j.is_number()) {
    // shortest round-trip decimal for doubles like 0.85
    return json(j.get<double>()).dump();
  }
  throw ConfigError("confidence must be a number or string");
}

}  // namespace

SynthSpec parse_synth_spec(std::string_view json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("generator spec is not valid JSON: ") + e.what());
  }
  try {
    std::vector<Attribute> attributes;
    std::optional<std::string> time_attribute;
    SegmentationConfig segmentation;
    for (const auto& a : j.at("attributes")) {
      Attribute attr{a.at("name").get<std::string>(), {}};
      if (a.contains("segments")) {
        if (time_attribute) throw ConfigError("only one attribute may use segments");
        const auto& s = a.at("segments");
        const auto mode = s.value("mode", std::string("weekday-hour-bucket"));
        if (mode == "weekday-hour-bucket") {
          segmentation.mode = SegmentationMode::weekday_hour_bucket;
          segmentation.bucket_hours = s.value("bucket_hours", 2);
        } else if (mode == "weekday-only") {
          segmentation.mode = SegmentationMode::weekday_only;
        } else if (mode == "custom-boundaries") {
          segmentation.mode = SegmentationMode::custom_boundaries;
          for (const auto& label : s.at("segments")) {
            const auto seg = parse_segment_label(label.get<std::string>());
            if (!seg) throw ConfigError("malformed segment '" + label.get<std::string>() + "'");
            segmentation.segments.push_back(*seg);
          }
        } else {
          throw ConfigError("unknown segmentation mode '" + mode + "'");
        }
        segmentation.validate();
        attr.domain = segment_labels(segmentation);
        time_attribute = attr.name;
      } else {
        attr.domain = a.at("values").get<std::vector<std::string>>();
      }
      attributes.push_back(std::move(attr));
    }
    auto classes = j.contains("classes") ? j.at("classes").get<std::vector<std::string>>() : call_behavior_classes();

    SynthSpec spec{ContextSchema(std::move(attributes), std::move(classes)), {}, 1000, 0, time_attribute, segmentation};
    for (const auto& r : j.value("rules", json::array())) {
      PlantedRuleSpec rule;
      std::vector<Condition> conds;
      for (const auto& [name, value] : r.at("if").items()) conds.push_back({name, value.get<std::string>()});
      rule.antecedent = make_antecedent(std::move(conds));
      rule.consequent = r.at("then").get<std::string>();
      rule.target_confidence = parse_ratio(ratio_text(r.at("confidence")));
      rule.weight = r.value("weight", 0.1);
      spec.rules.push_back(std::move(rule));
    }
    spec.instances = j.value("instances", std::size_t{1000});
    spec.seed = j.value("seed", std::uint64_t{0});
    return spec;
  } catch (const json::exception& e) {
    throw ConfigError(std::string("generator spec: ") + e.what());
  }
}

void write_call_log(std::ostream& out, const Dataset& ds, const std::optional<std::string>& time_attribute,
                    std::uint64_t seed, char delim) {
  using namespace std::chrono;
  const auto& schema = ds.schema();
  for (const auto& cls : schema.behavior_classes()) {
    if (cls != kAccept && cls != kReject && cls != kMissed && cls != kOutgoing)
      throw GenerationError("class '" + cls + "' has no call-log encoding");
  }
  std::optional<std::size_t> time_idx;
  if (time_attribute) time_idx = schema.attribute_index(*time_attribute);

  // Per time value: (weekday, start minute, end minute).
  std::vector<TimeSegment> spans;
  if (time_idx) {
    for (const auto& label : schema.attributes()[*time_idx].domain) {
      if (const auto seg = parse_segment_label(label)) {
        spans.push_back(*seg);
      } else if (const auto day = parse_day_name(label)) {
        spans.push_back({*day, 0, 24 * 60});
      } else {
        throw GenerationError("time value '" + label + "' is neither a segment label nor a day name");
      }
    }
  }

  std::vector<std::string> header{"timestamp", "call_type", "duration"};
  for (std::size_t a = 0; a < schema.attribute_count(); ++a) {
    if (a != time_idx) header.push_back(schema.attributes()[a].name);
  }
  csv::write_row(out, header, delim);

  // Monday of the first week
  const sys_days base = sys_days{2004y / September / 13};
  Random rng(seed);
  std::vector<std::string> row;
  for (std::size_t r = 0; r < ds.size(); ++r) {
    TimeSegment span{weekday{static_cast<unsigned>(rng.below(7))}, 0, 24 * 60};
    if (time_idx) span = spans[ds.instances()[r].values[*time_idx]];
    const auto week = static_cast<int>(rng.below(16));
    const auto day_offset = (span.day - Monday).count();
    const auto minute = span.start_minute + static_cast<int>(rng.below(static_cast<std::uint64_t>(span.end_minute - span.start_minute)));
    const auto second = static_cast<int>(rng.below(60));
    const Timestamp ts = base + days{7 * week + static_cast<int>(day_offset)} + minutes{minute} + seconds{second};

    const auto& cls = ds.behavior(r);
    std::string type;
    std::uint64_t duration = 0;
    if (cls == kAccept) {
      type = "incoming";
      duration = 1 + rng.below(900);
    } else if (cls == kReject) {
      type = "incoming";
    } else if (cls == kMissed) {
      type = "missed";
    } else {
      type = "outgoing";
      duration = 1 + rng.below(900);
    }

    row.clear();
    row.push_back(format_timestamp(ts));
    row.push_back(type);
    row.push_back(std::to_string(duration));
    for (std::size_t a = 0; a < schema.attribute_count(); ++a) {
      if (a != time_idx) row.push_back(ds.value(r, a));
    }
    csv::write_row(out, row, delim);
  }
}

}  // namespace ctxmine
