#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "ctxmine/datamodel.hpp"
#include "ctxmine/ingest.hpp"
#include "ctxmine/ratio.hpp"

namespace ctxmine {

/// A rule to plant: `weight * n` instances (rounded) match the antecedent and
/// round(target_confidence * quota) of them carry the consequent.
struct PlantedRuleSpec {
  Antecedent antecedent;
  std::string consequent;
  Ratio target_confidence{1, 1};
  double weight = 0.1;
};

/// Deterministic synthetic dataset of n instances.
///
/// Each spec receives an exact quota of antecedent-matching instances; their
/// remaining context values are drawn uniformly but never complete another
/// spec's antecedent, and the non-consequent labels are drawn uniformly from
/// the other classes. Leftover instances match no spec antecedent and draw
/// contexts and classes uniformly. The result is shuffled.
///
/// Throws GenerationError when quotas exceed n, when a quota cannot hold its
/// target confidence within 2 percentage points, when one antecedent contains
/// another, or when rejection sampling cannot avoid the other antecedents.
/// Randomness: std::mt19937_64 seeded with `seed`, with bounded draws done by
/// rejection on the raw 64-bit output so results do not depend on the
/// standard library's distribution implementations.
Dataset generate(const ContextSchema& schema, const std::vector<PlantedRuleSpec>& specs, std::size_t n,
                 std::uint64_t seed);

/// Parsed generator spec file (JSON):
///   { "attributes": [ {"name": "Activity", "values": ["Meeting", ...]},
///                     {"name": "Time", "segments": {"mode": "weekday-hour-bucket", "bucket_hours": 2}} ],
///     "classes": ["Accept", "Reject", "Missed", "Outgoing"],
///     "rules": [ {"if": {"Activity": "Meeting"}, "then": "Reject", "confidence": "0.85", "weight": 0.3} ],
///     "instances": 5000, "seed": 7 }
/// At most one attribute may use "segments"; it becomes the time attribute.
struct SynthSpec {
  ContextSchema schema;
  std::vector<PlantedRuleSpec> rules;
  std::size_t instances = 1000;
  std::uint64_t seed = 0;
  std::optional<std::string> time_attribute;
  SegmentationConfig segmentation;
};

SynthSpec parse_synth_spec(std::string_view json_text);

/// Renders `ds` as a call log readable by load_log with a matching
/// segmentation: columns timestamp, call_type, duration, then the other
/// attributes. Each instance gets a timestamp inside its time label (or
/// anywhere in the week without a time attribute) and a call type/duration
/// that derive_behavior maps back to its class. Requires the classes to be
/// call behaviors. Deterministic in `seed`.
void write_call_log(std::ostream& out, const Dataset& ds, const std::optional<std::string>& time_attribute,
                    std::uint64_t seed, char delim = ',');

}  // namespace ctxmine
