#pragma once

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ctxmine/datamodel.hpp"

namespace ctxmine {

inline constexpr std::string_view kAccept = "Accept";
inline constexpr std::string_view kReject = "Reject";
inline constexpr std::string_view kMissed = "Missed";
inline constexpr std::string_view kOutgoing = "Outgoing";
inline constexpr std::string_view kUnknownValue = "Unknown";
inline constexpr std::string_view kUnsegmented = "Unsegmented";

/// The behavior classes of a call log, in schema order.
std::vector<std::string> call_behavior_classes();

using Timestamp = std::chrono::sys_seconds;

/// Parses "YYYY-MM-DD hh:mm:ss" (a 'T' may replace the space; '/' or ':' may
/// replace '-' in the date). Rejects impossible calendar dates.
std::optional<Timestamp> parse_timestamp(std::string_view text);
std::string format_timestamp(Timestamp ts);

/// "Monday" ... "Sunday".
std::string_view day_name(std::chrono::weekday day);
std::optional<std::chrono::weekday> parse_day_name(std::string_view name);

struct RawCallRecord {
  std::size_t line = 0;  // 1-based line in the source file, for diagnostics
  Timestamp timestamp{};
  std::string call_type;  // incoming | outgoing | missed (case-insensitive)
  std::int64_t duration_seconds = 0;
  std::map<std::string, std::string> context;
};

/// incoming with duration > 0 is Accept, incoming with duration 0 is Reject,
/// missed is Missed, outgoing is Outgoing. Throws IngestError naming the line
/// for any other call type or a negative duration.
std::string derive_behavior(const RawCallRecord& rec);

/// A labelled span [start, end) of one weekday, in minutes since midnight.
struct TimeSegment {
  std::chrono::weekday day;
  int start_minute = 0;
  int end_minute = 0;

  [[nodiscard]] std::string label() const;  // Friday[09:00-11:00]
  friend bool operator==(const TimeSegment&, const TimeSegment&) = default;
};

/// Parses "Friday[09:00-11:00]". End may be 24:00.
std::optional<TimeSegment> parse_segment_label(std::string_view label);

enum class SegmentationMode { weekday_hour_bucket, weekday_only, custom_boundaries };

struct SegmentationConfig {
  SegmentationMode mode = SegmentationMode::weekday_hour_bucket;
  int bucket_hours = 2;
  std::vector<TimeSegment> segments;  // custom_boundaries only

  /// bucket_hours must divide 24; custom segments must be non-empty spans
  /// inside the day and must not overlap on the same weekday.
  void validate() const;
};

/// Label for the segment containing `ts`. Intervals are half-open. In custom
/// mode an instant outside every segment maps to kUnsegmented.
std::string segment_timestamp(Timestamp ts, const SegmentationConfig& cfg);

/// Every label the configuration can produce (excluding kUnsegmented), in
/// week order starting Monday; custom segments keep their configured order.
std::vector<std::string> segment_labels(const SegmentationConfig& cfg);

struct ColumnMapping {
  std::string timestamp_col = "timestamp";
  std::string type_col = "call_type";
  std::string duration_col = "duration";
  /// Columns copied through as context attributes; all remaining columns in
  /// header order when unset.
  std::optional<std::vector<std::string>> context_cols;
  char delimiter = ',';
  std::string time_attribute = "Time";
};

struct IngestConfig {
  ColumnMapping mapping;
  SegmentationConfig segmentation;
  bool strict = false;  // abort on the first bad row instead of skipping it
};

/// key = value lines; '#' starts a comment. Keys: timestamp_col, type_col,
/// duration_col, context_cols, delimiter, time_attribute, segmentation,
/// bucket_hours, segments, strict. Throws ConfigError.
IngestConfig parse_ingest_config(std::istream& in);
IngestConfig load_ingest_config(const std::filesystem::path& path);

struct IngestSummary {
  std::size_t rows_read = 0;
  std::size_t instances = 0;
  std::size_t skipped = 0;
  std::size_t unsegmented = 0;
  std::vector<std::pair<std::size_t, std::string>> skipped_rows;  // (line, reason)
  std::vector<std::pair<std::string, std::size_t>> cardinalities;

  void print(std::ostream& out) const;
  [[nodiscard]] std::string to_json() const;
};

struct LoadResult {
  Dataset dataset;
  IngestSummary summary;
};

/// Reads a delimited call log with a header row. The Time attribute comes
/// first, followed by the context columns; empty cells become kUnknownValue.
/// Domains are the observed values: time labels in week order, other values
/// sorted. Throws ConfigError for unmapped columns and IngestError for bad
/// rows in strict mode or when no row survives.
LoadResult load_log(std::istream& in, const IngestConfig& cfg);
LoadResult load_log(const std::filesystem::path& path, const IngestConfig& cfg);

/// Canonical categorical dataset file: "#attribute,<name>,<values...>" and
/// "#classes,<labels...>" lines declaring the schema, a header of attribute
/// names plus "Behavior", then one row per instance.
void write_dataset(std::ostream& out, const Dataset& ds, char delim = ',');

/// Reads a canonical dataset file. Without schema lines the domains and class
/// list are inferred in order of first appearance. Throws SchemaError.
Dataset read_dataset(std::istream& in, char delim = ',');
Dataset read_dataset(const std::filesystem::path& path, char delim = ',');

}  // namespace ctxmine
