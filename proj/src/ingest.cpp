#include "ctxmine/ingest.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "ctxmine/csv.hpp"
#include "ctxmine/error.hpp"

namespace ctxmine {

using namespace std::chrono;

namespace {

// indexed by weekday::c_encoding()
constexpr std::array<std::string_view, 7> kDayNames = {"Sunday",   "Monday", "Tuesday", "Wednesday",
                                                       "Thursday", "Friday", "Saturday"};

// Monday first
constexpr std::array<unsigned, 7> kWeekOrder = {1, 2, 3, 4, 5, 6, 0};

std::optional<int> parse_int(std::string_view s) {
  int v = 0;
  const auto* end = s.data() + s.size();
  const auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc{} || ptr != end) return std::nullopt;
  return v;
}

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::tolower(c); });
  return out;
}

std::string hhmm(int minutes) {
  char buf[24];
  std::snprintf(buf, sizeof buf, "%02d:%02d", minutes / 60, minutes % 60);
  return buf;
}

std::optional<int> parse_hhmm(std::string_view s) {
  if (s.size() != 5 || s[2] != ':') return std::nullopt;
  const auto h = parse_int(s.substr(0, 2));
  const auto m = parse_int(s.substr(3, 2));
  if (!h || !m || *h < 0 || *h > 24 || *m < 0 || *m > 59) return std::nullopt;
  if (*h == 24 && *m != 0) return std::nullopt;
  return *h * 60 + *m;
}

std::vector<std::string> split_list(std::string_view s) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in{std::string(s)};
  while (std::getline(in, item, ',')) {
    auto t = csv::trim(item);
    if (!t.empty()) out.push_back(std::move(t));
  }
  return out;
}

}  // namespace

std::vector<std::string> call_behavior_classes() {
  return {std::string(kAccept), std::string(kReject), std::string(kMissed), std::string(kOutgoing)};
}

std::optional<Timestamp> parse_timestamp(std::string_view text) {
  const std::string t = csv::trim(text);
  if (t.size() != 19) return std::nullopt;
  const char sep = t[4];
  if ((sep != '-' && sep != '/' && sep != ':') || t[7] != sep) return std::nullopt;
  if (t[10] != ' ' && t[10] != 'T') return std::nullopt;
  if (t[13] != ':' || t[16] != ':') return std::nullopt;
  const std::string_view v(t);
  const auto y = parse_int(v.substr(0, 4));
  const auto mo = parse_int(v.substr(5, 2));
  const auto d = parse_int(v.substr(8, 2));
  const auto h = parse_int(v.substr(11, 2));
  const auto mi = parse_int(v.substr(14, 2));
  const auto s = parse_int(v.substr(17, 2));
  if (!y || !mo || !d || !h || !mi || !s) return std::nullopt;
  if (*h > 23 || *mi > 59 || *s > 59 || *mo < 1 || *d < 1) return std::nullopt;
  const year_month_day ymd{year{*y}, month{static_cast<unsigned>(*mo)}, day{static_cast<unsigned>(*d)}};
  if (!ymd.ok()) return std::nullopt;
  return sys_days{ymd} + hours{*h} + minutes{*mi} + seconds{*s};
}

std::string format_timestamp(Timestamp ts) {
  const auto day_start = floor<days>(ts);
  const year_month_day ymd{day_start};
  const auto secs = (ts - day_start).count();
  char buf[96];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02u %02lld:%02lld:%02lld", static_cast<int>(ymd.year()),
                static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()),
                static_cast<long long>(secs / 3600), static_cast<long long>(secs / 60 % 60),
                static_cast<long long>(secs % 60));
  return buf;
}

std::string_view day_name(weekday day) { return kDayNames[day.c_encoding()]; }

std::optional<weekday> parse_day_name(std::string_view name) {
  for (unsigned i = 0; i < kDayNames.size(); ++i) {
    if (kDayNames[i] == name) return weekday{i};
  }
  return std::nullopt;
}

std::string derive_behavior(const RawCallRecord& rec) {
  const auto where = "line " + std::to_string(rec.line) + ": ";
  if (rec.duration_seconds < 0) throw IngestError(where + "negative call duration");
  const auto type = lower(csv::trim(rec.call_type));
  if (type == "incoming") return std::string(rec.duration_seconds > 0 ? kAccept : kReject);
  if (type == "missed") return std::string(kMissed);
  if (type == "outgoing") return std::string(kOutgoing);
  throw IngestError(where + "unknown call type '" + rec.call_type + "'");
}

std::string TimeSegment::label() const {
  return std::string(day_name(day)) + "[" + hhmm(start_minute) + "-" + hhmm(end_minute) + "]";
}

std::optional<TimeSegment> parse_segment_label(std::string_view label) {
  const auto open = label.find('[');
  if (open == std::string_view::npos || label.size() < open + 13 || label.back() != ']') return std::nullopt;
  const auto day = parse_day_name(label.substr(0, open));
  const auto body = label.substr(open + 1, label.size() - open - 2);
  if (!day || body.size() != 11 || body[5] != '-') return std::nullopt;
  const auto start = parse_hhmm(body.substr(0, 5));
  const auto end = parse_hhmm(body.substr(6, 5));
  if (!start || !end || *start >= *end) return std::nullopt;
  return TimeSegment{*day, *start, *end};
}

void SegmentationConfig::validate() const {
  switch (mode) {
    case SegmentationMode::weekday_hour_bucket:
      if (bucket_hours < 1 || bucket_hours > 24 || 24 % bucket_hours != 0)
        throw ConfigError("bucket_hours must be a positive divisor of 24, got " + std::to_string(bucket_hours));
      break;
    case SegmentationMode::weekday_only:
      break;
    case SegmentationMode::custom_boundaries: {
      if (segments.empty()) throw ConfigError("custom segmentation needs at least one segment");
      for (std::size_t i = 0; i < segments.size(); ++i) {
        const auto& s = segments[i];
        if (s.start_minute < 0 || s.end_minute > 24 * 60 || s.start_minute >= s.end_minute)
          throw ConfigError("segment " + s.label() + " is not a span within one day");
        for (std::size_t j = 0; j < i; ++j) {
          const auto& o = segments[j];
          if (o.day == s.day && s.start_minute < o.end_minute && o.start_minute < s.end_minute)
            throw ConfigError("segments " + o.label() + " and " + s.label() + " overlap");
        }
      }
      break;
    }
  }
}

std::string segment_timestamp(Timestamp ts, const SegmentationConfig& cfg) {
  const auto day_start = floor<days>(ts);
  const weekday wd{day_start};
  const int minute = static_cast<int>(duration_cast<minutes>(ts - day_start).count());
  switch (cfg.mode) {
    case SegmentationMode::weekday_only:
      return std::string(day_name(wd));
    case SegmentationMode::weekday_hour_bucket: {
      const int width = cfg.bucket_hours * 60;
      const int start = minute / width * width;
      return TimeSegment{wd, start, start + width}.label();
    }
    case SegmentationMode::custom_boundaries:
      for (const auto& s : cfg.segments) {
        if (s.day == wd && s.start_minute <= minute && minute < s.end_minute) return s.label();
      }
      return std::string(kUnsegmented);
  }
  throw InvariantViolation("unhandled segmentation mode");
}

std::vector<std::string> segment_labels(const SegmentationConfig& cfg) {
  std::vector<std::string> labels;
  switch (cfg.mode) {
    case SegmentationMode::weekday_only:
      for (auto d : kWeekOrder) labels.emplace_back(kDayNames[d]);
      break;
    case SegmentationMode::weekday_hour_bucket: {
      const int width = cfg.bucket_hours * 60;
      for (auto d : kWeekOrder) {
        for (int start = 0; start < 24 * 60; start += width) labels.push_back(TimeSegment{weekday{d}, start, start + width}.label());
      }
      break;
    }
    case SegmentationMode::custom_boundaries:
      for (const auto& s : cfg.segments) labels.push_back(s.label());
      break;
  }
  return labels;
}

IngestConfig parse_ingest_config(std::istream& in) {
  IngestConfig cfg;
  std::string line;
  std::size_t lineno = 0;
  while (csv::read_line(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const auto text = csv::trim(line);
    if (text.empty()) continue;
    const auto eq = text.find('=');
    if (eq == std::string::npos) throw ConfigError("config line " + std::to_string(lineno) + ": expected key = value");
    const auto key = csv::trim(std::string_view(text).substr(0, eq));
    const auto value = csv::trim(std::string_view(text).substr(eq + 1));
    const auto bad = [&](const std::string& why) {
      return ConfigError("config line " + std::to_string(lineno) + " (" + key + "): " + why);
    };

    if (key == "timestamp_col") {
      cfg.mapping.timestamp_col = value;
    } else if (key == "type_col") {
      cfg.mapping.type_col = value;
    } else if (key == "duration_col") {
      cfg.mapping.duration_col = value;
    } else if (key == "context_cols") {
      cfg.mapping.context_cols = split_list(value);
    } else if (key == "time_attribute") {
      if (value.empty()) throw bad("empty attribute name");
      cfg.mapping.time_attribute = value;
    } else if (key == "delimiter") {
      if (value == "tab" || value == "\\t") {
        cfg.mapping.delimiter = '\t';
      } else if (value == "comma") {
        cfg.mapping.delimiter = ',';
      } else if (value == "semicolon") {
        cfg.mapping.delimiter = ';';
      } else if (value.size() == 1) {
        cfg.mapping.delimiter = value[0];
      } else {
        throw bad("delimiter must be a single character, 'tab', 'comma' or 'semicolon'");
      }
    } else if (key == "segmentation") {
      if (value == "weekday-hour-bucket") {
        cfg.segmentation.mode = SegmentationMode::weekday_hour_bucket;
      } else if (value == "weekday-only") {
        cfg.segmentation.mode = SegmentationMode::weekday_only;
      } else if (value == "custom-boundaries") {
        cfg.segmentation.mode = SegmentationMode::custom_boundaries;
      } else {
        throw bad("unknown segmentation mode '" + value + "'");
      }
    } else if (key == "bucket_hours") {
      const auto v = parse_int(value);
      if (!v) throw bad("not an integer");
      cfg.segmentation.bucket_hours = *v;
    } else if (key == "segments") {
      cfg.segmentation.segments.clear();
      for (const auto& item : split_list(value)) {
        const auto seg = parse_segment_label(item);
        if (!seg) throw bad("malformed segment '" + item + "', expected Day[hh:mm-hh:mm]");
        cfg.segmentation.segments.push_back(*seg);
      }
    } else if (key == "strict") {
      if (value != "true" && value != "false") throw bad("expected true or false");
      cfg.strict = value == "true";
    } else {
      throw ConfigError("config line " + std::to_string(lineno) + ": unknown key '" + key + "'");
    }
  }
  cfg.segmentation.validate();
  return cfg;
}

IngestConfig load_ingest_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  return parse_ingest_config(in);
}

void IngestSummary::print(std::ostream& out) const {
  out << "rows_read: " << rows_read << '\n';
  out << "instances: " << instances << '\n';
  out << "skipped: " << skipped << '\n';
  out << "unsegmented: " << unsegmented << '\n';
  for (const auto& [name, n] : cardinalities) out << "cardinality." << name << ": " << n << '\n';
  for (const auto& [line, why] : skipped_rows) out << "skipped.line " << line << ": " << why << '\n';
}

std::string IngestSummary::to_json() const {
  nlohmann::ordered_json j;
  j["rows_read"] = rows_read;
  j["instances"] = instances;
  j["skipped"] = skipped;
  j["unsegmented"] = unsegmented;
  j["cardinalities"] = nlohmann::ordered_json::object();
  for (const auto& [name, n] : cardinalities) j["cardinalities"][name] = n;
  j["skipped_rows"] = nlohmann::ordered_json::array();
  for (const auto& [line, why] : skipped_rows) j["skipped_rows"].push_back({{"line", line}, {"reason", why}});
  return j.dump(2);
}

LoadResult load_log(std::istream& in, const IngestConfig& cfg) {
  cfg.segmentation.validate();
  const auto& map = cfg.mapping;
  const char delim = map.delimiter;

  std::string line;
  std::size_t lineno = 0;
  std::vector<std::string> header;
  while (csv::read_line(in, line)) {
    ++lineno;
    if (csv::trim(line).empty()) continue;
    auto fields = csv::split_line(line, delim);
    if (!fields) throw IngestError("line " + std::to_string(lineno) + ": unterminated quote in header");
    for (auto& f : *fields) f = csv::trim(f);
    header = std::move(*fields);
    break;
  }
  if (header.empty()) throw IngestError("call log has no header row");

  const auto column = [&](const std::string& name) -> std::size_t {
    const auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) throw ConfigError("mapped column '" + name + "' is not in the header");
    return static_cast<std::size_t>(it - header.begin());
  };
  const auto ts_col = column(map.timestamp_col);
  const auto type_col = column(map.type_col);
  const auto dur_col = column(map.duration_col);

  std::vector<std::string> context_names;
  if (map.context_cols) {
    context_names = *map.context_cols;
  } else {
    for (std::size_t i = 0; i < header.size(); ++i) {
      if (i != ts_col && i != type_col && i != dur_col && !header[i].empty()) context_names.push_back(header[i]);
    }
  }
  std::vector<std::size_t> context_idx;
  for (const auto& name : context_names) {
    if (name == map.time_attribute) throw ConfigError("context column '" + name + "' collides with the time attribute");
    context_idx.push_back(column(name));
  }
  {
    std::set<std::string> unique(context_names.begin(), context_names.end());
    if (unique.size() != context_names.size()) throw ConfigError("context_cols lists a column twice");
  }

  struct Row {
    std::string time;
    std::vector<std::string> context;
    std::string behavior;
  };
  std::vector<Row> rows;
  IngestSummary summary;

  const auto reject = [&](const std::string& why) {
    if (cfg.strict) throw IngestError("line " + std::to_string(lineno) + ": " + why);
    ++summary.skipped;
    summary.skipped_rows.emplace_back(lineno, why);
  };

  while (csv::read_line(in, line)) {
    ++lineno;
    if (csv::trim(line).empty()) continue;
    ++summary.rows_read;
    const auto fields = csv::split_line(line, delim);
    if (!fields) {
      reject("unterminated quote");
      continue;
    }
    if (fields->size() != header.size()) {
      reject("expected " + std::to_string(header.size()) + " fields, found " + std::to_string(fields->size()));
      continue;
    }

    RawCallRecord rec;
    rec.line = lineno;
    const auto ts = parse_timestamp((*fields)[ts_col]);
    if (!ts) {
      reject("unparseable timestamp '" + (*fields)[ts_col] + "'");
      continue;
    }
    rec.timestamp = *ts;
    rec.call_type = (*fields)[type_col];
    const auto dur_text = csv::trim((*fields)[dur_col]);
    std::int64_t dur = 0;
    const auto [ptr, ec] = std::from_chars(dur_text.data(), dur_text.data() + dur_text.size(), dur);
    if (dur_text.empty() || ec != std::errc{} || ptr != dur_text.data() + dur_text.size() || dur < 0) {
      reject("invalid duration '" + (*fields)[dur_col] + "'");
      continue;
    }
    rec.duration_seconds = dur;

    Row row;
    try {
      row.behavior = derive_behavior(rec);
    } catch (const IngestError& e) {
      if (cfg.strict) throw;
      ++summary.skipped;
      summary.skipped_rows.emplace_back(lineno, e.what());
      continue;
    }
    row.time = segment_timestamp(rec.timestamp, cfg.segmentation);
    if (row.time == kUnsegmented) ++summary.unsegmented;
    for (auto idx : context_idx) {
      auto v = csv::normalize_space((*fields)[idx]);
      row.context.push_back(v.empty() ? std::string(kUnknownValue) : std::move(v));
    }
    rows.push_back(std::move(row));
  }

  if (rows.empty()) throw IngestError("call log contains no valid rows");

  // Time domain in week order, other domains sorted.
  std::vector<Attribute> attributes;
  {
    std::set<std::string> seen;
    for (const auto& r : rows) seen.insert(r.time);
    Attribute time{map.time_attribute, {}};
    for (const auto& label : segment_labels(cfg.segmentation)) {
      if (seen.contains(label)) time.domain.push_back(label);
    }
    if (seen.contains(std::string(kUnsegmented))) time.domain.emplace_back(kUnsegmented);
    if (time.domain.size() != seen.size()) throw InvariantViolation("segment label outside the configured label set");
    attributes.push_back(std::move(time));
  }
  for (std::size_t c = 0; c < context_names.size(); ++c) {
    std::set<std::string> seen;
    for (const auto& r : rows) seen.insert(r.context[c]);
    attributes.push_back({context_names[c], {seen.begin(), seen.end()}});
  }

  auto schema = std::make_shared<const ContextSchema>(std::move(attributes), call_behavior_classes());
  std::vector<Instance> instances;
  instances.reserve(rows.size());
  for (const auto& r : rows) {
    Instance inst;
    inst.values.push_back(schema->value_index(0, r.time));
    for (std::size_t c = 0; c < r.context.size(); ++c) inst.values.push_back(schema->value_index(c + 1, r.context[c]));
    inst.behavior = schema->class_index(r.behavior);
    instances.push_back(std::move(inst));
  }

  summary.instances = instances.size();
  for (const auto& attr : schema->attributes()) summary.cardinalities.emplace_back(attr.name, attr.domain.size());
  return LoadResult{Dataset(std::move(schema), std::move(instances)), std::move(summary)};
}

LoadResult load_log(const std::filesystem::path& path, const IngestConfig& cfg) {
  std::ifstream in(path);
  if (!in) throw IngestError("cannot open call log " + path.string());
  return load_log(in, cfg);
}

void write_dataset(std::ostream& out, const Dataset& ds, char delim) {
  const auto& schema = ds.schema();
  for (const auto& attr : schema.attributes()) {
    std::vector<std::string> fields{"#attribute", attr.name};
    fields.insert(fields.end(), attr.domain.begin(), attr.domain.end());
    csv::write_row(out, fields, delim);
  }
  std::vector<std::string> classes{"#classes"};
  classes.insert(classes.end(), schema.behavior_classes().begin(), schema.behavior_classes().end());
  csv::write_row(out, classes, delim);

  std::vector<std::string> header;
  for (const auto& attr : schema.attributes()) header.push_back(attr.name);
  header.emplace_back("Behavior");
  csv::write_row(out, header, delim);

  std::vector<std::string> row;
  for (std::size_t r = 0; r < ds.size(); ++r) {
    row.clear();
    for (std::size_t a = 0; a < schema.attribute_count(); ++a) row.push_back(ds.value(r, a));
    row.push_back(ds.behavior(r));
    csv::write_row(out, row, delim);
  }
}

Dataset read_dataset(std::istream& in, char delim) {
  std::vector<Attribute> declared;
  std::optional<std::vector<std::string>> declared_classes;
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::string line;
  std::size_t lineno = 0;
  while (csv::read_line(in, line)) {
    ++lineno;
    if (csv::trim(line).empty()) continue;
    auto fields = csv::split_line(line, delim);
    if (!fields) throw SchemaError("line " + std::to_string(lineno) + ": unterminated quote");
    if (!fields->empty() && !(*fields)[0].empty() && (*fields)[0][0] == '#') {
      if ((*fields)[0] == "#attribute") {
        if (fields->size() < 2) throw SchemaError("line " + std::to_string(lineno) + ": #attribute without a name");
        declared.push_back({(*fields)[1], {fields->begin() + 2, fields->end()}});
      } else if ((*fields)[0] == "#classes") {
        declared_classes.emplace(fields->begin() + 1, fields->end());
      }
      continue;
    }
    if (header.empty()) {
      header = std::move(*fields);
      if (header.size() < 1) throw SchemaError("dataset header is empty");
      continue;
    }
    if (fields->size() != header.size())
      throw SchemaError("line " + std::to_string(lineno) + ": expected " + std::to_string(header.size()) + " fields");
    rows.push_back(std::move(*fields));
  }
  if (header.empty()) throw SchemaError("dataset file has no header row");
  const std::size_t n_attr = header.size() - 1;

  std::vector<Attribute> attributes;
  std::vector<std::string> classes;
  if (!declared.empty() || declared_classes) {
    if (declared.size() != n_attr) throw SchemaError("schema lines do not match the header");
    for (std::size_t a = 0; a < n_attr; ++a) {
      const auto it = std::find_if(declared.begin(), declared.end(), [&](const auto& d) { return d.name == header[a]; });
      if (it == declared.end()) throw SchemaError("header column '" + header[a] + "' has no #attribute line");
      attributes.push_back(*it);
    }
    if (!declared_classes) throw SchemaError("missing #classes line");
    classes = *declared_classes;
  } else {
    // infer in first-appearance order
    attributes.resize(n_attr);
    for (std::size_t a = 0; a < n_attr; ++a) attributes[a].name = header[a];
    for (const auto& r : rows) {
      for (std::size_t a = 0; a < n_attr; ++a) {
        auto& dom = attributes[a].domain;
        if (std::find(dom.begin(), dom.end(), r[a]) == dom.end()) dom.push_back(r[a]);
      }
      if (std::find(classes.begin(), classes.end(), r[n_attr]) == classes.end()) classes.push_back(r[n_attr]);
    }
  }

  auto schema = std::make_shared<const ContextSchema>(std::move(attributes), std::move(classes));
  std::vector<Instance> instances;
  instances.reserve(rows.size());
  for (const auto& r : rows) {
    Instance inst;
    for (std::size_t a = 0; a < n_attr; ++a) inst.values.push_back(schema->value_index(a, r[a]));
    inst.behavior = schema->class_index(r[n_attr]);
    instances.push_back(std::move(inst));
  }
  return Dataset(std::move(schema), std::move(instances));
}

Dataset read_dataset(const std::filesystem::path& path, char delim) {
  std::ifstream in(path);
  if (!in) throw SchemaError("cannot open dataset file " + path.string());
  return read_dataset(in, delim);
}

}  // namespace ctxmine
