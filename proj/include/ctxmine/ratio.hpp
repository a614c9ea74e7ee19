#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace ctxmine {

/// Exact non-negative rational num/den with den > 0.
///
/// Confidence values and thresholds are kept as ratios of counts so that a
/// comparison like "4/5 >= 80%" is decided by integer cross-multiplication.
/// Ratios are not reduced on construction: a rule confidence of 4/5 keeps its
/// support and coverage counts. Equality and ordering are by value.
struct Ratio {
  std::uint64_t num = 0;
  std::uint64_t den = 1;

  constexpr Ratio() = default;
  Ratio(std::uint64_t numerator, std::uint64_t denominator);

  [[nodiscard]] double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }
  [[nodiscard]] Ratio reduced() const;

  friend std::strong_ordering operator<=>(const Ratio& a, const Ratio& b);
  friend bool operator==(const Ratio& a, const Ratio& b);
};

/// Parses a threshold written as a percentage ("80", "80%", "62.5"), a fraction
/// ("0.8", "1") or an explicit ratio ("4/5"). Values <= 1 without a '%' sign
/// are read as fractions, larger values as percentages. The result is reduced.
/// Throws ConfigError on malformed input.
Ratio parse_ratio(std::string_view text);

/// "83.13%" style rendering with the given number of decimals.
std::string format_percent(const Ratio& r, int decimals = 2);

/// Shortest exact decimal rendering with at least `min_decimals` digits after
/// the point when the ratio terminates within 12 digits ("0.95", "1.00");
/// otherwise "num/den" of the reduced ratio.
std::string format_decimal(const Ratio& r, int min_decimals = 2);

}  // namespace ctxmine
