#include "ctxmine/ratio.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>

#include "ctxmine/error.hpp"

namespace ctxmine {

Ratio::Ratio(std::uint64_t numerator, std::uint64_t denominator) : num(numerator), den(denominator) {
  if (den == 0) throw InvariantViolation("ratio with zero denominator");
}

Ratio Ratio::reduced() const {
  const auto g = std::gcd(num, den);
  return g == 0 ? Ratio{0, 1} : Ratio{num / g, den / g};
}

std::strong_ordering operator<=>(const Ratio& a, const Ratio& b) {
  using wide = unsigned __int128;
  const wide lhs = static_cast<wide>(a.num) * b.den;
  const wide rhs = static_cast<wide>(b.num) * a.den;
  if (lhs < rhs) return std::strong_ordering::less;
  if (lhs > rhs) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

bool operator==(const Ratio& a, const Ratio& b) { return (a <=> b) == 0; }

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

std::uint64_t parse_digits(std::string_view digits, std::string_view whole) {
  if (digits.empty() || digits.size() > 18) throw ConfigError("malformed ratio '" + std::string(whole) + "'");
  std::uint64_t v = 0;
  for (char c : digits) {
    if (c < '0' || c > '9') throw ConfigError("malformed ratio '" + std::string(whole) + "'");
    v = v * 10 + static_cast<std::uint64_t>(c - '0');
  }
  return v;
}

}  // namespace

Ratio parse_ratio(std::string_view text) {
  const std::string_view whole = text;
  text = trim(text);
  bool percent = false;
  if (!text.empty() && text.back() == '%') {
    percent = true;
    text = trim(text.substr(0, text.size() - 1));
  }

  if (const auto slash = text.find('/'); slash != std::string_view::npos) {
    if (percent) throw ConfigError("malformed ratio '" + std::string(whole) + "'");
    const auto n = parse_digits(trim(text.substr(0, slash)), whole);
    const auto d = parse_digits(trim(text.substr(slash + 1)), whole);
    if (d == 0) throw ConfigError("zero denominator in '" + std::string(whole) + "'");
    return Ratio{n, d}.reduced();
  }

  const auto dot = text.find('.');
  const std::string_view int_part = text.substr(0, dot);
  const std::string_view frac_part = dot == std::string_view::npos ? std::string_view{} : text.substr(dot + 1);
  if (int_part.empty() && frac_part.empty()) throw ConfigError("malformed ratio '" + std::string(whole) + "'");
  if (frac_part.size() > 12) throw ConfigError("too many decimals in '" + std::string(whole) + "'");

  std::uint64_t scale = 1;
  for (std::size_t i = 0; i < frac_part.size(); ++i) scale *= 10;
  const std::uint64_t ip = int_part.empty() ? 0 : parse_digits(int_part, whole);
  const std::uint64_t fp = frac_part.empty() ? 0 : parse_digits(frac_part, whole);
  Ratio value{ip * scale + fp, scale};
  if (percent || value > Ratio{1, 1}) value.den *= 100;
  return value.reduced();
}

// Rounds half up on the exact value; printf would round the binary double.
std::string format_percent(const Ratio& r, int decimals) {
  decimals = std::clamp(decimals, 0, 12);
  unsigned __int128 scale = 1;
  for (int i = 0; i < decimals; ++i) scale *= 10;
  const unsigned __int128 num = static_cast<unsigned __int128>(r.num) * 100 * scale;
  const unsigned __int128 scaled = (2 * num + r.den) / (2 * static_cast<unsigned __int128>(r.den));
  std::string whole = std::to_string(static_cast<std::uint64_t>(scaled / scale));
  if (decimals > 0) {
    std::string frac = std::to_string(static_cast<std::uint64_t>(scaled % scale));
    frac.insert(0, static_cast<std::size_t>(decimals) - frac.size(), '0');
    whole += "." + frac;
  }
  return whole + "%";
}

std::string format_decimal(const Ratio& r, int min_decimals) {
  const Ratio red = r.reduced();
  std::uint64_t scale = 1;
  int digits = 0;
  while (digits < 12 && red.den != 0 && scale % red.den != 0) {
    scale *= 10;
    ++digits;
  }
  if (scale % red.den != 0) return std::to_string(red.num) + "/" + std::to_string(red.den);

  const std::uint64_t scaled = red.num * (scale / red.den);
  std::string frac = digits == 0 ? std::string{} : std::to_string(scaled % scale);
  frac.insert(0, static_cast<std::size_t>(digits) - frac.size(), '0');
  while (static_cast<int>(frac.size()) < min_decimals) frac.push_back('0');
  std::string out = std::to_string(scaled / scale);
  if (!frac.empty()) out += "." + frac;
  return out;
}

}  // namespace ctxmine
