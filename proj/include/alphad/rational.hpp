#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace alphad {

/// Arbitrary-precision rational. Expression templates are off so the type
/// behaves like a plain value inside generic code.
using Rational = boost::multiprecision::number<boost::multiprecision::cpp_rational_backend,
                                               boost::multiprecision::et_off>;

/// Exact conversion: every finite double is a dyadic rational.
Rational rational_from_double(double value);

double to_double(const Rational& value);

/// "p" for integers, "p/q" otherwise.
std::string to_string(const Rational& value);

/// Accepts `12`, `1.5`, `.5`, `1/12`, `2.5/3`. Returns nullopt on anything else.
std::optional<Rational> parse_rational(std::string_view text);

/// Continued-fraction convergents of `value` whose denominators stay below
/// `max_denominator`, in order of increasing accuracy.
std::vector<Rational> convergents(double value, std::int64_t max_denominator);

/// Locale-independent shortest representation rounded to `significant` digits.
std::string format_double(double value, int significant = 12);

/// Rounds `value` to `significant` decimal digits (for stable serialization).
double round_significant(double value, int significant = 12);

/// A real quantity that may also be known exactly.
struct Number {
  double value = 0.0;
  std::optional<Rational> exact;

  Number() = default;
  explicit Number(double v) : value(v) {}
  explicit Number(const Rational& r) : value(to_double(r)), exact(r) {}

  [[nodiscard]] bool is_exact() const { return exact.has_value(); }
  /// "p/q" when exact, decimal otherwise.
  [[nodiscard]] std::string to_string() const;

  friend bool operator==(const Number&, const Number&) = default;
};

}  // namespace alphad
