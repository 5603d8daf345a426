#include "alphad/rational.hpp"

#include <charconv>
#include <cmath>
#include <limits>

namespace alphad {

Rational rational_from_double(double value) { return Rational(value); }

double to_double(const Rational& value) { return value.convert_to<double>(); }

std::string to_string(const Rational& value) {
  if (denominator(value) == 1) {
    return numerator(value).str();
  }
  return numerator(value).str() + "/" + denominator(value).str();
}

namespace {

using BigInt = boost::multiprecision::cpp_int;

// Unsigned decimal: digits with an optional fractional part.
std::optional<Rational> parse_decimal(std::string_view text) {
  if (text.empty()) {
    return std::nullopt;
  }
  BigInt mantissa = 0;
  BigInt scale = 1;
  bool seen_point = false;
  bool seen_digit = false;
  for (char ch : text) {
    if (ch == '.') {
      if (seen_point) {
        return std::nullopt;
      }
      seen_point = true;
      continue;
    }
    if (ch < '0' || ch > '9') {
      return std::nullopt;
    }
    seen_digit = true;
    mantissa = mantissa * 10 + (ch - '0');
    if (seen_point) {
      scale *= 10;
    }
  }
  if (!seen_digit) {
    return std::nullopt;
  }
  return Rational(mantissa, scale);
}

}  // namespace

std::optional<Rational> parse_rational(std::string_view text) {
  bool negative = false;
  if (!text.empty() && (text.front() == '-' || text.front() == '+')) {
    negative = text.front() == '-';
    text.remove_prefix(1);
  }
  std::optional<Rational> result;
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    auto num = parse_decimal(text.substr(0, slash));
    auto den = parse_decimal(text.substr(slash + 1));
    if (!num || !den || *den == 0) {
      return std::nullopt;
    }
    result = *num / *den;
  } else {
    result = parse_decimal(text);
  }
  if (result && negative) {
    *result = -*result;
  }
  return result;
}

std::vector<Rational> convergents(double value, std::int64_t max_denominator) {
  std::vector<Rational> out;
  if (!std::isfinite(value)) {
    return out;
  }
  // h/k recurrences over the continued fraction of value.
  BigInt h_prev = 1, h = static_cast<BigInt>(std::floor(value));
  BigInt k_prev = 0, k = 1;
  double frac = value - std::floor(value);
  out.emplace_back(h, k);
  for (int step = 0; step < 64 && frac > 1e-18; ++step) {
    double inv = 1.0 / frac;
    double a = std::floor(inv);
    frac = inv - a;
    BigInt ai = static_cast<BigInt>(a);
    BigInt h_next = ai * h + h_prev;
    BigInt k_next = ai * k + k_prev;
    if (k_next > max_denominator) {
      break;
    }
    h_prev = h;
    h = h_next;
    k_prev = k;
    k = k_next;
    out.emplace_back(h, k);
  }
  return out;
}

double round_significant(double value, int significant) {
  if (value == 0.0 || !std::isfinite(value)) {
    return value;
  }
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::scientific,
                           significant - 1);
  double rounded = 0.0;
  std::from_chars(buf, res.ptr, rounded, std::chars_format::scientific);
  return rounded;
}

std::string format_double(double value, int significant) {
  if (std::isnan(value)) {
    return "nan";
  }
  if (std::isinf(value)) {
    return value > 0 ? "inf" : "-inf";
  }
  double rounded = round_significant(value, significant);
  if (rounded == 0.0) {
    return "0";
  }
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, rounded);
  return std::string(buf, res.ptr);
}

std::string Number::to_string() const {
  return exact ? alphad::to_string(*exact) : format_double(value);
}

}  // namespace alphad
