#pragma once

// Scalar policy for the two numeric modes.
//
// Exact mode uses GMP rationals: every comparison is decided exactly and
// decimal strings round-trip losslessly. Float mode uses double with a fixed
// strictness margin; comparisons that fall inside the margin either count as
// ties (tolerant_sign) or raise NumericallyAmbiguous (strict_sign).

#include <gmpxx.h>

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <string>
#include <string_view>
#include <system_error>

#include "wss/error.hpp"

namespace wss {

using Rational = mpq_class;

template <class S>
struct Numeric;

template <>
struct Numeric<Rational> {
  static constexpr bool exact = true;
  static constexpr std::string_view mode_name = "rational";

  static int tolerant_sign(const Rational& x) { return sgn(x); }
  static int strict_sign(const Rational& x, std::string_view /*what*/) { return sgn(x); }

  static Rational abs(const Rational& x) { return Rational(::abs(x)); }
  static double to_double(const Rational& x) { return x.get_d(); }
  static Rational from_double(double x) { return Rational(x); }

  // Accepts "0.99", "-1.5e-3", "15/29", "7".
  static Rational parse(std::string_view text) {
    std::string s(text);
    if (s.empty()) throw ArgumentError("empty numeric string");
    if (auto slash = s.find('/'); slash != std::string::npos) {
      mpz_class num, den;
      if (num.set_str(s.substr(0, slash), 10) != 0 || den.set_str(s.substr(slash + 1), 10) != 0)
        throw ArgumentError("malformed fraction '" + s + "'");
      if (den == 0) throw ArgumentError("zero denominator in '" + s + "'");
      Rational r(num, den);
      r.canonicalize();
      return r;
    }
    std::size_t i = 0;
    bool negative = false;
    if (s[i] == '+' || s[i] == '-') negative = s[i++] == '-';
    std::string digits;
    long exponent = 0;
    bool any_digit = false;
    for (; i < s.size() && std::isdigit(static_cast<unsigned char>(s[i])); ++i) {
      digits += s[i];
      any_digit = true;
    }
    if (i < s.size() && s[i] == '.') {
      for (++i; i < s.size() && std::isdigit(static_cast<unsigned char>(s[i])); ++i) {
        digits += s[i];
        --exponent;
        any_digit = true;
      }
    }
    if (!any_digit) throw ArgumentError("malformed decimal '" + s + "'");
    if (i < s.size() && (s[i] == 'e' || s[i] == 'E')) {
      ++i;
      long e = 0;
      auto [ptr, ec] = std::from_chars(s.data() + i, s.data() + s.size(), e);
      if (ec != std::errc() || ptr == s.data() + i) throw ArgumentError("malformed exponent in '" + s + "'");
      i = static_cast<std::size_t>(ptr - s.data());
      exponent += e;
    }
    if (i != s.size()) throw ArgumentError("trailing characters in '" + s + "'");
    mpz_class mantissa(digits, 10);
    if (negative) mantissa = -mantissa;
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(exponent < 0 ? -exponent : exponent));
    Rational r = exponent < 0 ? Rational(mantissa, scale) : Rational(mantissa * scale);
    r.canonicalize();
    return r;
  }

  // Terminating values print as plain decimals; anything else as "num/den".
  static std::string format(const Rational& value) {
    mpz_class den = value.get_den();
    unsigned long twos = mpz_remove(den.get_mpz_t(), den.get_mpz_t(), mpz_class(2).get_mpz_t());
    unsigned long fives = mpz_remove(den.get_mpz_t(), den.get_mpz_t(), mpz_class(5).get_mpz_t());
    if (den != 1) return value.get_num().get_str() + "/" + value.get_den().get_str();
    unsigned long places = twos > fives ? twos : fives;
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, places);
    mpz_class scaled = value.get_num() * scale / value.get_den();
    bool negative = scaled < 0;
    if (negative) scaled = -scaled;
    std::string digits = scaled.get_str();
    if (places > 0) {
      if (digits.size() <= places) digits.insert(0, places - digits.size() + 1, '0');
      digits.insert(digits.size() - places, ".");
    }
    return negative ? "-" + digits : digits;
  }
};

template <>
struct Numeric<double> {
  static constexpr bool exact = false;
  static constexpr std::string_view mode_name = "float";
  static constexpr double margin = 1e-12;

  static int tolerant_sign(double x) { return x > margin ? 1 : (x < -margin ? -1 : 0); }

  static int strict_sign(double x, std::string_view what) {
    if (std::fabs(x) <= margin)
      throw NumericallyAmbiguous("numerically ambiguous comparison: " + std::string(what));
    return x > 0 ? 1 : -1;
  }

  static double abs(double x) { return std::fabs(x); }
  static double to_double(double x) { return x; }
  static double from_double(double x) { return x; }

  static double parse(std::string_view text) {
    if (text.find('/') != std::string_view::npos) return Numeric<Rational>::parse(text).get_d();
    double v = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc() || ptr != text.data() + text.size())
      throw ArgumentError("malformed decimal '" + std::string(text) + "'");
    return v;
  }

  static std::string format(double value) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
    return std::string(buf, ptr);
  }
};

template <class S>
concept Scalar = requires { Numeric<S>::exact; };

template <Scalar S>
S ipow(S base, unsigned exponent) {
  S result(1);
  while (exponent > 0) {
    if (exponent & 1U) result = result * base;
    base = base * base;
    exponent >>= 1U;
  }
  return result;
}

template <Scalar S>
std::string format_number(const S& value) {
  return Numeric<S>::format(value);
}

template <Scalar S>
S parse_number(std::string_view text) {
  return Numeric<S>::parse(text);
}

}  // namespace wss
