#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace jlb {

/// Exact rational scalar. Always normalized: lowest terms, positive denominator.
using Scalar = boost::multiprecision::cpp_rational;
using Integer = boost::multiprecision::cpp_int;

/// Base for every error this library throws.
struct error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct parse_error : error {
  using error::error;
};

struct dimension_mismatch : error {
  using error::error;
};

struct singular_matrix : error {
  using error::error;
};

inline bool is_zero(const Scalar& x) { return x == 0; }

inline Scalar abs(const Scalar& x) { return x < 0 ? Scalar(-x) : x; }

/// "n" for integers, "p/q" otherwise.
inline std::string to_string(const Scalar& x) {
  const Integer num = boost::multiprecision::numerator(x);
  const Integer den = boost::multiprecision::denominator(x);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

namespace detail {

inline std::optional<Integer> parse_integer(std::string_view s) {
  if (s.empty()) return std::nullopt;
  std::size_t pos = 0;
  if (s[0] == '-' || s[0] == '+') pos = 1;
  if (pos == s.size()) return std::nullopt;
  for (std::size_t i = pos; i < s.size(); ++i)
    if (s[i] < '0' || s[i] > '9') return std::nullopt;
  Integer v(std::string(s.substr(pos)));
  return s[0] == '-' ? Integer(-v) : v;
}

}  // namespace detail

/// Parses "n", "p/q" or a finite decimal such as "-1.25". Throws parse_error.
inline Scalar parse_scalar(std::string_view text) {
  std::string_view s = text;
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    auto num = detail::parse_integer(s.substr(0, slash));
    auto den = detail::parse_integer(s.substr(slash + 1));
    if (!num || !den) throw parse_error("not a rational: '" + std::string(text) + "'");
    if (*den == 0) throw parse_error("zero denominator: '" + std::string(text) + "'");
    return Scalar(*num, *den);
  }
  if (auto dot = s.find('.'); dot != std::string_view::npos) {
    std::string digits = std::string(s.substr(0, dot)) + std::string(s.substr(dot + 1));
    auto frac_len = s.size() - dot - 1;
    auto num = detail::parse_integer(digits);
    if (!num || frac_len == 0) throw parse_error("not a rational: '" + std::string(text) + "'");
    Integer den = boost::multiprecision::pow(Integer(10), static_cast<unsigned>(frac_len));
    return Scalar(*num, den);
  }
  auto v = detail::parse_integer(s);
  if (!v) throw parse_error("not a rational: '" + std::string(text) + "'");
  return Scalar(*v);
}

/// Exact square root if x is the square of a rational, otherwise nullopt.
inline std::optional<Scalar> exact_sqrt(const Scalar& x) {
  if (x < 0) return std::nullopt;
  const Integer num = boost::multiprecision::numerator(x);
  const Integer den = boost::multiprecision::denominator(x);
  Integer rn = boost::multiprecision::sqrt(num);
  Integer rd = boost::multiprecision::sqrt(den);
  if (rn * rn != num || rd * rd != den) return std::nullopt;
  return Scalar(rn, rd);
}

}  // namespace jlb
