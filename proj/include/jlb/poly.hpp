#pragma once

#include "jlb/rational.hpp"

#include <map>
#include <string>
#include <vector>

namespace jlb {

/// Sparse multivariate polynomial with rational coefficients. Exponent
/// vectors are stored with trailing zeros trimmed, so constants need no
/// variable count and polynomials in different numbers of variables mix.
class Poly {
 public:
  using Exponents = std::vector<unsigned>;

  Poly() = default;
  Poly(int c) : Poly(Scalar(c)) {}
  Poly(const Scalar& c) {
    if (c != 0) terms_[{}] = c;
  }

  static Poly var(std::size_t i) {
    Poly p;
    Exponents e(i + 1, 0);
    e[i] = 1;
    p.terms_[e] = 1;
    return p;
  }

  const std::map<Exponents, Scalar>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty()); }
  bool is_monomial() const { return terms_.size() == 1; }
  Scalar constant() const {
    auto it = terms_.find({});
    return it == terms_.end() ? Scalar(0) : it->second;
  }

  unsigned degree_in(std::size_t x) const {
    unsigned d = 0;
    for (const auto& [e, c] : terms_)
      if (x < e.size()) d = std::max(d, e[x]);
    return d;
  }

  bool depends_on(std::size_t x) const { return degree_in(x) > 0; }

  /// Coefficients of x^0, x^1, ..., as polynomials free of x.
  std::vector<Poly> coefficients_in(std::size_t x) const {
    std::vector<Poly> out(degree_in(x) + 1);
    for (const auto& [e, c] : terms_) {
      Exponents r = e;
      unsigned k = 0;
      if (x < r.size()) {
        k = r[x];
        r[x] = 0;
      }
      trim(r);
      out[k].add_term(r, c);
    }
    return out;
  }

  /// Value with variables taken from point (missing entries are zero).
  Scalar eval(const std::vector<Scalar>& point) const {
    Scalar s = 0;
    for (const auto& [e, c] : terms_) {
      Scalar t = c;
      for (std::size_t i = 0; i < e.size() && t != 0; ++i)
        for (unsigned k = 0; k < e[i]; ++k) t *= i < point.size() ? point[i] : Scalar(0);
      s += t;
    }
    return s;
  }

  /// Sets variable x to zero.
  Poly zero_out(std::size_t x) const {
    Poly p;
    for (const auto& [e, c] : terms_)
      if (x >= e.size() || e[x] == 0) p.terms_[e] = c;
    return p;
  }

  /// Substitutes x = num/den and multiplies through by den^degree_in(x).
  Poly substitute(std::size_t x, const Poly& num, const Poly& den) const {
    const auto cs = coefficients_in(x);
    const std::size_t deg = cs.size() - 1;
    if (deg == 0) return *this;
    std::vector<Poly> np(deg + 1, Poly(1)), dp(deg + 1, Poly(1));
    for (std::size_t k = 1; k <= deg; ++k) {
      np[k] = np[k - 1] * num;
      dp[k] = dp[k - 1] * den;
    }
    Poly r;
    for (std::size_t k = 0; k <= deg; ++k)
      if (!cs[k].is_zero()) r += cs[k] * np[k] * dp[deg - k];
    return r;
  }

  Poly& operator+=(const Poly& o) {
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
  }
  Poly& operator-=(const Poly& o) {
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
  }
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator-(const Poly& a) { return Poly() - a; }
  friend Poly operator*(const Poly& a, const Poly& b) {
    Poly r;
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_) {
        Exponents e(std::max(ea.size(), eb.size()), 0);
        for (std::size_t i = 0; i < ea.size(); ++i) e[i] += ea[i];
        for (std::size_t i = 0; i < eb.size(); ++i) e[i] += eb[i];
        r.add_term(e, ca * cb);
      }
    return r;
  }
  Poly& operator*=(const Poly& o) { return *this = *this * o; }
  /// Division by a nonzero constant only.
  friend Poly operator/(const Poly& a, const Poly& b) {
    if (!b.is_constant() || b.is_zero()) throw error("polynomial division by a non-constant");
    const Scalar c = b.constant();
    Poly r;
    for (const auto& [e, v] : a.terms_) r.terms_[e] = v / c;
    return r;
  }

  friend bool operator==(const Poly&, const Poly&) = default;

  /// Normalizes the sign so the leading term is positive.
  Poly monic_sign() const {
    if (terms_.empty()) return *this;
    return terms_.rbegin()->second < 0 ? -*this : *this;
  }

  std::string str(const std::vector<std::string>& names) const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
      const auto& [e, c] = *it;
      Scalar mag = c < 0 ? Scalar(-c) : c;
      std::string mono;
      for (std::size_t i = 0; i < e.size(); ++i)
        for (unsigned k = 0; k < e[i]; ++k) mono += (mono.empty() ? "" : "*") + names.at(i);
      std::string coeff = to_string(mag);
      std::string term;
      if (mono.empty()) term = coeff;
      else if (mag == 1) term = mono;
      else term = coeff + "*" + mono;
      if (first) out = (c < 0 ? "-" : "") + term;
      else out += (c < 0 ? " - " : " + ") + term;
      first = false;
    }
    return out;
  }

 private:
  static void trim(Exponents& e) {
    while (!e.empty() && e.back() == 0) e.pop_back();
  }
  void add_term(Exponents e, const Scalar& c) {
    if (c == 0) return;
    trim(e);
    auto [it, inserted] = terms_.emplace(e, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  std::map<Exponents, Scalar> terms_;
};

}  // namespace jlb
