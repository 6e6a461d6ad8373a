#pragma once

#include <span>
#include <vector>

#include "hq/symbolic.hpp"

namespace hq {

/// Truncated power series c_0 + c_1 u + ... + c_O u^O in the grading
/// parameter u. Products truncate at the smaller of the two orders.
class USeries {
 public:
  USeries() : c_(1, Rational(0)) {}
  explicit USeries(int order) : c_(order + 1, Rational(0)) {}
  explicit USeries(std::vector<Rational> coefficients);

  static USeries one(int order);

  int order() const { return static_cast<int>(c_.size()) - 1; }
  const Rational& operator[](int n) const { return c_[n]; }
  Rational& operator[](int n) { return c_[n]; }
  std::span<const Rational> coefficients() const { return c_; }

  USeries truncated(int order) const;

  USeries& operator+=(const USeries& o);
  USeries& operator-=(const USeries& o);
  USeries& operator*=(const Rational& s);
  friend USeries operator+(USeries a, const USeries& b) { return a += b; }
  friend USeries operator-(USeries a, const USeries& b) { return a -= b; }
  friend USeries operator*(USeries a, const Rational& s) { return a *= s; }
  friend USeries operator*(const USeries& a, const USeries& b);
  friend bool operator==(const USeries&, const USeries&) = default;

 private:
  std::vector<Rational> c_;
};

/// Laurent polynomial u^low * (c_0 + c_1 u + ...). Used to accumulate
/// localization contributions that carry poles at u = 0.
class ULaurent {
 public:
  ULaurent() = default;
  ULaurent(int low, std::vector<Rational> coefficients);
  /// u^shift * s
  static ULaurent shifted(const USeries& s, int shift);

  int low() const { return low_; }
  int high() const { return low_ + static_cast<int>(c_.size()) - 1; }
  bool empty() const { return c_.empty(); }
  /// Coefficient of u^e; zero outside the stored range.
  Rational coefficient(int e) const;

  ULaurent& operator+=(const ULaurent& o);
  ULaurent& operator*=(const Rational& s);

  /// Drops leading and trailing zero coefficients.
  void normalize();
  /// True when every coefficient of a strictly negative power vanishes.
  bool pole_free() const;

 private:
  int low_ = 0;
  std::vector<Rational> c_;
};

/// Bernoulli number B_n with the convention B_1 = -1/2, from the recurrence
/// sum_{j<=n} C(n+1, j) B_j = 0.
Rational bernoulli(int n);

/// Expansion of (a u) / (1 - e^{-a u}) to order u^order.
USeries todd_series(const Rational& a, int order);
/// Expansion of e^{a u} to order u^order.
USeries exp_series(const Rational& a, int order);

/// Coefficients of log((x)/(1 - e^{-x})) in powers of x; entry 0 is zero.
/// Lets a product of Todd factors be formed from power sums of the weights.
std::vector<Rational> log_todd_coefficients(int order);

/// exp(g) for a series with zero constant term.
USeries series_exp(const USeries& g);
/// log(f) for a series with constant term one.
USeries series_log(const USeries& f);

}  // namespace hq
