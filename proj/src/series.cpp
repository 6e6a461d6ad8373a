#include "hq/series.hpp"

#include <algorithm>
#include <mutex>

#include "hq/error.hpp"

namespace hq {

USeries::USeries(std::vector<Rational> coefficients) : c_(std::move(coefficients)) {
  if (c_.empty()) c_.emplace_back(0);
}

USeries USeries::one(int order) {
  USeries s(order);
  s[0] = 1;
  return s;
}

USeries USeries::truncated(int order) const {
  USeries out(order);
  for (int n = 0; n <= std::min(order, this->order()); ++n) out[n] = c_[n];
  return out;
}

USeries& USeries::operator+=(const USeries& o) {
  if (o.order() < order()) c_.resize(o.order() + 1);
  for (int n = 0; n <= order(); ++n) c_[n] += o.c_[n];
  return *this;
}

USeries& USeries::operator-=(const USeries& o) {
  if (o.order() < order()) c_.resize(o.order() + 1);
  for (int n = 0; n <= order(); ++n) c_[n] -= o.c_[n];
  return *this;
}

USeries& USeries::operator*=(const Rational& s) {
  for (auto& x : c_) x *= s;
  return *this;
}

USeries operator*(const USeries& a, const USeries& b) {
  const int order = std::min(a.order(), b.order());
  USeries out(order);
  for (int i = 0; i <= order; ++i) {
    if (a.c_[i] == 0) continue;
    for (int j = 0; i + j <= order; ++j) out.c_[i + j] += a.c_[i] * b.c_[j];
  }
  return out;
}

ULaurent::ULaurent(int low, std::vector<Rational> coefficients)
    : low_(low), c_(std::move(coefficients)) {}

ULaurent ULaurent::shifted(const USeries& s, int shift) {
  auto cs = s.coefficients();
  return ULaurent(shift, std::vector<Rational>(cs.begin(), cs.end()));
}

Rational ULaurent::coefficient(int e) const {
  if (c_.empty() || e < low_ || e > high()) return 0;
  return c_[e - low_];
}

ULaurent& ULaurent::operator+=(const ULaurent& o) {
  if (o.c_.empty()) return *this;
  if (c_.empty()) {
    *this = o;
    return *this;
  }
  const int lo = std::min(low_, o.low_);
  const int hi = std::max(high(), o.high());
  if (lo < low_) c_.insert(c_.begin(), low_ - lo, Rational(0));
  low_ = lo;
  c_.resize(hi - lo + 1, Rational(0));
  for (int e = o.low_; e <= o.high(); ++e) c_[e - low_] += o.c_[e - o.low_];
  return *this;
}

ULaurent& ULaurent::operator*=(const Rational& s) {
  for (auto& x : c_) x *= s;
  return *this;
}

void ULaurent::normalize() {
  auto first = std::find_if(c_.begin(), c_.end(), [](const Rational& x) { return x != 0; });
  if (first == c_.end()) {
    c_.clear();
    low_ = 0;
    return;
  }
  low_ += static_cast<int>(first - c_.begin());
  c_.erase(c_.begin(), first);
  while (c_.back() == 0) c_.pop_back();
}

bool ULaurent::pole_free() const {
  for (int e = low_; e < 0 && e <= high(); ++e) {
    if (c_[e - low_] != 0) return false;
  }
  return true;
}

namespace {

std::mutex table_mutex;
std::vector<Rational> bernoulli_table{Rational(1)};
std::vector<Rational> log_todd_table;

void extend_bernoulli(int n) {
  while (static_cast<int>(bernoulli_table.size()) <= n) {
    const int m = static_cast<int>(bernoulli_table.size());
    Rational acc = 0;
    for (int j = 0; j < m; ++j) acc += Rational(binomial(m + 1, j)) * bernoulli_table[j];
    bernoulli_table.push_back(-acc / (m + 1));
  }
}

}  // namespace

Rational bernoulli(int n) {
  if (n < 0) throw DomainError("negative Bernoulli index");
  std::lock_guard lock(table_mutex);
  extend_bernoulli(n);
  return bernoulli_table[n];
}

USeries todd_series(const Rational& a, int order) {
  if (a == 0) throw ZeroWeightError("todd_series of a zero weight");
  if (order < 0) throw DomainError("negative series order");
  USeries out(order);
  Integer fact = 1;
  Rational power = 1;
  for (int n = 0; n <= order; ++n) {
    if (n > 0) {
      fact *= n;
      power *= a;
    }
    Rational b = bernoulli(n);
    if (n % 2 == 1) b = -b;
    out[n] = b * power / Rational(fact);
  }
  return out;
}

USeries exp_series(const Rational& a, int order) {
  if (order < 0) throw DomainError("negative series order");
  USeries out(order);
  out[0] = 1;
  for (int n = 1; n <= order; ++n) out[n] = out[n - 1] * a / n;
  return out;
}

USeries series_exp(const USeries& g) {
  if (g[0] != 0) throw DomainError("series_exp needs a zero constant term");
  const int order = g.order();
  USeries f(order);
  f[0] = 1;
  // n f_n = sum_{m=1}^{n} m g_m f_{n-m}
  for (int n = 1; n <= order; ++n) {
    Rational acc = 0;
    for (int m = 1; m <= n; ++m) {
      if (g[m] != 0) acc += m * g[m] * f[n - m];
    }
    f[n] = acc / n;
  }
  return f;
}

USeries series_log(const USeries& f) {
  if (f[0] != 1) throw DomainError("series_log needs constant term one");
  const int order = f.order();
  USeries g(order);
  // f' = g' f  =>  n g_n = n f_n - sum_{m=1}^{n-1} m g_m f_{n-m}
  for (int n = 1; n <= order; ++n) {
    Rational acc = n * f[n];
    for (int m = 1; m < n; ++m) acc -= m * g[m] * f[n - m];
    g[n] = acc / n;
  }
  return g;
}

std::vector<Rational> log_todd_coefficients(int order) {
  {
    std::lock_guard lock(table_mutex);
    if (static_cast<int>(log_todd_table.size()) > order)
      return {log_todd_table.begin(), log_todd_table.begin() + order + 1};
  }
  // todd_series and bernoulli take the lock themselves.
  USeries logs = series_log(todd_series(Rational(1), order));
  std::lock_guard lock(table_mutex);
  if (static_cast<int>(log_todd_table.size()) <= order) {
    auto cs = logs.coefficients();
    log_todd_table.assign(cs.begin(), cs.end());
  }
  return {log_todd_table.begin(), log_todd_table.begin() + order + 1};
}

}  // namespace hq
