#include "hq/symbolic.hpp"

#include <ostream>
#include <vector>

#include "hq/error.hpp"

namespace hq {

Rational make_rational(const Integer& num, const Integer& den) {
  if (den == 0) throw DomainError("rational with zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

Rational parse_rational(std::string_view text) {
  std::string s(text);
  auto slash = s.find('/');
  Integer num, den = 1;
  try {
    if (slash == std::string::npos) {
      num = Integer(s, 10);
    } else {
      num = Integer(s.substr(0, slash), 10);
      den = Integer(s.substr(slash + 1), 10);
    }
  } catch (const std::invalid_argument&) {
    throw DomainError("not a rational number: '" + s + "'");
  }
  return make_rational(num, den);
}

std::string to_string(const Integer& x) { return x.get_str(10); }

std::string to_string(const Rational& x) { return x.get_str(10); }

bool is_integer(const Rational& x) { return x.get_den() == 1; }

std::string to_string(Weight w) {
  if (w.is_zero()) return "0";
  std::string out;
  auto term = [&out](std::int64_t c, const char* sym) {
    if (c == 0) return;
    if (!out.empty()) out += c < 0 ? "-" : "+";
    else if (c < 0) out += "-";
    std::int64_t m = c < 0 ? -c : c;
    if (m != 1) out += std::to_string(m) + "*";
    out += sym;
  };
  term(w.a, "t1");
  term(w.b, "t2");
  return out;
}

std::ostream& operator<<(std::ostream& os, Weight w) { return os << to_string(w); }

Rational specialize(Weight w, const RationalPoint& z) {
  return Rational(Integer(static_cast<long>(w.a))) * z.first +
         Rational(Integer(static_cast<long>(w.b))) * z.second;
}

Rational elementary_symmetric(std::span<const Rational> values, int j) {
  if (j < 0) return 0;
  if (static_cast<std::size_t>(j) > values.size()) return 0;
  // e[i] after processing a prefix; standard one-pass recurrence.
  std::vector<Rational> e(j + 1, Rational(0));
  e[0] = 1;
  for (const auto& v : values) {
    for (int i = j; i >= 1; --i) e[i] += e[i - 1] * v;
  }
  return e[j];
}

std::vector<Integer> signed_chern_classes(std::span<const Integer> plus_roots,
                                          std::span<const Integer> minus_roots, int max_degree) {
  std::vector<Integer> c(max_degree + 1, Integer(0));
  c[0] = 1;
  for (const auto& x : plus_roots) {
    for (int j = max_degree; j >= 1; --j) c[j] += c[j - 1] * x;
  }
  // Dividing by (1 + x s) in ascending order.
  for (const auto& x : minus_roots) {
    for (int j = 1; j <= max_degree; ++j) c[j] -= c[j - 1] * x;
  }
  return c;
}

Integer binomial(const Integer& n, long k) {
  if (k < 0) return 0;
  Integer num = 1, den = 1;
  for (long i = 0; i < k; ++i) {
    num *= n - i;
    den *= i + 1;
  }
  return num / den;
}

}  // namespace hq
