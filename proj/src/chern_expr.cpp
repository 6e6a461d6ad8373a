#include "hq/chern_expr.hpp"

#include <algorithm>
#include <cctype>
#include <map>

#include "hq/error.hpp"

namespace hq {

int ChernTerm::degree() const {
  int d = h_power;
  for (const auto& f : factors) d += f.degree;
  return d;
}

ChernExpr::ChernExpr(std::vector<ChernTerm> terms) : terms_(std::move(terms)) { normalize(); }

ChernExpr ChernExpr::constant(const Rational& value) { return ChernExpr({ChernTerm{value, {}, 0}}); }

ChernExpr ChernExpr::symbol(const std::string& bundle, int degree) {
  if (degree < 0) throw DomainError("negative Chern class index");
  if (degree == 0) return constant(1);
  return ChernExpr({ChernTerm{1, {ChernSymbol{bundle, degree}}, 0}});
}

ChernExpr ChernExpr::hyperplane_power(int power) {
  if (power < 0) throw DomainError("negative power of h");
  return ChernExpr({ChernTerm{1, {}, power}});
}

void ChernExpr::normalize() {
  using Key = std::pair<std::vector<ChernSymbol>, int>;
  std::map<Key, Rational> merged;
  for (auto& t : terms_) {
    // c_0 is the unit.
    std::erase_if(t.factors, [](const ChernSymbol& s) { return s.degree == 0; });
    std::sort(t.factors.begin(), t.factors.end());
    merged[{t.factors, t.h_power}] += t.coefficient;
  }
  terms_.clear();
  for (auto& [key, coeff] : merged) {
    if (coeff != 0) terms_.push_back({coeff, key.first, key.second});
  }
}

std::optional<int> ChernExpr::homogeneous_degree() const {
  if (terms_.empty()) return 0;
  const int d = terms_.front().degree();
  for (const auto& t : terms_)
    if (t.degree() != d) return std::nullopt;
  return d;
}

int ChernExpr::max_degree() const {
  int d = 0;
  for (const auto& t : terms_) d = std::max(d, t.degree());
  return d;
}

std::set<std::string> ChernExpr::bundles() const {
  std::set<std::string> out;
  for (const auto& t : terms_)
    for (const auto& f : t.factors) out.insert(f.bundle);
  return out;
}

bool ChernExpr::uses_hyperplane() const {
  return std::any_of(terms_.begin(), terms_.end(), [](const ChernTerm& t) { return t.h_power > 0; });
}

int ChernExpr::max_index(const std::string& bundle) const {
  int m = 0;
  for (const auto& t : terms_)
    for (const auto& f : t.factors)
      if (f.bundle == bundle) m = std::max(m, f.degree);
  return m;
}

void ChernExpr::validate(const std::set<std::string>& declared, bool allow_hyperplane) const {
  for (const auto& b : bundles()) {
    if (!declared.contains(b)) throw DomainError("unknown bundle id '" + b + "'");
  }
  if (!allow_hyperplane && uses_hyperplane())
    throw DomainError("the hyperplane class h is only defined on the ambient space");
}

std::string ChernExpr::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    const auto& t = terms_[i];
    Rational c = t.coefficient;
    if (i == 0) {
      if (c < 0) out += "-";
    } else {
      out += c < 0 ? " - " : " + ";
    }
    if (c < 0) c = -c;
    std::vector<std::string> parts;
    if (c != 1 || (t.factors.empty() && t.h_power == 0)) parts.push_back(hq::to_string(c));
    for (const auto& f : t.factors) parts.push_back("c" + std::to_string(f.degree) + "(" + f.bundle + ")");
    if (t.h_power == 1) parts.push_back("h");
    if (t.h_power > 1) parts.push_back("h^" + std::to_string(t.h_power));
    for (std::size_t j = 0; j < parts.size(); ++j) {
      if (j) out += "*";
      out += parts[j];
    }
  }
  return out;
}

ChernExpr operator+(const ChernExpr& x, const ChernExpr& y) {
  std::vector<ChernTerm> terms = x.terms_;
  terms.insert(terms.end(), y.terms_.begin(), y.terms_.end());
  return ChernExpr(std::move(terms));
}

ChernExpr operator*(const ChernExpr& x, const ChernExpr& y) {
  std::vector<ChernTerm> terms;
  for (const auto& a : x.terms_) {
    for (const auto& b : y.terms_) {
      ChernTerm t{a.coefficient * b.coefficient, a.factors, a.h_power + b.h_power};
      t.factors.insert(t.factors.end(), b.factors.begin(), b.factors.end());
      terms.push_back(std::move(t));
    }
  }
  return ChernExpr(std::move(terms));
}

ChernExpr operator*(const Rational& s, const ChernExpr& x) {
  std::vector<ChernTerm> terms = x.terms_;
  for (auto& t : terms) t.coefficient *= s;
  return ChernExpr(std::move(terms));
}

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : s_(text) {}

  ChernExpr parse() {
    std::vector<ChernTerm> terms;
    skip_ws();
    if (at_end()) throw ParseError("empty expression", column());
    int sign = 1;
    if (peek() == '+' || peek() == '-') {
      sign = peek() == '-' ? -1 : 1;
      ++pos_;
    }
    while (true) {
      ChernTerm t = term();
      t.coefficient *= sign;
      terms.push_back(std::move(t));
      skip_ws();
      if (at_end()) break;
      if (peek() == '+' || peek() == '-') {
        sign = peek() == '-' ? -1 : 1;
        ++pos_;
        continue;
      }
      throw ParseError(std::string("unexpected '") + peek() + "'", column());
    }
    return ChernExpr(std::move(terms));
  }

 private:
  ChernTerm term() {
    ChernTerm t;
    factor(t);
    while (true) {
      skip_ws();
      if (at_end() || peek() != '*') break;
      ++pos_;
      factor(t);
    }
    return t;
  }

  void factor(ChernTerm& t) {
    skip_ws();
    if (at_end()) throw ParseError("expected a factor", column());
    const char c = peek();
    if (std::isdigit(static_cast<unsigned char>(c))) {
      Integer num(digits(), 10);
      Integer den = 1;
      skip_ws();
      if (!at_end() && peek() == '/') {
        ++pos_;
        skip_ws();
        if (at_end() || !std::isdigit(static_cast<unsigned char>(peek())))
          throw ParseError("expected a denominator", column());
        const int col = column();
        den = Integer(digits(), 10);
        if (den == 0) throw ParseError("zero denominator", col);
      }
      t.coefficient *= make_rational(num, den);
      return;
    }
    if (c == 'h') {
      ++pos_;
      int power = 1;
      skip_ws();
      if (!at_end() && peek() == '^') {
        ++pos_;
        skip_ws();
        if (at_end() || !std::isdigit(static_cast<unsigned char>(peek())))
          throw ParseError("expected an exponent", column());
        power = std::stoi(digits());
      }
      t.h_power += power;
      return;
    }
    if (c == 'c') {
      ++pos_;
      skip_ws();
      if (at_end() || !std::isdigit(static_cast<unsigned char>(peek())))
        throw ParseError("expected a Chern class index", column());
      const int degree = std::stoi(digits());
      skip_ws();
      if (at_end() || peek() != '(') throw ParseError("expected '('", column());
      const int paren = column();
      ++pos_;
      skip_ws();
      if (at_end()) throw ParseError("unclosed '('", paren);
      if (!(std::isalpha(static_cast<unsigned char>(peek())) || peek() == '_'))
        throw ParseError("expected a bundle identifier", column());
      std::string id;
      while (!at_end() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_')) id += s_[pos_++];
      skip_ws();
      if (at_end() || peek() != ')') throw ParseError("unclosed '('", paren);
      ++pos_;
      if (degree > 0) t.factors.push_back({id, degree});
      return;
    }
    throw ParseError(std::string("unexpected '") + c + "'", column());
  }

  std::string digits() {
    std::string out;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) out += s_[pos_++];
    return out;
  }

  void skip_ws() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
  }
  bool at_end() const { return pos_ >= s_.size(); }
  char peek() const { return s_[pos_]; }
  int column() const { return static_cast<int>(pos_) + 1; }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

ChernExpr parse_chern_expr(std::string_view text) { return Parser(text).parse(); }

}  // namespace hq
