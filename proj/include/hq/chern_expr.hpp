#pragma once

#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "hq/symbolic.hpp"

namespace hq {

/// The class c_degree(bundle).
struct ChernSymbol {
  std::string bundle;
  int degree = 0;
  friend bool operator==(const ChernSymbol&, const ChernSymbol&) = default;
  friend auto operator<=>(const ChernSymbol&, const ChernSymbol&) = default;
};

struct ChernTerm {
  Rational coefficient = 1;
  std::vector<ChernSymbol> factors;  // sorted
  int h_power = 0;

  int degree() const;
};

/// Formal polynomial in Chern classes of declared bundles and the hyperplane
/// class h of the ambient projective space. Terms are kept merged and sorted,
/// and zero terms are dropped.
class ChernExpr {
 public:
  ChernExpr() = default;
  explicit ChernExpr(std::vector<ChernTerm> terms);

  static ChernExpr constant(const Rational& value);
  static ChernExpr symbol(const std::string& bundle, int degree);
  static ChernExpr hyperplane_power(int power);

  const std::vector<ChernTerm>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  /// Common degree of all terms, or nullopt when mixed. The zero expression
  /// reports degree 0.
  std::optional<int> homogeneous_degree() const;
  int max_degree() const;
  std::set<std::string> bundles() const;
  bool uses_hyperplane() const;
  /// Largest j with c_j(bundle) present.
  int max_index(const std::string& bundle) const;

  /// Throws DomainError naming the first undeclared bundle, or the hyperplane
  /// symbol when it is not allowed.
  void validate(const std::set<std::string>& declared, bool allow_hyperplane) const;

  std::string to_string() const;

  friend ChernExpr operator+(const ChernExpr& x, const ChernExpr& y);
  friend ChernExpr operator*(const ChernExpr& x, const ChernExpr& y);
  friend ChernExpr operator*(const Rational& s, const ChernExpr& x);

  /// Evaluates in any commutative ring R given the values of c_j(bundle) and h.
  template <class R, class ChernFn>
  R evaluate(ChernFn&& chern, const R& h, const R& one) const {
    R total = one * Rational(0);
    for (const auto& t : terms_) {
      R term = one * t.coefficient;
      for (const auto& f : t.factors) term = term * chern(f.bundle, f.degree);
      for (int i = 0; i < t.h_power; ++i) term = term * h;
      total = total + term;
    }
    return total;
  }

 private:
  void normalize();
  std::vector<ChernTerm> terms_;
};

/// Grammar: sum of terms separated by + or -, each term a product (with *)
/// of rational numbers, symbols c<j>(<id>) and powers h or h^<n>.
/// Whitespace is ignored.
ChernExpr parse_chern_expr(std::string_view text);

}  // namespace hq
