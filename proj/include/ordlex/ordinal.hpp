// Cantor-normal-form ordinals below omega^(omega^omega) and the rank-bound
// combinators for scattered linear orderings.
#ifndef ORDLEX_ORDINAL_HPP
#define ORDLEX_ORDINAL_HPP

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ordlex/errors.hpp"

namespace ordlex {

// Sum of terms w^exponent * coefficient with strictly decreasing exponents,
// most significant first. The empty sum is 0. Exponents are ordinals again;
// nesting depth 2 covers everything below w^(w^w) but deeper values can be
// represented (operations that need the bound validate it explicitly).
class Ordinal {
 public:
  struct Term;

  Ordinal() = default;  // 0
  explicit Ordinal(std::vector<Term> terms);

  static Ordinal finite(std::uint64_t n);
  static Ordinal omega();
  // w^exp * coeff as a single term (coeff >= 1).
  static Ordinal omega_power(Ordinal exp, std::uint64_t coeff = 1);

  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_finite() const;
  std::uint64_t finite_value() const;  // pre: is_finite()
  // Coefficient of the w^0 term (0 when absent).
  std::uint64_t finite_part() const;

  friend bool operator==(const Ordinal& a, const Ordinal& b);

 private:
  std::vector<Term> terms_;
};

struct Ordinal::Term {
  Ordinal exponent;
  std::uint64_t coeff = 1;
  friend bool operator==(const Term& a, const Term& b) {
    return a.coeff == b.coeff && a.exponent == b.exponent;
  }
};

std::strong_ordering cnf_compare(const Ordinal& a, const Ordinal& b);
inline bool operator<(const Ordinal& a, const Ordinal& b) {
  return cnf_compare(a, b) == std::strong_ordering::less;
}
inline bool operator<=(const Ordinal& a, const Ordinal& b) {
  return cnf_compare(a, b) != std::strong_ordering::greater;
}

Ordinal cnf_add(const Ordinal& a, const Ordinal& b);
Ordinal cnf_mul(const Ordinal& a, const Ordinal& b);

// a^w, the limit of the finite powers: 1 for a in {0,1}, w for finite a >= 2,
// w^(b*w) when a has leading exponent b >= 1. a = 0 yields 1 by the
// empty-product convention.
Ordinal omega_pow(const Ordinal& a);

// 1 for 0 and limit ordinals, m_{b+1} = m_b + 1; equals finite_part + 1.
std::uint64_t m_alpha(const Ordinal& a);

// r(w^a) = a.
Ordinal rank_of_omega_power(const Ordinal& a);

// Finite sum: max <= r(A) <= max + 1.
std::pair<Ordinal, Ordinal> rank_sum_bound(const std::vector<Ordinal>& ranks);
// Generalized sum of summands of rank <= inner over an index order of rank
// outer: bound inner + outer.
Ordinal rank_gensum_bound(const Ordinal& inner, const Ordinal& outer);
// Q x P with r(Q) = q, r(P) = p: bound q + p.
Ordinal rank_product_bound(const Ordinal& q, const Ordinal& p);
// Geometric sum of a linear ordering of rank a > 0: bound a * w.
Ordinal rank_geometric_bound(const Ordinal& a);
// Union of suborderings of ranks a, b: min(a+b+m_b, b+a+m_a).
Ordinal rank_union_bound(const Ordinal& a, const Ordinal& b);

// a < w^(w^n)?
bool is_below_tower(const Ordinal& a, int n);
// a < w^(w^w), i.e. every exponent is below w^w.
bool is_below_omega_tower(const Ordinal& a);

// Literal syntax: `w` for omega, `^` power, `*` coefficient/product, `+` sum,
// parentheses for grouping; e.g. "w^(w*2+1)*3 + w^2 + 5". Values are
// normalized through cnf_add/cnf_mul, so non-CNF spellings are accepted.
Ordinal parse_ordinal(std::string_view text);
std::string to_string(const Ordinal& a);

}  // namespace ordlex

#endif
