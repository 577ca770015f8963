#include "ordlex/ordinal.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace ordlex {

Ordinal::Ordinal(std::vector<Term> terms) : terms_(std::move(terms)) {
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    if (terms_[i].coeff == 0) throw input_error("CNF coefficient must be >= 1");
    if (i > 0 && cnf_compare(terms_[i - 1].exponent, terms_[i].exponent) !=
                     std::strong_ordering::greater)
      throw input_error("CNF exponents must be strictly decreasing");
  }
}

Ordinal Ordinal::finite(std::uint64_t n) {
  if (n == 0) return Ordinal();
  return Ordinal({Term{Ordinal(), n}});
}

Ordinal Ordinal::omega() { return omega_power(finite(1)); }

Ordinal Ordinal::omega_power(Ordinal exp, std::uint64_t coeff) {
  if (coeff == 0) throw input_error("CNF coefficient must be >= 1");
  return Ordinal({Term{std::move(exp), coeff}});
}

bool Ordinal::is_finite() const {
  return terms_.empty() || (terms_.size() == 1 && terms_[0].exponent.is_zero());
}

std::uint64_t Ordinal::finite_value() const {
  if (!is_finite()) throw input_error("ordinal is not finite");
  return terms_.empty() ? 0 : terms_[0].coeff;
}

std::uint64_t Ordinal::finite_part() const {
  if (!terms_.empty() && terms_.back().exponent.is_zero()) return terms_.back().coeff;
  return 0;
}

bool operator==(const Ordinal& a, const Ordinal& b) { return a.terms() == b.terms(); }

std::strong_ordering cnf_compare(const Ordinal& a, const Ordinal& b) {
  const auto& ta = a.terms();
  const auto& tb = b.terms();
  const std::size_t n = std::min(ta.size(), tb.size());
  for (std::size_t i = 0; i < n; ++i) {
    auto ce = cnf_compare(ta[i].exponent, tb[i].exponent);
    if (ce != std::strong_ordering::equal) return ce;
    if (ta[i].coeff != tb[i].coeff)
      return ta[i].coeff < tb[i].coeff ? std::strong_ordering::less
                                       : std::strong_ordering::greater;
  }
  if (ta.size() == tb.size()) return std::strong_ordering::equal;
  // Equal prefix; the longer sum adds smaller terms on the right.
  return ta.size() < tb.size() ? std::strong_ordering::less : std::strong_ordering::greater;
}

Ordinal cnf_add(const Ordinal& a, const Ordinal& b) {
  if (b.is_zero()) return a;
  const Ordinal& lead = b.terms().front().exponent;
  std::vector<Ordinal::Term> out;
  for (const auto& t : a.terms()) {
    auto c = cnf_compare(t.exponent, lead);
    if (c == std::strong_ordering::greater) {
      out.push_back(t);
    } else if (c == std::strong_ordering::equal) {
      // merge with b's leading term
      Ordinal::Term merged{t.exponent, t.coeff + b.terms().front().coeff};
      out.push_back(merged);
      out.insert(out.end(), b.terms().begin() + 1, b.terms().end());
      return Ordinal(std::move(out));
    } else {
      break;  // absorbed
    }
  }
  out.insert(out.end(), b.terms().begin(), b.terms().end());
  return Ordinal(std::move(out));
}

Ordinal cnf_mul(const Ordinal& a, const Ordinal& b) {
  if (a.is_zero() || b.is_zero()) return Ordinal();
  Ordinal acc;
  const Ordinal& lead_exp = a.terms().front().exponent;
  for (const auto& t : b.terms()) {
    if (t.exponent.is_zero()) {
      // a * n = (leading term with coefficient scaled) + rest of a
      std::vector<Ordinal::Term> piece;
      piece.push_back({lead_exp, a.terms().front().coeff * t.coeff});
      piece.insert(piece.end(), a.terms().begin() + 1, a.terms().end());
      acc = cnf_add(acc, Ordinal(std::move(piece)));
    } else {
      // a * w^e * c = w^(lead_exp + e) * c
      acc = cnf_add(acc, Ordinal::omega_power(cnf_add(lead_exp, t.exponent), t.coeff));
    }
  }
  return acc;
}

Ordinal omega_pow(const Ordinal& a) {
  if (a.is_finite()) {
    if (a.finite_value() <= 1) return Ordinal::finite(1);
    return Ordinal::omega();
  }
  const Ordinal& beta = a.terms().front().exponent;
  return Ordinal::omega_power(cnf_mul(beta, Ordinal::omega()));
}

std::uint64_t m_alpha(const Ordinal& a) { return a.finite_part() + 1; }

Ordinal rank_of_omega_power(const Ordinal& a) { return a; }

std::pair<Ordinal, Ordinal> rank_sum_bound(const std::vector<Ordinal>& ranks) {
  if (ranks.empty()) throw input_error("rank_sum_bound: empty list");
  Ordinal mx = ranks.front();
  for (const auto& r : ranks)
    if (mx < r) mx = r;
  return {mx, cnf_add(mx, Ordinal::finite(1))};
}

Ordinal rank_gensum_bound(const Ordinal& inner, const Ordinal& outer) {
  return cnf_add(inner, outer);
}

Ordinal rank_product_bound(const Ordinal& q, const Ordinal& p) { return cnf_add(q, p); }

Ordinal rank_geometric_bound(const Ordinal& a) {
  if (a.is_zero()) throw input_error("rank_geometric_bound requires rank > 0");
  return cnf_mul(a, Ordinal::omega());
}

Ordinal rank_union_bound(const Ordinal& a, const Ordinal& b) {
  Ordinal left = cnf_add(cnf_add(a, b), Ordinal::finite(m_alpha(b)));
  Ordinal right = cnf_add(cnf_add(b, a), Ordinal::finite(m_alpha(a)));
  return left < right ? left : right;
}

bool is_below_tower(const Ordinal& a, int n) {
  if (n < 1) throw input_error("is_below_tower requires n >= 1");
  Ordinal tower = Ordinal::omega_power(Ordinal::omega_power(Ordinal::finite(
      static_cast<std::uint64_t>(n))));
  return a < tower;
}

bool is_below_omega_tower(const Ordinal& a) {
  Ordinal omega_omega = Ordinal::omega_power(Ordinal::omega());
  for (const auto& t : a.terms())
    if (!(t.exponent < omega_omega)) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Literal parser: expr := term (+ term)*, term := factor (* factor)*,
// factor := atom (^ atom)?, atom := 'w' | integer | '(' expr ')'.
// Powers are evaluated for base w (single CNF term) and for finite
// base/exponent pairs; other bases are rejected.

namespace {

struct Parser {
  std::string_view text;
  std::size_t pos = 0;

  void skip() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }
  bool eat(char c) {
    skip();
    if (pos < text.size() && text[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }
  [[noreturn]] void fail(const std::string& msg) {
    throw parse_error("ordinal literal: " + msg + " at position " + std::to_string(pos));
  }

  Ordinal parse_expr() {
    Ordinal acc = parse_term();
    while (eat('+')) acc = cnf_add(acc, parse_term());
    return acc;
  }

  Ordinal parse_term() {
    Ordinal acc = parse_factor();
    while (eat('*')) acc = cnf_mul(acc, parse_factor());
    return acc;
  }

  Ordinal parse_factor() {
    Ordinal base = parse_atom();
    if (!eat('^')) return base;
    Ordinal exp = parse_atom();
    if (base == Ordinal::omega()) return Ordinal::omega_power(exp);
    if (base.is_finite() && exp.is_finite()) {
      std::uint64_t b = base.finite_value(), e = exp.finite_value(), r = 1;
      for (std::uint64_t i = 0; i < e; ++i) {
        if (b != 0 && r > UINT64_MAX / (b ? b : 1)) fail("finite power overflows");
        r *= b;
      }
      return Ordinal::finite(r);
    }
    fail("only w^a and finite^finite powers are supported");
  }

  Ordinal parse_atom() {
    skip();
    if (pos >= text.size()) fail("unexpected end of input");
    char c = text[pos];
    if (c == 'w') {
      ++pos;
      return Ordinal::omega();
    }
    if (c == '(') {
      ++pos;
      Ordinal inner = parse_expr();
      if (!eat(')')) fail("expected ')'");
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::uint64_t v = 0;
      while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
        v = v * 10 + static_cast<std::uint64_t>(text[pos] - '0');
        ++pos;
      }
      return Ordinal::finite(v);
    }
    fail(std::string("unexpected character '") + c + "'");
  }
};

void format_ordinal(std::ostream& out, const Ordinal& a, bool nested) {
  if (a.is_zero()) {
    out << '0';
    return;
  }
  bool first = true;
  for (const auto& t : a.terms()) {
    if (!first) out << (nested ? "+" : " + ");
    first = false;
    if (t.exponent.is_zero()) {
      out << t.coeff;
      continue;
    }
    out << 'w';
    if (!(t.exponent == Ordinal::finite(1))) {
      out << '^';
      bool paren = !(t.exponent.is_finite() || t.exponent == Ordinal::omega());
      if (paren) out << '(';
      format_ordinal(out, t.exponent, true);
      if (paren) out << ')';
    }
    if (t.coeff > 1) out << '*' << t.coeff;
  }
}

}  // namespace

Ordinal parse_ordinal(std::string_view text) {
  Parser p{text};
  Ordinal r = p.parse_expr();
  p.skip();
  if (p.pos != text.size()) p.fail("trailing input");
  return r;
}

std::string to_string(const Ordinal& a) {
  std::ostringstream out;
  format_ordinal(out, a, false);
  return out.str();
}

}  // namespace ordlex
