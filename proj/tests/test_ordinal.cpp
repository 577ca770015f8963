#include "ordlex/ordinal.hpp"

#include <random>

#include "doctest.h"

using namespace ordlex;

namespace {

Ordinal O(const char* lit) { return parse_ordinal(lit); }

// n-fold repeated addition; the independent oracle for finite multipliers.
Ordinal mul_by_folding(const Ordinal& a, int n) {
  Ordinal acc;
  for (int i = 0; i < n; ++i) acc = cnf_add(acc, a);
  return acc;
}

// Random CNF value below w^(w^3): exponents are themselves CNF over
// exponents {0,1,2}, i.e. below w^3.
Ordinal random_exponent(std::mt19937& rng) {
  Ordinal e;
  for (int k = 2; k >= 0; --k) {
    if (rng() % 2) continue;
    std::uint64_t c = 1 + rng() % 3;
    e = cnf_add(e, cnf_mul(Ordinal::omega_power(Ordinal::finite(static_cast<std::uint64_t>(k))),
                           Ordinal::finite(c)));
  }
  return e;
}

Ordinal random_below_tower3(std::mt19937& rng) {
  std::vector<Ordinal> exps;
  for (int i = 0; i < 3; ++i)
    if (rng() % 3) exps.push_back(random_exponent(rng));
  Ordinal a;
  for (const auto& e : exps) {
    std::uint64_t c = 1 + rng() % 4;
    a = cnf_add(a, cnf_mul(Ordinal::omega_power(e), Ordinal::finite(c)));
  }
  if (rng() % 2) a = cnf_add(a, Ordinal::finite(rng() % 5));
  return a;
}

}  // namespace

TEST_CASE("literal parsing and printing") {
  CHECK(to_string(O("0")) == "0");
  CHECK(to_string(O("w")) == "w");
  CHECK(to_string(O("w^(w*2+1)*3 + w^2 + 5")) == "w^(w*2+1)*3 + w^2 + 5");
  CHECK(to_string(O("1+w")) == "w");           // normalization through cnf_add
  CHECK(to_string(O("w^w")) == "w^w");
  CHECK(to_string(O("w^(w^w)")) == "w^(w^w)");
  CHECK(to_string(O("2^3")) == "8");
  CHECK_THROWS_AS(O("q"), parse_error);
  CHECK_THROWS_AS(O("w^"), parse_error);
  CHECK_THROWS_AS(O("(w+1)^2"), parse_error);
  // round trip on a few shapes
  for (const char* lit : {"w^2+w+1", "w*7", "w^(w^2*3+w)*2 + w^3 + w + 4"}) {
    CHECK(parse_ordinal(to_string(O(lit))) == O(lit));
  }
}

TEST_CASE("cnf_compare examples") {
  CHECK(cnf_compare(O("w"), O("w")) == std::strong_ordering::equal);
  CHECK(cnf_compare(O("w*2+1"), O("w^2")) == std::strong_ordering::less);
  CHECK(cnf_compare(O("w^w"), O("w^3")) == std::strong_ordering::greater);
  CHECK_THROWS_AS(Ordinal({{Ordinal::finite(1), 1}, {Ordinal::finite(1), 1}}), input_error);
}

TEST_CASE("cnf_add examples") {
  CHECK(cnf_add(O("w"), O("1")) == O("w+1"));
  CHECK(cnf_add(O("1"), O("w")) == O("w"));
  CHECK(cnf_add(O("w^2+w"), O("w*3")) == O("w^2+w*4"));
}

TEST_CASE("cnf_mul examples against the folding oracle") {
  CHECK(cnf_mul(O("w"), O("2")) == mul_by_folding(O("w"), 2));
  CHECK(cnf_mul(O("w"), O("2")) == O("w*2"));
  CHECK(cnf_mul(O("2"), O("w")) == O("w"));
  CHECK(cnf_mul(O("w+1"), O("w")) == O("w^2"));
}

TEST_CASE("omega_pow") {
  CHECK(omega_pow(O("2")) == O("w"));
  CHECK(omega_pow(O("w")) == O("w^w"));
  CHECK(omega_pow(O("w+1")) == O("w^w"));
  CHECK(omega_pow(O("0")) == O("1"));
  CHECK(omega_pow(O("1")) == O("1"));
  CHECK(omega_pow(O("w^w")) == O("w^(w^2)"));
  // oracle for w+1: folded powers (w+1)^n have leading exponent n
  Ordinal p = O("1");
  for (int n = 1; n <= 5; ++n) {
    p = cnf_mul(p, O("w+1"));
    CHECK(p.terms().front().exponent == Ordinal::finite(static_cast<std::uint64_t>(n)));
    CHECK(p < omega_pow(O("w+1")));
  }
}

TEST_CASE("m_alpha") {
  CHECK(m_alpha(O("0")) == 1);
  CHECK(m_alpha(O("w+3")) == 4);
  CHECK(m_alpha(O("w^2")) == 1);
  CHECK(m_alpha(O("5")) == 6);
}

TEST_CASE("rank bound combinators") {
  CHECK(rank_of_omega_power(O("0")) == O("0"));
  CHECK(rank_of_omega_power(O("2")) == O("2"));
  CHECK(rank_of_omega_power(O("w")) == O("w"));

  auto [lo1, hi1] = rank_sum_bound({O("1"), O("1")});
  CHECK(lo1 == O("1"));
  CHECK(hi1 == O("2"));
  auto [lo2, hi2] = rank_sum_bound({O("0")});
  CHECK(lo2 == O("0"));
  CHECK(hi2 == O("1"));
  auto [lo3, hi3] = rank_sum_bound({O("w"), O("3")});
  CHECK(lo3 == O("w"));
  CHECK(hi3 == O("w+1"));
  CHECK_THROWS_AS(rank_sum_bound({}), input_error);

  CHECK(rank_gensum_bound(O("1"), O("1")) == O("2"));
  CHECK(rank_gensum_bound(O("0"), O("w")) == O("w"));
  CHECK(rank_gensum_bound(O("w"), O("2")) == O("w+2"));

  CHECK(rank_product_bound(O("1"), O("1")) == O("2"));
  CHECK(rank_product_bound(O("0"), O("w^2+3")) == O("w^2+3"));
  CHECK(rank_product_bound(O("w"), O("1")) == O("w+1"));

  CHECK(rank_geometric_bound(O("1")) == O("w"));
  CHECK(rank_geometric_bound(O("2")) == O("w"));
  CHECK(rank_geometric_bound(O("w")) == O("w^2"));
  CHECK_THROWS_AS(rank_geometric_bound(O("0")), input_error);

  CHECK(rank_union_bound(O("1"), O("1")) == O("4"));
  CHECK(rank_union_bound(O("0"), O("w^2")) == O("w^2+1"));
  // computed via cnf_add/m_alpha: min{w+2+3, 2+w+1} = w+1
  CHECK(rank_union_bound(O("w"), O("2")) == O("w+1"));
}

TEST_CASE("is_below_tower") {
  CHECK(is_below_tower(O("w^2"), 1));
  CHECK(!is_below_tower(O("w^w"), 1));
  CHECK(is_below_tower(O("w^(w*2)"), 2));
  CHECK(is_below_omega_tower(O("w^(w^3)*2 + w^w")));
}

TEST_CASE("CNF law suite on random triples below w^(w^3)") {
  std::mt19937 rng(31);
  for (int iter = 0; iter < 1500; ++iter) {
    Ordinal a = random_below_tower3(rng), b = random_below_tower3(rng),
            c = random_below_tower3(rng);
    // total order
    int lt = a < b, eq = (a == b), gt = b < a;
    CHECK(lt + eq + gt == 1);
    if (a < b && b < c) CHECK(a < c);
    // associativity
    CHECK(cnf_add(cnf_add(a, b), c) == cnf_add(a, cnf_add(b, c)));
    CHECK(cnf_mul(cnf_mul(a, b), c) == cnf_mul(a, cnf_mul(b, c)));
    // left distributivity
    CHECK(cnf_mul(a, cnf_add(b, c)) == cnf_add(cnf_mul(a, b), cnf_mul(a, c)));
    // strict right monotonicity
    if (b < c) {
      CHECK(cnf_add(a, b) < cnf_add(a, c));
      if (!a.is_zero()) CHECK(cnf_mul(a, b) < cnf_mul(a, c));
    }
    // closure below the tower
    CHECK(is_below_tower(cnf_add(a, b), 3));
    CHECK(is_below_tower(cnf_mul(a, b), 3));
    CHECK(omega_pow(a) <= Ordinal::omega_power(Ordinal::omega_power(Ordinal::finite(3))));
    // folding oracle
    for (int n = 0; n <= 8; ++n)
      CHECK(cnf_mul(a, Ordinal::finite(static_cast<std::uint64_t>(n))) == mul_by_folding(a, n));
    // union bound symmetric
    CHECK(rank_union_bound(a, b) == rank_union_bound(b, a));
  }
}
