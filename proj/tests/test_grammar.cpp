#include "ordlex/grammar.hpp"

#include <algorithm>
#include <deque>
#include <random>

#include "corpus.hpp"
#include "doctest.h"

using namespace ordlex;

namespace {

Word bw(const std::string& bits) { return OrderedAlphabet::binary().parse_word(bits); }

std::vector<std::string> render_all(const Grammar& g, const std::vector<Word>& ws) {
  std::vector<std::string> out;
  for (const auto& w : ws) out.push_back(g.terminals.render(w));
  return out;
}

// Exact membership by a monotone fixpoint over the spans of one word;
// tolerates epsilon productions and cycles of every kind.
bool derives_word(const Grammar& g, const Word& w) {
  const int n = static_cast<int>(g.nonterminals.size());
  const int len = static_cast<int>(w.size());
  // table[x][i][j]: X derives w[i..j)
  std::vector<std::vector<std::vector<char>>> table(
      static_cast<std::size_t>(n),
      std::vector<std::vector<char>>(static_cast<std::size_t>(len) + 1,
                                     std::vector<char>(static_cast<std::size_t>(len) + 1, 0)));
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& p : g.productions)
      for (int i = 0; i <= len; ++i)
        for (int j = i; j <= len; ++j) {
          auto& cell = table[static_cast<std::size_t>(p.lhs)][static_cast<std::size_t>(i)]
                            [static_cast<std::size_t>(j)];
          if (cell) continue;
          // can the RHS cover w[i..j)?
          std::function<bool(std::size_t, int)> fit = [&](std::size_t pos, int at) -> bool {
            if (pos == p.rhs.size()) return at == j;
            const GSym& s = p.rhs[pos];
            if (s.terminal)
              return at < j && w[static_cast<std::size_t>(at)] == s.id && fit(pos + 1, at + 1);
            for (int mid = at; mid <= j; ++mid)
              if (table[static_cast<std::size_t>(s.id)][static_cast<std::size_t>(at)]
                       [static_cast<std::size_t>(mid)] &&
                  fit(pos + 1, mid))
                return true;
            return false;
          };
          if (fit(0, i)) {
            cell = 1;
            changed = true;
          }
        }
  }
  return table[static_cast<std::size_t>(g.start)][0][static_cast<std::size_t>(len)] != 0;
}

std::vector<Word> membership_words(const Grammar& g, int max_len) {
  std::vector<Word> all{Word{}};
  for (std::size_t i = 0; i < all.size(); ++i) {
    if (static_cast<int>(all[i].size()) >= max_len) continue;
    for (int c = 0; c < g.terminals.size(); ++c) {
      Word w = all[i];
      w.push_back(c);
      all.push_back(w);
    }
  }
  std::vector<Word> out;
  for (const auto& w : all)
    if (derives_word(g, w)) out.push_back(w);
  std::sort(out.begin(), out.end(), lex_less);
  return out;
}

// Breadth-first derivation oracle for epsilon-free grammars, where every
// sentential form longer than max_len is prunable.
std::vector<Word> naive_derivation_words(const Grammar& g, int max_len) {
  using Form = std::vector<GSym>;
  std::set<Form> seen;
  std::set<Word> words;
  std::deque<Form> queue;
  queue.push_back({GSym{false, g.start}});
  seen.insert(queue.front());
  while (!queue.empty()) {
    Form f = queue.front();
    queue.pop_front();
    if (f.size() > static_cast<std::size_t>(max_len)) continue;
    std::size_t nt = f.size();
    for (std::size_t i = 0; i < f.size(); ++i)
      if (!f[i].terminal) {
        nt = i;
        break;
      }
    if (nt == f.size()) {
      Word w;
      for (const auto& s : f) w.push_back(s.id);
      words.insert(std::move(w));
      continue;
    }
    for (const auto& p : g.productions) {
      if (p.lhs != f[nt].id) continue;
      Form nf(f.begin(), f.begin() + static_cast<long>(nt));
      nf.insert(nf.end(), p.rhs.begin(), p.rhs.end());
      nf.insert(nf.end(), f.begin() + static_cast<long>(nt) + 1, f.end());
      if (nf.size() > static_cast<std::size_t>(max_len)) continue;
      if (seen.insert(nf).second) queue.push_back(nf);
    }
  }
  std::vector<Word> out(words.begin(), words.end());
  std::sort(out.begin(), out.end(), lex_less);
  return out;
}

Grammar random_grammar(std::mt19937& rng) {
  // small binary grammars, sometimes with epsilon and chain productions
  const int n = 1 + static_cast<int>(rng() % 3);
  Grammar g;
  g.terminals = OrderedAlphabet::binary();
  for (int i = 0; i < n; ++i)
    g.nonterminals.push_back(std::string(1, static_cast<char>('A' + i)));
  int prods = 2 + static_cast<int>(rng() % 4);
  for (int i = 0; i < prods; ++i) {
    Production p;
    p.lhs = static_cast<int>(rng() % static_cast<unsigned>(n));
    int len = static_cast<int>(rng() % 4);  // may be zero: epsilon production
    for (int j = 0; j < len; ++j) {
      if (rng() % 3 == 0)
        p.rhs.push_back({false, static_cast<int>(rng() % static_cast<unsigned>(n))});
      else
        p.rhs.push_back({true, static_cast<int>(rng() % 2)});
    }
    g.productions.push_back(std::move(p));
  }
  return g;
}

}  // namespace

TEST_CASE("parse_grammar") {
  Grammar g = parse_grammar("X -> 0 | 1 X Y\nY -> 0 | 1 Y\n");
  CHECK(g.nonterminals == std::vector<std::string>{"X", "Y"});
  CHECK(g.terminals.size() == 2);
  CHECK(g.productions.size() == 4);

  Grammar r = parse_grammar(corpus::kRationalsGrammar);
  CHECK(r.nonterminals.size() == 1);
  CHECK(r.productions.size() == 3);

  CHECK_THROWS_AS(parse_grammar("S -> T\n"), parse_error);  // undeclared symbol
  CHECK_THROWS_AS(parse_grammar(""), parse_error);

  // round trip
  CHECK(to_text(parse_grammar(to_text(r))) == to_text(r));
}

TEST_CASE("normalize: chains, useless symbols, epsilon") {
  // chain S -> T eliminated
  Grammar chain = parse_grammar("S -> T\nT -> 0\n");
  auto [g1, r1] = normalize(chain);
  CHECK(g1.nonterminals == std::vector<std::string>{"S"});
  REQUIRE(g1.productions.size() == 1);
  CHECK(g1.productions[0].rhs.size() == 1);
  CHECK(r1.chain_productions_removed == 1);

  // already clean grammar unchanged
  Grammar clean = parse_grammar(corpus::kOmegaGrammar);
  auto [g2, r2] = normalize(clean);
  CHECK(to_text(g2) == to_text(clean));
  CHECK(!r2.epsilon_in_language);

  // epsilon elimination reported
  Grammar eps = parse_grammar("S -> | 0 S\n");
  auto [g3, r3] = normalize(eps);
  CHECK(r3.epsilon_in_language);
  CHECK(r3.had_epsilon_productions);
  CHECK(render_all(g3, enumerate_words(g3, 4)) ==
        std::vector<std::string>{"0", "00", "000", "0000"});

  // nothing derivable: canonical empty grammar
  Grammar dead = parse_grammar("S -> 0 T\nT -> 1 T\n");
  auto [g4, r4] = normalize(dead);
  CHECK(g4.nonterminals == std::vector<std::string>{"S"});
  CHECK(g4.productions.empty());
  CHECK(r4.dropped_unproductive == std::vector<std::string>{"T"});
}

TEST_CASE("normalize preserves bounded enumeration on random grammars") {
  std::mt19937 rng(77);
  int nonempty = 0;
  for (int trial = 0; trial < 200; ++trial) {
    Grammar g = random_grammar(rng);
    auto oracle = membership_words(g, 7);
    auto [ng, report] = normalize(g);
    std::vector<Word> got =
        ng.productions.empty() ? std::vector<Word>{} : enumerate_words(ng, 7);
    // the normalized grammar loses only the empty word, which is reported
    std::vector<Word> expect;
    for (const auto& w : oracle)
      if (!w.empty()) expect.push_back(w);
    CHECK(got == expect);
    bool oracle_has_eps = !oracle.empty() && oracle.front().empty();
    CHECK(report.epsilon_in_language == oracle_has_eps);
    if (!oracle.empty()) ++nonempty;
  }
  CHECK(nonempty > 20);
}

TEST_CASE("sccs_and_heights") {
  Grammar g = parse_grammar(corpus::kOmegaOmegaFrontierGrammar);
  GrammarSccs sc = sccs_and_heights(g);
  int x = g.nonterminal_id("X"), y = g.nonterminal_id("Y");
  CHECK(sc.height[static_cast<std::size_t>(y)] == 0);
  CHECK(sc.height[static_cast<std::size_t>(x)] == 1);
  CHECK(sc.recursive[static_cast<std::size_t>(x)]);
  CHECK(sc.recursive[static_cast<std::size_t>(y)]);
  CHECK(sc.scc_id[static_cast<std::size_t>(x)] != sc.scc_id[static_cast<std::size_t>(y)]);

  Grammar self = parse_grammar("S -> 0 | 1 S\n");
  GrammarSccs sc2 = sccs_and_heights(self);
  CHECK(sc2.height[0] == 0);
  CHECK(sc2.recursive[0]);

  // non-recursive singleton SCC
  Grammar line = parse_grammar("S -> 0 T 1\nT -> 0 | 1\n");
  GrammarSccs sc3 = sccs_and_heights(line);
  CHECK(!sc3.recursive[0]);
  CHECK(sc3.height[static_cast<std::size_t>(line.nonterminal_id("S"))] == 1);
  CHECK(sc3.height[static_cast<std::size_t>(line.nonterminal_id("T"))] == 0);
}

TEST_CASE("heights invariants on the corpus") {
  for (const char* text :
       {corpus::kOmegaGrammar, corpus::kRationalsGrammar, corpus::kOmegaOmegaFrontierGrammar,
        "S -> 0 A 1 | 1 B\nA -> 0 | 1 A\nB -> 0 B | 1\n"}) {
    Grammar g = normalize(parse_grammar(text)).first;
    GrammarSccs sc = sccs_and_heights(g);
    auto reaches = [&](int from, int to) {
      std::deque<int> q{from};
      std::set<int> seen{from};
      while (!q.empty()) {
        int v = q.front();
        q.pop_front();
        if (v == to) return true;
        for (const auto& p : g.productions) {
          if (p.lhs != v) continue;
          for (const auto& s : p.rhs)
            if (!s.terminal && seen.insert(s.id).second) q.push_back(s.id);
        }
      }
      return false;
    };
    const int n = static_cast<int>(g.nonterminals.size());
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        if (sc.scc_id[static_cast<std::size_t>(a)] == sc.scc_id[static_cast<std::size_t>(b)])
          CHECK(sc.height[static_cast<std::size_t>(a)] ==
                sc.height[static_cast<std::size_t>(b)]);
        if (reaches(a, b)) {
          CHECK(sc.height[static_cast<std::size_t>(b)] <=
                sc.height[static_cast<std::size_t>(a)]);
          if (sc.height[static_cast<std::size_t>(a)] == sc.height[static_cast<std::size_t>(b)])
            CHECK(sc.scc_id[static_cast<std::size_t>(a)] ==
                  sc.scc_id[static_cast<std::size_t>(b)]);
        }
      }
  }
}

TEST_CASE("detect_left_recursion") {
  Grammar e = parse_grammar("E -> E 0 | 1\n");
  CHECK(detect_left_recursion(e) == std::vector<int>{0});
  CHECK(detect_left_recursion(parse_grammar(corpus::kOmegaGrammar)).empty());
  Grammar m = parse_grammar("A -> B 0\nB -> A 1 | 0\n");
  CHECK(detect_left_recursion(m).size() == 2);
}

TEST_CASE("pumping_prefixes") {
  Grammar g = parse_grammar(corpus::kOmegaOmegaFrontierGrammar);
  auto pumps = pumping_prefixes(g, g.nonterminal_id("X"), 4);
  REQUIRE(!pumps.empty());
  for (const auto& u : pumps) {
    CHECK(!u.empty());
    CHECK(u == bw("1").repeated(static_cast<int>(u.size())));  // powers of "1"
  }

  Grammar r = parse_grammar(corpus::kRationalsGrammar);
  auto rp = pumping_prefixes(r, 0, 2);
  CHECK(std::find(rp.begin(), rp.end(), bw("0")) != rp.end());
  CHECK(std::find(rp.begin(), rp.end(), bw("11")) != rp.end());

  Grammar line = parse_grammar("S -> 0 T 1\nT -> 0 | 1\n");
  CHECK_THROWS_AS(pumping_prefixes(line, 0, 4), input_error);
}

TEST_CASE("primitive_root_of") {
  Grammar g = parse_grammar(corpus::kOmegaOmegaFrontierGrammar);
  auto res = primitive_root_of(g, g.nonterminal_id("X"), 6);
  CHECK(res.root == bw("1"));
  CHECK(!res.violation);

  Grammar r = parse_grammar(corpus::kRationalsGrammar);
  auto rv = primitive_root_of(r, 0, 4);
  REQUIRE(rv.violation);
  CHECK(rv.violation->first == bw("0"));
  CHECK(rv.violation->second == bw("11"));

  Grammar s = parse_grammar("S -> 0 1 S | 0 1 0 1 S | 0\n");
  auto sr = primitive_root_of(s, 0, 4);
  CHECK(sr.root == bw("01"));
  CHECK(!sr.violation);
}

TEST_CASE("refute_scattered") {
  // dense triple on the rationals grammar within depth 3; the canonical
  // witness is the first strict chain in shortlex scan order
  Grammar r = parse_grammar(corpus::kRationalsGrammar);
  auto v = refute_scattered(r, 3);
  REQUIRE(v.kind == ScatterednessVerdict::Kind::RefutedDenseTriple);
  REQUIRE(v.witness.size() == 3);
  CHECK(strict_less(v.witness[0], v.witness[1]));
  CHECK(strict_less(v.witness[1], v.witness[2]));
  CHECK(v.witness[0] == bw("0"));
  CHECK(v.witness[1] == bw("110"));
  CHECK(v.witness[2] == bw("1111"));

  CHECK(refute_scattered(parse_grammar(corpus::kOmegaGrammar), 8).kind ==
        ScatterednessVerdict::Kind::NoWitnessWithinBound);
  CHECK(refute_scattered(parse_grammar(corpus::kOmegaOmegaFrontierGrammar), 8).kind ==
        ScatterednessVerdict::Kind::NoWitnessWithinBound);

  // incomparable pumps refute before a strict triple can be composed; at
  // depth 1 there are exactly two pumps and no triple yet
  Grammar inc = parse_grammar("S -> 0 0 S 1 | 0 1 S | 0\n");
  auto vi = refute_scattered(inc, 1);
  CHECK(vi.kind == ScatterednessVerdict::Kind::RefutedIncomparable);
  REQUIRE(vi.witness.size() == 2);
  CHECK(prefix_compare(vi.witness[0], vi.witness[1]) == PrefixVerdict::Incomparable);
  // one more round composes the pumps into a dense triple
  CHECK(refute_scattered(inc, 3).kind == ScatterednessVerdict::Kind::RefutedDenseTriple);
}

TEST_CASE("check_prefix_property") {
  // (0+11)*01 is not a prefix language: 01 is a proper prefix of 0.11.01
  auto rat = check_prefix_property(parse_grammar(corpus::kRationalsGrammar), 8);
  REQUIRE(!rat.prefix_up_to_bound);
  CHECK(prefix_compare(rat.witness->first, rat.witness->second) ==
        PrefixVerdict::ProperPrefix);
  CHECK(derives_word(parse_grammar(corpus::kRationalsGrammar), rat.witness->first));
  CHECK(derives_word(parse_grammar(corpus::kRationalsGrammar), rat.witness->second));

  // the frontier language of the rationals scheme, (0+11)*10, is prefix
  Grammar fr = parse_grammar("S -> 1 0 | 0 S | 1 1 S\n");
  CHECK(check_prefix_property(fr, 10).prefix_up_to_bound);

  auto bad = check_prefix_property(parse_grammar("S -> 0 | 0 1\n"), 4);
  REQUIRE(!bad.prefix_up_to_bound);
  CHECK(bad.witness->first == bw("0"));
  CHECK(bad.witness->second == bw("01"));
  Grammar empty = normalize(parse_grammar("S -> 0 T\nT -> 1 T\n")).first;
  CHECK(check_prefix_property(empty, 4).prefix_up_to_bound);
}

TEST_CASE("rank_bound_report") {
  Grammar self = parse_grammar("S -> 0 | 1 S\n");
  CHECK(rank_bound_report(self).overall == parse_ordinal("2"));

  Grammar g = parse_grammar(corpus::kOmegaOmegaFrontierGrammar);
  auto r2 = rank_bound_report(g);
  CHECK(r2.per_nonterminal[static_cast<std::size_t>(g.nonterminal_id("X"))] ==
        parse_ordinal("w+1"));
  CHECK(r2.overall == parse_ordinal("w+1"));
}

TEST_CASE("enumerate_words") {
  Grammar omega = parse_grammar(corpus::kOmegaGrammar);
  CHECK(render_all(omega, enumerate_words(omega, 4)) ==
        std::vector<std::string>{"0", "10", "110", "1110"});

  // brute-force expansion of (0+11)*01 up to length 4, lex sorted
  Grammar r = parse_grammar(corpus::kRationalsGrammar);
  CHECK(render_all(r, enumerate_words(r, 4)) ==
        std::vector<std::string>{"0001", "001", "01", "1101"});

  Grammar empty = normalize(parse_grammar("S -> 0 T\nT -> 1 T\n")).first;
  CHECK(empty.productions.empty());
}

TEST_CASE("enumeration agrees with the derivation oracle") {
  for (const char* text : {corpus::kOmegaGrammar, corpus::kRationalsGrammar,
                           corpus::kOmegaOmegaFrontierGrammar}) {
    Grammar g = normalize(parse_grammar(text)).first;
    for (int len = 1; len <= 8; ++len)
      CHECK(enumerate_words(g, len) == naive_derivation_words(g, len));
  }
}

TEST_CASE("enumerate_words is strictly increasing") {
  for (const char* text : {corpus::kOmegaGrammar, corpus::kRationalsGrammar,
                           corpus::kOmegaOmegaFrontierGrammar}) {
    auto ws = enumerate_words(normalize(parse_grammar(text)).first, 9);
    for (std::size_t i = 0; i + 1 < ws.size(); ++i) CHECK(lex_less(ws[i], ws[i + 1]));
  }
}

TEST_CASE("intersect_lex_interval") {
  Grammar omega = parse_grammar(corpus::kOmegaGrammar);
  // lower >= 110: language {1^n 0 : n >= 2}
  Grammar cut = intersect_lex_interval(omega, LexBound{bw("110"), true}, std::nullopt);
  CHECK(render_all(cut, enumerate_words(cut, 6)) ==
        std::vector<std::string>{"110", "1110", "11110", "111110"});

  // no bounds: language unchanged
  Grammar same = intersect_lex_interval(omega, std::nullopt, std::nullopt);
  CHECK(enumerate_words(same, 8) == enumerate_words(omega, 8));

  // contradictory bounds: empty language
  Grammar none =
      intersect_lex_interval(omega, LexBound{bw("110"), false}, LexBound{bw("10"), false});
  CHECK(none.productions.empty());
}

TEST_CASE("intersect_lex_interval equals brute-force filtering") {
  std::mt19937 rng(11);
  std::vector<Grammar> gs = {parse_grammar(corpus::kOmegaGrammar),
                             parse_grammar(corpus::kRationalsGrammar),
                             parse_grammar(corpus::kOmegaOmegaFrontierGrammar)};
  for (const Grammar& g : gs) {
    auto all = enumerate_words(normalize(g).first, 9);
    for (int trial = 0; trial < 12; ++trial) {
      std::optional<LexBound> lo, hi;
      if (rng() % 2 && !all.empty()) lo = LexBound{all[rng() % all.size()], rng() % 2 == 0};
      if (rng() % 2 && !all.empty()) hi = LexBound{all[rng() % all.size()], rng() % 2 == 0};
      Grammar cut = intersect_lex_interval(g, lo, hi);
      std::vector<Word> got =
          cut.productions.empty() ? std::vector<Word>{} : enumerate_words(cut, 9);
      std::vector<Word> expect;
      for (const auto& w : all) {
        if (lo && !(lex_less(lo->word, w) || (lo->inclusive && w == lo->word))) continue;
        if (hi && !(lex_less(w, hi->word) || (hi->inclusive && w == hi->word))) continue;
        expect.push_back(w);
      }
      CHECK(got == expect);
    }
  }
}

TEST_CASE("reverse_order") {
  Grammar omega = parse_grammar(corpus::kOmegaGrammar);
  auto [rev, alpha] = reverse_order(omega);
  auto ws = enumerate_words(rev, 6);
  auto orig = enumerate_words(omega, 6);
  REQUIRE(ws.size() == orig.size());
  for (std::size_t i = 0; i < ws.size(); ++i) {
    Word relabeled;
    for (int c : orig[orig.size() - 1 - i].syms) relabeled.push_back(alpha.size() - 1 - c);
    CHECK(ws[i] == relabeled);
  }

  auto [rone, rone_alpha] = reverse_order(parse_grammar("S -> 0 1 1\n"));
  (void)rone_alpha;
  CHECK(render_all(rone, enumerate_words(rone, 4)) == std::vector<std::string>{"100"});
}

TEST_CASE("decompose_LR") {
  Grammar g = parse_grammar(corpus::kOmegaOmegaFrontierGrammar);
  Decomposition d = decompose_LR(g, g.nonterminal_id("X"), 3, 8);
  CHECK(d.root == bw("1"));
  CHECK(d.violations.empty());
  bool any_r = false;
  std::size_t level0 = 0;
  for (const auto& b : d.buckets) {
    if (b.kind == DecompositionBucket::Kind::R) any_r = true;
    if (b.kind == DecompositionBucket::Kind::L && b.n == 0) level0 += b.words.size();
  }
  CHECK(!any_r);
  CHECK(level0 == 1);  // only the word "0"

  // a grammar with content on both sides of u0^infinity (root "10")
  Grammar both = parse_grammar("S -> 1 0 S | 0 | 1 1\n");
  Decomposition d2 = decompose_LR(both, 0, 3, 8);
  bool has_l = false, has_r = false;
  for (const auto& b : d2.buckets) {
    has_l |= b.kind == DecompositionBucket::Kind::L;
    has_r |= b.kind == DecompositionBucket::Kind::R;
  }
  CHECK(has_l);
  CHECK(has_r);
  CHECK(d2.violations.empty());

  // words needing larger n land in overflow
  Decomposition d3 = decompose_LR(g, g.nonterminal_id("X"), 1, 8);
  CHECK(!d3.overflow.empty());
}

TEST_CASE("inline_singletons") {
  Grammar g = parse_grammar("S -> A S | A\nA -> 0 1\n");
  auto [ng, inlined] = inline_singletons(normalize(g).first);
  CHECK(inlined == std::vector<std::string>{"A"});
  CHECK(ng.nonterminals == std::vector<std::string>{"S"});
  CHECK(render_all(ng, enumerate_words(ng, 6)) ==
        std::vector<std::string>{"01", "0101", "010101"});

  // recursive nonterminals and the start symbol stay
  Grammar keep = normalize(parse_grammar(corpus::kOmegaOmegaFrontierGrammar)).first;
  auto [kg, kin] = inline_singletons(keep);
  CHECK(kin.empty());
  CHECK(kg.nonterminals.size() == keep.nonterminals.size());
}
