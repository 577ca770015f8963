// Context-free grammars over ordered terminal alphabets: normalization,
// strongly connected components and heights, left recursion, pumping-prefix
// search, scatteredness refutation, prefix-property checking, rank bounds,
// L/R decomposition, bounded lexicographic enumeration, and the language
// closure operations (lex interval, reverse).
#ifndef ORDLEX_GRAMMAR_HPP
#define ORDLEX_GRAMMAR_HPP

#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ordlex/ordinal.hpp"
#include "ordlex/words.hpp"

namespace ordlex {

struct GSym {
  bool terminal = false;
  int id = -1;
  friend bool operator==(const GSym& a, const GSym& b) = default;
  friend auto operator<=>(const GSym& a, const GSym& b) = default;
};

struct Production {
  int lhs = -1;
  std::vector<GSym> rhs;
  friend bool operator==(const Production& a, const Production& b) = default;
  friend auto operator<=>(const Production& a, const Production& b) = default;
};

struct Grammar {
  OrderedAlphabet terminals;
  std::vector<std::string> nonterminals;
  int start = 0;
  std::vector<Production> productions;

  int nonterminal_id(std::string_view name) const;
  GSym term(int id) const { return {true, id}; }
  GSym nt(int id) const { return {false, id}; }
};

// File format: productions `Name -> alt | alt` with space-separated symbol
// tokens; optional headers `terminals: 0 < 1` (fixing the terminal order)
// and `start: Name`; `#` comments. Without a terminals header, tokens that
// never appear on a left-hand side are terminals, ordered by first
// appearance. An empty alternate denotes an epsilon production.
Grammar parse_grammar(std::string_view text);
std::string to_text(const Grammar& g);
void validate(const Grammar& g);

struct NormalizeOptions {
  bool drop_unreachable = true;
};

struct NormalizeReport {
  bool epsilon_in_language = false;  // before epsilon elimination
  bool had_epsilon_productions = false;
  int chain_productions_removed = 0;
  std::vector<std::string> dropped_unproductive;
  std::vector<std::string> dropped_unreachable;
};

// Epsilon elimination, chain elimination, useless-symbol removal; language
// preserved except that a nullable start loses the empty word (reported).
// If nothing derivable remains the result is the canonical empty grammar.
std::pair<Grammar, NormalizeReport> normalize(const Grammar& g, NormalizeOptions opts = {});

struct GrammarSccs {
  std::vector<int> scc_id;      // per nonterminal
  std::vector<int> height;     // # SCC classes strictly below
  std::vector<bool> recursive;  // X =>+ pXq
  int scc_count = 0;
};
GrammarSccs sccs_and_heights(const Grammar& g);

// Nonterminals X with X =>+ X q; meaningful for epsilon-free grammars,
// where the leftmost RHS symbol alone decides left recursion.
std::vector<int> detect_left_recursion(const Grammar& g);

// All terminal words u with a derivation X =>+ u X p of at most `depth`
// production applications (breadth-first over leftmost sentential forms,
// deduplicated, terminal prefixes capped by depth times the widest RHS).
// Sorted shortlex. Absence within the bound proves nothing.
std::vector<Word> pumping_prefixes(const Grammar& g, int X, int depth);

struct PrimitiveRootResult {
  std::optional<Word> root;
  // (shortest pump, first offender in shortlex order) when some pump is not
  // a power of the root; such a pair certifies the grammar is not a
  // scattered prefix grammar.
  std::optional<std::pair<Word, Word>> violation;
};
// input_error when X has no nonempty pumping prefix within the bound.
PrimitiveRootResult primitive_root_of(const Grammar& g, int X, int depth);

struct ScatterednessVerdict {
  enum class Kind { RefutedIncomparable, RefutedDenseTriple, NoWitnessWithinBound };
  Kind kind = Kind::NoWitnessWithinBound;
  int depth = 0;
  int nonterminal = -1;       // witness owner for refutations
  std::vector<Word> witness;  // 2 prefix-incomparable pumps, or a strict triple
};
// Dense triples refute unconditionally; incomparable pairs refute prefix
// grammars. Witnesses are canonical: first triple/pair in shortlex scan
// order over each nonterminal's pumps.
ScatterednessVerdict refute_scattered(const Grammar& g, int depth);

struct PrefixPropertyResult {
  bool prefix_up_to_bound = true;
  int max_len = 0;
  int nonterminal = -1;
  std::optional<std::pair<Word, Word>> witness;
};
// Enumerates L(X) up to max_len for every nonterminal; a witness refutes,
// a clean pass confirms the property up to the bound only.
PrefixPropertyResult check_prefix_property(const Grammar& g, int max_len);

struct RankBoundReport {
  std::vector<Ordinal> per_nonterminal;  // w^height + 1
  Ordinal overall;                       // bound of the start symbol
};
RankBoundReport rank_bound_report(const Grammar& g);

// Bottom-up enumeration by word length; requires an epsilon-free grammar.
class EnumerationTable {
 public:
  EnumerationTable(const Grammar& g, int max_len);
  // Words of L(X) up to the table's bound, lexicographically sorted.
  std::vector<Word> words(int X) const;
  int max_len() const { return max_len_; }

 private:
  int max_len_;
  std::vector<std::vector<std::set<Word>>> by_len_;  // [nt][len]
};
std::vector<Word> enumerate_words(const Grammar& g, int max_len);

struct LexBound {
  Word word;
  bool inclusive = false;
};
// L(result) = L(g) restricted to the lex interval; standard product of the
// grammar with the (|bound|+3)-state comparator automaton per bound, then
// normalization.
Grammar intersect_lex_interval(const Grammar& g, const std::optional<LexBound>& lower,
                               const std::optional<LexBound>& upper);

// Relabels terminals through the order-reversing bijection; bounded
// enumerations of the result descend exactly where the input ascended.
std::pair<Grammar, OrderedAlphabet> reverse_order(const Grammar& g);

struct DecompositionBucket {
  enum class Kind { L, R };
  Kind kind = Kind::L;
  int n = 0;
  Word pivot;  // the prefix of u0 the bucket's words abandon (u1 / u0)
  std::vector<Word> words;
};
struct Decomposition {
  Word root;  // u0
  std::vector<DecompositionBucket> buckets;
  std::vector<Word> overflow;  // needs n > n_max, or never leaves u0^infinity
  std::vector<std::string> violations;  // ordering defects found on the sample
};
// Sorts the enumerated words of L(X) into the L(X,n,u1) / R(X,n,u0) buckets
// and checks the bucket ordering facts on the sample.
Decomposition decompose_LR(const Grammar& g, int X, int n_max, int max_len);

// Nonterminals whose language is exactly one word (and which are not the
// start symbol) are substituted away; mirrors the standing assumption that
// every L(X) has at least two words.
std::pair<Grammar, std::vector<std::string>> inline_singletons(const Grammar& g);

}  // namespace ordlex

#endif
