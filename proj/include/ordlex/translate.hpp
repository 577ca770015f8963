// Translation of recursion schemes to prefix grammars generating the
// labeled frontier language of the least solution, the quotient grammar of
// plain leaf addresses, and the bounded oracle comparing a scheme's
// unfoldings against its translated grammar.
#ifndef ORDLEX_TRANSLATE_HPP
#define ORDLEX_TRANSLATE_HPP

#include <string>
#include <vector>

#include "ordlex/grammar.hpp"
#include "ordlex/scheme.hpp"

namespace ordlex {

struct Translation {
  Grammar grammar;
  int leaf_terminal_count = 0;               // terminal ids below this are leaf symbols
  std::vector<int> fn_nonterminal;           // equation -> nonterminal F_i
  std::vector<std::vector<int>> param_nonterminal;  // equation, param -> (F_i, j)
};

// Nonterminals are the F_i plus the pairs (F_i, j) (named F_i.j); terminals
// are the leaf symbols plus the pair letters (sigma, j) ordered by child
// index. Every node u of every body t_i emits one production:
//   t_i(u) = x_j            ->   (F_i, j) -> u^
//   t_i(u) a leaf symbol    ->   F_i -> u^ t_i(u)
//   t_i(u) a function call  ->   F_i -> u^ F_k
// where pair letters over the alphabet are terminals and pair letters over
// function variables are the (F_k, j) nonterminals.
Translation scheme_to_prefix_grammar(const RecursionScheme& s);

struct FrontierGrammarResult {
  Grammar grammar;  // over the pair letters only
  bool contains_epsilon = false;  // the quotient language contains the empty word
};
// Drops the trailing leaf symbol from every F_i leaf production; the result
// generates the frontier (leaf addresses) with the same lex order.
// input_error when the grammar is not in translated form.
FrontierGrammarResult frontier_grammar(const Translation& t);

struct ClaimReport {
  std::vector<std::string> mismatches;
  int words_checked = 0;
  bool ok() const { return mismatches.empty(); }
};
// Verifies, per equation, that the labeled-frontier words and the
// parameter-leaf address words of the depth-bounded unfolding agree with the
// translated grammar's languages: approximant words up to max_len must be
// derivable, and derivable words whose address lies inside the approximant's
// determined region must appear in the tree.
ClaimReport check_claim(const RecursionScheme& s, const Translation& t, int depth, int max_len);

// Structural faithfulness: recomputes the production set of the translation
// and reports any difference against t.grammar (extra or missing
// productions, renamed symbols). Empty result means exact match.
std::vector<std::string> translation_violations(const RecursionScheme& s, const Translation& t);

}  // namespace ordlex

#endif
