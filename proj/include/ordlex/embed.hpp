// Greedy order-preserving embedding of a finite order into the language
// (0+11)*01, whose lexicographic ordering is that of the rationals.
#ifndef ORDLEX_EMBED_HPP
#define ORDLEX_EMBED_HPP

#include <functional>
#include <optional>
#include <vector>

#include "ordlex/words.hpp"

namespace ordlex {

// Membership in (0+11)*01 over the binary alphabet (ids 0/1).
bool in_rationals_language(const Word& w);

// Shortest word of (0+11)*01 strictly between lo and hi in lex order,
// lexicographically least among the shortest. Unbounded sides may be empty.
// Returns nullopt when the interval contains no word of the language
// (cannot happen for lo < hi since the language is dense, but callers may
// pass contradictory bounds).
std::optional<Word> shortest_rational_between(const std::optional<Word>& lo,
                                              const std::optional<Word>& hi);

// Keys are presented as indices 0..n-1 in arrival order; `less` must behave
// as a strict total order on them. Output: the word assigned to each key.
// h(key_i) is the lexicographically first among the shortest words of the
// language consistent with all comparisons against keys 0..i-1.
// Inconsistent oracle (both less(a,b) and less(b,a), or neither) -> input_error.
std::vector<Word> embed_into_rationals(int n, const std::function<bool(int, int)>& less);

}  // namespace ordlex

#endif
