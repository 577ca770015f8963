// Words over finite ordered alphabets and the three order relations
// (prefix, strict, lexicographic), primitive roots, prefix-freeness.
#ifndef ORDLEX_WORDS_HPP
#define ORDLEX_WORDS_HPP

#include <compare>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ordlex/errors.hpp"

namespace ordlex {

// A word is a sequence of symbol ids. The id of a symbol is its position in
// the declaring alphabet, so the linear order on symbols is the order on ids
// and comparisons never need the alphabet itself.
struct Word {
  std::vector<int> syms;

  Word() = default;
  explicit Word(std::vector<int> s) : syms(std::move(s)) {}

  bool empty() const { return syms.empty(); }
  std::size_t size() const { return syms.size(); }
  int operator[](std::size_t i) const { return syms[i]; }
  void push_back(int s) { syms.push_back(s); }

  friend bool operator==(const Word& a, const Word& b) { return a.syms == b.syms; }
  friend auto operator<=>(const Word& a, const Word& b) { return a.syms <=> b.syms; }

  Word operator+(const Word& tail) const;
  // u^k
  Word repeated(int k) const;
};

// A finite, linearly ordered symbol set. Position in the sequence is the order.
class OrderedAlphabet {
 public:
  OrderedAlphabet() = default;
  explicit OrderedAlphabet(std::vector<std::string> symbols);

  static OrderedAlphabet binary();           // 0 < 1
  static OrderedAlphabet child_indices(int r);  // "0" < "1" < ... < "r-1"

  int size() const { return static_cast<int>(symbols_.size()); }
  const std::string& symbol(int id) const { return symbols_.at(id); }
  const std::vector<std::string>& symbols() const { return symbols_; }
  std::optional<int> id_of(std::string_view token) const;

  // Word construction validates membership (token not in alphabet -> input_error).
  Word word_from_tokens(const std::vector<std::string>& tokens) const;
  // Compact form ("0110") when all symbols are one character, otherwise
  // dot-separated tokens ("s3.0.s3.1" is ambiguous, so dot-form requires
  // dot-free symbol names; construction enforces that).
  Word parse_word(std::string_view text) const;
  std::string render(const Word& w) const;

  bool compact() const { return compact_; }

  friend bool operator==(const OrderedAlphabet& a, const OrderedAlphabet& b) {
    return a.symbols_ == b.symbols_;
  }

 private:
  std::vector<std::string> symbols_;
  std::map<std::string, int, std::less<>> index_;
  bool compact_ = false;  // all symbols single-character
};

enum class LexVerdict { LessPrefix, LessStrict, Equal, GreaterPrefix, GreaterStrict };
enum class PrefixVerdict { ProperPrefix, Equal, Extends, Incomparable };

// u <_l v  iff  u <_p v or u <_s v; exactly one verdict holds.
LexVerdict lex_compare(const Word& u, const Word& v);
PrefixVerdict prefix_compare(const Word& u, const Word& v);

bool lex_less(const Word& u, const Word& v);     // u <_l v
bool strict_less(const Word& u, const Word& v);  // u <_s v (divergence only)
bool shortlex_less(const Word& u, const Word& v);

const char* to_string(LexVerdict v);
const char* to_string(PrefixVerdict v);

// Unique factorization u = root^exponent with root primitive. Empty word -> input_error.
std::pair<Word, int> primitive_root(const Word& u);

struct PrefixFreeResult {
  bool prefix_free = true;
  // Lexicographically least violating pair (u, uv), if any.
  std::optional<std::pair<Word, Word>> witness;
};
PrefixFreeResult is_prefix_free(const std::vector<Word>& words);

}  // namespace ordlex

#endif
