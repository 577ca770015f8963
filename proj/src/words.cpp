#include "ordlex/words.hpp"

#include <algorithm>
#include <sstream>

namespace ordlex {

Word Word::operator+(const Word& tail) const {
  Word r = *this;
  r.syms.insert(r.syms.end(), tail.syms.begin(), tail.syms.end());
  return r;
}

Word Word::repeated(int k) const {
  Word r;
  r.syms.reserve(syms.size() * static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) r.syms.insert(r.syms.end(), syms.begin(), syms.end());
  return r;
}

OrderedAlphabet::OrderedAlphabet(std::vector<std::string> symbols)
    : symbols_(std::move(symbols)) {
  if (symbols_.empty()) throw input_error("alphabet must contain at least one symbol");
  compact_ = true;
  for (int i = 0; i < static_cast<int>(symbols_.size()); ++i) {
    const std::string& s = symbols_[i];
    if (s.empty()) throw input_error("alphabet symbol must be nonempty");
    if (!index_.emplace(s, i).second)
      throw input_error("duplicate alphabet symbol: " + s);
    if (s.size() != 1) compact_ = false;
  }
}

OrderedAlphabet OrderedAlphabet::binary() { return OrderedAlphabet({"0", "1"}); }

OrderedAlphabet OrderedAlphabet::child_indices(int r) {
  std::vector<std::string> syms;
  for (int i = 0; i < r; ++i) syms.push_back(std::to_string(i));
  return OrderedAlphabet(std::move(syms));
}

std::optional<int> OrderedAlphabet::id_of(std::string_view token) const {
  auto it = index_.find(token);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

Word OrderedAlphabet::word_from_tokens(const std::vector<std::string>& tokens) const {
  Word w;
  w.syms.reserve(tokens.size());
  for (const auto& t : tokens) {
    auto id = id_of(t);
    if (!id) throw input_error("token not in alphabet: " + t);
    w.syms.push_back(*id);
  }
  return w;
}

Word OrderedAlphabet::parse_word(std::string_view text) const {
  Word w;
  if (compact_) {
    for (char c : text) {
      auto id = id_of(std::string_view(&c, 1));
      if (!id) throw input_error(std::string("token not in alphabet: ") + c);
      w.syms.push_back(*id);
    }
    return w;
  }
  if (text.empty()) return w;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t dot = text.find('.', pos);
    std::string_view tok = text.substr(pos, dot == std::string_view::npos ? dot : dot - pos);
    auto id = id_of(tok);
    if (!id) throw input_error("token not in alphabet: " + std::string(tok));
    w.syms.push_back(*id);
    if (dot == std::string_view::npos) break;
    pos = dot + 1;
  }
  return w;
}

std::string OrderedAlphabet::render(const Word& w) const {
  std::ostringstream out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (!compact_ && i > 0) out << '.';
    out << symbol(w[i]);
  }
  return out.str();
}

LexVerdict lex_compare(const Word& u, const Word& v) {
  const std::size_t n = std::min(u.size(), v.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (u[i] < v[i]) return LexVerdict::LessStrict;
    if (u[i] > v[i]) return LexVerdict::GreaterStrict;
  }
  if (u.size() == v.size()) return LexVerdict::Equal;
  return u.size() < v.size() ? LexVerdict::LessPrefix : LexVerdict::GreaterPrefix;
}

PrefixVerdict prefix_compare(const Word& u, const Word& v) {
  switch (lex_compare(u, v)) {
    case LexVerdict::Equal: return PrefixVerdict::Equal;
    case LexVerdict::LessPrefix: return PrefixVerdict::ProperPrefix;
    case LexVerdict::GreaterPrefix: return PrefixVerdict::Extends;
    default: return PrefixVerdict::Incomparable;
  }
}

bool lex_less(const Word& u, const Word& v) {
  LexVerdict c = lex_compare(u, v);
  return c == LexVerdict::LessPrefix || c == LexVerdict::LessStrict;
}

bool strict_less(const Word& u, const Word& v) {
  return lex_compare(u, v) == LexVerdict::LessStrict;
}

bool shortlex_less(const Word& u, const Word& v) {
  if (u.size() != v.size()) return u.size() < v.size();
  return u.syms < v.syms;
}

const char* to_string(LexVerdict v) {
  switch (v) {
    case LexVerdict::LessPrefix: return "LessPrefix";
    case LexVerdict::LessStrict: return "LessStrict";
    case LexVerdict::Equal: return "Equal";
    case LexVerdict::GreaterPrefix: return "GreaterPrefix";
    case LexVerdict::GreaterStrict: return "GreaterStrict";
  }
  return "?";
}

const char* to_string(PrefixVerdict v) {
  switch (v) {
    case PrefixVerdict::ProperPrefix: return "ProperPrefix";
    case PrefixVerdict::Equal: return "Equal";
    case PrefixVerdict::Extends: return "Extends";
    case PrefixVerdict::Incomparable: return "Incomparable";
  }
  return "?";
}

std::pair<Word, int> primitive_root(const Word& u) {
  if (u.empty()) throw input_error("primitive_root: empty word");
  const int n = static_cast<int>(u.size());
  // Shortest period via the KMP border array; it is the primitive root
  // exactly when it divides the length.
  std::vector<int> border(n + 1, 0);
  border[0] = -1;
  for (int i = 1; i <= n; ++i) {
    int b = border[i - 1];
    while (b >= 0 && u[b] != u[i - 1]) b = border[b];
    border[i] = b + 1;
  }
  int period = n - border[n];
  if (n % period != 0) period = n;
  Word root(std::vector<int>(u.syms.begin(), u.syms.begin() + period));
  return {root, n / period};
}

PrefixFreeResult is_prefix_free(const std::vector<Word>& words) {
  // In lex order every proper extension of u sorts directly behind u, so a
  // violation always shows up as an adjacent pair; the first one is lex-least.
  std::vector<Word> sorted = words;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  PrefixFreeResult res;
  for (std::size_t i = 0; i + 1 < sorted.size(); ++i) {
    if (prefix_compare(sorted[i], sorted[i + 1]) == PrefixVerdict::ProperPrefix) {
      res.prefix_free = false;
      res.witness = {sorted[i], sorted[i + 1]};
      return res;
    }
  }
  return res;
}

}  // namespace ordlex
