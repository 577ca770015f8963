#include "ordlex/embed.hpp"

#include <algorithm>
#include <array>
#include <queue>

namespace ordlex {

namespace {

// DFA for (0+11)*01: 0 = at block boundary, 1 = boundary or suffix-0 read,
// 2 = middle of a "11" block, 3 = suffix complete (accepting) or mid-block,
// 4 = dead.
constexpr int kRStates = 5;
constexpr int kRStart = 0;
constexpr int kRAccept = 3;
constexpr int rstep(int q, int c) {
  constexpr int delta[kRStates][2] = {{1, 2}, {1, 3}, {4, 0}, {4, 0}, {4, 4}};
  return delta[q][c];
}

// One-sided lex comparator against a fixed word, as a DFA. States
// 0..|w| track the matched prefix; |w|+1 = decided above, |w|+2 = below.
struct BoundDfa {
  const Word* w = nullptr;  // null: unconstrained (single accepting state 0)
  bool accept_above = false;  // want u > w when true, u < w when false

  int states() const { return w ? static_cast<int>(w->size()) + 3 : 1; }
  int start() const { return 0; }
  int step(int q, int c) const {
    if (!w) return 0;
    const int n = static_cast<int>(w->size());
    if (q == n + 1 || q == n + 2) return q;
    if (q == n) return n + 1;  // proper extension of w is above
    if (c == (*w)[static_cast<std::size_t>(q)]) return q + 1;
    return c > (*w)[static_cast<std::size_t>(q)] ? n + 1 : n + 2;
  }
  bool accepts(int q) const {
    if (!w) return true;
    const int n = static_cast<int>(w->size());
    if (accept_above) return q == n + 1;
    return q == n + 2 || q < n;  // strictly below, or a proper prefix of w
  }
};

}  // namespace

bool in_rationals_language(const Word& w) {
  int q = kRStart;
  for (std::size_t i = 0; i < w.size(); ++i) {
    int c = w[i];
    if (c != 0 && c != 1) return false;
    q = rstep(q, c);
  }
  return q == kRAccept;
}

std::optional<Word> shortest_rational_between(const std::optional<Word>& lo,
                                              const std::optional<Word>& hi) {
  BoundDfa dlo{lo ? &*lo : nullptr, true};
  BoundDfa dhi{hi ? &*hi : nullptr, false};
  const int nlo = dlo.states(), nhi = dhi.states();
  const int total = kRStates * nlo * nhi;
  auto enc = [&](int r, int a, int b) { return (r * nlo + a) * nhi + b; };

  // Backward BFS distances to any accepting product state.
  std::vector<int> dist(static_cast<std::size_t>(total), -1);
  std::vector<std::vector<int>> rev(static_cast<std::size_t>(total));
  for (int r = 0; r < kRStates; ++r)
    for (int a = 0; a < nlo; ++a)
      for (int b = 0; b < nhi; ++b)
        for (int c = 0; c < 2; ++c) {
          int to = enc(rstep(r, c), dlo.step(a, c), dhi.step(b, c));
          rev[static_cast<std::size_t>(to)].push_back(enc(r, a, b));
        }
  std::queue<int> q;
  for (int r = 0; r < kRStates; ++r)
    for (int a = 0; a < nlo; ++a)
      for (int b = 0; b < nhi; ++b)
        if (r == kRAccept && dlo.accepts(a) && dhi.accepts(b)) {
          int s = enc(r, a, b);
          dist[static_cast<std::size_t>(s)] = 0;
          q.push(s);
        }
  while (!q.empty()) {
    int s = q.front();
    q.pop();
    for (int p : rev[static_cast<std::size_t>(s)])
      if (dist[static_cast<std::size_t>(p)] < 0) {
        dist[static_cast<std::size_t>(p)] = dist[static_cast<std::size_t>(s)] + 1;
        q.push(p);
      }
  }

  int r = kRStart, a = dlo.start(), b = dhi.start();
  if (dist[static_cast<std::size_t>(enc(r, a, b))] < 0) return std::nullopt;
  // Walk forward, smallest symbol first, along the shortest-distance gradient.
  Word out;
  while (dist[static_cast<std::size_t>(enc(r, a, b))] > 0) {
    int d = dist[static_cast<std::size_t>(enc(r, a, b))];
    for (int c = 0; c < 2; ++c) {
      int r2 = rstep(r, c), a2 = dlo.step(a, c), b2 = dhi.step(b, c);
      if (dist[static_cast<std::size_t>(enc(r2, a2, b2))] == d - 1) {
        out.push_back(c);
        r = r2;
        a = a2;
        b = b2;
        break;
      }
    }
  }
  return out;
}

std::vector<Word> embed_into_rationals(int n, const std::function<bool(int, int)>& less) {
  std::vector<Word> placed;
  placed.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    std::optional<Word> lo, hi;
    for (int j = 0; j < i; ++j) {
      bool ij = less(i, j), ji = less(j, i);
      if (ij == ji)
        throw input_error(ij ? "comparison oracle inconsistent: both directions hold"
                             : "comparison oracle incomplete: keys do not compare");
      if (ji) {  // key j < key i: h(j) is a lower bound
        if (!lo || lex_less(*lo, placed[static_cast<std::size_t>(j)]))
          lo = placed[static_cast<std::size_t>(j)];
      } else {
        if (!hi || lex_less(placed[static_cast<std::size_t>(j)], *hi))
          hi = placed[static_cast<std::size_t>(j)];
      }
    }
    auto w = shortest_rational_between(lo, hi);
    if (!w) throw input_error("embedding interval is empty");  // unreachable for a dense order
    placed.push_back(*w);
  }
  return placed;
}

}  // namespace ordlex
