#include "ordlex/grammar.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <functional>
#include <map>
#include <sstream>
#include <tuple>

namespace ordlex {

int Grammar::nonterminal_id(std::string_view name) const {
  for (std::size_t i = 0; i < nonterminals.size(); ++i)
    if (nonterminals[i] == name) return static_cast<int>(i);
  return -1;
}

// ---------------------------------------------------------------------------
// Text format

namespace {

std::string trim(const std::string& in) {
  std::size_t b = 0, e = in.size();
  while (b < e && std::isspace(static_cast<unsigned char>(in[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(in[e - 1]))) --e;
  return in.substr(b, e - b);
}

std::vector<std::string> split_tokens(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

}  // namespace

Grammar parse_grammar(std::string_view text) {
  std::optional<std::vector<std::string>> declared_terminals;
  std::optional<std::string> declared_start;
  std::vector<std::pair<std::string, std::string>> prod_lines;  // lhs, alternates

  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.rfind("terminals:", 0) == 0) {
      std::vector<std::string> ts;
      std::istringstream decl(line.substr(10));
      std::string item;
      while (std::getline(decl, item, '<')) {
        item = trim(item);
        if (item.empty()) throw parse_error("empty terminal in header");
        ts.push_back(item);
      }
      declared_terminals = std::move(ts);
      continue;
    }
    if (line.rfind("start:", 0) == 0) {
      declared_start = trim(line.substr(6));
      continue;
    }
    auto arrow = line.find("->");
    if (arrow == std::string::npos) throw parse_error("production line needs '->': " + line);
    std::string lhs = trim(line.substr(0, arrow));
    if (lhs.empty() || split_tokens(lhs).size() != 1)
      throw parse_error("bad production left-hand side: " + line);
    prod_lines.emplace_back(split_tokens(lhs)[0], trim(line.substr(arrow + 2)));
  }
  if (prod_lines.empty()) throw parse_error("grammar has no productions");

  Grammar g;
  std::map<std::string, int> nt_index;
  for (const auto& [lhs, rhs] : prod_lines) {
    (void)rhs;
    if (!nt_index.count(lhs)) {
      nt_index[lhs] = static_cast<int>(g.nonterminals.size());
      g.nonterminals.push_back(lhs);
    }
  }

  std::vector<std::string> terminal_order;
  std::map<std::string, int> term_index;
  auto add_terminal = [&](const std::string& t) {
    if (!term_index.count(t)) {
      term_index[t] = static_cast<int>(terminal_order.size());
      terminal_order.push_back(t);
    }
  };
  if (declared_terminals) {
    for (const auto& t : *declared_terminals) {
      if (nt_index.count(t)) throw parse_error("terminal is also a nonterminal: " + t);
      add_terminal(t);
    }
  } else {
    // without a header, tokens that never appear on a left-hand side are
    // terminals in first-appearance order; uppercase-initial ones are taken
    // for misspelled nonterminals instead
    for (const auto& [lhs, alts] : prod_lines) {
      (void)lhs;
      std::istringstream as(alts);
      std::string alt;
      while (std::getline(as, alt, '|'))
        for (const auto& tok : split_tokens(alt)) {
          if (nt_index.count(tok)) continue;
          if (std::isupper(static_cast<unsigned char>(tok[0])))
            throw parse_error("undeclared symbol: " + tok);
          add_terminal(tok);
        }
    }
    if (terminal_order.empty()) terminal_order.push_back("0");  // no terminals anywhere
  }
  g.terminals = OrderedAlphabet(terminal_order);

  for (const auto& [lhs, alts] : prod_lines) {
    // split on '|' by hand so an empty alternate (an epsilon production)
    // survives at either end
    std::vector<std::string> parts;
    std::string cur;
    for (char c : alts) {
      if (c == '|') {
        parts.push_back(cur);
        cur.clear();
      } else {
        cur += c;
      }
    }
    parts.push_back(cur);
    for (const auto& part : parts) {
      Production p;
      p.lhs = nt_index[lhs];
      for (const auto& tok : split_tokens(part)) {
        if (auto it = term_index.find(tok); it != term_index.end()) {
          p.rhs.push_back({true, it->second});
        } else if (auto nt = nt_index.find(tok); nt != nt_index.end()) {
          p.rhs.push_back({false, nt->second});
        } else {
          throw parse_error("undeclared symbol: " + tok);
        }
      }
      g.productions.push_back(std::move(p));
    }
  }

  if (declared_start) {
    int s = g.nonterminal_id(*declared_start);
    if (s < 0) throw parse_error("start symbol has no productions: " + *declared_start);
    g.start = s;
  }
  validate(g);
  return g;
}

std::string to_text(const Grammar& g) {
  std::ostringstream out;
  out << "terminals:";
  for (int i = 0; i < g.terminals.size(); ++i)
    out << (i ? " < " : " ") << g.terminals.symbol(i);
  out << '\n';
  if (g.start != 0) out << "start: " << g.nonterminals[static_cast<std::size_t>(g.start)] << '\n';
  for (std::size_t x = 0; x < g.nonterminals.size(); ++x) {
    bool any = false;
    std::ostringstream lineout;
    lineout << g.nonterminals[x] << " ->";
    for (const auto& p : g.productions) {
      if (p.lhs != static_cast<int>(x)) continue;
      if (any) lineout << " |";
      any = true;
      for (const auto& s : p.rhs)
        lineout << ' '
                << (s.terminal ? g.terminals.symbol(s.id)
                               : g.nonterminals[static_cast<std::size_t>(s.id)]);
    }
    if (any) out << lineout.str() << '\n';
  }
  return out.str();
}

void validate(const Grammar& g) {
  if (g.nonterminals.empty()) throw input_error("grammar needs a nonterminal");
  if (g.start < 0 || g.start >= static_cast<int>(g.nonterminals.size()))
    throw input_error("start symbol out of range");
  for (const auto& p : g.productions) {
    if (p.lhs < 0 || p.lhs >= static_cast<int>(g.nonterminals.size()))
      throw input_error("production lhs out of range");
    for (const auto& s : p.rhs) {
      int limit = s.terminal ? g.terminals.size() : static_cast<int>(g.nonterminals.size());
      if (s.id < 0 || s.id >= limit) throw input_error("production symbol out of range");
    }
  }
}

// ---------------------------------------------------------------------------
// Normalization

std::pair<Grammar, NormalizeReport> normalize(const Grammar& g, NormalizeOptions opts) {
  validate(g);
  NormalizeReport report;
  const int n = static_cast<int>(g.nonterminals.size());

  std::vector<bool> nullable(static_cast<std::size_t>(n), false);
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& p : g.productions) {
      if (nullable[static_cast<std::size_t>(p.lhs)]) continue;
      bool all = true;
      for (const auto& s : p.rhs)
        if (s.terminal || !nullable[static_cast<std::size_t>(s.id)]) {
          all = false;
          break;
        }
      if (all) {
        nullable[static_cast<std::size_t>(p.lhs)] = true;
        changed = true;
      }
    }
  }
  report.epsilon_in_language = nullable[static_cast<std::size_t>(g.start)];
  for (const auto& p : g.productions) report.had_epsilon_productions |= p.rhs.empty();

  // epsilon elimination by nullable expansion
  std::set<Production> prods;
  for (const auto& p : g.productions) {
    std::vector<int> npos;
    for (std::size_t i = 0; i < p.rhs.size(); ++i)
      if (!p.rhs[i].terminal && nullable[static_cast<std::size_t>(p.rhs[i].id)])
        npos.push_back(static_cast<int>(i));
    if (npos.size() > 20) throw input_error("too many nullable symbols in one rule");
    for (unsigned mask = 0; mask < (1u << npos.size()); ++mask) {
      Production q;
      q.lhs = p.lhs;
      std::size_t k = 0;
      for (std::size_t i = 0; i < p.rhs.size(); ++i) {
        if (k < npos.size() && static_cast<int>(i) == npos[k]) {
          bool keep = (mask >> k) & 1u;
          ++k;
          if (!keep) continue;
        }
        q.rhs.push_back(p.rhs[i]);
      }
      if (!q.rhs.empty()) prods.insert(std::move(q));
    }
  }

  // chain elimination
  std::vector<std::set<int>> chain_reach(static_cast<std::size_t>(n));
  for (int x = 0; x < n; ++x) {
    std::deque<int> queue{x};
    chain_reach[static_cast<std::size_t>(x)].insert(x);
    while (!queue.empty()) {
      int y = queue.front();
      queue.pop_front();
      for (const auto& p : prods) {
        if (p.lhs != y || p.rhs.size() != 1 || p.rhs[0].terminal) continue;
        if (chain_reach[static_cast<std::size_t>(x)].insert(p.rhs[0].id).second)
          queue.push_back(p.rhs[0].id);
      }
    }
  }
  for (const auto& p : prods)
    if (p.rhs.size() == 1 && !p.rhs[0].terminal) ++report.chain_productions_removed;
  std::set<Production> no_chains;
  for (int x = 0; x < n; ++x)
    for (int y : chain_reach[static_cast<std::size_t>(x)])
      for (const auto& p : prods) {
        if (p.lhs != y) continue;
        if (p.rhs.size() == 1 && !p.rhs[0].terminal) continue;
        Production q = p;
        q.lhs = x;
        no_chains.insert(std::move(q));
      }

  // productive fixpoint
  std::vector<bool> productive(static_cast<std::size_t>(n), false);
  changed = true;
  while (changed) {
    changed = false;
    for (const auto& p : no_chains) {
      if (productive[static_cast<std::size_t>(p.lhs)]) continue;
      bool all = true;
      for (const auto& s : p.rhs)
        if (!s.terminal && !productive[static_cast<std::size_t>(s.id)]) {
          all = false;
          break;
        }
      if (all) {
        productive[static_cast<std::size_t>(p.lhs)] = true;
        changed = true;
      }
    }
  }

  if (!productive[static_cast<std::size_t>(g.start)]) {
    for (int x = 0; x < n; ++x)
      if (x != g.start)
        report.dropped_unproductive.push_back(g.nonterminals[static_cast<std::size_t>(x)]);
    Grammar empty;
    empty.terminals = g.terminals;
    empty.nonterminals = {g.nonterminals[static_cast<std::size_t>(g.start)]};
    empty.start = 0;
    return {empty, report};
  }

  std::vector<bool> keep(static_cast<std::size_t>(n), true);
  if (opts.drop_unreachable) {
    keep.assign(static_cast<std::size_t>(n), false);
    std::deque<int> queue{g.start};
    keep[static_cast<std::size_t>(g.start)] = true;
    while (!queue.empty()) {
      int x = queue.front();
      queue.pop_front();
      for (const auto& p : no_chains) {
        if (p.lhs != x) continue;
        bool usable = true;
        for (const auto& s : p.rhs)
          if (!s.terminal && !productive[static_cast<std::size_t>(s.id)]) usable = false;
        if (!usable) continue;
        for (const auto& s : p.rhs)
          if (!s.terminal && !keep[static_cast<std::size_t>(s.id)]) {
            keep[static_cast<std::size_t>(s.id)] = true;
            queue.push_back(s.id);
          }
      }
    }
    for (int x = 0; x < n; ++x)
      if (!keep[static_cast<std::size_t>(x)] && productive[static_cast<std::size_t>(x)])
        report.dropped_unreachable.push_back(g.nonterminals[static_cast<std::size_t>(x)]);
  }
  for (int x = 0; x < n; ++x)
    if (!productive[static_cast<std::size_t>(x)]) {
      report.dropped_unproductive.push_back(g.nonterminals[static_cast<std::size_t>(x)]);
      keep[static_cast<std::size_t>(x)] = false;
    }

  std::vector<int> remap(static_cast<std::size_t>(n), -1);
  Grammar out;
  out.terminals = g.terminals;
  for (int x = 0; x < n; ++x)
    if (keep[static_cast<std::size_t>(x)]) {
      remap[static_cast<std::size_t>(x)] = static_cast<int>(out.nonterminals.size());
      out.nonterminals.push_back(g.nonterminals[static_cast<std::size_t>(x)]);
    }
  out.start = remap[static_cast<std::size_t>(g.start)];
  std::set<Production> final_prods;
  for (const auto& p : no_chains) {
    if (!keep[static_cast<std::size_t>(p.lhs)]) continue;
    Production q;
    q.lhs = remap[static_cast<std::size_t>(p.lhs)];
    bool ok = true;
    for (const auto& s : p.rhs) {
      if (s.terminal) {
        q.rhs.push_back(s);
      } else if (remap[static_cast<std::size_t>(s.id)] >= 0) {
        q.rhs.push_back({false, remap[static_cast<std::size_t>(s.id)]});
      } else {
        ok = false;
        break;
      }
    }
    if (ok) final_prods.insert(std::move(q));
  }
  out.productions.assign(final_prods.begin(), final_prods.end());
  validate(out);
  return {out, report};
}

// ---------------------------------------------------------------------------
// SCCs, heights, recursion

namespace {

std::vector<std::vector<int>> occurs_digraph(const Grammar& g) {
  std::vector<std::set<int>> adj(g.nonterminals.size());
  for (const auto& p : g.productions)
    for (const auto& s : p.rhs)
      if (!s.terminal) adj[static_cast<std::size_t>(p.lhs)].insert(s.id);
  std::vector<std::vector<int>> out(adj.size());
  for (std::size_t i = 0; i < adj.size(); ++i) out[i].assign(adj[i].begin(), adj[i].end());
  return out;
}

struct TarjanState {
  const std::vector<std::vector<int>>* adj;
  std::vector<int> index, low, scc;
  std::vector<bool> on_stack;
  std::vector<int> stack;
  int counter = 0, scc_count = 0;

  void run(int v) {
    auto vi = static_cast<std::size_t>(v);
    index[vi] = low[vi] = counter++;
    stack.push_back(v);
    on_stack[vi] = true;
    for (int w : (*adj)[vi]) {
      auto wi = static_cast<std::size_t>(w);
      if (index[wi] < 0) {
        run(w);
        low[vi] = std::min(low[vi], low[wi]);
      } else if (on_stack[wi]) {
        low[vi] = std::min(low[vi], index[wi]);
      }
    }
    if (low[vi] == index[vi]) {
      while (true) {
        int w = stack.back();
        stack.pop_back();
        on_stack[static_cast<std::size_t>(w)] = false;
        scc[static_cast<std::size_t>(w)] = scc_count;
        if (w == v) break;
      }
      ++scc_count;
    }
  }
};

}  // namespace

GrammarSccs sccs_and_heights(const Grammar& g) {
  const int n = static_cast<int>(g.nonterminals.size());
  auto adj = occurs_digraph(g);
  TarjanState t;
  t.adj = &adj;
  t.index.assign(static_cast<std::size_t>(n), -1);
  t.low.assign(static_cast<std::size_t>(n), 0);
  t.scc.assign(static_cast<std::size_t>(n), -1);
  t.on_stack.assign(static_cast<std::size_t>(n), false);
  for (int v = 0; v < n; ++v)
    if (t.index[static_cast<std::size_t>(v)] < 0) t.run(v);

  GrammarSccs out;
  out.scc_id = t.scc;
  out.scc_count = t.scc_count;

  std::vector<int> scc_size(static_cast<std::size_t>(t.scc_count), 0);
  for (int v = 0; v < n; ++v)
    ++scc_size[static_cast<std::size_t>(t.scc[static_cast<std::size_t>(v)])];
  out.recursive.assign(static_cast<std::size_t>(n), false);
  for (int v = 0; v < n; ++v) {
    if (scc_size[static_cast<std::size_t>(t.scc[static_cast<std::size_t>(v)])] > 1)
      out.recursive[static_cast<std::size_t>(v)] = true;
    for (int w : adj[static_cast<std::size_t>(v)])
      if (w == v) out.recursive[static_cast<std::size_t>(v)] = true;
  }

  std::vector<std::set<int>> cond(static_cast<std::size_t>(t.scc_count));
  for (int v = 0; v < n; ++v)
    for (int w : adj[static_cast<std::size_t>(v)]) {
      int a = t.scc[static_cast<std::size_t>(v)], b = t.scc[static_cast<std::size_t>(w)];
      if (a != b) cond[static_cast<std::size_t>(a)].insert(b);
    }
  std::vector<std::set<int>> reach(static_cast<std::size_t>(t.scc_count));
  std::vector<bool> done(static_cast<std::size_t>(t.scc_count), false);
  std::function<void(int)> dfs = [&](int c) {
    auto ci = static_cast<std::size_t>(c);
    if (done[ci]) return;
    done[ci] = true;
    reach[ci].insert(c);
    for (int d : cond[ci]) {
      dfs(d);
      reach[ci].insert(reach[static_cast<std::size_t>(d)].begin(),
                       reach[static_cast<std::size_t>(d)].end());
    }
  };
  for (int c = 0; c < t.scc_count; ++c) dfs(c);

  out.height.assign(static_cast<std::size_t>(n), 0);
  for (int v = 0; v < n; ++v) {
    int c = t.scc[static_cast<std::size_t>(v)];
    out.height[static_cast<std::size_t>(v)] =
        static_cast<int>(reach[static_cast<std::size_t>(c)].size()) - 1;
  }
  return out;
}

std::vector<int> detect_left_recursion(const Grammar& g) {
  const int n = static_cast<int>(g.nonterminals.size());
  std::vector<std::set<int>> left(static_cast<std::size_t>(n));
  for (const auto& p : g.productions)
    if (!p.rhs.empty() && !p.rhs[0].terminal)
      left[static_cast<std::size_t>(p.lhs)].insert(p.rhs[0].id);
  std::vector<int> out;
  for (int x = 0; x < n; ++x) {
    std::deque<int> queue(left[static_cast<std::size_t>(x)].begin(),
                          left[static_cast<std::size_t>(x)].end());
    std::set<int> seen(queue.begin(), queue.end());
    while (!queue.empty()) {
      int y = queue.front();
      queue.pop_front();
      for (int z : left[static_cast<std::size_t>(y)])
        if (seen.insert(z).second) queue.push_back(z);
    }
    if (seen.count(x)) out.push_back(x);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Pumping search: breadth-first over leftmost sentential forms

std::vector<Word> pumping_prefixes(const Grammar& g, int X, int depth) {
  if (X < 0 || X >= static_cast<int>(g.nonterminals.size()))
    throw input_error("no such nonterminal");
  GrammarSccs sc = sccs_and_heights(g);
  if (!sc.recursive[static_cast<std::size_t>(X)])
    throw input_error("pumping_prefixes: " + g.nonterminals[static_cast<std::size_t>(X)] +
                      " is not recursive");
  int max_terms = 1;
  for (const auto& p : g.productions) {
    int t = 0;
    for (const auto& s : p.rhs) t += s.terminal ? 1 : 0;
    max_terms = std::max(max_terms, t);
  }
  const std::size_t prefix_cap =
      static_cast<std::size_t>(depth) * static_cast<std::size_t>(max_terms);

  using Form = std::vector<GSym>;
  auto leading = [](const Form& f) {
    std::size_t i = 0;
    while (i < f.size() && f[i].terminal) ++i;
    return i;
  };

  std::set<Form> seen;
  std::set<Word> pumps;
  std::vector<Form> level{{GSym{false, X}}};
  seen.insert(level[0]);

  for (int step = 0; step < depth && !level.empty(); ++step) {
    std::vector<Form> next;
    for (const Form& f : level) {
      std::size_t p = leading(f);
      if (p == f.size()) continue;
      int Y = f[p].id;
      for (const auto& prod : g.productions) {
        if (prod.lhs != Y) continue;
        Form nf(f.begin(), f.begin() + static_cast<long>(p));
        nf.insert(nf.end(), prod.rhs.begin(), prod.rhs.end());
        nf.insert(nf.end(), f.begin() + static_cast<long>(p) + 1, f.end());
        std::size_t np = leading(nf);
        if (np > prefix_cap) continue;
        if (np < nf.size() && !nf[np].terminal && nf[np].id == X) {
          Word u;
          for (std::size_t i = 0; i < np; ++i) u.push_back(nf[i].id);
          pumps.insert(std::move(u));
        }
        if (seen.insert(nf).second) next.push_back(std::move(nf));
      }
    }
    level = std::move(next);
  }

  std::vector<Word> out(pumps.begin(), pumps.end());
  std::sort(out.begin(), out.end(), shortlex_less);
  return out;
}

PrimitiveRootResult primitive_root_of(const Grammar& g, int X, int depth) {
  std::vector<Word> pumps = pumping_prefixes(g, X, depth);
  std::vector<Word> nonempty;
  for (const auto& p : pumps)
    if (!p.empty()) nonempty.push_back(p);
  if (nonempty.empty())
    throw input_error("primitive_root_of: no pumping prefix within depth " +
                      std::to_string(depth));
  const Word& shortest = nonempty.front();  // shortlex order
  Word root = primitive_root(shortest).first;
  PrimitiveRootResult res;
  res.root = root;
  for (const auto& p : nonempty) {
    bool power = p.size() % root.size() == 0 &&
                 p == root.repeated(static_cast<int>(p.size() / root.size()));
    if (!power) {
      res.violation = {shortest, p};
      break;
    }
  }
  return res;
}

ScatterednessVerdict refute_scattered(const Grammar& g, int depth) {
  GrammarSccs sc = sccs_and_heights(g);
  std::vector<std::pair<int, std::vector<Word>>> all;
  for (int x = 0; x < static_cast<int>(g.nonterminals.size()); ++x)
    if (sc.recursive[static_cast<std::size_t>(x)])
      all.emplace_back(x, pumping_prefixes(g, x, depth));

  ScatterednessVerdict v;
  v.depth = depth;
  for (const auto& [x, pumps] : all) {
    for (std::size_t i = 0; i < pumps.size(); ++i)
      for (std::size_t j = i + 1; j < pumps.size(); ++j) {
        if (!strict_less(pumps[i], pumps[j])) continue;
        for (std::size_t k = j + 1; k < pumps.size(); ++k)
          if (strict_less(pumps[j], pumps[k])) {
            v.kind = ScatterednessVerdict::Kind::RefutedDenseTriple;
            v.nonterminal = x;
            v.witness = {pumps[i], pumps[j], pumps[k]};
            return v;
          }
      }
  }
  for (const auto& [x, pumps] : all) {
    for (std::size_t i = 0; i < pumps.size(); ++i)
      for (std::size_t j = i + 1; j < pumps.size(); ++j)
        if (prefix_compare(pumps[i], pumps[j]) == PrefixVerdict::Incomparable) {
          v.kind = ScatterednessVerdict::Kind::RefutedIncomparable;
          v.nonterminal = x;
          v.witness = {pumps[i], pumps[j]};
          return v;
        }
  }
  return v;
}

// ---------------------------------------------------------------------------
// Enumeration

EnumerationTable::EnumerationTable(const Grammar& g, int max_len) : max_len_(max_len) {
  validate(g);
  for (const auto& p : g.productions)
    if (p.rhs.empty()) throw input_error("enumeration requires an epsilon-free grammar");
  const int n = static_cast<int>(g.nonterminals.size());
  by_len_.assign(static_cast<std::size_t>(n),
                 std::vector<std::set<Word>>(static_cast<std::size_t>(max_len) + 1));

  for (int len = 1; len <= max_len; ++len) {
    // chain productions copy words of equal length, so iterate to a fixpoint
    bool changed = true;
    while (changed) {
      changed = false;
      for (const auto& p : g.productions) {
        std::function<void(std::size_t, int, Word&)> gen = [&](std::size_t pos, int rem,
                                                               Word& acc) {
          const int still = static_cast<int>(p.rhs.size() - pos);
          if (rem < still) return;
          if (pos == p.rhs.size()) {
            if (rem == 0)
              changed |= by_len_[static_cast<std::size_t>(p.lhs)][static_cast<std::size_t>(len)]
                             .insert(acc)
                             .second;
            return;
          }
          const GSym& s = p.rhs[pos];
          if (s.terminal) {
            acc.push_back(s.id);
            gen(pos + 1, rem - 1, acc);
            acc.syms.pop_back();
            return;
          }
          for (int m = 1; m <= rem - (still - 1); ++m) {
            for (const Word& w :
                 by_len_[static_cast<std::size_t>(s.id)][static_cast<std::size_t>(m)]) {
              std::size_t before = acc.size();
              acc.syms.insert(acc.syms.end(), w.syms.begin(), w.syms.end());
              gen(pos + 1, rem - m, acc);
              acc.syms.resize(before);
            }
          }
        };
        Word acc;
        gen(0, len, acc);
      }
    }
  }
}

std::vector<Word> EnumerationTable::words(int X) const {
  std::vector<Word> out;
  for (const auto& bucket : by_len_[static_cast<std::size_t>(X)])
    out.insert(out.end(), bucket.begin(), bucket.end());
  std::sort(out.begin(), out.end(), lex_less);
  return out;
}

std::vector<Word> enumerate_words(const Grammar& g, int max_len) {
  return EnumerationTable(g, max_len).words(g.start);
}

// ---------------------------------------------------------------------------
// Prefix property, rank bounds

PrefixPropertyResult check_prefix_property(const Grammar& g, int max_len) {
  PrefixPropertyResult res;
  res.max_len = max_len;
  if (g.productions.empty()) return res;  // empty language
  EnumerationTable table(g, max_len);
  for (int x = 0; x < static_cast<int>(g.nonterminals.size()); ++x) {
    auto pf = is_prefix_free(table.words(x));
    if (!pf.prefix_free) {
      res.prefix_up_to_bound = false;
      res.nonterminal = x;
      res.witness = pf.witness;
      return res;
    }
  }
  return res;
}

RankBoundReport rank_bound_report(const Grammar& g) {
  GrammarSccs sc = sccs_and_heights(g);
  RankBoundReport r;
  for (int x = 0; x < static_cast<int>(g.nonterminals.size()); ++x) {
    Ordinal h =
        Ordinal::finite(static_cast<std::uint64_t>(sc.height[static_cast<std::size_t>(x)]));
    r.per_nonterminal.push_back(cnf_add(Ordinal::omega_power(h), Ordinal::finite(1)));
  }
  r.overall = r.per_nonterminal[static_cast<std::size_t>(g.start)];
  if (!(r.overall < Ordinal::omega_power(Ordinal::omega())))
    throw std::logic_error("nonterminal heights are finite; bound below w^w expected");
  return r;
}

// ---------------------------------------------------------------------------
// Lex interval intersection

namespace {

// Comparator against a fixed bound word: states 0..|w| track the matched
// prefix, then decided-above / decided-below sinks.
struct CmpDfa {
  Word w;
  int states() const { return static_cast<int>(w.size()) + 3; }
  int above() const { return static_cast<int>(w.size()) + 1; }
  int below() const { return static_cast<int>(w.size()) + 2; }
  int step(int q, int c) const {
    const int n = static_cast<int>(w.size());
    if (q == above() || q == below()) return q;
    if (q == n) return above();  // proper extension of w
    if (c == w[static_cast<std::size_t>(q)]) return q + 1;
    return c > w[static_cast<std::size_t>(q)] ? above() : below();
  }
  bool ends_less(int q) const { return q == below() || q < static_cast<int>(w.size()); }
  bool ends_equal(int q) const { return q == static_cast<int>(w.size()); }
  bool ends_greater(int q) const { return q == above(); }
};

Grammar product_with_dfa(const Grammar& g, const CmpDfa& dfa,
                         const std::function<bool(int)>& accept) {
  const int S = dfa.states();
  const int n = static_cast<int>(g.nonterminals.size());
  Grammar out;
  out.terminals = g.terminals;
  auto id = [&](int q, int x, int r) { return (q * n + x) * S + r; };
  for (int q = 0; q < S; ++q)
    for (int x = 0; x < n; ++x)
      for (int r = 0; r < S; ++r)
        out.nonterminals.push_back(g.nonterminals[static_cast<std::size_t>(x)] + "__" +
                                   std::to_string(q) + "_" + std::to_string(r));
  int fresh = static_cast<int>(out.nonterminals.size());
  out.nonterminals.push_back(g.nonterminals[static_cast<std::size_t>(g.start)] + "__cut");
  out.start = fresh;

  for (const auto& p : g.productions) {
    std::vector<GSym> rhs;
    std::function<void(std::size_t, int, int)> gen = [&](std::size_t pos, int q0, int q) {
      if (pos == p.rhs.size()) {
        out.productions.push_back({id(q0, p.lhs, q), rhs});
        return;
      }
      const GSym& s = p.rhs[pos];
      if (s.terminal) {
        rhs.push_back(s);
        gen(pos + 1, q0, dfa.step(q, s.id));
        rhs.pop_back();
      } else {
        for (int r = 0; r < S; ++r) {
          rhs.push_back({false, id(q, s.id, r)});
          gen(pos + 1, q0, r);
          rhs.pop_back();
        }
      }
    };
    for (int q0 = 0; q0 < S; ++q0) gen(0, q0, q0);
  }
  for (int f = 0; f < S; ++f)
    if (accept(f)) out.productions.push_back({fresh, {GSym{false, id(0, g.start, f)}}});
  return out;
}

}  // namespace

Grammar intersect_lex_interval(const Grammar& g, const std::optional<LexBound>& lower,
                               const std::optional<LexBound>& upper) {
  Grammar cur = normalize(g).first;
  if (lower) {
    CmpDfa dfa{lower->word};
    const bool incl = lower->inclusive;
    cur = normalize(product_with_dfa(
                        cur, dfa,
                        [&](int q) { return dfa.ends_greater(q) || (incl && dfa.ends_equal(q)); }))
              .first;
  }
  if (upper) {
    CmpDfa dfa{upper->word};
    const bool incl = upper->inclusive;
    cur = normalize(product_with_dfa(
                        cur, dfa,
                        [&](int q) { return dfa.ends_less(q) || (incl && dfa.ends_equal(q)); }))
              .first;
  }
  return cur;
}

std::pair<Grammar, OrderedAlphabet> reverse_order(const Grammar& g) {
  Grammar out = g;
  const int n = g.terminals.size();
  for (auto& p : out.productions)
    for (auto& s : p.rhs)
      if (s.terminal) s.id = n - 1 - s.id;
  return {out, out.terminals};
}

// ---------------------------------------------------------------------------
// L/R decomposition

Decomposition decompose_LR(const Grammar& g, int X, int n_max, int max_len) {
  PrimitiveRootResult pr =
      primitive_root_of(g, X, 2 * static_cast<int>(g.nonterminals.size()) + 2);
  if (!pr.root || pr.violation)
    throw input_error("decompose_LR needs a primitive root without violations");
  const Word& u0 = *pr.root;

  Decomposition d;
  d.root = u0;
  EnumerationTable table(g, max_len);
  std::map<std::tuple<int, int, Word>, std::vector<Word>> buckets;

  for (const Word& w : table.words(X)) {
    std::size_t i = 0;
    while (i < w.size() && w[i] == u0[i % u0.size()]) ++i;
    if (i == w.size()) {
      d.overflow.push_back(w);  // never diverges from u0^infinity
      continue;
    }
    int n = static_cast<int>(i / u0.size());
    if (n > n_max) {
      d.overflow.push_back(w);
      continue;
    }
    Word pivot(std::vector<int>(
        w.syms.begin() + static_cast<long>(static_cast<std::size_t>(n) * u0.size()),
        w.syms.begin() + static_cast<long>(i)));
    pivot.push_back(u0[i % u0.size()]);
    int kind = w[i] < u0[i % u0.size()] ? 0 : 1;
    buckets[{kind, n, pivot}].push_back(w);
  }

  for (auto& [key, words] : buckets) {
    DecompositionBucket b;
    b.kind = std::get<0>(key) == 0 ? DecompositionBucket::Kind::L : DecompositionBucket::Kind::R;
    b.n = std::get<1>(key);
    b.pivot = std::get<2>(key);
    std::sort(words.begin(), words.end(), lex_less);
    b.words = std::move(words);
    d.buckets.push_back(std::move(b));
  }
  std::sort(d.buckets.begin(), d.buckets.end(), [](const auto& a, const auto& b) {
    if (a.kind != b.kind) return a.kind == DecompositionBucket::Kind::L;
    if (a.n != b.n) return a.n < b.n;
    return lex_less(a.pivot, b.pivot);
  });

  auto level_words = [&](DecompositionBucket::Kind k, int n) {
    std::vector<Word> out;
    for (const auto& b : d.buckets)
      if (b.kind == k && b.n == n) out.insert(out.end(), b.words.begin(), b.words.end());
    return out;
  };
  std::set<int> l_levels, r_levels;
  for (const auto& b : d.buckets)
    (b.kind == DecompositionBucket::Kind::L ? l_levels : r_levels).insert(b.n);
  auto check_pairwise = [&](const std::vector<Word>& a, const std::vector<Word>& b,
                            const std::string& what) {
    for (const Word& x : a)
      for (const Word& y : b)
        if (!strict_less(x, y))
          d.violations.push_back(what + ": " + g.terminals.render(x) + " !<s " +
                                 g.terminals.render(y));
  };
  for (int n : l_levels)
    for (int m : l_levels)
      if (n < m)
        check_pairwise(level_words(DecompositionBucket::Kind::L, n),
                       level_words(DecompositionBucket::Kind::L, m), "L ascending");
  for (int n : r_levels)
    for (int m : r_levels)
      if (n < m)
        check_pairwise(level_words(DecompositionBucket::Kind::R, m),
                       level_words(DecompositionBucket::Kind::R, n), "R descending");
  for (int n : l_levels)
    for (int m : r_levels)
      check_pairwise(level_words(DecompositionBucket::Kind::L, n),
                     level_words(DecompositionBucket::Kind::R, m), "L before R");
  return d;
}

// ---------------------------------------------------------------------------
// Singleton inlining

std::pair<Grammar, std::vector<std::string>> inline_singletons(const Grammar& g) {
  const int n = static_cast<int>(g.nonterminals.size());
  GrammarSccs sc = sccs_and_heights(g);
  auto adj = occurs_digraph(g);

  std::vector<char> sees_recursion(static_cast<std::size_t>(n), 0);
  for (int x = 0; x < n; ++x) {
    std::deque<int> queue{x};
    std::set<int> seen{x};
    bool hit = false;
    while (!queue.empty() && !hit) {
      int y = queue.front();
      queue.pop_front();
      if (sc.recursive[static_cast<std::size_t>(y)]) {
        hit = true;
        break;
      }
      for (int z : adj[static_cast<std::size_t>(y)])
        if (seen.insert(z).second) queue.push_back(z);
    }
    sees_recursion[static_cast<std::size_t>(x)] = hit ? 1 : 0;
  }

  // up-to-two words of the recursion-free part
  std::map<int, std::vector<Word>> memo;
  std::function<std::vector<Word>(int)> lang = [&](int x) -> std::vector<Word> {
    if (auto it = memo.find(x); it != memo.end()) return it->second;
    std::set<Word> words;
    for (const auto& p : g.productions) {
      if (p.lhs != x) continue;
      std::vector<Word> partial{Word{}};
      for (const auto& s : p.rhs) {
        std::vector<Word> next;
        if (s.terminal) {
          for (Word w : partial) {
            w.push_back(s.id);
            next.push_back(std::move(w));
          }
        } else {
          for (const Word& w : partial)
            for (const Word& t : lang(s.id)) next.push_back(w + t);
        }
        partial = std::move(next);
        if (partial.size() > 2) partial.resize(2);
      }
      for (auto& w : partial) words.insert(std::move(w));
      if (words.size() > 2) break;
    }
    std::vector<Word> out(words.begin(), words.end());
    if (out.size() > 2) out.resize(2);
    memo[x] = out;
    return out;
  };

  std::vector<std::optional<Word>> singleton(static_cast<std::size_t>(n));
  std::vector<std::string> inlined;
  for (int x = 0; x < n; ++x) {
    if (x == g.start || sees_recursion[static_cast<std::size_t>(x)]) continue;
    auto ws = lang(x);
    if (ws.size() == 1) {
      singleton[static_cast<std::size_t>(x)] = ws[0];
      inlined.push_back(g.nonterminals[static_cast<std::size_t>(x)]);
    }
  }
  if (inlined.empty()) return {g, inlined};

  Grammar out;
  out.terminals = g.terminals;
  std::vector<int> remap(static_cast<std::size_t>(n), -1);
  for (int x = 0; x < n; ++x)
    if (!singleton[static_cast<std::size_t>(x)]) {
      remap[static_cast<std::size_t>(x)] = static_cast<int>(out.nonterminals.size());
      out.nonterminals.push_back(g.nonterminals[static_cast<std::size_t>(x)]);
    }
  out.start = remap[static_cast<std::size_t>(g.start)];
  std::set<Production> prods;
  for (const auto& p : g.productions) {
    if (singleton[static_cast<std::size_t>(p.lhs)]) continue;
    Production q;
    q.lhs = remap[static_cast<std::size_t>(p.lhs)];
    for (const auto& s : p.rhs) {
      if (s.terminal) {
        q.rhs.push_back(s);
      } else if (singleton[static_cast<std::size_t>(s.id)]) {
        for (int c : singleton[static_cast<std::size_t>(s.id)]->syms)
          q.rhs.push_back({true, c});
      } else {
        q.rhs.push_back({false, remap[static_cast<std::size_t>(s.id)]});
      }
    }
    prods.insert(std::move(q));
  }
  out.productions.assign(prods.begin(), prods.end());
  validate(out);
  return {out, inlined};
}

}  // namespace ordlex
