#include "ordlex/translate.hpp"

#include <algorithm>
#include <functional>
#include <map>

namespace ordlex {

namespace {

// One production per body node, accumulated along the pair-letter path.
void emit_productions(const RecursionScheme& s, const BranchAlphabet& ba, Translation& t,
                      int eq, const Term& node, std::vector<GSym>& path) {
  Grammar& g = t.grammar;
  switch (node.kind) {
    case Term::Kind::Param:
      g.productions.push_back(
          {t.param_nonterminal[static_cast<std::size_t>(eq)][static_cast<std::size_t>(node.index)],
           path});
      return;
    case Term::Kind::Symbol: {
      if (s.sigma.arity(node.index) == 0) {
        Production p{t.fn_nonterminal[static_cast<std::size_t>(eq)], path};
        p.rhs.push_back({true, ba.leaf_token[static_cast<std::size_t>(node.index)]});
        g.productions.push_back(std::move(p));
        return;
      }
      for (std::size_t c = 0; c < node.children.size(); ++c) {
        path.push_back({true, ba.pair_token[static_cast<std::size_t>(node.index)][c]});
        emit_productions(s, ba, t, eq, node.children[c], path);
        path.pop_back();
      }
      return;
    }
    case Term::Kind::Call: {
      Production p{t.fn_nonterminal[static_cast<std::size_t>(eq)], path};
      p.rhs.push_back({false, t.fn_nonterminal[static_cast<std::size_t>(node.index)]});
      g.productions.push_back(std::move(p));
      for (std::size_t c = 0; c < node.children.size(); ++c) {
        path.push_back(
            {false,
             t.param_nonterminal[static_cast<std::size_t>(node.index)][static_cast<std::size_t>(c)]});
        emit_productions(s, ba, t, eq, node.children[c], path);
        path.pop_back();
      }
      return;
    }
  }
}

}  // namespace

Translation scheme_to_prefix_grammar(const RecursionScheme& s) {
  validate(s);
  BranchAlphabet ba = branch_alphabet(s.sigma);
  Translation t;
  t.grammar.terminals = ba.tokens;
  t.leaf_terminal_count = ba.leaf_count;

  for (const auto& eq : s.equations) {
    t.fn_nonterminal.push_back(static_cast<int>(t.grammar.nonterminals.size()));
    t.grammar.nonterminals.push_back(eq.name);
  }
  t.param_nonterminal.resize(s.equations.size());
  for (std::size_t i = 0; i < s.equations.size(); ++i)
    for (int j = 0; j < s.equations[i].arity; ++j) {
      t.param_nonterminal[i].push_back(static_cast<int>(t.grammar.nonterminals.size()));
      t.grammar.nonterminals.push_back(s.equations[i].name + "." + std::to_string(j));
    }
  t.grammar.start = t.fn_nonterminal[0];

  for (std::size_t i = 0; i < s.equations.size(); ++i) {
    std::vector<GSym> path;
    emit_productions(s, ba, t, static_cast<int>(i), s.equations[i].body, path);
  }
  validate(t.grammar);
  return t;
}

FrontierGrammarResult frontier_grammar(const Translation& t) {
  const Grammar& g = t.grammar;
  const int leaves = t.leaf_terminal_count;
  std::vector<bool> is_fn(g.nonterminals.size(), false);
  for (int f : t.fn_nonterminal) is_fn[static_cast<std::size_t>(f)] = true;

  FrontierGrammarResult out;
  out.grammar.nonterminals = g.nonterminals;
  out.grammar.start = g.start;
  std::vector<std::string> pair_tokens(g.terminals.symbols().begin() + leaves,
                                       g.terminals.symbols().end());
  if (pair_tokens.empty()) pair_tokens.push_back("0");  // single-leaf scheme, no pair letters
  out.grammar.terminals = OrderedAlphabet(pair_tokens);

  for (const auto& p : g.productions) {
    Production q;
    q.lhs = p.lhs;
    bool leaf_tail = false;
    for (std::size_t i = 0; i < p.rhs.size(); ++i) {
      const GSym& s = p.rhs[i];
      if (s.terminal && s.id < leaves) {
        if (i + 1 != p.rhs.size() || !is_fn[static_cast<std::size_t>(p.lhs)])
          throw input_error("not a translated grammar: leaf symbol in mid-production");
        leaf_tail = true;
        break;
      }
      q.rhs.push_back(s.terminal ? GSym{true, s.id - leaves} : s);
    }
    if (is_fn[static_cast<std::size_t>(p.lhs)] && !leaf_tail) {
      // call tails end in an F-family nonterminal
      if (p.rhs.empty() || p.rhs.back().terminal ||
          !is_fn[static_cast<std::size_t>(p.rhs.back().id)])
        throw input_error("not a translated grammar: F-production without leaf or call tail");
    }
    if (q.rhs.empty() && leaf_tail) {
      out.contains_epsilon = true;  // the single-leaf word quotients to epsilon
      continue;
    }
    out.grammar.productions.push_back(std::move(q));
  }
  validate(out.grammar);
  return out;
}

namespace {

struct TreeWords {
  // labeled frontier words (address length + 1) and per-parameter address
  // words, both over the translated terminal alphabet
  std::vector<std::pair<Word, int>> leaf_words;  // word, address length
  std::vector<std::vector<std::pair<Word, int>>> param_words;
};

TreeWords collect_tree_words(const PartialTree& tree, const BranchAlphabet& ba, int arity) {
  TreeWords out;
  out.param_words.resize(static_cast<std::size_t>(arity));
  std::vector<int> path;
  std::function<void(const PartialTree::Node&)> rec = [&](const PartialTree::Node& n) {
    if (n.kind == PartialTree::Node::Kind::Var) {
      out.param_words[static_cast<std::size_t>(n.label)].emplace_back(
          Word{std::vector<int>(path.begin(), path.end())}, static_cast<int>(path.size()));
      return;
    }
    if (n.kind != PartialTree::Node::Kind::Symbol) return;
    if (tree.sigma.arity(n.label) == 0) {
      Word w{std::vector<int>(path.begin(), path.end())};
      w.push_back(ba.leaf_token[static_cast<std::size_t>(n.label)]);
      out.leaf_words.emplace_back(std::move(w), static_cast<int>(path.size()));
      return;
    }
    for (std::size_t c = 0; c < n.children.size(); ++c) {
      path.push_back(ba.pair_token[static_cast<std::size_t>(n.label)][c]);
      rec(n.children[c]);
      path.pop_back();
    }
  };
  rec(tree.root);
  return out;
}

}  // namespace

ClaimReport check_claim(const RecursionScheme& s, const Translation& t, int depth,
                        int max_len) {
  ClaimReport report;
  BranchAlphabet ba = branch_alphabet(s.sigma);
  const Grammar& g = t.grammar;

  // nullable nonterminals (a body that is a bare parameter yields epsilon)
  std::vector<bool> nullable(g.nonterminals.size(), false);
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& p : g.productions) {
      if (nullable[static_cast<std::size_t>(p.lhs)]) continue;
      bool all = true;
      for (const auto& sym : p.rhs)
        if (sym.terminal || !nullable[static_cast<std::size_t>(sym.id)]) {
          all = false;
          break;
        }
      if (all) {
        nullable[static_cast<std::size_t>(p.lhs)] = true;
        changed = true;
      }
    }
  }

  Grammar ng = normalize(g, {.drop_unreachable = false}).first;
  EnumerationTable table(ng, max_len);
  auto grammar_words = [&](int original_id) {
    int id = ng.nonterminal_id(g.nonterminals[static_cast<std::size_t>(original_id)]);
    std::vector<Word> ws = id < 0 ? std::vector<Word>{} : table.words(id);
    if (nullable[static_cast<std::size_t>(original_id)]) ws.insert(ws.begin(), Word{});
    return ws;
  };
  auto render = [&](const Word& w) { return g.terminals.render(w); };

  for (std::size_t i = 0; i < s.equations.size(); ++i) {
    PartialTree tree = unfold_call(s, static_cast<int>(i), depth);
    int coverage = determined_coverage(tree);
    TreeWords tw = collect_tree_words(tree, ba, s.equations[i].arity);
    const std::string& fname = s.equations[i].name;

    // F_i: labeled frontier words
    {
      std::vector<Word> bs = grammar_words(t.fn_nonterminal[i]);
      std::set<Word> bset(bs.begin(), bs.end());
      std::set<Word> aset;
      for (const auto& [w, alen] : tw.leaf_words) {
        aset.insert(w);
        if (static_cast<int>(w.size()) <= max_len && !bset.count(w))
          report.mismatches.push_back(fname + ": tree word " + render(w) +
                                      " not derivable in the grammar");
        ++report.words_checked;
      }
      for (const Word& w : bs) {
        int alen = static_cast<int>(w.size()) - 1;
        if (alen < coverage && !aset.count(w))
          report.mismatches.push_back(fname + ": grammar word " + render(w) +
                                      " missing from the depth-" + std::to_string(depth) +
                                      " approximant");
        ++report.words_checked;
      }
    }
    // (F_i, j): parameter-leaf addresses
    for (int j = 0; j < s.equations[i].arity; ++j) {
      std::vector<Word> bs = grammar_words(t.param_nonterminal[i][static_cast<std::size_t>(j)]);
      std::set<Word> bset(bs.begin(), bs.end());
      std::set<Word> aset;
      const std::string pname = fname + "." + std::to_string(j);
      for (const auto& [w, alen] : tw.param_words[static_cast<std::size_t>(j)]) {
        aset.insert(w);
        if (static_cast<int>(w.size()) <= max_len && !bset.count(w))
          report.mismatches.push_back(pname + ": tree word " + render(w) +
                                      " not derivable in the grammar");
        ++report.words_checked;
      }
      for (const Word& w : bs) {
        if (static_cast<int>(w.size()) < coverage && !aset.count(w))
          report.mismatches.push_back(pname + ": grammar word " + render(w) +
                                      " missing from the depth-" + std::to_string(depth) +
                                      " approximant");
        ++report.words_checked;
      }
    }
  }
  return report;
}

std::vector<std::string> translation_violations(const RecursionScheme& s, const Translation& t) {
  Translation fresh = scheme_to_prefix_grammar(s);
  std::vector<std::string> out;
  if (fresh.grammar.nonterminals != t.grammar.nonterminals)
    out.push_back("nonterminal set differs from the construction");
  if (!(fresh.grammar.terminals == t.grammar.terminals))
    out.push_back("terminal alphabet differs from the construction");
  auto key = [](const Grammar& g, const Production& p) {
    std::string k = g.nonterminals[static_cast<std::size_t>(p.lhs)] + " ->";
    for (const auto& sym : p.rhs)
      k += " " + (sym.terminal ? g.terminals.symbol(sym.id)
                               : g.nonterminals[static_cast<std::size_t>(sym.id)]);
    return k;
  };
  std::set<std::string> want, have;
  for (const auto& p : fresh.grammar.productions) want.insert(key(fresh.grammar, p));
  for (const auto& p : t.grammar.productions) have.insert(key(t.grammar, p));
  for (const auto& k : want)
    if (!have.count(k)) out.push_back("missing production: " + k);
  for (const auto& k : have)
    if (!want.count(k)) out.push_back("extra production: " + k);
  return out;
}

}  // namespace ordlex
