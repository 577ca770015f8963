#include "ordlex/scheme.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <limits>
#include <set>
#include <sstream>

namespace ordlex {

// ---------------------------------------------------------------------------
// Ranked alphabet and terms

RankedAlphabet::RankedAlphabet(std::vector<Entry> entries) : entries_(std::move(entries)) {
  if (entries_.empty()) throw input_error("ranked alphabet must be nonempty");
  std::set<std::string> seen;
  for (const auto& e : entries_) {
    if (e.name.empty()) throw input_error("ranked alphabet symbol must be named");
    if (e.arity < 0) throw input_error("negative arity for symbol " + e.name);
    if (!seen.insert(e.name).second) throw input_error("duplicate symbol " + e.name);
  }
}

RankedAlphabet RankedAlphabet::delta() { return RankedAlphabet({{"+", 2}, {"1", 0}}); }

bool RankedAlphabet::is_delta() const {
  return entries_.size() == 2 && entries_[0].name == "+" && entries_[0].arity == 2 &&
         entries_[1].name == "1" && entries_[1].arity == 0;
}

std::optional<int> RankedAlphabet::id_of(std::string_view name) const {
  for (int i = 0; i < size(); ++i)
    if (entries_[static_cast<std::size_t>(i)].name == name) return i;
  return std::nullopt;
}

int RankedAlphabet::max_rank() const {
  int r = 0;
  for (const auto& e : entries_) r = std::max(r, e.arity);
  return r;
}

Term Term::symbol(int id, std::vector<Term> kids) {
  Term t;
  t.kind = Kind::Symbol;
  t.index = id;
  t.children = std::move(kids);
  return t;
}

Term Term::param(int j) {
  Term t;
  t.kind = Kind::Param;
  t.index = j;
  return t;
}

Term Term::call(int eq, std::vector<Term> args) {
  Term t;
  t.kind = Kind::Call;
  t.index = eq;
  t.children = std::move(args);
  return t;
}

// ---------------------------------------------------------------------------
// Validation

namespace {

void validate_term(const RecursionScheme& s, const Term& t, int arity) {
  switch (t.kind) {
    case Term::Kind::Symbol: {
      if (t.index < 0 || t.index >= s.sigma.size())
        throw input_error("term references unknown symbol");
      if (static_cast<int>(t.children.size()) != s.sigma.arity(t.index))
        throw input_error("arity mismatch at symbol " + s.sigma.name(t.index));
      break;
    }
    case Term::Kind::Param:
      if (t.index < 0 || t.index >= arity)
        throw input_error("parameter index x" + std::to_string(t.index) + " out of range");
      if (!t.children.empty()) throw input_error("parameters are leaves");
      return;
    case Term::Kind::Call: {
      if (t.index < 0 || t.index >= static_cast<int>(s.equations.size()))
        throw input_error("call to undefined function variable");
      const Equation& eq = s.equations[static_cast<std::size_t>(t.index)];
      if (static_cast<int>(t.children.size()) != eq.arity)
        throw input_error("arity mismatch at call of " + eq.name);
      break;
    }
  }
  for (const Term& c : t.children) validate_term(s, c, arity);
}

bool parameter_like(const std::string& name) {
  return name.size() >= 2 && name[0] == 'x' &&
         std::all_of(name.begin() + 1, name.end(),
                     [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
}

}  // namespace

void validate(const RecursionScheme& s) {
  if (s.equations.empty()) throw input_error("scheme needs at least one equation");
  if (s.equations.front().arity != 0)
    throw input_error("principal function variable must have no parameters");
  std::set<std::string> names;
  for (const auto& eq : s.equations) {
    if (!names.insert(eq.name).second) throw input_error("duplicate equation " + eq.name);
    if (s.sigma.id_of(eq.name))
      throw input_error("function variable collides with alphabet symbol: " + eq.name);
    if (parameter_like(eq.name))
      throw input_error("function variable name is reserved for parameters: " + eq.name);
    if (eq.arity < 0) throw input_error("negative arity");
  }
  for (const auto& eq : s.equations) validate_term(s, eq.body, eq.arity);
}

bool is_regular(const RecursionScheme& s) {
  return std::all_of(s.equations.begin(), s.equations.end(),
                     [](const Equation& e) { return e.arity == 0; });
}

// ---------------------------------------------------------------------------
// Scheme text format

namespace {

bool name_char(char c) {
  return !std::isspace(static_cast<unsigned char>(c)) && c != '(' && c != ')' && c != ',' &&
         c != '=' && c != '#';
}

std::string trim(const std::string& in) {
  std::size_t b = 0, e = in.size();
  while (b < e && std::isspace(static_cast<unsigned char>(in[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(in[e - 1]))) --e;
  return in.substr(b, e - b);
}

struct TermParser {
  std::string_view text;
  std::size_t pos = 0;
  const RecursionScheme* scheme;
  int arity;  // of the enclosing equation

  void skip() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }
  [[noreturn]] void fail(const std::string& msg) { throw parse_error("term: " + msg); }

  std::string name() {
    skip();
    std::size_t start = pos;
    while (pos < text.size() && name_char(text[pos])) ++pos;
    if (pos == start) fail("expected a name in '" + std::string(text) + "'");
    return std::string(text.substr(start, pos - start));
  }

  Term parse() {
    std::string n = name();
    std::vector<Term> args;
    bool parens = false;
    skip();
    if (pos < text.size() && text[pos] == '(') {
      parens = true;
      ++pos;
      skip();
      if (pos < text.size() && text[pos] == ')') {
        ++pos;
      } else {
        while (true) {
          args.push_back(parse());
          skip();
          if (pos < text.size() && text[pos] == ',') {
            ++pos;
            continue;
          }
          if (pos < text.size() && text[pos] == ')') {
            ++pos;
            break;
          }
          fail("expected ',' or ')'");
        }
      }
    }
    if (!parens && parameter_like(n)) {
      int j = std::stoi(n.substr(1));
      if (j >= arity) fail("parameter x" + std::to_string(j) + " out of range");
      return Term::param(j);
    }
    for (std::size_t i = 0; i < scheme->equations.size(); ++i) {
      if (scheme->equations[i].name == n) {
        if (static_cast<int>(args.size()) != scheme->equations[i].arity)
          fail("arity mismatch: " + n + " takes " +
               std::to_string(scheme->equations[i].arity) + " argument(s)");
        return Term::call(static_cast<int>(i), std::move(args));
      }
    }
    if (auto id = scheme->sigma.id_of(n)) {
      if (static_cast<int>(args.size()) != scheme->sigma.arity(*id))
        fail("arity mismatch at symbol " + n);
      return Term::symbol(*id, std::move(args));
    }
    fail("undefined name: " + n);
  }
};

}  // namespace

RecursionScheme parse_scheme(std::string_view text) {
  RecursionScheme s;
  s.sigma = RankedAlphabet::delta();

  std::vector<std::pair<std::string, std::string>> raw;
  std::istringstream in{std::string(text)};
  std::string line;
  bool first_content = true;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    if (first_content && line.rfind("alphabet:", 0) == 0) {
      std::vector<RankedAlphabet::Entry> entries;
      std::istringstream decl(line.substr(9));
      std::string item;
      while (std::getline(decl, item, ',')) {
        auto slash = item.find('/');
        if (slash == std::string::npos)
          throw parse_error("alphabet entry needs name/arity: " + item);
        try {
          entries.push_back({trim(item.substr(0, slash)), std::stoi(item.substr(slash + 1))});
        } catch (const input_error&) {
          throw;
        } catch (const std::exception&) {
          throw parse_error("bad arity in alphabet entry: " + item);
        }
      }
      s.sigma = RankedAlphabet(std::move(entries));
      first_content = false;
      continue;
    }
    first_content = false;
    auto eq = line.find('=');
    if (eq == std::string::npos) throw parse_error("equation line needs '=': " + line);
    raw.emplace_back(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  if (raw.empty()) throw parse_error("scheme has no equations");

  for (auto& [lhs, rhs] : raw) {
    (void)rhs;
    Equation e;
    auto paren = lhs.find('(');
    if (paren == std::string::npos) {
      e.name = lhs;
    } else {
      e.name = trim(lhs.substr(0, paren));
      std::string params = trim(lhs.substr(paren));
      if (params.empty() || params.back() != ')')
        throw parse_error("bad parameter list: " + lhs);
      params = params.substr(1, params.size() - 2);
      int expect = 0;
      std::istringstream ps(params);
      std::string p;
      while (std::getline(ps, p, ',')) {
        if (trim(p) != "x" + std::to_string(expect))
          throw parse_error("parameters must be x0, x1, ... in order; got " + trim(p));
        ++expect;
      }
      e.arity = expect;
    }
    if (e.name.empty() || !std::all_of(e.name.begin(), e.name.end(), name_char))
      throw parse_error("bad equation name: " + lhs);
    e.body = Term::param(0);  // placeholder until the second pass
    s.equations.push_back(std::move(e));
  }

  for (std::size_t i = 0; i < raw.size(); ++i) {
    TermParser tp{raw[i].second, 0, &s, s.equations[i].arity};
    s.equations[i].body = tp.parse();
    tp.skip();
    if (tp.pos != tp.text.size())
      throw parse_error("trailing input after term: " + raw[i].second);
  }
  validate(s);
  return s;
}

namespace {

void print_term(std::ostream& out, const RecursionScheme& s, const Term& t) {
  switch (t.kind) {
    case Term::Kind::Symbol: out << s.sigma.name(t.index); break;
    case Term::Kind::Param: out << 'x' << t.index; return;
    case Term::Kind::Call: out << s.equations[static_cast<std::size_t>(t.index)].name; break;
  }
  if (!t.children.empty()) {
    out << '(';
    for (std::size_t i = 0; i < t.children.size(); ++i) {
      if (i) out << ", ";
      print_term(out, s, t.children[i]);
    }
    out << ')';
  }
}

}  // namespace

std::string to_text(const RecursionScheme& s) {
  std::ostringstream out;
  if (!s.sigma.is_delta()) {
    out << "alphabet: ";
    for (int i = 0; i < s.sigma.size(); ++i) {
      if (i) out << ", ";
      out << s.sigma.name(i) << '/' << s.sigma.arity(i);
    }
    out << '\n';
  }
  for (const auto& eq : s.equations) {
    out << eq.name;
    if (eq.arity > 0) {
      out << '(';
      for (int j = 0; j < eq.arity; ++j) {
        if (j) out << ", ";
        out << 'x' << j;
      }
      out << ')';
    }
    out << " = ";
    print_term(out, s, eq.body);
    out << '\n';
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// Head productivity: can the root of F_i(args) ever become determined? A
// least fixed point of boolean tables indexed by per-argument bits. A false
// result means the call denotes bottom at its root; such pending nodes are
// permanently undefined and never expanded.

namespace {

class Productivity {
 public:
  explicit Productivity(const RecursionScheme& s) {
    tables_.resize(s.equations.size());
    for (std::size_t i = 0; i < s.equations.size(); ++i) {
      int k = s.equations[i].arity;
      if (k > 20) throw input_error("arity too large for productivity analysis");
      tables_[i].assign(std::size_t{1} << k, 0);
    }
    bool changed = true;
    while (changed) {
      changed = false;
      for (std::size_t i = 0; i < s.equations.size(); ++i) {
        for (std::size_t mask = 0; mask < tables_[i].size(); ++mask) {
          if (tables_[i][mask]) continue;
          if (eval(s.equations[i].body, static_cast<unsigned>(mask))) {
            tables_[i][mask] = 1;
            changed = true;
          }
        }
      }
    }
  }

  // Closed terms: parameters stand for free-variable leaves, whose heads
  // are determined.
  bool term_productive(const Term& t) const { return eval(t, ~0u); }

  bool call_productive(int fn, const std::vector<Term>& args) const {
    unsigned mask = 0;
    for (std::size_t j = 0; j < args.size(); ++j)
      if (term_productive(args[j])) mask |= 1u << j;
    return tables_[static_cast<std::size_t>(fn)][mask] != 0;
  }

 private:
  bool eval(const Term& t, unsigned env) const {
    switch (t.kind) {
      case Term::Kind::Symbol: return true;
      case Term::Kind::Param: return (env >> t.index) & 1u;
      case Term::Kind::Call: {
        unsigned mask = 0;
        for (std::size_t j = 0; j < t.children.size(); ++j)
          if (eval(t.children[j], env)) mask |= 1u << j;
        return tables_[static_cast<std::size_t>(t.index)][mask] != 0;
      }
    }
    return false;
  }

  std::vector<std::vector<char>> tables_;
};

Term subst(const Term& t, const std::vector<Term>& args) {
  switch (t.kind) {
    case Term::Kind::Param: return args[static_cast<std::size_t>(t.index)];
    case Term::Kind::Symbol:
    case Term::Kind::Call: {
      Term out = t;
      for (auto& c : out.children) c = subst(c, args);
      return out;
    }
  }
  return t;
}

PartialTree::Node materialize(const Term& t, const Productivity& prod) {
  PartialTree::Node n;
  switch (t.kind) {
    case Term::Kind::Symbol:
      n.kind = PartialTree::Node::Kind::Symbol;
      n.label = t.index;
      for (const Term& c : t.children) n.children.push_back(materialize(c, prod));
      break;
    case Term::Kind::Param:
      n.kind = PartialTree::Node::Kind::Var;
      n.label = t.index;
      break;
    case Term::Kind::Call:
      n.kind = PartialTree::Node::Kind::Pending;
      n.pending.fn = t.index;
      n.pending.args = t.children;
      n.pending.stalled = !prod.call_productive(t.index, t.children);
      break;
  }
  return n;
}

void collect_pending(PartialTree::Node& n, std::vector<PartialTree::Node*>& out) {
  if (n.kind == PartialTree::Node::Kind::Pending) {
    if (!n.pending.stalled) out.push_back(&n);
    return;
  }
  for (auto& c : n.children) collect_pending(c, out);
}

PartialTree unfold_from(const RecursionScheme& s, Term seed, int depth) {
  validate(s);
  Productivity prod(s);
  PartialTree t;
  t.sigma = s.sigma;
  t.root = materialize(seed, prod);
  for (int round = 0; round < depth; ++round) {
    std::vector<PartialTree::Node*> pend;
    collect_pending(t.root, pend);
    if (pend.empty()) break;
    for (PartialTree::Node* n : pend) {
      const Equation& eq = s.equations[static_cast<std::size_t>(n->pending.fn)];
      Term closed = subst(eq.body, n->pending.args);
      *n = materialize(closed, prod);
    }
  }
  return t;
}

void walk(const PartialTree::Node& n, Word& addr,
          const std::function<void(const PartialTree::Node&, const Word&)>& visit) {
  visit(n, addr);
  for (std::size_t i = 0; i < n.children.size(); ++i) {
    addr.push_back(static_cast<int>(i));
    walk(n.children[i], addr, visit);
    addr.syms.pop_back();
  }
}

}  // namespace

PartialTree unfold(const RecursionScheme& s, int depth) {
  if (depth < 0) throw input_error("unfold depth must be nonnegative");
  return unfold_from(s, Term::call(0), depth);
}

PartialTree unfold_call(const RecursionScheme& s, int fn, int depth) {
  if (fn < 0 || fn >= static_cast<int>(s.equations.size()))
    throw input_error("unfold_call: no such equation");
  if (depth < 0) throw input_error("unfold depth must be nonnegative");
  std::vector<Term> args;
  for (int j = 0; j < s.equations[static_cast<std::size_t>(fn)].arity; ++j)
    args.push_back(Term::param(j));
  return unfold_from(s, Term::call(fn, std::move(args)), depth);
}

int determined_coverage(const PartialTree& t) {
  int cover = std::numeric_limits<int>::max();
  Word addr;
  walk(t.root, addr, [&](const PartialTree::Node& n, const Word& a) {
    if (n.kind == PartialTree::Node::Kind::Pending && !n.pending.stalled)
      cover = std::min(cover, static_cast<int>(a.size()));
  });
  return cover;
}

std::vector<std::pair<Word, int>> frontier(const PartialTree& t) {
  std::vector<std::pair<Word, int>> out;
  Word addr;
  walk(t.root, addr, [&](const PartialTree::Node& n, const Word& a) {
    if (n.kind == PartialTree::Node::Kind::Symbol && t.sigma.arity(n.label) == 0)
      out.emplace_back(a, n.label);
  });
  std::sort(out.begin(), out.end(),
            [](const auto& x, const auto& y) { return lex_less(x.first, y.first); });
  return out;
}

std::vector<Word> param_leaf_addresses(const PartialTree& t, int j) {
  std::vector<Word> out;
  Word addr;
  walk(t.root, addr, [&](const PartialTree::Node& n, const Word& a) {
    if (n.kind == PartialTree::Node::Kind::Var && n.label == j) out.push_back(a);
  });
  std::sort(out.begin(), out.end(), lex_less);
  return out;
}

BranchAlphabet branch_alphabet(const RankedAlphabet& sigma) {
  BranchAlphabet ba;
  std::vector<std::string> tokens;
  ba.leaf_token.assign(static_cast<std::size_t>(sigma.size()), -1);
  ba.pair_token.assign(static_cast<std::size_t>(sigma.size()), {});
  const bool delta = sigma.is_delta();
  for (int i = 0; i < sigma.size(); ++i) {
    if (sigma.arity(i) != 0) continue;
    ba.leaf_token[static_cast<std::size_t>(i)] = static_cast<int>(tokens.size());
    tokens.push_back(sigma.name(i) == "1" ? "one" : sigma.name(i));
  }
  ba.leaf_count = static_cast<int>(tokens.size());
  for (int j = 0; j < sigma.max_rank(); ++j)
    for (int i = 0; i < sigma.size(); ++i) {
      if (j >= sigma.arity(i)) continue;
      auto& row = ba.pair_token[static_cast<std::size_t>(i)];
      row.resize(static_cast<std::size_t>(sigma.arity(i)), -1);
      row[static_cast<std::size_t>(j)] = static_cast<int>(tokens.size());
      tokens.push_back(delta ? std::to_string(j) : sigma.name(i) + "." + std::to_string(j));
    }
  ba.tokens = OrderedAlphabet(std::move(tokens));
  return ba;
}

BranchWords branch_words(const PartialTree& t, BranchKind kind) {
  BranchAlphabet ba = branch_alphabet(t.sigma);
  std::vector<std::string> tokens = ba.tokens.symbols();
  std::vector<int> symbol_token(static_cast<std::size_t>(t.sigma.size()), -1);
  for (int i = 0; i < t.sigma.size(); ++i) {
    if (t.sigma.arity(i) == 0) {
      symbol_token[static_cast<std::size_t>(i)] = ba.leaf_token[static_cast<std::size_t>(i)];
    } else if (kind == BranchKind::Pbr) {
      symbol_token[static_cast<std::size_t>(i)] = static_cast<int>(tokens.size());
      tokens.push_back(t.sigma.name(i));
    }
  }
  BranchWords out;
  out.tokens = OrderedAlphabet(std::move(tokens));

  std::vector<int> path;
  std::function<void(const PartialTree::Node&)> rec = [&](const PartialTree::Node& n) {
    if (n.kind != PartialTree::Node::Kind::Symbol) return;
    bool leaf = t.sigma.arity(n.label) == 0;
    if (kind == BranchKind::Pbr || leaf) {
      Word w{std::vector<int>(path.begin(), path.end())};
      w.push_back(symbol_token[static_cast<std::size_t>(n.label)]);
      out.words.push_back(std::move(w));
    }
    for (std::size_t i = 0; i < n.children.size(); ++i) {
      path.push_back(ba.pair_token[static_cast<std::size_t>(n.label)][i]);
      rec(n.children[i]);
      path.pop_back();
    }
  };
  rec(t.root);
  std::sort(out.words.begin(), out.words.end(), lex_less);
  return out;
}

PartialTree complete_omega(const PartialTree& t) {
  std::vector<RankedAlphabet::Entry> entries = t.sigma.entries();
  std::string omega = "Omega";
  while (t.sigma.id_of(omega)) omega += "_";
  entries.push_back({omega, 0});
  PartialTree out;
  out.sigma = RankedAlphabet(std::move(entries));
  const int omega_id = out.sigma.size() - 1;

  std::function<PartialTree::Node(const PartialTree::Node&)> rec =
      [&](const PartialTree::Node& n) -> PartialTree::Node {
    PartialTree::Node m;
    if (n.kind == PartialTree::Node::Kind::Symbol) {
      m.kind = PartialTree::Node::Kind::Symbol;
      m.label = n.label;
      for (const auto& c : n.children) m.children.push_back(rec(c));
    } else if (n.kind == PartialTree::Node::Kind::Var) {
      m = n;
    } else {
      m.kind = PartialTree::Node::Kind::Symbol;
      m.label = omega_id;
    }
    return m;
  };
  out.root = rec(t.root);
  return out;
}

// ---------------------------------------------------------------------------
// Closure constructions

namespace {

void require_delta(const RecursionScheme& s, const char* op) {
  if (!s.sigma.is_delta())
    throw input_error(std::string(op) + " requires schemes over the binary alphabet");
}

std::string fresh_name(std::set<std::string>& used, const std::string& base) {
  if (used.insert(base).second) return base;
  for (int i = 2;; ++i) {
    std::string cand = base + std::to_string(i);
    if (used.insert(cand).second) return cand;
  }
}

Term shift_calls(const Term& t, int by) {
  Term out = t;
  if (out.kind == Term::Kind::Call) out.index += by;
  for (auto& c : out.children) c = shift_calls(c, by);
  return out;
}

Term replace_leaf_with_call(const Term& t, int leaf_symbol, int target) {
  if (t.kind == Term::Kind::Symbol && t.index == leaf_symbol) return Term::call(target);
  Term out = t;
  for (auto& c : out.children) c = replace_leaf_with_call(c, leaf_symbol, target);
  return out;
}

}  // namespace

RecursionScheme scheme_sum(const RecursionScheme& a, const RecursionScheme& b) {
  require_delta(a, "scheme_sum");
  require_delta(b, "scheme_sum");
  RecursionScheme out;
  out.sigma = RankedAlphabet::delta();
  std::set<std::string> used;
  const int na = static_cast<int>(a.equations.size());
  out.equations.push_back(
      {fresh_name(used, "F0"), 0, Term::symbol(0, {Term::call(1), Term::call(1 + na)})});
  for (const auto& eq : a.equations)
    out.equations.push_back({fresh_name(used, eq.name), eq.arity, shift_calls(eq.body, 1)});
  for (const auto& eq : b.equations)
    out.equations.push_back({fresh_name(used, eq.name), eq.arity, shift_calls(eq.body, 1 + na)});
  validate(out);
  return out;
}

RecursionScheme scheme_product(const RecursionScheme& outer, const RecursionScheme& inner) {
  require_delta(outer, "scheme_product");
  require_delta(inner, "scheme_product");
  RecursionScheme out;
  out.sigma = RankedAlphabet::delta();
  std::set<std::string> used;
  const int n_outer = static_cast<int>(outer.equations.size());
  const int one_id = 1;
  for (const auto& eq : outer.equations)
    out.equations.push_back({fresh_name(used, eq.name), eq.arity,
                             replace_leaf_with_call(eq.body, one_id, n_outer)});
  for (const auto& eq : inner.equations)
    out.equations.push_back(
        {fresh_name(used, eq.name), eq.arity, shift_calls(eq.body, n_outer)});
  validate(out);
  return out;
}

namespace {

// Geometric construction: every function variable gains one trailing
// parameter, leaf constants become that parameter, calls thread it through.
Term thread_extra_param(const Term& t, int leaf_symbol, int extra_param, int call_shift) {
  switch (t.kind) {
    case Term::Kind::Symbol: {
      if (t.index == leaf_symbol) return Term::param(extra_param);
      Term out = t;
      for (auto& c : out.children)
        c = thread_extra_param(c, leaf_symbol, extra_param, call_shift);
      return out;
    }
    case Term::Kind::Param: return t;
    case Term::Kind::Call: {
      Term out = t;
      out.index += call_shift;
      for (auto& c : out.children)
        c = thread_extra_param(c, leaf_symbol, extra_param, call_shift);
      out.children.push_back(Term::param(extra_param));
      return out;
    }
  }
  return t;
}

}  // namespace

RecursionScheme scheme_geometric(const RecursionScheme& s) {
  require_delta(s, "scheme_geometric");
  RecursionScheme out;
  out.sigma = RankedAlphabet::delta();
  std::set<std::string> used;
  const int plus_id = 0, one_id = 1;

  // F0 = G(1); G(x0) = +(x0, G(H(x0))) where H is the transformed principal.
  out.equations.push_back({fresh_name(used, "F0"), 0, Term::call(1, {Term::symbol(one_id)})});
  out.equations.push_back(
      {fresh_name(used, "G"), 1,
       Term::symbol(plus_id,
                    {Term::param(0), Term::call(1, {Term::call(2, {Term::param(0)})})})});
  for (const auto& eq : s.equations)
    out.equations.push_back({fresh_name(used, eq.name), eq.arity + 1,
                             thread_extra_param(eq.body, one_id, eq.arity, 2)});
  validate(out);
  return out;
}

// ---------------------------------------------------------------------------
// Ordinal synthesis

namespace {

SynthPlan plan_leaf(SynthPlan::Kind k) {
  SynthPlan p;
  p.kind = k;
  return p;
}

SynthPlan plan_node(SynthPlan::Kind k, std::vector<SynthPlan> kids) {
  SynthPlan p;
  p.kind = k;
  p.kids = std::move(kids);
  return p;
}

RecursionScheme omega_scheme() {
  RecursionScheme s;
  s.sigma = RankedAlphabet::delta();
  s.equations.push_back({"F0", 0, Term::symbol(0, {Term::symbol(1), Term::call(0)})});
  return s;
}

RecursionScheme one_scheme() {
  RecursionScheme s;
  s.sigma = RankedAlphabet::delta();
  s.equations.push_back({"F0", 0, Term::symbol(1)});
  return s;
}

RecursionScheme zero_scheme() {
  RecursionScheme s;
  s.sigma = RankedAlphabet::delta();
  s.equations.push_back({"F0", 0, Term::call(0)});
  return s;
}

struct Synthesizer {
  // w^(w^k) as the k-fold geometric sum over the omega scheme.
  Synthesis tower(int k) {
    Synthesis r{omega_scheme(), plan_leaf(SynthPlan::Kind::Omega)};
    for (int i = 0; i < k; ++i)
      r = {scheme_geometric(r.scheme), plan_node(SynthPlan::Kind::Geometric, {r.plan})};
    return r;
  }

  // acc * next (next copies of acc): next is the outer factor.
  Synthesis times(Synthesis acc, Synthesis next) {
    return {scheme_product(next.scheme, acc.scheme),
            plan_node(SynthPlan::Kind::Product, {next.plan, acc.plan})};
  }

  // w^e for e < w^w; CNF terms of e most significant first, products
  // associated to the left.
  Synthesis omega_power(const Ordinal& e) {
    std::optional<Synthesis> acc;
    for (const auto& term : e.terms()) {
      int k = static_cast<int>(term.exponent.finite_value());
      for (std::uint64_t c = 0; c < term.coeff; ++c) {
        Synthesis w = tower(k);
        acc = acc ? times(std::move(*acc), std::move(w)) : std::move(w);
      }
    }
    if (!acc) return {one_scheme(), plan_leaf(SynthPlan::Kind::One)};
    return std::move(*acc);
  }

  Synthesis run(const Ordinal& a) {
    if (a.is_zero()) return {zero_scheme(), plan_leaf(SynthPlan::Kind::Zero)};
    std::vector<Synthesis> parts;
    for (const auto& term : a.terms())
      for (std::uint64_t c = 0; c < term.coeff; ++c)
        parts.push_back(term.exponent.is_zero()
                            ? Synthesis{one_scheme(), plan_leaf(SynthPlan::Kind::One)}
                            : omega_power(term.exponent));
    Synthesis acc = std::move(parts.back());
    for (std::size_t i = parts.size() - 1; i-- > 0;)
      acc = {scheme_sum(parts[i].scheme, acc.scheme),
             plan_node(SynthPlan::Kind::Sum, {std::move(parts[i].plan), std::move(acc.plan)})};
    return acc;
  }
};

void canonical_names(RecursionScheme& s) {
  for (std::size_t i = 0; i < s.equations.size(); ++i)
    s.equations[i].name = "F" + std::to_string(i);
}

}  // namespace

Synthesis synthesize_ordinal(const Ordinal& a) {
  if (!is_below_omega_tower(a))
    throw input_error("ordinal out of range: " + to_string(a) + " is not below w^(w^w)");
  for (const auto& t : a.terms())
    for (const auto& e : t.exponent.terms())
      if (!e.exponent.is_finite())
        throw input_error("ordinal out of range: exponent of " + to_string(a) +
                          " is not below w^w");
  Synthesis s = Synthesizer{}.run(a);
  canonical_names(s.scheme);
  validate(s.scheme);
  return s;
}

RecursionScheme scheme_for_ordinal(const Ordinal& a) { return synthesize_ordinal(a).scheme; }

// ---------------------------------------------------------------------------
// Plan order types and address decoding

Ordinal plan_order_type(const SynthPlan& p) {
  switch (p.kind) {
    case SynthPlan::Kind::Zero: return Ordinal();
    case SynthPlan::Kind::One: return Ordinal::finite(1);
    case SynthPlan::Kind::Omega: return Ordinal::omega();
    case SynthPlan::Kind::Sum:
      return cnf_add(plan_order_type(p.kids[0]), plan_order_type(p.kids[1]));
    case SynthPlan::Kind::Product:
      return cnf_mul(plan_order_type(p.kids[1]), plan_order_type(p.kids[0]));
    case SynthPlan::Kind::Geometric: {
      // order type of the geometric sum 1 + a + a^2 + ...
      Ordinal base = plan_order_type(p.kids[0]);
      if (base.is_zero()) return Ordinal::finite(1);
      if (base == Ordinal::finite(1)) return Ordinal::omega();
      return omega_pow(base);
    }
  }
  return Ordinal();
}

namespace {

[[noreturn]] void bad_address() {
  throw input_error("address is not a leaf of the plan tree");
}

// Position of the leaf at w[i..] inside base[1 -> block]; a null block is
// the plain leaf constant.
Ordinal decode_in(const SynthPlan& base, const SynthPlan* block, const Word& w, std::size_t i);

Ordinal decode_block(const SynthPlan* block, const Word& w, std::size_t i) {
  if (block == nullptr) {
    if (i != w.size()) bad_address();
    return Ordinal();
  }
  return decode_in(*block, nullptr, w, i);
}

Ordinal block_type(const SynthPlan* block) {
  return block ? plan_order_type(*block) : Ordinal::finite(1);
}

Ordinal decode_in(const SynthPlan& base, const SynthPlan* block, const Word& w, std::size_t i) {
  switch (base.kind) {
    case SynthPlan::Kind::Zero: bad_address();
    case SynthPlan::Kind::One: return decode_block(block, w, i);
    case SynthPlan::Kind::Omega: {
      std::uint64_t n = 0;
      while (i < w.size() && w[i] == 1) {
        ++n;
        ++i;
      }
      if (i >= w.size() || w[i] != 0) bad_address();
      return cnf_add(cnf_mul(block_type(block), Ordinal::finite(n)),
                     decode_block(block, w, i + 1));
    }
    case SynthPlan::Kind::Sum: {
      if (i >= w.size()) bad_address();
      if (w[i] == 0) return decode_in(base.kids[0], block, w, i + 1);
      if (w[i] != 1) bad_address();
      Ordinal left = cnf_mul(block_type(block), plan_order_type(base.kids[0]));
      return cnf_add(left, decode_in(base.kids[1], block, w, i + 1));
    }
    case SynthPlan::Kind::Product: {
      if (block == nullptr) return decode_in(base.kids[0], &base.kids[1], w, i);
      // (p[1->q])[1->block] = p[1 -> q[1->block]]
      SynthPlan composed = plan_node(SynthPlan::Kind::Product, {base.kids[1], *block});
      return decode_in(base.kids[0], &composed, w, i);
    }
    case SynthPlan::Kind::Geometric: {
      // tree +(seed, +(H(seed), +(H^2(seed), ...))), H^n(seed) of type
      // seed * r^n
      std::uint64_t n = 0;
      while (i < w.size() && w[i] == 1) {
        ++n;
        ++i;
      }
      if (i >= w.size() || w[i] != 0) bad_address();
      const SynthPlan& r = base.kids[0];
      Ordinal rt = plan_order_type(r);
      Ordinal partial, power = Ordinal::finite(1);
      for (std::uint64_t m = 0; m < n; ++m) {
        partial = cnf_add(partial, power);
        power = cnf_mul(power, rt);
      }
      Ordinal offset = cnf_mul(block_type(block), partial);
      SynthPlan chain = block ? *block : plan_leaf(SynthPlan::Kind::One);
      for (std::uint64_t m = 0; m < n; ++m)
        chain = plan_node(SynthPlan::Kind::Product, {r, std::move(chain)});
      return cnf_add(offset, decode_in(chain, nullptr, w, i + 1));
    }
  }
  bad_address();
}

}  // namespace

Ordinal decode_address(const SynthPlan& p, const Word& address) {
  return decode_in(p, nullptr, address, 0);
}

}  // namespace ordlex
