// First-order recursion schemes over ranked alphabets: parsing, Kleene
// unfolding to partial trees, frontier/branch languages, completion, the
// closure constructions (sum, product, geometric sum) and the synthesizer
// producing a scheme for every ordinal below w^(w^w).
#ifndef ORDLEX_SCHEME_HPP
#define ORDLEX_SCHEME_HPP

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ordlex/ordinal.hpp"
#include "ordlex/words.hpp"

namespace ordlex {

class RankedAlphabet {
 public:
  struct Entry {
    std::string name;
    int arity = 0;
  };

  RankedAlphabet() = default;
  explicit RankedAlphabet(std::vector<Entry> entries);

  // The binary alphabet Delta: + of arity 2 and the leaf constant 1.
  static RankedAlphabet delta();
  bool is_delta() const;

  int size() const { return static_cast<int>(entries_.size()); }
  const Entry& entry(int id) const { return entries_.at(static_cast<std::size_t>(id)); }
  const std::vector<Entry>& entries() const { return entries_; }
  int arity(int id) const { return entry(id).arity; }
  const std::string& name(int id) const { return entry(id).name; }
  std::optional<int> id_of(std::string_view name) const;
  int max_rank() const;

  friend bool operator==(const RankedAlphabet& a, const RankedAlphabet& b) {
    for (std::size_t i = 0; i < a.entries_.size(); ++i) {
      if (i >= b.entries_.size() || a.entries_[i].name != b.entries_[i].name ||
          a.entries_[i].arity != b.entries_[i].arity)
        return false;
    }
    return a.entries_.size() == b.entries_.size();
  }

 private:
  std::vector<Entry> entries_;
};

// A term over Sigma and the scheme's function variables, with parameters x_j.
struct Term {
  enum class Kind { Symbol, Param, Call };
  Kind kind = Kind::Symbol;
  int index = -1;  // symbol id, parameter index, or equation index
  std::vector<Term> children;

  static Term symbol(int id, std::vector<Term> kids = {});
  static Term param(int j);
  static Term call(int eq, std::vector<Term> args = {});

  friend bool operator==(const Term& a, const Term& b) {
    return a.kind == b.kind && a.index == b.index && a.children == b.children;
  }
};

struct Equation {
  std::string name;
  int arity = 0;
  Term body;
};

struct RecursionScheme {
  RankedAlphabet sigma;
  std::vector<Equation> equations;  // the first equation is principal
};

// Structural checks: principal is nullary, call/symbol arities line up,
// parameter indices are in range. Throws input_error on violation.
void validate(const RecursionScheme& s);
bool is_regular(const RecursionScheme& s);

// File format: one equation per line, `Name(x0,..,xk) = term` or `Name = term`;
// `+(a,b)` application syntax; `1` is the leaf constant of Delta; `#` comments;
// an optional header `alphabet: sym/arity, ...` introduces a general ranked
// alphabet (default Delta). The first equation is principal.
RecursionScheme parse_scheme(std::string_view text);
std::string to_text(const RecursionScheme& s);

// A finite Kleene approximant. Nodes are determined symbols, parameter
// leaves (for unfoldings of non-principal function variables), or pending
// calls. A pending call whose head can never become determined is marked
// stalled and never expanded: it denotes bottom.
struct PartialTree {
  struct Pending {
    int fn = -1;
    std::vector<Term> args;
    bool stalled = false;
  };
  struct Node {
    enum class Kind { Symbol, Var, Pending };
    Kind kind = Kind::Pending;
    int label = -1;  // symbol id (Symbol) or parameter index (Var)
    Pending pending;
    std::vector<Node> children;  // Symbol nodes carry exactly arity children
  };

  RankedAlphabet sigma;
  Node root;
};

// The depth-th Kleene approximant of the principal's component: each round
// substitutes every pending call's body once.
PartialTree unfold(const RecursionScheme& s, int depth);
// Same, but for the component of equation `fn`, seeded with parameter leaves.
PartialTree unfold_call(const RecursionScheme& s, int fn, int depth);

// Largest l such that every address of length < l is determined (or stalled);
// addresses shorter than the result are exactly the reliable region of the
// approximant.
int determined_coverage(const PartialTree& t);

// Determined leaf addresses with their labels, in lex order of addresses.
std::vector<std::pair<Word, int>> frontier(const PartialTree& t);
// Addresses of parameter leaves labeled x_j, lex order.
std::vector<Word> param_leaf_addresses(const PartialTree& t, int j);

// Terminal alphabet of branch words: leaf symbols first (a leaf named "1"
// renders as "one"), then the pair letters (sigma,j) ordered by child index
// then by declaration; for Delta the pairs render as plain 0 and 1.
struct BranchAlphabet {
  OrderedAlphabet tokens;
  int leaf_count = 0;                        // token ids below this are leaves
  std::vector<int> leaf_token;               // symbol id -> token id (-1 if arity > 0)
  std::vector<std::vector<int>> pair_token;  // symbol id, child -> token id
};
BranchAlphabet branch_alphabet(const RankedAlphabet& sigma);

enum class BranchKind { Lfr, Pbr };
// Lfr: one word u^.label per determined leaf; Pbr: one per determined node.
// Pbr words append the node label's own token (internal symbols are appended
// to the alphabet after the Lfr tokens).
struct BranchWords {
  OrderedAlphabet tokens;
  std::vector<Word> words;  // sorted lexicographically
};
BranchWords branch_words(const PartialTree& t, BranchKind kind);

// Completion: pending (and stalled) nodes become the fresh leaf Omega.
PartialTree complete_omega(const PartialTree& t);

// Closure constructions over Delta.
RecursionScheme scheme_sum(const RecursionScheme& a, const RecursionScheme& b);
RecursionScheme scheme_product(const RecursionScheme& outer, const RecursionScheme& inner);
RecursionScheme scheme_geometric(const RecursionScheme& s);

// Canonical construction tree recorded by the synthesizer; drives the
// structural decode of frontier addresses back to ordinals.
struct SynthPlan {
  enum class Kind { Zero, One, Omega, Sum, Product, Geometric };
  Kind kind = Kind::Zero;
  std::vector<SynthPlan> kids;  // Sum: {left, right}; Product: {base, block}; Geometric: {base}
};

struct Synthesis {
  RecursionScheme scheme;
  SynthPlan plan;
};

// Canonical scheme for any ordinal below w^(w^w); deterministic output.
Synthesis synthesize_ordinal(const Ordinal& a);
RecursionScheme scheme_for_ordinal(const Ordinal& a);

// Frontier order type of the plan's tree.
Ordinal plan_order_type(const SynthPlan& p);
// Position of the leaf at `address` (a word over child indices 0/1) in the
// frontier of the plan's tree. input_error when the address is not a leaf.
Ordinal decode_address(const SynthPlan& p, const Word& address);

}  // namespace ordlex

#endif
