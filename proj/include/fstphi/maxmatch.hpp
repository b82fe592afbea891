// fstphi/maxmatch.hpp
//
// MaxMatch (WordPiece) tokenization: a vocabulary prefix trie annotated
// with failure links and popping tokens, compiled to a failure-transition
// transducer, plus a plain greedy tokenizer that serves as the reference
// implementation.

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <istream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "fstphi/compose.hpp"
#include "fstphi/fst.hpp"
#include "fstphi/phi_transduce.hpp"
#include "fstphi/symbol_table.hpp"

namespace fstphi {

/// A token inventory over a character alphabet. Every character that
/// occurs in a token must itself be a token, which guarantees that every
/// string over the alphabet is tokenizable.
struct Vocabulary {
  std::vector<std::string> tokens;  // insertion order, no duplicates
  std::set<char> sigma;
  std::size_t max_token_len = 0;

  bool has(const std::string& token) const {
    return token_set_.count(token) > 0;
  }

  static Vocabulary from_tokens(std::vector<std::string> tokens) {
    Vocabulary v;
    for (auto& t : tokens) {
      if (t.empty()) throw FstError("vocabulary: empty token");
      if (!v.token_set_.insert(t).second)
        throw FstError("vocabulary: duplicate token '" + t + "'");
      for (char c : t) v.sigma.insert(c);
      v.max_token_len = std::max(v.max_token_len, t.size());
      v.tokens.push_back(std::move(t));
    }
    for (char c : v.sigma) {
      if (!v.has(std::string(1, c)))
        throw FstError("vocabulary: character '" + std::string(1, c) +
                       "' is not itself a token");
    }
    return v;
  }

 private:
  std::unordered_set<std::string> token_set_;
};

/// One token per line; blank lines and lines starting with '#' are
/// ignored.
inline Vocabulary load_vocab(std::istream& in) {
  std::vector<std::string> tokens;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    tokens.push_back(line);
  }
  return Vocabulary::from_tokens(std::move(tokens));
}

inline Vocabulary load_vocab(const std::string& text) {
  std::istringstream is(text);
  return load_vocab(is);
}

/// Prefix trie over the vocabulary. Each non-root node records the
/// popping tokens emitted when matching fails there (greedily, longest
/// token prefix first, until the remainder is itself a node) and the
/// node that remainder names. Failure targets are strictly shorter than
/// their source, so failure chains cannot cycle.
struct MaxMatchTrie {
  struct Node {
    std::string str;
    std::map<char, int> children;
    bool is_token = false;
    std::vector<std::string> pops;
    int fail = -1;
  };
  std::vector<Node> nodes;  // nodes[0] is the root

  int find(std::string_view str) const {
    int cur = 0;
    for (char c : str) {
      auto it = nodes[static_cast<std::size_t>(cur)].children.find(c);
      if (it == nodes[static_cast<std::size_t>(cur)].children.end()) return -1;
      cur = it->second;
    }
    return cur;
  }
};

/// Longest token that is a prefix of `text`, empty when there is none.
inline std::string longest_token_prefix(std::string_view text,
                                        const Vocabulary& v) {
  std::size_t best = 0;
  std::size_t cap = std::min(text.size(), v.max_token_len);
  for (std::size_t len = 1; len <= cap; ++len) {
    if (v.has(std::string(text.substr(0, len)))) best = len;
  }
  return std::string(text.substr(0, best));
}

inline MaxMatchTrie build_trie(const Vocabulary& v) {
  MaxMatchTrie trie;
  trie.nodes.push_back({});  // root, the empty prefix
  for (const auto& token : v.tokens) {
    int cur = 0;
    for (std::size_t i = 0; i < token.size(); ++i) {
      auto& node = trie.nodes[static_cast<std::size_t>(cur)];
      auto it = node.children.find(token[i]);
      if (it != node.children.end()) {
        cur = it->second;
      } else {
        int fresh = static_cast<int>(trie.nodes.size());
        node.children.emplace(token[i], fresh);
        MaxMatchTrie::Node child;
        child.str = token.substr(0, i + 1);
        trie.nodes.push_back(std::move(child));
        cur = fresh;
      }
    }
    trie.nodes[static_cast<std::size_t>(cur)].is_token = true;
  }
  // Popping tokens and failure links: pop greedily until the remainder
  // is an existing node. At least one character comes off per pop since
  // every character is a token, so this terminates with a strictly
  // shorter remainder.
  for (std::size_t i = 1; i < trie.nodes.size(); ++i) {
    auto& node = trie.nodes[i];
    std::string rest = node.str;
    do {
      std::string tok = longest_token_prefix(rest, v);
      node.pops.push_back(tok);
      rest = rest.substr(tok.size());
    } while (trie.find(rest) < 0);
    node.fail = trie.find(rest);
  }
  return trie;
}

/// Compiles the trie to a failure-transition transducer: one state per
/// node (same numbering) plus chain states, child edges as char:epsilon
/// arcs, and per node a phi arc emitting the first popping token
/// followed by epsilon arcs for the rest, landing at the failure node.
/// The root is the start and the only final state.
inline Fst<TropicalWeight> compile_transducer(const MaxMatchTrie& trie,
                                              const SymbolTable& syms) {
  const Label phi = syms.find_or_throw(kPhiSymbol);
  auto token_label = [&syms](const std::string& t) {
    auto id = syms.find(t);
    if (!id)
      throw FstError("compile_transducer: symbol table is missing token '" +
                     t + "'");
    return *id;
  };
  Fst<TropicalWeight> f;
  f.add_states(static_cast<int>(trie.nodes.size()));
  f.set_start(0);
  f.set_final(0, TropicalWeight::one());
  for (std::size_t i = 0; i < trie.nodes.size(); ++i) {
    const auto& node = trie.nodes[i];
    StateId s = static_cast<StateId>(i);
    for (const auto& [c, child] : node.children) {
      f.add_arc(s, Arc<TropicalWeight>{token_label(std::string(1, c)),
                                       kEpsilon, TropicalWeight::one(),
                                       child});
    }
    if (i == 0) continue;
    StateId cur = s;
    for (std::size_t k = 0; k < node.pops.size(); ++k) {
      const bool last = k + 1 == node.pops.size();
      StateId dest = last ? node.fail : f.add_state();
      f.add_arc(cur, Arc<TropicalWeight>{k == 0 ? phi : kEpsilon,
                                         token_label(node.pops[k]),
                                         TropicalWeight::one(), dest});
      cur = dest;
    }
  }
  return f;
}

/// Vocabulary compiled for tokenization: the shared symbol table (with
/// the epsilon, failure, character, and token symbols), the trie, and
/// the failure transducer. The table layout is deterministic: epsilon,
/// phi, characters in order, then multi-character tokens in vocabulary
/// order.
struct CompiledMaxMatch {
  Vocabulary vocab;
  SymbolTable syms;
  Label phi;
  MaxMatchTrie trie;
  Fst<TropicalWeight> transducer;
};

inline CompiledMaxMatch compile_maxmatch(const Vocabulary& v) {
  CompiledMaxMatch c;
  c.vocab = v;
  c.phi = c.syms.add_symbol(kPhiSymbol);
  for (char ch : v.sigma) c.syms.add_symbol(std::string(1, ch));
  for (const auto& t : v.tokens)
    if (t.size() > 1) c.syms.add_symbol(t);
  c.trie = build_trie(v);
  c.transducer = compile_transducer(c.trie, c.syms);
  return c;
}

/// The reference tokenizer: repeatedly strip the longest vocabulary
/// token that prefixes the remaining input. A plain string scan with no
/// dependence on the transducer machinery it is used to check.
inline std::vector<std::string> greedy_reference_tokenize(
    std::string_view text, const Vocabulary& v) {
  for (char c : text)
    if (v.sigma.count(c) == 0)
      throw FstError("tokenize: character '" + std::string(1, c) +
                     "' is outside the vocabulary alphabet");
  std::vector<std::string> out;
  std::string_view rest = text;
  while (!rest.empty()) {
    std::string tok = longest_token_prefix(rest, v);
    rest.remove_prefix(tok.size());
    out.push_back(std::move(tok));
  }
  return out;
}

namespace detail {

// Walks the unique accepting path of a minimal single-string acceptor.
inline std::vector<Label> single_path_labels(const Fst<TropicalWeight>& f) {
  if (!f.start()) throw FstError("tokenize: no accepting path");
  std::vector<Label> labels;
  StateId s = *f.start();
  int steps = 0;
  while (!f.arcs(s).empty()) {
    if (f.arcs(s).size() > 1 || f.is_final(s))
      throw FstError("tokenize: result is not a single path");
    if (++steps > f.num_states())
      throw FstError("tokenize: result is cyclic");
    const auto& arc = f.arcs(s).front();
    labels.push_back(arc.olabel);
    s = arc.nextstate;
  }
  if (!f.is_final(s)) throw FstError("tokenize: no accepting path");
  return labels;
}

}  // namespace detail

/// Tokenizes by encoding the text as a chain acceptor and composing it
/// with the failure transducer; the result's single accepting path is
/// the token sequence. Agrees with greedy_reference_tokenize.
inline std::vector<std::string> tokenize(std::string_view text,
                                         const CompiledMaxMatch& c,
                                         ComposeStats* stats = nullptr) {
  for (char ch : text)
    if (c.vocab.sigma.count(ch) == 0)
      throw FstError("tokenize: character '" + std::string(1, ch) +
                     "' is outside the vocabulary alphabet");
  auto pattern = linear_acceptor(text, c.syms);
  PipelineOptions opt;
  opt.stats = stats;
  auto result = phi_compose(pattern, c.transducer, c.syms, c.phi, opt);
  std::vector<std::string> tokens;
  for (Label l : detail::single_path_labels(result))
    tokens.push_back(c.syms.name(l));
  return tokens;
}

inline std::vector<std::string> tokenize(std::string_view text,
                                         const Vocabulary& v,
                                         ComposeStats* stats = nullptr) {
  return tokenize(text, compile_maxmatch(v), stats);
}

/// Tokenizes a whole language: the pattern acceptor (over the compiled
/// symbol table's character labels) is transduced to the acceptor of the
/// greedy tokenizations of its strings.
inline Fst<TropicalWeight> tokenize_language(
    const Fst<TropicalWeight>& pattern, const CompiledMaxMatch& c) {
  return phi_compose(pattern, c.transducer, c.syms, c.phi);
}

inline Fst<TropicalWeight> tokenize_language(
    const Fst<TropicalWeight>& pattern, const Vocabulary& v) {
  return tokenize_language(pattern, compile_maxmatch(v));
}

}  // namespace fstphi
