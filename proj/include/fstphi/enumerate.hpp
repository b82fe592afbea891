// fstphi/enumerate.hpp
//
// Exhaustive path enumeration at desk scale, used to compare the
// weighted languages and relations of machines that are claimed
// equivalent, and by the demo runner to print observed languages.

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

#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "fstphi/fst.hpp"
#include "fstphi/semiring.hpp"
#include "fstphi/symbol_table.hpp"

namespace fstphi {

/// Weighted relation of a machine restricted to input and output strings
/// of at most max_len labels each. Runs of arcs that consume nothing on
/// either side are capped at the state count, which covers epsilon
/// chains but not weighted epsilon cycles (the machines compared here
/// never have those).
template <class W>
std::map<std::pair<std::vector<Label>, std::vector<Label>>, W>
enumerate_relation(const Fst<W>& f, int max_len) {
  std::map<std::pair<std::vector<Label>, std::vector<Label>>, W> out;
  if (!f.start()) return out;
  const int eps_cap = f.num_states() + 1;
  std::vector<Label> in, os;
  auto rec = [&](auto&& self, StateId s, const W& w, int eps_run) -> void {
    if (f.is_final(s)) {
      W total = times(w, f.final_weight(s));
      if (!(total == W::zero())) {
        auto key = std::make_pair(in, os);
        auto it = out.find(key);
        if (it == out.end())
          out.emplace(std::move(key), total);
        else
          it->second = plus(it->second, total);
      }
    }
    for (const auto& arc : f.arcs(s)) {
      bool consumes = arc.ilabel != kEpsilon || arc.olabel != kEpsilon;
      if (!consumes && eps_run >= eps_cap) continue;
      if (arc.ilabel != kEpsilon &&
          static_cast<int>(in.size()) >= max_len)
        continue;
      if (arc.olabel != kEpsilon &&
          static_cast<int>(os.size()) >= max_len)
        continue;
      if (arc.ilabel != kEpsilon) in.push_back(arc.ilabel);
      if (arc.olabel != kEpsilon) os.push_back(arc.olabel);
      self(self, arc.nextstate, times(w, arc.weight),
           consumes ? 0 : eps_run + 1);
      if (arc.ilabel != kEpsilon) in.pop_back();
      if (arc.olabel != kEpsilon) os.pop_back();
    }
  };
  rec(rec, *f.start(), W::one(), 0);
  return out;
}

/// Weighted language of an acceptor (input-side labels) up to max_len.
template <class W>
std::map<std::vector<Label>, W> enumerate_language(const Fst<W>& f,
                                                   int max_len) {
  std::map<std::vector<Label>, W> out;
  for (auto& [key, w] : enumerate_relation(f, max_len)) {
    auto it = out.find(key.first);
    if (it == out.end())
      out.emplace(key.first, w);
    else
      it->second = plus(it->second, w);
  }
  return out;
}

/// Unweighted language of an acceptor up to max_len.
template <class W>
std::set<std::vector<Label>> language_up_to(const Fst<W>& f, int max_len) {
  std::set<std::vector<Label>> out;
  for (auto& [key, w] : enumerate_language(f, max_len)) out.insert(key);
  return out;
}

/// Renders a label sequence with each symbol in square brackets.
inline std::string bracketed(const std::vector<Label>& labels,
                             const SymbolTable& syms) {
  if (labels.empty()) return "<empty>";
  std::string out;
  for (Label l : labels) out += "[" + syms.name(l) + "]";
  return out;
}

/// Renders a set of label sequences as "{...}" for demo output.
inline std::string render_language(const std::set<std::vector<Label>>& lang,
                                   const SymbolTable& syms) {
  std::string out = "{";
  bool first = true;
  for (const auto& seq : lang) {
    if (!first) out += ", ";
    out += bracketed(seq, syms);
    first = false;
  }
  out += "}";
  return out;
}

}  // namespace fstphi
