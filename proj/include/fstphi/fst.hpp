// fstphi/fst.hpp

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

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "fstphi/semiring.hpp"
#include "fstphi/symbol_table.hpp"

namespace fstphi {

struct FstError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

using StateId = int;
inline constexpr StateId kNoState = -1;

template <class W>
struct Arc {
  Label ilabel;
  Label olabel;
  W weight;
  StateId nextstate;

  friend bool operator==(const Arc& a, const Arc& b) {
    return a.ilabel == b.ilabel && a.olabel == b.olabel &&
           a.weight == b.weight && a.nextstate == b.nextstate;
  }
};

/// A weighted finite-state transducer: states with contiguous ids, an
/// optional start state, per-state final weights (zero finality is
/// represented by absence), and per-state arc lists in insertion order.
///
/// Builders are single-owner and not thread-safe; a completed machine is
/// immutable in practice and freely shareable across threads.
template <class W>
class Fst {
 public:
  using Weight = W;

  StateId add_state() {
    arcs_.emplace_back();
    finals_.emplace_back();
    return static_cast<StateId>(arcs_.size()) - 1;
  }

  void add_states(int n) {
    for (int i = 0; i < n; ++i) add_state();
  }

  int num_states() const { return static_cast<int>(arcs_.size()); }

  int num_arcs() const {
    std::size_t n = 0;
    for (const auto& a : arcs_) n += a.size();
    return static_cast<int>(n);
  }

  void set_start(StateId s) {
    check_state(s);
    start_ = s;
  }

  std::optional<StateId> start() const { return start_; }

  /// Setting a zero final weight removes finality.
  void set_final(StateId s, W w = W::one()) {
    check_state(s);
    if (w == W::zero())
      finals_[static_cast<std::size_t>(s)].reset();
    else
      finals_[static_cast<std::size_t>(s)] = std::move(w);
  }

  bool is_final(StateId s) const {
    check_state(s);
    return finals_[static_cast<std::size_t>(s)].has_value();
  }

  /// Zero when the state is not final.
  W final_weight(StateId s) const {
    check_state(s);
    const auto& f = finals_[static_cast<std::size_t>(s)];
    return f ? *f : W::zero();
  }

  /// Stored weights must never equal semiring zero.
  void add_arc(StateId s, Arc<W> arc) {
    check_state(s);
    check_state(arc.nextstate);
    if (arc.weight == W::zero())
      throw FstError("add_arc: arc weight must not be semiring zero");
    arcs_[static_cast<std::size_t>(s)].push_back(std::move(arc));
  }

  const std::vector<Arc<W>>& arcs(StateId s) const {
    check_state(s);
    return arcs_[static_cast<std::size_t>(s)];
  }

  friend bool operator==(const Fst& a, const Fst& b) {
    return a.start_ == b.start_ && a.finals_ == b.finals_ &&
           a.arcs_ == b.arcs_;
  }

 private:
  void check_state(StateId s) const {
    if (s < 0 || s >= num_states())
      throw FstError("invalid state id " + std::to_string(s));
  }

  std::vector<std::vector<Arc<W>>> arcs_;
  std::vector<std::optional<W>> finals_;
  std::optional<StateId> start_;
};

/// Chain acceptor for a label sequence: |labels|+1 states, state i
/// advances to i+1 on labels[i], last state final with weight one.
template <class W = TropicalWeight>
Fst<W> linear_acceptor(const std::vector<Label>& labels) {
  Fst<W> f;
  f.add_states(static_cast<int>(labels.size()) + 1);
  f.set_start(0);
  for (std::size_t i = 0; i < labels.size(); ++i) {
    f.add_arc(static_cast<StateId>(i),
              Arc<W>{labels[i], labels[i], W::one(),
                     static_cast<StateId>(i) + 1});
  }
  f.set_final(static_cast<StateId>(labels.size()), W::one());
  return f;
}

/// Chain acceptor for a character string; every character must be a
/// symbol of the table.
template <class W = TropicalWeight>
Fst<W> linear_acceptor(std::string_view text, const SymbolTable& syms) {
  std::vector<Label> labels;
  labels.reserve(text.size());
  for (char c : text) {
    auto id = syms.find(std::string(1, c));
    if (!id)
      throw FstError("linear_acceptor: unknown symbol '" +
                     std::string(1, c) + "'");
    labels.push_back(*id);
  }
  return linear_acceptor<W>(labels);
}

}  // namespace fstphi
