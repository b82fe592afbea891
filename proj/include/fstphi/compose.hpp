// fstphi/compose.hpp
//
// Transducer composition with pluggable label matching on the right
// machine: exact matching, epsilon moves, and failure (phi) matching with
// weight accumulation along failure chains.

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

#include <deque>
#include <map>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "fstphi/fst.hpp"
#include "fstphi/semiring.hpp"
#include "fstphi/transforms.hpp"

namespace fstphi {

/// Result of a failure-aware label lookup: the chain of non-consuming
/// arcs traversed (failure arcs, plus input-epsilon continuation arcs
/// inside a failure chain), the arc that finally matched the query, and
/// the product of the hop weights (the matched arc's own weight is not
/// included).
template <class W>
struct MatchPath {
  std::vector<Arc<W>> hops;
  Arc<W> match;
  W acc_weight;
};

struct ComposeConfig {
  std::optional<Label> phi_label;
  // The string and Gallic semirings do not commute under times;
  // composition refuses to run over them unless explicitly allowed.
  bool allow_noncommute = false;
};

struct ComposeStats {
  long long states_explored = 0;
  long long arcs_emitted = 0;
};

namespace detail {

// All arcs matching `label` after a shared chain of fallback hops.
template <class W>
struct MatchSet {
  std::vector<Arc<W>> hops;
  W acc_weight = W::one();
  std::vector<const Arc<W>*> matches;
};

// Failure-chain traversal. At each state: exact matches win; otherwise
// the state's failure arc is followed; inside a chain (after at least
// one failure hop) a sole input-epsilon arc is followed as chain
// plumbing, since such states are not reachable as composition states.
// A state revisited along the chain signals a malformed failure
// structure.
template <class W>
std::optional<MatchSet<W>> phi_match(const Fst<W>& f, StateId state,
                                     Label label, Label phi) {
  if (label == kEpsilon)
    throw FstError("phi_lookup: cannot query epsilon");
  if (label == phi)
    throw FstError("phi_lookup: cannot query the failure label");
  MatchSet<W> result;
  std::set<StateId> seen{state};
  StateId s = state;
  while (true) {
    for (const auto& arc : f.arcs(s))
      if (arc.ilabel == label) result.matches.push_back(&arc);
    if (!result.matches.empty()) return result;
    const Arc<W>* hop = nullptr;
    for (const auto& arc : f.arcs(s)) {
      if (arc.ilabel != phi) continue;
      if (hop != nullptr)
        throw FstError("phi_lookup: failure non-determinism at state " +
                       std::to_string(s));
      hop = &arc;
    }
    if (hop == nullptr && !result.hops.empty()) {
      for (const auto& arc : f.arcs(s)) {
        if (arc.ilabel == kEpsilon) {
          if (hop != nullptr)
            throw FstError(
                "phi_lookup: ambiguous epsilon continuation at state " +
                std::to_string(s));
          hop = &arc;
        }
      }
    }
    if (hop == nullptr) return std::nullopt;
    if (!seen.insert(hop->nextstate).second)
      throw FstError("phi_lookup: failure cycle through state " +
                     std::to_string(hop->nextstate));
    result.hops.push_back(*hop);
    result.acc_weight = times(result.acc_weight, hop->weight);
    s = hop->nextstate;
  }
}

template <class W>
MatchSet<W> direct_match(const Fst<W>& f, StateId state, Label label) {
  MatchSet<W> result;
  for (const auto& arc : f.arcs(state))
    if (arc.ilabel == label) result.matches.push_back(&arc);
  return result;
}

}  // namespace detail

/// Failure-aware lookup of `label` at `state`: returns the matching arc
/// with the fallback chain taken to reach it, or nothing when a state
/// with neither a match nor a fallback is reached. When several arcs
/// match at the landing state the first one is returned.
template <class W>
std::optional<MatchPath<W>> phi_lookup(const Fst<W>& f, StateId state,
                                       Label label, Label phi) {
  auto m = detail::phi_match(f, state, label, phi);
  if (!m || m->matches.empty()) return std::nullopt;
  return MatchPath<W>{std::move(m->hops), *m->matches.front(),
                      std::move(m->acc_weight)};
}

/// Weight with which `state` can terminate input under failure
/// semantics: its own final weight if final, otherwise the sum over all
/// failure-arc and input-epsilon paths to final states of the product of
/// arc weights along the path. Zero when no final state is reachable
/// that way; a cycle encountered before any final state is an error.
template <class W>
W phi_final_weight(const Fst<W>& f, StateId state, Label phi) {
  std::map<StateId, W> memo;
  std::set<StateId> on_stack;
  auto rec = [&](auto&& self, StateId s) -> W {
    if (f.is_final(s)) return f.final_weight(s);
    if (auto it = memo.find(s); it != memo.end()) return it->second;
    if (!on_stack.insert(s).second)
      throw FstError(
          "phi_final_weight: cycle of failure/epsilon arcs through state " +
          std::to_string(s));
    W total = W::zero();
    for (const auto& arc : f.arcs(s)) {
      if (arc.ilabel == phi || arc.ilabel == kEpsilon)
        total = plus(total, times(arc.weight, self(self, arc.nextstate)));
    }
    on_stack.erase(s);
    memo.emplace(s, total);
    return total;
  };
  return rec(rec, state);
}

/// Composition by eager pair-state exploration. Per pair (p, q):
///   - a left arc with nonzero output label x is matched on the right,
///     with failure fallback when a phi label is configured, emitting
///     (left input, matched output, w_left (x) hop product (x) w_match);
///   - a left arc with epsilon output moves the left side alone;
///   - a right arc with epsilon input moves the right side alone.
/// Finality of (p, q) is final(p) (x) phi_final_weight(q) under failure
/// matching, else final(p) (x) final(q). The result is trimmed.
///
/// No epsilon synchronization filter is applied, so redundant epsilon
/// paths can occur; this requires an idempotent plus, which all
/// supported semirings have.
template <class W>
Fst<W> compose(const Fst<W>& left, const Fst<W>& right,
               const ComposeConfig& cfg = {}, ComposeStats* stats = nullptr) {
  if (!W::commutative && !cfg.allow_noncommute)
    throw FstError(
        "compose: weight semiring is non-commutative; "
        "set allow_noncommute to proceed");
  if (cfg.phi_label && *cfg.phi_label == kEpsilon)
    throw FstError("compose: the failure label must not be epsilon");

  Fst<W> out;
  if (!left.start() || !right.start()) return out;

  std::map<std::pair<StateId, StateId>, StateId> ids;
  std::deque<std::pair<StateId, StateId>> queue;
  auto state_of = [&](StateId p, StateId q) {
    auto [it, inserted] = ids.try_emplace({p, q}, out.num_states());
    if (inserted) {
      out.add_state();
      queue.emplace_back(p, q);
    }
    return it->second;
  };

  out.set_start(state_of(*left.start(), *right.start()));
  while (!queue.empty()) {
    auto [p, q] = queue.front();
    queue.pop_front();
    StateId sid = ids.at({p, q});
    if (stats) ++stats->states_explored;

    W fl = left.final_weight(p);
    if (!(fl == W::zero())) {
      W fr = cfg.phi_label ? phi_final_weight(right, q, *cfg.phi_label)
                           : right.final_weight(q);
      W fw = times(fl, fr);
      if (!(fw == W::zero())) out.set_final(sid, fw);
    }

    for (const auto& arc : left.arcs(p)) {
      if (arc.olabel == kEpsilon) {
        out.add_arc(sid, Arc<W>{arc.ilabel, kEpsilon, arc.weight,
                                state_of(arc.nextstate, q)});
        if (stats) ++stats->arcs_emitted;
        continue;
      }
      auto m = cfg.phi_label
                   ? detail::phi_match(right, q, arc.olabel, *cfg.phi_label)
                   : std::optional(detail::direct_match(right, q, arc.olabel));
      if (!m) continue;
      for (const Arc<W>* match : m->matches) {
        W w = times(times(arc.weight, m->acc_weight), match->weight);
        if (w == W::zero()) continue;
        out.add_arc(sid, Arc<W>{arc.ilabel, match->olabel, w,
                                state_of(arc.nextstate, match->nextstate)});
        if (stats) ++stats->arcs_emitted;
      }
    }
    for (const auto& arc : right.arcs(q)) {
      if (arc.ilabel != kEpsilon) continue;
      out.add_arc(sid, Arc<W>{kEpsilon, arc.olabel, arc.weight,
                              state_of(p, arc.nextstate)});
      if (stats) ++stats->arcs_emitted;
    }
  }
  return connect(out);
}

}  // namespace fstphi
