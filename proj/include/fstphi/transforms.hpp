// fstphi/transforms.hpp
//
// Structure-preserving machine transformations: Gallic arc mapping in
// both directions, weight factoring, projection, epsilon removal,
// determinization, Brzozowski minimization, and trimming.

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
#include <deque>
#include <map>
#include <set>
#include <utility>
#include <vector>

#include "fstphi/fst.hpp"
#include "fstphi/semiring.hpp"

namespace fstphi {

namespace detail {

template <class W>
std::vector<bool> accessible_states(const Fst<W>& f) {
  std::vector<bool> seen(static_cast<std::size_t>(f.num_states()), false);
  if (!f.start()) return seen;
  std::deque<StateId> queue{*f.start()};
  seen[static_cast<std::size_t>(*f.start())] = true;
  while (!queue.empty()) {
    StateId s = queue.front();
    queue.pop_front();
    for (const auto& arc : f.arcs(s)) {
      if (!seen[static_cast<std::size_t>(arc.nextstate)]) {
        seen[static_cast<std::size_t>(arc.nextstate)] = true;
        queue.push_back(arc.nextstate);
      }
    }
  }
  return seen;
}

template <class W>
std::vector<bool> coaccessible_states(const Fst<W>& f) {
  std::vector<std::vector<StateId>> rev(
      static_cast<std::size_t>(f.num_states()));
  std::vector<bool> seen(static_cast<std::size_t>(f.num_states()), false);
  std::deque<StateId> queue;
  for (StateId s = 0; s < f.num_states(); ++s) {
    for (const auto& arc : f.arcs(s))
      rev[static_cast<std::size_t>(arc.nextstate)].push_back(s);
    if (f.is_final(s)) {
      seen[static_cast<std::size_t>(s)] = true;
      queue.push_back(s);
    }
  }
  while (!queue.empty()) {
    StateId s = queue.front();
    queue.pop_front();
    for (StateId p : rev[static_cast<std::size_t>(s)]) {
      if (!seen[static_cast<std::size_t>(p)]) {
        seen[static_cast<std::size_t>(p)] = true;
        queue.push_back(p);
      }
    }
  }
  return seen;
}

}  // namespace detail

/// Keeps only states that lie on some start-to-final path, renumbering
/// in order. A machine whose start is removed comes back empty.
template <class W>
Fst<W> connect(const Fst<W>& f) {
  auto acc = detail::accessible_states(f);
  auto coacc = detail::coaccessible_states(f);
  std::vector<StateId> remap(static_cast<std::size_t>(f.num_states()),
                             kNoState);
  Fst<W> out;
  for (StateId s = 0; s < f.num_states(); ++s)
    if (acc[static_cast<std::size_t>(s)] && coacc[static_cast<std::size_t>(s)])
      remap[static_cast<std::size_t>(s)] = out.add_state();
  for (StateId s = 0; s < f.num_states(); ++s) {
    StateId ns = remap[static_cast<std::size_t>(s)];
    if (ns == kNoState) continue;
    if (f.is_final(s)) out.set_final(ns, f.final_weight(s));
    for (const auto& arc : f.arcs(s)) {
      StateId nd = remap[static_cast<std::size_t>(arc.nextstate)];
      if (nd == kNoState) continue;
      out.add_arc(ns, Arc<W>{arc.ilabel, arc.olabel, arc.weight, nd});
    }
  }
  if (f.start() && remap[static_cast<std::size_t>(*f.start())] != kNoState)
    out.set_start(remap[static_cast<std::size_t>(*f.start())]);
  return out;
}

template <class W>
bool is_trim(const Fst<W>& f) {
  auto acc = detail::accessible_states(f);
  auto coacc = detail::coaccessible_states(f);
  for (StateId s = 0; s < f.num_states(); ++s)
    if (!acc[static_cast<std::size_t>(s)] ||
        !coacc[static_cast<std::size_t>(s)])
      return false;
  return true;
}

template <class W>
bool is_acceptor(const Fst<W>& f) {
  for (StateId s = 0; s < f.num_states(); ++s)
    for (const auto& arc : f.arcs(s))
      if (arc.ilabel != arc.olabel) return false;
  return true;
}

template <class W>
bool has_epsilon_arcs(const Fst<W>& f) {
  for (StateId s = 0; s < f.num_states(); ++s)
    for (const auto& arc : f.arcs(s))
      if (arc.ilabel == kEpsilon && arc.olabel == kEpsilon) return true;
  return false;
}

/// At most one arc per (state, input label) and no epsilon arcs.
template <class W>
bool is_deterministic(const Fst<W>& f) {
  for (StateId s = 0; s < f.num_states(); ++s) {
    std::set<Label> seen;
    for (const auto& arc : f.arcs(s)) {
      if (arc.ilabel == kEpsilon) return false;
      if (!seen.insert(arc.ilabel).second) return false;
    }
  }
  return true;
}

template <class W>
bool is_unweighted(const Fst<W>& f) {
  for (StateId s = 0; s < f.num_states(); ++s) {
    if (f.is_final(s) && !(f.final_weight(s) == W::one())) return false;
    for (const auto& arc : f.arcs(s))
      if (!(arc.weight == W::one())) return false;
  }
  return true;
}

enum class ProjectSide { input, output };

/// Copies the chosen side's label onto both sides of every arc.
template <class W>
Fst<W> project(const Fst<W>& f, ProjectSide side) {
  Fst<W> out;
  out.add_states(f.num_states());
  if (f.start()) out.set_start(*f.start());
  for (StateId s = 0; s < f.num_states(); ++s) {
    if (f.is_final(s)) out.set_final(s, f.final_weight(s));
    for (const auto& arc : f.arcs(s)) {
      Label l = side == ProjectSide::input ? arc.ilabel : arc.olabel;
      out.add_arc(s, Arc<W>{l, l, arc.weight, arc.nextstate});
    }
  }
  return out;
}

/// Moves output labels into Gallic string weights: an arc (i, o, w)
/// becomes (i, i, (string(o), w)) with string(epsilon) the empty string;
/// a final weight w becomes (empty, w).
inline Fst<GallicWeight> to_gallic(const Fst<TropicalWeight>& f) {
  Fst<GallicWeight> out;
  out.add_states(f.num_states());
  if (f.start()) out.set_start(*f.start());
  for (StateId s = 0; s < f.num_states(); ++s) {
    if (f.is_final(s))
      out.set_final(s, GallicWeight(StringWeight::one(), f.final_weight(s)));
    for (const auto& arc : f.arcs(s)) {
      StringWeight str = arc.olabel == kEpsilon
                             ? StringWeight::one()
                             : StringWeight::single(arc.olabel);
      out.add_arc(s, Arc<GallicWeight>{arc.ilabel, arc.ilabel,
                                       GallicWeight(str, arc.weight),
                                       arc.nextstate});
    }
  }
  return out;
}

/// Moves Gallic string weights back to output labels. Every string part
/// must have length at most one (run factor_weights first); a final
/// weight carrying one symbol becomes an epsilon:symbol arc to a fresh
/// final state.
inline Fst<TropicalWeight> from_gallic(const Fst<GallicWeight>& f) {
  Fst<TropicalWeight> out;
  out.add_states(f.num_states());
  if (f.start()) out.set_start(*f.start());
  for (StateId s = 0; s < f.num_states(); ++s) {
    if (f.is_final(s)) {
      const GallicWeight w = f.final_weight(s);
      const StringWeight& str = w.string_part();
      if (str.is_infinite() || str.size() > 1)
        throw FstError(
            "from_gallic: final weight string longer than one symbol; "
            "run factor_weights first");
      if (str.empty()) {
        out.set_final(s, w.weight_part());
      } else if (!w.weight_part().is_zero()) {
        StateId fresh = out.add_state();
        out.add_arc(s, Arc<TropicalWeight>{kEpsilon, str.labels()[0],
                                           TropicalWeight::one(), fresh});
        out.set_final(fresh, w.weight_part());
      }
    }
    for (const auto& arc : f.arcs(s)) {
      const StringWeight& str = arc.weight.string_part();
      if (str.is_infinite() || str.size() > 1)
        throw FstError(
            "from_gallic: arc weight string longer than one symbol; "
            "run factor_weights first");
      if (arc.weight.weight_part().is_zero()) continue;
      Label ol = str.empty() ? kEpsilon : str.labels()[0];
      out.add_arc(s, Arc<TropicalWeight>{arc.ilabel, ol,
                                         arc.weight.weight_part(),
                                         arc.nextstate});
    }
  }
  return out;
}

/// Rewrites every arc or final weight whose string part has k > 1
/// symbols into a chain carrying one symbol each. The first arc of a
/// chain keeps the original labels, tropical weight, and string head;
/// continuation arcs are epsilon arcs with tropical one. Multi-symbol
/// final weights become chains ending in a fresh final state. The
/// weighted language is unchanged.
inline Fst<GallicWeight> factor_weights(const Fst<GallicWeight>& f) {
  Fst<GallicWeight> out;
  out.add_states(f.num_states());
  if (f.start()) out.set_start(*f.start());
  auto chain_tail = [&out](StateId from, const std::vector<Label>& labels,
                           std::size_t begin, StateId dest) {
    // Emits (eps, eps, (labels[j], 1)) arcs from `from` to `dest`.
    StateId cur = from;
    for (std::size_t j = begin; j < labels.size(); ++j) {
      StateId next = j + 1 == labels.size() ? dest : out.add_state();
      out.add_arc(cur, Arc<GallicWeight>{
                           kEpsilon, kEpsilon,
                           GallicWeight(StringWeight::single(labels[j]),
                                        TropicalWeight::one()),
                           next});
      cur = next;
    }
  };
  for (StateId s = 0; s < f.num_states(); ++s) {
    if (f.is_final(s)) {
      const GallicWeight w = f.final_weight(s);
      const StringWeight& str = w.string_part();
      if (str.is_infinite() || str.size() <= 1) {
        out.set_final(s, w);
      } else {
        StateId head = out.add_state();
        out.add_arc(s, Arc<GallicWeight>{
                           kEpsilon, kEpsilon,
                           GallicWeight(StringWeight::single(str.labels()[0]),
                                        w.weight_part()),
                           head});
        StateId fresh = out.add_state();
        chain_tail(head, str.labels(), 1, fresh);
        out.set_final(fresh, GallicWeight::one());
      }
    }
    for (const auto& arc : f.arcs(s)) {
      const StringWeight& str = arc.weight.string_part();
      if (str.is_infinite() || str.size() <= 1) {
        out.add_arc(s, arc);
      } else {
        StateId head = out.add_state();
        out.add_arc(s, Arc<GallicWeight>{
                           arc.ilabel, arc.olabel,
                           GallicWeight(StringWeight::single(str.labels()[0]),
                                        arc.weight.weight_part()),
                           head});
        chain_tail(head, str.labels(), 1, arc.nextstate);
      }
    }
  }
  return out;
}

/// Epsilon removal on acceptors: folds epsilon-closure weights into
/// successor arcs and final weights. An epsilon cycle whose arcs are not
/// all weight one would require a star operation and is rejected.
template <class W>
Fst<W> rm_epsilon(const Fst<W>& f) {
  if (!is_acceptor(f))
    throw FstError("rm_epsilon: input must be an acceptor");

  // Reject epsilon cycles with non-one weights: any epsilon arc that sits
  // on an epsilon cycle (its head reaches its tail through epsilon arcs)
  // must have weight one.
  const int n = f.num_states();
  std::vector<std::vector<StateId>> eps(static_cast<std::size_t>(n));
  for (StateId s = 0; s < n; ++s)
    for (const auto& arc : f.arcs(s))
      if (arc.ilabel == kEpsilon)
        eps[static_cast<std::size_t>(s)].push_back(arc.nextstate);
  auto eps_reaches = [&eps, n](StateId from, StateId target) {
    std::vector<bool> seen(static_cast<std::size_t>(n), false);
    std::deque<StateId> queue{from};
    seen[static_cast<std::size_t>(from)] = true;
    while (!queue.empty()) {
      StateId s = queue.front();
      queue.pop_front();
      if (s == target) return true;
      for (StateId t : eps[static_cast<std::size_t>(s)]) {
        if (!seen[static_cast<std::size_t>(t)]) {
          seen[static_cast<std::size_t>(t)] = true;
          queue.push_back(t);
        }
      }
    }
    return false;
  };
  for (StateId s = 0; s < n; ++s)
    for (const auto& arc : f.arcs(s))
      if (arc.ilabel == kEpsilon && !(arc.weight == W::one()) &&
          eps_reaches(arc.nextstate, s))
        throw FstError("rm_epsilon: epsilon cycle with non-one weight");

  // Per-state epsilon closure by relaxation; converges because plus is
  // idempotent and the cycle check above passed.
  auto closure = [&f, n](StateId s) {
    std::map<StateId, W> dist;
    dist.emplace(s, W::one());
    std::deque<StateId> queue{s};
    long long guard = 4LL * (n + 1) * (n + 1) * (n + 1) + 64;
    while (!queue.empty()) {
      if (--guard < 0)
        throw FstError("rm_epsilon: closure failed to converge");
      StateId u = queue.front();
      queue.pop_front();
      for (const auto& arc : f.arcs(u)) {
        if (arc.ilabel != kEpsilon) continue;
        W nd = times(dist.at(u), arc.weight);
        auto it = dist.find(arc.nextstate);
        W merged = it == dist.end() ? nd : plus(it->second, nd);
        if (it == dist.end() || !(merged == it->second)) {
          dist[arc.nextstate] = merged;
          queue.push_back(arc.nextstate);
        }
      }
    }
    return dist;
  };

  Fst<W> out;
  out.add_states(n);
  if (f.start()) out.set_start(*f.start());
  for (StateId s = 0; s < n; ++s) {
    std::map<std::pair<Label, StateId>, W> merged_arcs;
    W final_w = W::zero();
    for (const auto& [t, cw] : closure(s)) {
      final_w = plus(final_w, times(cw, f.final_weight(t)));
      for (const auto& arc : f.arcs(t)) {
        if (arc.ilabel == kEpsilon) continue;
        W w = times(cw, arc.weight);
        auto key = std::make_pair(arc.ilabel, arc.nextstate);
        auto it = merged_arcs.find(key);
        if (it == merged_arcs.end())
          merged_arcs.emplace(key, w);
        else
          it->second = plus(it->second, w);
      }
    }
    for (const auto& [key, w] : merged_arcs) {
      if (w == W::zero()) continue;
      out.add_arc(s, Arc<W>{key.first, key.first, w, key.second});
    }
    if (!(final_w == W::zero())) out.set_final(s, final_w);
  }
  return out;
}

namespace detail {

// Subset construction over an adjacency view with an explicit initial
// subset; shared by determinize and the Brzozowski reversal passes.
template <class W>
Fst<W> subset_determinize(const std::vector<std::vector<std::pair<Label, StateId>>>& adj,
                          std::vector<StateId> initial,
                          const std::vector<bool>& final) {
  Fst<W> out;
  if (initial.empty()) return out;
  std::sort(initial.begin(), initial.end());
  initial.erase(std::unique(initial.begin(), initial.end()), initial.end());
  std::map<std::vector<StateId>, StateId> ids;
  std::deque<std::vector<StateId>> queue;
  auto state_of = [&](std::vector<StateId> subset) {
    auto [it, inserted] = ids.try_emplace(std::move(subset), out.num_states());
    if (inserted) {
      out.add_state();
      queue.push_back(it->first);
    }
    return it->second;
  };
  out.set_start(state_of(std::move(initial)));
  while (!queue.empty()) {
    std::vector<StateId> subset = queue.front();
    queue.pop_front();
    StateId sid = ids.at(subset);
    bool is_final = false;
    std::map<Label, std::set<StateId>> next;
    for (StateId s : subset) {
      if (final[static_cast<std::size_t>(s)]) is_final = true;
      for (const auto& [label, dest] : adj[static_cast<std::size_t>(s)])
        next[label].insert(dest);
    }
    if (is_final) out.set_final(sid, W::one());
    for (const auto& [label, dests] : next) {
      std::vector<StateId> v(dests.begin(), dests.end());
      StateId did = state_of(std::move(v));
      out.add_arc(sid, Arc<W>{label, label, W::one(), did});
    }
  }
  return out;
}

template <class W>
std::vector<std::vector<std::pair<Label, StateId>>> forward_adjacency(
    const Fst<W>& f) {
  std::vector<std::vector<std::pair<Label, StateId>>> adj(
      static_cast<std::size_t>(f.num_states()));
  for (StateId s = 0; s < f.num_states(); ++s)
    for (const auto& arc : f.arcs(s))
      adj[static_cast<std::size_t>(s)].emplace_back(arc.ilabel, arc.nextstate);
  return adj;
}

// One reverse-and-determinize step of Brzozowski's construction.
template <class W>
Fst<W> reverse_determinize(const Fst<W>& f) {
  std::vector<std::vector<std::pair<Label, StateId>>> radj(
      static_cast<std::size_t>(f.num_states()));
  std::vector<StateId> initial;
  std::vector<bool> final(static_cast<std::size_t>(f.num_states()), false);
  for (StateId s = 0; s < f.num_states(); ++s) {
    if (f.is_final(s)) initial.push_back(s);
    for (const auto& arc : f.arcs(s))
      radj[static_cast<std::size_t>(arc.nextstate)].emplace_back(arc.ilabel,
                                                                 s);
  }
  if (f.start()) final[static_cast<std::size_t>(*f.start())] = true;
  return subset_determinize<W>(radj, std::move(initial), final);
}

}  // namespace detail

/// Subset-construction determinization of an epsilon-free, uniformly
/// weight-one acceptor. Weighted determinization is out of scope.
template <class W>
Fst<W> determinize(const Fst<W>& f) {
  if (!is_acceptor(f))
    throw FstError("determinize: input must be an acceptor");
  if (has_epsilon_arcs(f))
    throw FstError("determinize: input must be epsilon-free");
  if (!is_unweighted(f))
    throw FstError("determinize: weighted input is not supported");
  if (!f.start()) return Fst<W>();
  std::vector<bool> final(static_cast<std::size_t>(f.num_states()), false);
  for (StateId s = 0; s < f.num_states(); ++s)
    if (f.is_final(s)) final[static_cast<std::size_t>(s)] = true;
  return connect(detail::subset_determinize<W>(detail::forward_adjacency(f),
                                               {*f.start()}, final));
}

/// Brzozowski minimization (reverse, determinize, reverse, determinize)
/// of a deterministic, epsilon-free, unweighted acceptor. The result is
/// the minimal DFA for the language, trimmed.
template <class W>
Fst<W> minimize(const Fst<W>& f) {
  if (!is_acceptor(f))
    throw FstError("minimize: input must be an acceptor");
  if (!is_unweighted(f))
    throw FstError("minimize: weighted input is not supported");
  if (!is_deterministic(f))
    throw FstError("minimize: input must be deterministic");
  if (!f.start()) return Fst<W>();
  Fst<W> mid = detail::reverse_determinize(f);
  return connect(detail::reverse_determinize(mid));
}

}  // namespace fstphi
