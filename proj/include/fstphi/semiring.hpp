// fstphi/semiring.hpp

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
#include <cstddef>
#include <initializer_list>
#include <limits>
#include <ostream>
#include <utility>
#include <vector>

namespace fstphi {

// Arc labels. Label 0 is reserved for epsilon; a failure label is an
// ordinary nonzero id designated by configuration.
using Label = int;
inline constexpr Label kEpsilon = 0;

/// Tropical semiring over the extended non-negative reals:
/// plus is min, times is addition, zero is +infinity, one is 0.
/// Plus is idempotent and both operations commute.
class TropicalWeight {
 public:
  TropicalWeight() : value_(0.0) {}
  explicit TropicalWeight(double value) : value_(value) {}

  static TropicalWeight zero() {
    return TropicalWeight(std::numeric_limits<double>::infinity());
  }
  static TropicalWeight one() { return TropicalWeight(0.0); }

  // Times commutes in this semiring.
  static constexpr bool commutative = true;

  double value() const { return value_; }
  bool is_zero() const {
    return value_ == std::numeric_limits<double>::infinity();
  }

  friend TropicalWeight plus(const TropicalWeight& a, const TropicalWeight& b) {
    return TropicalWeight(std::min(a.value_, b.value_));
  }
  friend TropicalWeight times(const TropicalWeight& a,
                              const TropicalWeight& b) {
    return TropicalWeight(a.value_ + b.value_);
  }
  friend bool operator==(const TropicalWeight& a, const TropicalWeight& b) {
    return a.value_ == b.value_;
  }
  friend bool operator!=(const TropicalWeight& a, const TropicalWeight& b) {
    return !(a == b);
  }

 private:
  double value_;
};

/// String semiring over label sequences: plus is longest common prefix,
/// times is concatenation, one is the empty sequence. The zero is a
/// distinguished "infinite" string represented as its own tagged case;
/// it is the additive identity and annihilates under times.
///
/// This is a left semiring: a (x) (b (+) c) = (a (x) b) (+) (a (x) c)
/// holds, but distributivity on the right does not.
class StringWeight {
 public:
  StringWeight() = default;  // the empty string, i.e. one
  explicit StringWeight(std::vector<Label> labels)
      : labels_(std::move(labels)) {}
  StringWeight(std::initializer_list<Label> labels) : labels_(labels) {}

  static StringWeight zero() { return infinite(); }
  static StringWeight one() { return StringWeight(); }
  static StringWeight infinite() {
    StringWeight w;
    w.infinite_ = true;
    return w;
  }
  static StringWeight single(Label l) { return StringWeight({l}); }

  // Concatenation does not commute.
  static constexpr bool commutative = false;

  bool is_infinite() const { return infinite_; }
  bool is_zero() const { return infinite_; }
  bool empty() const { return !infinite_ && labels_.empty(); }
  std::size_t size() const { return labels_.size(); }
  /// Only meaningful when finite.
  const std::vector<Label>& labels() const { return labels_; }

  friend StringWeight plus(const StringWeight& a, const StringWeight& b) {
    if (a.infinite_) return b;
    if (b.infinite_) return a;
    std::vector<Label> lcp;
    std::size_t n = std::min(a.labels_.size(), b.labels_.size());
    for (std::size_t i = 0; i < n && a.labels_[i] == b.labels_[i]; ++i)
      lcp.push_back(a.labels_[i]);
    return StringWeight(std::move(lcp));
  }
  friend StringWeight times(const StringWeight& a, const StringWeight& b) {
    if (a.infinite_ || b.infinite_) return infinite();
    std::vector<Label> cat = a.labels_;
    cat.insert(cat.end(), b.labels_.begin(), b.labels_.end());
    return StringWeight(std::move(cat));
  }
  friend bool operator==(const StringWeight& a, const StringWeight& b) {
    return a.infinite_ == b.infinite_ && a.labels_ == b.labels_;
  }
  friend bool operator!=(const StringWeight& a, const StringWeight& b) {
    return !(a == b);
  }

 private:
  bool infinite_ = false;
  std::vector<Label> labels_;
};

/// Gallic semiring: the componentwise product of the string semiring and
/// the tropical semiring. Used to carry output labels as weights so they
/// accumulate across failure-transition chains during composition.
class GallicWeight {
 public:
  GallicWeight() = default;  // (empty string, 0), i.e. one
  GallicWeight(StringWeight s, TropicalWeight t)
      : string_(std::move(s)), weight_(t) {}

  static GallicWeight zero() {
    return GallicWeight(StringWeight::zero(), TropicalWeight::zero());
  }
  static GallicWeight one() { return GallicWeight(); }

  // Inherits the string semiring's non-commutativity.
  static constexpr bool commutative = false;

  const StringWeight& string_part() const { return string_; }
  const TropicalWeight& weight_part() const { return weight_; }
  bool is_zero() const { return *this == zero(); }

  friend GallicWeight plus(const GallicWeight& a, const GallicWeight& b) {
    return GallicWeight(plus(a.string_, b.string_), plus(a.weight_, b.weight_));
  }
  friend GallicWeight times(const GallicWeight& a, const GallicWeight& b) {
    return GallicWeight(times(a.string_, b.string_),
                        times(a.weight_, b.weight_));
  }
  friend bool operator==(const GallicWeight& a, const GallicWeight& b) {
    return a.string_ == b.string_ && a.weight_ == b.weight_;
  }
  friend bool operator!=(const GallicWeight& a, const GallicWeight& b) {
    return !(a == b);
  }

 private:
  StringWeight string_;
  TropicalWeight weight_;
};

/// A Gallic weight whose string part is the empty string commutes under
/// times with every Gallic weight, because the tropical component
/// commutes on its own. The zero element also commutes with everything.
inline bool commutes_with_all(const GallicWeight& w) {
  return w.string_part().empty() || w.is_zero();
}

inline std::ostream& operator<<(std::ostream& os, const TropicalWeight& w) {
  if (w.is_zero()) return os << "inf";
  return os << w.value();
}

inline std::ostream& operator<<(std::ostream& os, const StringWeight& w) {
  if (w.is_infinite()) return os << "<inf>";
  if (w.empty()) return os << "<e>";
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i > 0) os << '_';
    os << w.labels()[i];
  }
  return os;
}

inline std::ostream& operator<<(std::ostream& os, const GallicWeight& w) {
  return os << w.string_part() << ',' << w.weight_part();
}

}  // namespace fstphi
