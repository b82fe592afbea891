// fstphi/symbol_table.hpp

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

#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "fstphi/semiring.hpp"

namespace fstphi {

inline constexpr const char* kEpsilonSymbol = "<epsilon>";
inline constexpr const char* kPhiSymbol = "<phi>";

/// Bidirectional map between symbol names and contiguous integer labels.
/// Id 0 always maps to "<epsilon>".
class SymbolTable {
 public:
  SymbolTable() { add_symbol(kEpsilonSymbol); }

  /// Adds a symbol (no-op if already present) and returns its id.
  Label add_symbol(const std::string& name) {
    auto it = ids_.find(name);
    if (it != ids_.end()) return it->second;
    Label id = static_cast<Label>(names_.size());
    names_.push_back(name);
    ids_.emplace(name, id);
    return id;
  }

  std::optional<Label> find(const std::string& name) const {
    auto it = ids_.find(name);
    if (it == ids_.end()) return std::nullopt;
    return it->second;
  }

  /// Like find() but throws when the symbol is absent.
  Label find_or_throw(const std::string& name) const {
    auto id = find(name);
    if (!id)
      throw std::runtime_error("symbol table: unknown symbol '" + name + "'");
    return *id;
  }

  const std::string& name(Label id) const {
    if (id < 0 || id >= static_cast<Label>(names_.size()))
      throw std::runtime_error("symbol table: unknown label id " +
                               std::to_string(id));
    return names_[static_cast<std::size_t>(id)];
  }

  bool contains(Label id) const {
    return id >= 0 && id < static_cast<Label>(names_.size());
  }

  Label size() const { return static_cast<Label>(names_.size()); }

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, Label> ids_;
};

}  // namespace fstphi
