// fstphi/text_io.hpp
//
// AT&T-style text serialization and DOT export.
//
// Arc lines are `src<TAB>dst<TAB>isym<TAB>osym[<TAB>weight]`, final lines
// `state[<TAB>weight]`; the first line's source is the start state and an
// omitted weight means one. Weights render as: tropical decimal, string
// weights as label ids joined by "_" (`<e>` empty, `<inf>` infinite),
// Gallic as `string,tropical`.

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

#include <cstdlib>
#include <istream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "fstphi/fst.hpp"
#include "fstphi/semiring.hpp"
#include "fstphi/symbol_table.hpp"

namespace fstphi {

inline std::string render_weight(const TropicalWeight& w) {
  std::ostringstream os;
  os << w;
  return os.str();
}

inline std::string render_weight(const StringWeight& w) {
  std::ostringstream os;
  os << w;
  return os.str();
}

inline std::string render_weight(const GallicWeight& w) {
  std::ostringstream os;
  os << w;
  return os.str();
}

template <class W>
W parse_weight(const std::string& field);

template <>
inline TropicalWeight parse_weight<TropicalWeight>(const std::string& field) {
  try {
    std::size_t pos = 0;
    double v = std::stod(field, &pos);
    if (pos != field.size()) throw std::invalid_argument(field);
    return TropicalWeight(v);
  } catch (const std::exception&) {
    throw FstError("bad tropical weight '" + field + "'");
  }
}

template <>
inline StringWeight parse_weight<StringWeight>(const std::string& field) {
  if (field == "<inf>") return StringWeight::infinite();
  if (field == "<e>") return StringWeight();
  std::vector<Label> labels;
  std::size_t begin = 0;
  while (begin <= field.size()) {
    std::size_t end = field.find('_', begin);
    if (end == std::string::npos) end = field.size();
    const std::string part = field.substr(begin, end - begin);
    try {
      std::size_t pos = 0;
      int id = std::stoi(part, &pos);
      if (pos != part.size() || id < 0) throw std::invalid_argument(part);
      labels.push_back(id);
    } catch (const std::exception&) {
      throw FstError("bad string weight '" + field + "'");
    }
    begin = end + 1;
  }
  return StringWeight(std::move(labels));
}

template <>
inline GallicWeight parse_weight<GallicWeight>(const std::string& field) {
  std::size_t comma = field.find(',');
  if (comma == std::string::npos)
    throw FstError("bad gallic weight '" + field + "'");
  return GallicWeight(parse_weight<StringWeight>(field.substr(0, comma)),
                      parse_weight<TropicalWeight>(field.substr(comma + 1)));
}

namespace detail {

inline std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::istringstream is(line);
  std::string field;
  while (is >> field) fields.push_back(field);
  return fields;
}

inline StateId parse_state(const std::string& field) {
  try {
    std::size_t pos = 0;
    long v = std::stol(field, &pos);
    if (pos != field.size() || v < 0) throw std::invalid_argument(field);
    return static_cast<StateId>(v);
  } catch (const std::exception&) {
    throw FstError("bad state id '" + field + "'");
  }
}

}  // namespace detail

/// Parses the text format. Unknown symbol names are added to the table;
/// states are created up to the largest id referenced.
template <class W = TropicalWeight>
Fst<W> read_text(std::istream& in, SymbolTable& syms) {
  Fst<W> f;
  std::string line;
  bool first = true;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    auto fields = detail::split_fields(line);
    if (fields.empty()) continue;
    auto ensure = [&f](StateId s) {
      while (f.num_states() <= s) f.add_state();
    };
    try {
      if (fields.size() == 1 || fields.size() == 2) {
        StateId s = detail::parse_state(fields[0]);
        ensure(s);
        W w = fields.size() == 2 ? parse_weight<W>(fields[1]) : W::one();
        f.set_final(s, w);
        if (first) f.set_start(s);
      } else if (fields.size() == 4 || fields.size() == 5) {
        StateId src = detail::parse_state(fields[0]);
        StateId dst = detail::parse_state(fields[1]);
        ensure(std::max(src, dst));
        Label il = syms.add_symbol(fields[2]);
        Label ol = syms.add_symbol(fields[3]);
        W w = fields.size() == 5 ? parse_weight<W>(fields[4]) : W::one();
        f.add_arc(src, Arc<W>{il, ol, w, dst});
        if (first) f.set_start(src);
      } else {
        throw FstError("expected 1, 2, 4 or 5 fields, got " +
                       std::to_string(fields.size()));
      }
    } catch (const FstError& e) {
      throw FstError("line " + std::to_string(lineno) + ": " + e.what());
    }
    first = false;
  }
  return f;
}

template <class W = TropicalWeight>
Fst<W> read_text(const std::string& text, SymbolTable& syms) {
  std::istringstream is(text);
  return read_text<W>(is, syms);
}

/// Renders the text format, start state's lines first so that reading the
/// result back restores the start. A start state with neither arcs nor a
/// final weight cannot be expressed and is dropped (such a machine
/// accepts nothing anyway).
template <class W>
std::string write_text(const Fst<W>& f, const SymbolTable& syms) {
  std::ostringstream os;
  auto emit_state = [&](StateId s) {
    for (const auto& arc : f.arcs(s)) {
      os << s << '\t' << arc.nextstate << '\t' << syms.name(arc.ilabel)
         << '\t' << syms.name(arc.olabel);
      if (!(arc.weight == W::one())) os << '\t' << render_weight(arc.weight);
      os << '\n';
    }
    if (f.is_final(s)) {
      os << s;
      if (!(f.final_weight(s) == W::one()))
        os << '\t' << render_weight(f.final_weight(s));
      os << '\n';
    }
  };
  if (f.start()) emit_state(*f.start());
  for (StateId s = 0; s < f.num_states(); ++s)
    if (!f.start() || s != *f.start()) emit_state(s);
  return os.str();
}

namespace detail {

inline std::string dot_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  return out;
}

inline std::string dot_string_part(const StringWeight& s,
                                   const SymbolTable& syms) {
  if (s.is_infinite()) return "<inf>";
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i > 0) out += '_';
    out += syms.name(s.labels()[i]);
  }
  return out;
}

// Suffix appended to edge/node labels when the weight is not one,
// following the figure convention of bracketing string weights.
inline std::string dot_weight(const TropicalWeight& w, const SymbolTable&) {
  if (w == TropicalWeight::one()) return "";
  return "/" + render_weight(w);
}

inline std::string dot_weight(const StringWeight& w, const SymbolTable& syms) {
  if (w == StringWeight::one()) return "";
  return "/[" + dot_string_part(w, syms) + "]";
}

inline std::string dot_weight(const GallicWeight& w, const SymbolTable& syms) {
  std::string out;
  if (!w.string_part().empty())
    out += "/[" + dot_string_part(w.string_part(), syms) + "]";
  if (!(w.weight_part() == TropicalWeight::one()))
    out += "/" + render_weight(w.weight_part());
  return out;
}

}  // namespace detail

/// DOT rendering: start state bold, final states double-circled, weights
/// appended after "/" when not one (string parts in square brackets).
template <class W>
std::string to_dot(const Fst<W>& f, const SymbolTable& syms) {
  std::ostringstream os;
  os << "digraph FST {\n";
  os << "rankdir = LR;\n";
  for (StateId s = 0; s < f.num_states(); ++s) {
    os << s << " [label = \"" << s;
    if (f.is_final(s))
      os << detail::dot_escape(detail::dot_weight(f.final_weight(s), syms));
    os << "\", shape = " << (f.is_final(s) ? "doublecircle" : "circle");
    if (f.start() && s == *f.start()) os << ", style = bold";
    os << "];\n";
  }
  for (StateId s = 0; s < f.num_states(); ++s) {
    for (const auto& arc : f.arcs(s)) {
      std::string label = syms.name(arc.ilabel);
      if (arc.olabel != arc.ilabel) label += ":" + syms.name(arc.olabel);
      label += detail::dot_weight(arc.weight, syms);
      os << s << " -> " << arc.nextstate << " [label = \""
         << detail::dot_escape(label) << "\"];\n";
    }
  }
  os << "}\n";
  return os.str();
}

}  // namespace fstphi
