#pragma once

// Text and JSON formats.
//
//   strand            "0,1,2,3" or "0 1 2 3" or ACGT text (q = 4 only)
//   complex sequence  "0,1;2,3;1,3"  (symbols split by ';')
//   strand file       one strand per line; blank lines and '#' comments skipped
//   grid file         one row per line, strands separated by ','; symbols of a
//                     numeric strand separated by spaces
//
// JSON: a complex sequence is an array of sorted integer arrays; an array
// schedule is [{"symbol": s, "cells": [[row, col], ...]}, ...].

#include "array2d.hpp"
#include "sccs.hpp"

#include <charconv>
#include <istream>
#include <json.hpp>
#include <sstream>

namespace complexsynth::io {

using nlohmann::json;

inline std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos)
    return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

inline int acgt_value(char c) {
  switch (c) {
  case 'A': case 'a': return 0;
  case 'C': case 'c': return 1;
  case 'G': case 'g': return 2;
  case 'T': case 't': return 3;
  default: return -1;
  }
}

// Integers separated by commas and/or whitespace.
inline std::vector<int> parse_ints(std::string_view t) {
  std::vector<int> out;
  const char *p = t.data();
  const char *end = p + t.size();
  while (p < end) {
    while (p < end && (*p == ',' || *p == ' ' || *p == '\t'))
      ++p;
    if (p == end)
      break;
    int v = 0;
    const auto [next, ec] = std::from_chars(p, end, v);
    detail::require(ec == std::errc() && next != p,
                    "cannot parse integer list '" + std::string(t) + "'");
    out.push_back(v);
    p = next;
  }
  return out;
}

inline Strand parse_strand(std::string_view text, int q) {
  const std::string t = trim(text);
  Strand x;
  if (t.empty())
    return x;
  if (acgt_value(t.front()) >= 0) {
    detail::require(q == 4, "ACGT strands need q = 4");
    for (char c : t) {
      if (c == ' ' || c == '\t')
        continue;
      const int v = acgt_value(c);
      detail::require(v >= 0, std::string("bad nucleotide '") + c + "'");
      x.push_back(v);
    }
    return x;
  }
  x = parse_ints(t);
  validate_strand(x, q);
  return x;
}

inline std::string format_strand(const Strand &x, bool acgt = false) {
  std::string out;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (acgt) {
      out += "ACGT"[x[i]];
    } else {
      if (i)
        out += ',';
      out += std::to_string(x[i]);
    }
  }
  return out;
}

inline ComplexSequence parse_complex_sequence(std::string_view text, int q, int w) {
  ComplexSequence s(q, w);
  std::stringstream ss{std::string(text)};
  std::string part;
  while (std::getline(ss, part, ';')) {
    if (trim(part).empty())
      continue;
    s.push_back(ComplexSymbol(parse_ints(part), q));
  }
  return s;
}

inline std::vector<Strand> read_strands(std::istream &in, int q) {
  std::vector<Strand> out;
  std::string line;
  while (std::getline(in, line)) {
    const std::string t = trim(line);
    if (t.empty() || t.front() == '#')
      continue;
    out.push_back(parse_strand(t, q));
  }
  return out;
}

inline ArrayInstance read_grid(std::istream &in, int q) {
  ArrayInstance inst{q, {}};
  std::string line;
  while (std::getline(in, line)) {
    const std::string t = trim(line);
    if (t.empty() || t.front() == '#')
      continue;
    std::vector<Strand> row;
    std::stringstream ss(t);
    std::string cell;
    while (std::getline(ss, cell, ','))
      row.push_back(parse_strand(cell, q));
    inst.grid.push_back(std::move(row));
  }
  return inst;
}

// --- JSON -------------------------------------------------------------------

inline json to_json(const ComplexSequence &s) {
  json out = json::array();
  for (const ComplexSymbol &psi : s)
    out.push_back(psi.members());
  return out;
}

inline ComplexSequence complex_sequence_from_json(const json &j, int q, int w) {
  detail::require(j.is_array(), "complex_sequence must be an array");
  ComplexSequence s(q, w);
  for (const json &psi : j) {
    detail::require(psi.is_array(), "complex symbol must be an array");
    s.push_back(ComplexSymbol(psi.get<std::vector<Symbol>>(), q));
  }
  return s;
}

inline json to_json(const SccsSolution &sol) {
  return {{"length", sol.length},
          {"complex_sequence", to_json(sol.sequence)},
          {"embeddings", sol.embeddings}};
}

inline json schedule_to_json(const ArraySolution &sol) {
  json sched = json::array();
  for (std::size_t t = 0; t < sol.symbols.size(); ++t) {
    json cells = json::array();
    for (const CellRef &c : sol.advances[t])
      cells.push_back({c.row, c.col});
    sched.push_back({{"symbol", sol.symbols[t]}, {"cells", cells}});
  }
  return sched;
}

inline json to_json(const ArraySolution &sol) {
  return {{"length", sol.length}, {"symbols", sol.symbols}, {"schedule", schedule_to_json(sol)}};
}

inline ArraySolution array_solution_from_json(const json &j) {
  detail::require(j.contains("schedule") && j["schedule"].is_array(), "missing schedule");
  ArraySolution sol;
  for (const json &step : j["schedule"]) {
    sol.symbols.push_back(step.at("symbol").get<Symbol>());
    std::vector<CellRef> cells;
    for (const json &c : step.at("cells"))
      cells.push_back({c.at(0).get<std::size_t>(), c.at(1).get<std::size_t>()});
    sol.advances.push_back(std::move(cells));
  }
  sol.length = j.value("length", sol.symbols.size());
  return sol;
}

} // namespace complexsynth::io
