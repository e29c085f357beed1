#pragma once

// Shortest common complex supersequence (SCCS): exact prefix DP with
// reconstruction, a breadth-first oracle, and the greedy most-frequent-first
// approximation. Also the classical w = 1, k = 2 SCS via LCS.

#include "core.hpp"

#include <bit>
#include <deque>
#include <unordered_map>

namespace complexsynth {

struct SccsInstance {
  int q = 0;
  int w = 0;
  std::vector<Strand> strands;
};

struct SccsSolution {
  std::size_t length = 0;
  ComplexSequence sequence;
  // embeddings[j][i]: position in `sequence` that produces strands[j][i].
  std::vector<std::vector<std::size_t>> embeddings;
};

/// Filled cost table. L[idx] is the SCCS length of the prefixes addressed by
/// idx (mixed radix, last strand fastest); choice[idx] indexes `symbols` and
/// is -1 at the origin.
struct SccsTable {
  std::vector<std::size_t> dims; // n_j + 1
  std::vector<std::size_t> strides;
  std::vector<std::uint32_t> L;
  std::vector<std::int32_t> choice;
  std::vector<ComplexSymbol> symbols;
};

namespace detail {

inline void validate_sccs(const SccsInstance &inst) {
  require(inst.q >= 1, "q must be >= 1");
  require(inst.w >= 1 && inst.w <= inst.q, "w must satisfy 1 <= w <= q");
  for (const Strand &x : inst.strands)
    validate_strand(x, inst.q);
}

inline std::uint64_t symbol_mask(const ComplexSymbol &s) {
  std::uint64_t m = 0;
  for (Symbol c : s.members())
    m |= std::uint64_t{1} << c;
  return m;
}

// Mixed-radix layout over (n_j + 1); budget-checked.
inline void layout(const std::vector<Strand> &strands, std::vector<std::size_t> &dims,
                   std::vector<std::size_t> &strides, std::size_t &cells, std::uint64_t cap,
                   const char *what) {
  const std::size_t k = strands.size();
  dims.resize(k);
  strides.resize(k);
  long double total = 1;
  for (std::size_t j = 0; j < k; ++j) {
    dims[j] = strands[j].size() + 1;
    total *= static_cast<long double>(dims[j]);
  }
  check_budget(total, cap, what);
  cells = 1;
  for (std::size_t j = k; j-- > 0;) {
    strides[j] = cells;
    cells *= dims[j];
  }
}

inline bool increment(std::vector<std::size_t> &pos, const std::vector<std::size_t> &dims) {
  for (std::size_t j = pos.size(); j-- > 0;) {
    if (++pos[j] < dims[j])
      return true;
    pos[j] = 0;
  }
  return false;
}

} // namespace detail

/// Fills L and the reconstruction choices. Requires q <= 64.
inline SccsTable sccs_table(const SccsInstance &inst, const Budget &budget = {}) {
  detail::validate_sccs(inst);
  detail::require(inst.q <= 64, "exact SCCS supports q <= 64");
  SccsTable T;
  std::size_t cells = 0;
  detail::layout(inst.strands, T.dims, T.strides, cells, budget.max_states, "sccs table");
  detail::check_budget(static_cast<long double>(binomial_u64(static_cast<std::uint64_t>(inst.q),
                                                            static_cast<std::uint64_t>(inst.w))),
                       budget.max_enum, "complex symbol alphabet");
  T.symbols = all_complex_symbols(inst.q, inst.w);
  std::vector<std::uint64_t> masks;
  std::unordered_map<std::uint64_t, std::int32_t> index_of;
  for (std::size_t i = 0; i < T.symbols.size(); ++i) {
    masks.push_back(detail::symbol_mask(T.symbols[i]));
    index_of.emplace(masks.back(), static_cast<std::int32_t>(i));
  }

  const std::size_t k = inst.strands.size();
  T.L.assign(cells, 0);
  T.choice.assign(cells, -1);
  std::vector<std::size_t> pos(k, 0);
  for (std::size_t idx = 1; idx < cells; ++idx) {
    detail::increment(pos, T.dims);
    std::uint64_t U = 0;
    for (std::size_t j = 0; j < k; ++j)
      if (pos[j] > 0)
        U |= std::uint64_t{1} << inst.strands[j][pos[j] - 1];

    if (std::popcount(U) <= inst.w) {
      // psi_U: U completed with the smallest remaining symbols.
      std::uint64_t psi = U;
      for (int c = 0; std::popcount(psi) < inst.w; ++c)
        psi |= std::uint64_t{1} << c;
      std::size_t pred = idx;
      for (std::size_t j = 0; j < k; ++j)
        if (pos[j] > 0)
          pred -= T.strides[j];
      T.L[idx] = T.L[pred] + 1;
      T.choice[idx] = index_of.at(psi);
      continue;
    }

    std::uint32_t best = UINT32_MAX;
    std::int32_t best_sym = -1;
    for (std::size_t s = 0; s < masks.size(); ++s) {
      if ((masks[s] & U) == 0)
        continue;
      std::size_t pred = idx;
      for (std::size_t j = 0; j < k; ++j)
        if (pos[j] > 0 && (masks[s] >> inst.strands[j][pos[j] - 1] & 1))
          pred -= T.strides[j];
      if (T.L[pred] < best) {
        best = T.L[pred];
        best_sym = static_cast<std::int32_t>(s);
      }
    }
    T.L[idx] = best + 1;
    T.choice[idx] = best_sym;
  }
  return T;
}

/// L[i] <= L[j] whenever i <= j component-wise (checked along unit steps).
inline bool table_is_monotone(const SccsTable &T) {
  std::vector<std::size_t> pos(T.dims.size(), 0);
  for (std::size_t idx = 0; idx < T.L.size(); ++idx) {
    if (idx > 0)
      detail::increment(pos, T.dims);
    for (std::size_t j = 0; j < pos.size(); ++j)
      if (pos[j] + 1 < T.dims[j] && T.L[idx] > T.L[idx + T.strides[j]])
        return false;
  }
  return true;
}

namespace detail {

inline std::vector<std::vector<std::size_t>> embed_all(const std::vector<Strand> &strands,
                                                       const ComplexSequence &s) {
  std::vector<std::vector<std::size_t>> out;
  for (const Strand &x : strands) {
    out.push_back(greedy_embedding(x, s));
    if (out.back().size() != x.size())
      throw VerificationFailure("returned sequence is not a common complex supersequence");
  }
  return out;
}

} // namespace detail

inline SccsSolution sccs_exact(const SccsInstance &inst, const Budget &budget = {}) {
  const SccsTable T = sccs_table(inst, budget);
  const std::size_t k = inst.strands.size();
  std::vector<ComplexSymbol> rev;
  std::size_t idx = T.L.size() - 1;
  std::vector<std::size_t> pos(k);
  for (std::size_t j = 0; j < k; ++j)
    pos[j] = inst.strands[j].size();
  while (idx != 0) {
    const ComplexSymbol &psi = T.symbols[static_cast<std::size_t>(T.choice[idx])];
    rev.push_back(psi);
    for (std::size_t j = 0; j < k; ++j)
      if (pos[j] > 0 && psi.contains(inst.strands[j][pos[j] - 1])) {
        --pos[j];
        idx -= T.strides[j];
      }
  }
  SccsSolution sol{T.L.back(),
                   ComplexSequence(inst.q, inst.w, std::vector<ComplexSymbol>(rev.rbegin(), rev.rend())),
                   {}};
  if (sol.sequence.size() != sol.length)
    throw VerificationFailure("SCCS reconstruction length differs from the table value");
  sol.embeddings = detail::embed_all(inst.strands, sol.sequence);
  return sol;
}

/// Minimal length by breadth-first search over per-strand match positions,
/// trying every complex symbol at every step.
inline std::size_t sccs_bruteforce(const SccsInstance &inst, const Budget &budget = {}) {
  detail::validate_sccs(inst);
  detail::require(inst.q <= 64, "SCCS oracle supports q <= 64");
  std::vector<std::size_t> dims, strides;
  std::size_t cells = 0;
  detail::layout(inst.strands, dims, strides, cells, budget.max_states, "sccs oracle");
  std::vector<std::uint64_t> masks;
  for (const auto &s : all_complex_symbols(inst.q, inst.w))
    masks.push_back(detail::symbol_mask(s));

  const std::size_t k = inst.strands.size();
  const std::size_t goal = cells - 1;
  std::vector<std::uint32_t> dist(cells, UINT32_MAX);
  std::deque<std::size_t> frontier{0};
  dist[0] = 0;
  while (!frontier.empty()) {
    const std::size_t cur = frontier.front();
    frontier.pop_front();
    if (cur == goal)
      return dist[cur];
    for (std::uint64_t m : masks) {
      std::size_t next = cur;
      for (std::size_t j = 0; j < k; ++j) {
        const std::size_t p = cur / strides[j] % dims[j];
        if (p < inst.strands[j].size() && (m >> inst.strands[j][p] & 1))
          next += strides[j];
      }
      if (dist[next] == UINT32_MAX) {
        dist[next] = dist[cur] + 1;
        frontier.push_back(next);
      }
    }
  }
  return dist[goal];
}

/// Greedy approximation: each step takes the w most frequent current first
/// characters (ties to the smaller symbol, padding with the smallest unused
/// symbols) and advances every strand whose first character is covered.
/// Strands of different lengths are accepted.
inline SccsSolution sccs_approx(const SccsInstance &inst) {
  detail::validate_sccs(inst);
  const std::size_t k = inst.strands.size();
  std::vector<std::size_t> pos(k, 0);
  ComplexSequence s(inst.q, inst.w);
  std::vector<std::size_t> count(static_cast<std::size_t>(inst.q));
  std::vector<Symbol> order(static_cast<std::size_t>(inst.q));
  while (true) {
    std::fill(count.begin(), count.end(), 0);
    bool any = false;
    for (std::size_t j = 0; j < k; ++j)
      if (pos[j] < inst.strands[j].size()) {
        ++count[static_cast<std::size_t>(inst.strands[j][pos[j]])];
        any = true;
      }
    if (!any)
      break;
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](Symbol a, Symbol b) {
      return count[static_cast<std::size_t>(a)] > count[static_cast<std::size_t>(b)];
    });
    ComplexSymbol psi(std::vector<Symbol>(order.begin(), order.begin() + inst.w), inst.q);
    for (std::size_t j = 0; j < k; ++j)
      if (pos[j] < inst.strands[j].size() && psi.contains(inst.strands[j][pos[j]]))
        ++pos[j];
    s.push_back(std::move(psi));
  }
  SccsSolution sol{s.size(), s, {}};
  sol.embeddings = detail::embed_all(inst.strands, sol.sequence);
  return sol;
}

inline std::size_t lcs_length(const Strand &a, const Strand &b) {
  std::vector<std::size_t> prev(b.size() + 1, 0), cur(b.size() + 1, 0);
  for (std::size_t i = 1; i <= a.size(); ++i) {
    for (std::size_t j = 1; j <= b.size(); ++j)
      cur[j] = a[i - 1] == b[j - 1] ? prev[j - 1] + 1 : std::max(prev[j], cur[j - 1]);
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

/// Classical SCS of two plain strings: n_1 + n_2 - |LCS|.
inline std::size_t scs_length_two(const Strand &a, const Strand &b) {
  return a.size() + b.size() - lcs_length(a, b);
}

} // namespace complexsynth
