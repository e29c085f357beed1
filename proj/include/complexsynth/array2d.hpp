#pragma once

// Row-constrained array synthesis. An m x n grid of strands shares one emitted
// symbol per cycle; in each row at most one strand whose next character equals
// that symbol advances.
//
// Cells are flattened row-major and a state is the tuple of consumed-prefix
// lengths, stored as one mixed-radix index.

#include "sccs.hpp"

#include <optional>

namespace complexsynth {

struct ArrayInstance {
  int q = 0;
  std::vector<std::vector<Strand>> grid; // grid[row][col]; rows may differ in width
};

struct CellRef {
  std::size_t row = 0;
  std::size_t col = 0;
  bool operator==(const CellRef &) const = default;
};

struct ArraySolution {
  std::size_t length = 0;
  Strand symbols;                           // emitted symbol per cycle
  std::vector<std::vector<CellRef>> advances; // cells advanced per cycle
};

namespace detail {

struct ArrayLayout {
  std::vector<CellRef> cells;
  std::vector<const Strand *> strands;
  std::vector<std::size_t> dims, strides;
  std::size_t states = 1;
  std::size_t rows = 0;
};

inline ArrayLayout array_layout(const ArrayInstance &inst, std::uint64_t cap, const char *what) {
  require(inst.q >= 1, "q must be >= 1");
  ArrayLayout lay;
  lay.rows = inst.grid.size();
  long double total = 1;
  for (std::size_t r = 0; r < inst.grid.size(); ++r)
    for (std::size_t c = 0; c < inst.grid[r].size(); ++c) {
      validate_strand(inst.grid[r][c], inst.q);
      lay.cells.push_back({r, c});
      lay.strands.push_back(&inst.grid[r][c]);
      lay.dims.push_back(inst.grid[r][c].size() + 1);
      total *= static_cast<long double>(lay.dims.back());
    }
  check_budget(total, cap, what);
  lay.strides.resize(lay.dims.size());
  for (std::size_t j = lay.dims.size(); j-- > 0;) {
    lay.strides[j] = lay.states;
    lay.states *= lay.dims[j];
  }
  return lay;
}

inline void decode_state(std::size_t idx, const ArrayLayout &lay, std::vector<std::size_t> &pos) {
  pos.resize(lay.dims.size());
  for (std::size_t j = 0; j < lay.dims.size(); ++j)
    pos[j] = idx / lay.strides[j] % lay.dims[j];
}

inline std::size_t symbols_in_row_max(const ArrayInstance &inst) {
  std::size_t best = 0;
  for (const auto &row : inst.grid) {
    std::size_t sum = 0;
    for (const Strand &x : row)
      sum += x.size();
    best = std::max(best, sum);
  }
  return best;
}

inline std::size_t total_symbols(const ArrayInstance &inst) {
  std::size_t sum = 0;
  for (const auto &row : inst.grid)
    for (const Strand &x : row)
      sum += x.size();
  return sum;
}

// Rebuilds the schedule from a successor table.
inline ArraySolution walk_schedule(const ArrayLayout &lay, const std::vector<std::uint32_t> &cost,
                                   const std::vector<std::size_t> &next,
                                   const std::vector<Symbol> &sym) {
  ArraySolution sol;
  sol.length = cost[0];
  std::vector<std::size_t> a, b;
  for (std::size_t idx = 0; idx + 1 != lay.states;) {
    decode_state(idx, lay, a);
    decode_state(next[idx], lay, b);
    std::vector<CellRef> moved;
    for (std::size_t j = 0; j < a.size(); ++j)
      if (b[j] != a[j])
        moved.push_back(lay.cells[j]);
    sol.symbols.push_back(sym[idx]);
    sol.advances.push_back(std::move(moved));
    idx = next[idx];
  }
  return sol;
}

} // namespace detail

/// Replays a schedule: every advanced cell must need the emitted symbol next,
/// no row may advance twice in one cycle, and every strand must finish.
/// Idle cycles are allowed.
inline bool replay_schedule(const ArrayInstance &inst, const ArraySolution &sol) {
  if (sol.symbols.size() != sol.advances.size() || sol.length != sol.symbols.size())
    return false;
  std::vector<std::vector<std::size_t>> pos(inst.grid.size());
  for (std::size_t r = 0; r < inst.grid.size(); ++r)
    pos[r].assign(inst.grid[r].size(), 0);
  for (std::size_t t = 0; t < sol.symbols.size(); ++t) {
    std::vector<bool> row_used(inst.grid.size(), false);
    for (const CellRef &c : sol.advances[t]) {
      if (c.row >= inst.grid.size() || c.col >= inst.grid[c.row].size() || row_used[c.row])
        return false;
      row_used[c.row] = true;
      const Strand &x = inst.grid[c.row][c.col];
      std::size_t &p = pos[c.row][c.col];
      if (p >= x.size() || x[p] != sol.symbols[t])
        return false;
      ++p;
    }
  }
  for (std::size_t r = 0; r < inst.grid.size(); ++r)
    for (std::size_t c = 0; c < inst.grid[r].size(); ++c)
      if (pos[r][c] != inst.grid[r][c].size())
        return false;
  return true;
}

namespace detail {

inline void check_solution(const ArrayInstance &inst, const ArraySolution &sol) {
  if (sol.length < symbols_in_row_max(inst) || sol.length > total_symbols(inst))
    throw VerificationFailure("array schedule length violates the row-sum bounds");
  if (!replay_schedule(inst, sol))
    throw VerificationFailure("array schedule does not replay");
}

} // namespace detail

/// The 2 x 2 recurrence: single advances of a, b, c, d, or a cross-row pair
/// (a,c), (a,d), (b,c), (b,d) when both next characters agree. Strand lengths
/// may differ.
inline ArraySolution array_dp_2x2(const ArrayInstance &inst, const Budget &budget = {}) {
  detail::require(inst.grid.size() == 2 && inst.grid[0].size() == 2 && inst.grid[1].size() == 2,
                  "array_dp_2x2 needs a 2x2 grid; use array_dp_general otherwise");
  const auto lay = detail::array_layout(inst, budget.max_states, "2x2 array table");
  constexpr std::size_t A = 0, B = 1, C = 2, D = 3;
  static constexpr std::size_t pairs[4][2] = {{A, C}, {A, D}, {B, C}, {B, D}};

  std::vector<std::uint32_t> cost(lay.states, 0);
  std::vector<std::size_t> next(lay.states, 0);
  std::vector<Symbol> sym(lay.states, 0);
  std::vector<std::size_t> pos;
  for (std::size_t idx = lay.states - 1; idx-- > 0;) {
    detail::decode_state(idx, lay, pos);
    auto open = [&](std::size_t j) { return pos[j] < lay.strands[j]->size(); };
    auto head = [&](std::size_t j) { return (*lay.strands[j])[pos[j]]; };
    // (cost, -advanced, symbol) is minimized lexicographically.
    std::uint32_t best = UINT32_MAX;
    int best_adv = 0;
    Symbol best_sym = 0;
    auto consider = [&](std::size_t succ, int adv, Symbol s) {
      const std::uint32_t c = cost[succ] + 1;
      if (c < best || (c == best && (adv > best_adv || (adv == best_adv && s < best_sym)))) {
        best = c;
        best_adv = adv;
        best_sym = s;
        next[idx] = succ;
        sym[idx] = s;
      }
    };
    for (const auto &pr : pairs)
      if (open(pr[0]) && open(pr[1]) && head(pr[0]) == head(pr[1]))
        consider(idx + lay.strides[pr[0]] + lay.strides[pr[1]], 2, head(pr[0]));
    for (std::size_t j = A; j <= D; ++j)
      if (open(j))
        consider(idx + lay.strides[j], 1, head(j));
    cost[idx] = best;
  }
  ArraySolution sol = detail::walk_schedule(lay, cost, next, sym);
  detail::check_solution(inst, sol);
  return sol;
}

/// Any m x n grid. For each candidate symbol, every row with a strand needing
/// it advances one such strand; the cross product over those per-row choices
/// is searched. Advancing is never worse than idling a row, because the
/// remaining cost is monotone in the pointers.
inline ArraySolution array_dp_general(const ArrayInstance &inst, const Budget &budget = {}) {
  const auto lay = detail::array_layout(inst, budget.max_states, "array table");
  std::vector<std::uint32_t> cost(lay.states, 0);
  std::vector<std::size_t> next(lay.states, 0);
  std::vector<Symbol> sym(lay.states, 0);
  std::vector<std::size_t> pos;
  std::vector<std::vector<std::size_t>> match(lay.rows);
  std::vector<std::size_t> pick(lay.rows);
  std::vector<Symbol> heads;

  for (std::size_t idx = lay.states - 1; idx-- > 0;) {
    detail::decode_state(idx, lay, pos);
    heads.clear();
    for (std::size_t j = 0; j < pos.size(); ++j)
      if (pos[j] < lay.strands[j]->size())
        heads.push_back((*lay.strands[j])[pos[j]]);
    std::sort(heads.begin(), heads.end());
    heads.erase(std::unique(heads.begin(), heads.end()), heads.end());

    // Ties prefer more advanced strands, then the smaller symbol.
    std::uint32_t best = UINT32_MAX;
    std::size_t best_adv = 0;
    for (Symbol s : heads) {
      for (auto &m : match)
        m.clear();
      for (std::size_t j = 0; j < pos.size(); ++j)
        if (pos[j] < lay.strands[j]->size() && (*lay.strands[j])[pos[j]] == s)
          match[lay.cells[j].row].push_back(j);
      const auto adv = static_cast<std::size_t>(
          std::count_if(match.begin(), match.end(), [](const auto &m) { return !m.empty(); }));
      std::fill(pick.begin(), pick.end(), 0);
      while (true) {
        std::size_t succ = idx;
        for (std::size_t r = 0; r < lay.rows; ++r)
          if (!match[r].empty())
            succ += lay.strides[match[r][pick[r]]];
        if (cost[succ] + 1 < best || (cost[succ] + 1 == best && adv > best_adv)) {
          best = cost[succ] + 1;
          best_adv = adv;
          next[idx] = succ;
          sym[idx] = s;
        }
        std::size_t r = lay.rows;
        while (r-- > 0) {
          if (match[r].empty())
            continue;
          if (++pick[r] < match[r].size())
            break;
          pick[r] = 0;
        }
        if (r == static_cast<std::size_t>(-1))
          break;
      }
    }
    cost[idx] = best;
  }
  ArraySolution sol = detail::walk_schedule(lay, cost, next, sym);
  detail::check_solution(inst, sol);
  return sol;
}

/// Shortest schedule length by breadth-first search with the unrestricted
/// rule: any symbol, each row idles or advances one matching strand, at least
/// one advance per cycle.
inline std::size_t array_bfs_oracle(const ArrayInstance &inst, const Budget &budget = {}) {
  const auto lay = detail::array_layout(inst, budget.max_states, "array oracle");
  std::vector<std::uint32_t> dist(lay.states, UINT32_MAX);
  std::deque<std::size_t> frontier{0};
  dist[0] = 0;
  std::vector<std::size_t> pos;
  std::vector<std::vector<std::size_t>> options(lay.rows);
  std::vector<std::size_t> pick(lay.rows);
  while (!frontier.empty()) {
    const std::size_t cur = frontier.front();
    frontier.pop_front();
    if (cur + 1 == lay.states)
      return dist[cur];
    detail::decode_state(cur, lay, pos);
    for (Symbol s = 0; s < inst.q; ++s) {
      // option 0 is the idle choice for that row
      for (auto &o : options)
        o.assign(1, 0);
      for (std::size_t j = 0; j < pos.size(); ++j)
        if (pos[j] < lay.strands[j]->size() && (*lay.strands[j])[pos[j]] == s)
          options[lay.cells[j].row].push_back(lay.strides[j]);
      std::fill(pick.begin(), pick.end(), 0);
      while (true) {
        std::size_t succ = cur;
        for (std::size_t r = 0; r < lay.rows; ++r)
          succ += options[r][pick[r]];
        if (succ != cur && dist[succ] == UINT32_MAX) {
          dist[succ] = dist[cur] + 1;
          frontier.push_back(succ);
        }
        std::size_t r = lay.rows;
        while (r-- > 0) {
          if (++pick[r] < options[r].size())
            break;
          pick[r] = 0;
        }
        if (r == static_cast<std::size_t>(-1))
          break;
      }
    }
  }
  return dist.back();
}

/// All order-preserving merges of the given strands.
inline std::vector<Strand> row_interleavings(const std::vector<Strand> &strands,
                                             const Budget &budget = {}) {
  // multinomial(total; n_1, ..., n_k) via successive binomials
  long double count = 1;
  std::uint64_t acc = 0;
  for (const Strand &x : strands) {
    acc += x.size();
    count *= static_cast<long double>(binomial_u64(acc, x.size()));
  }
  detail::check_budget(count, budget.max_enum, "row interleavings");

  std::vector<Strand> out;
  Strand cur;
  std::vector<std::size_t> pos(strands.size(), 0);
  auto rec = [&](auto &&self) -> void {
    if (cur.size() == acc) {
      out.push_back(cur);
      return;
    }
    for (std::size_t j = 0; j < strands.size(); ++j)
      if (pos[j] < strands[j].size()) {
        cur.push_back(strands[j][pos[j]++]);
        self(self);
        --pos[j];
        cur.pop_back();
      }
  };
  rec(rec);
  return out;
}

struct InterleavingReport {
  std::size_t lhs = 0;                   // array DP length
  std::size_t rhs = 0;                   // min over row interleavings of |SCS|
  std::optional<std::size_t> lcs_form;   // m = 2: total - max LCS
  bool holds() const { return lhs == rhs && (!lcs_form || *lcs_form == rhs); }
};

/// Checks the array length against min over (w_1, ..., w_m) of |SCS(w_1..w_m)|,
/// with the SCS taken from the exact solver at w = 1.
inline InterleavingReport interleaving_scs_identity(const ArrayInstance &inst,
                                                    const Budget &budget = {}) {
  InterleavingReport rep;
  rep.lhs = array_dp_general(inst, budget).length;

  std::vector<std::vector<Strand>> per_row;
  long double combos = 1;
  for (const auto &row : inst.grid) {
    per_row.push_back(row_interleavings(row, budget));
    combos *= static_cast<long double>(per_row.back().size());
  }
  detail::check_budget(combos, budget.max_enum, "interleaving combinations");

  const std::size_t m = per_row.size();
  std::vector<std::size_t> idx(m, 0);
  std::size_t best = SIZE_MAX, best_lcs = 0;
  SccsInstance scs{inst.q, 1, std::vector<Strand>(m)};
  do {
    for (std::size_t r = 0; r < m; ++r)
      scs.strands[r] = per_row[r][idx[r]];
    best = std::min(best, sccs_exact(scs, budget).length);
    if (m == 2)
      best_lcs = std::max(best_lcs, lcs_length(scs.strands[0], scs.strands[1]));
  } while ([&] {
    for (std::size_t r = m; r-- > 0;) {
      if (++idx[r] < per_row[r].size())
        return true;
      idx[r] = 0;
    }
    return false;
  }());
  rep.rhs = best;
  if (m == 2)
    rep.lcs_form = detail::total_symbols(inst) - best_lcs;
  return rep;
}

} // namespace complexsynth
