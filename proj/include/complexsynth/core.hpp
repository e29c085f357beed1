#pragma once

// Alphabets, complex symbols, complex sequences and strands.
//
// Symbols of the q-ary alphabet are the integers 0..q-1. A complex symbol is
// a w-subset of the alphabet (the nucleotides offered in one synthesis cycle);
// a complex sequence is the machine program. A strand is a plain word that
// the machine synthesizes.

#include "errors.hpp"

#include <algorithm>
#include <cmath>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <numeric>
#include <string>
#include <vector>

namespace complexsynth {

using Symbol = int;
using Strand = std::vector<Symbol>;

struct Alphabet {
  int q = 0;

  explicit Alphabet(int size) : q(size) {
    detail::require(size >= 1, "alphabet size q must be >= 1");
  }
  bool contains(Symbol s) const { return s >= 0 && s < q; }
};

inline void validate_strand(const Strand &x, int q) {
  for (Symbol c : x)
    detail::require(c >= 0 && c < q, "symbol " + std::to_string(c) +
                                         " outside alphabet of size " + std::to_string(q));
}

/// A w-subset of the alphabet, stored as a sorted member list.
class ComplexSymbol {
public:
  ComplexSymbol() = default;

  ComplexSymbol(std::vector<Symbol> members, int q) : members_(std::move(members)) {
    std::sort(members_.begin(), members_.end());
    detail::require(!members_.empty(), "complex symbol must be nonempty");
    detail::require(std::adjacent_find(members_.begin(), members_.end()) == members_.end(),
                    "complex symbol has repeated members");
    detail::require(members_.front() >= 0 && members_.back() < q,
                    "complex symbol member outside alphabet of size " + std::to_string(q));
  }
  ComplexSymbol(std::initializer_list<Symbol> members, int q)
      : ComplexSymbol(std::vector<Symbol>(members), q) {}

  bool contains(Symbol s) const {
    return std::binary_search(members_.begin(), members_.end(), s);
  }
  int w() const { return static_cast<int>(members_.size()); }
  const std::vector<Symbol> &members() const { return members_; }

  // Lexicographic on the sorted member list; this is the canonical order
  // used for every tie-break in the library.
  auto operator<=>(const ComplexSymbol &) const = default;
  bool operator==(const ComplexSymbol &) const = default;

private:
  std::vector<Symbol> members_;
};

/// Number of members of `a` not in `b`.
inline int set_difference_size(const ComplexSymbol &a, const ComplexSymbol &b) {
  int count = 0;
  for (Symbol s : a.members())
    if (!b.contains(s))
      ++count;
  return count;
}

class ComplexSequence {
public:
  ComplexSequence(int q, int w) : q_(q), w_(w) {
    detail::require(q >= 1, "q must be >= 1");
    detail::require(w >= 1 && w <= q, "w must satisfy 1 <= w <= q");
  }
  ComplexSequence(int q, int w, std::vector<ComplexSymbol> symbols) : ComplexSequence(q, w) {
    for (auto &s : symbols)
      push_back(std::move(s));
  }

  void push_back(ComplexSymbol s) {
    detail::require(s.w() == w_, "complex symbol has " + std::to_string(s.w()) +
                                     " members, expected w=" + std::to_string(w_));
    detail::require(s.members().back() < q_, "complex symbol outside alphabet");
    symbols_.push_back(std::move(s));
  }

  int q() const { return q_; }
  int w() const { return w_; }
  std::size_t size() const { return symbols_.size(); }
  bool empty() const { return symbols_.empty(); }
  const ComplexSymbol &operator[](std::size_t i) const { return symbols_[i]; }
  const std::vector<ComplexSymbol> &symbols() const { return symbols_; }
  auto begin() const { return symbols_.begin(); }
  auto end() const { return symbols_.end(); }

  /// Contiguous slice [first, first + count).
  ComplexSequence slice(std::size_t first, std::size_t count) const {
    ComplexSequence out(q_, w_);
    out.symbols_.assign(symbols_.begin() + static_cast<std::ptrdiff_t>(first),
                        symbols_.begin() + static_cast<std::ptrdiff_t>(first + count));
    return out;
  }

  bool operator==(const ComplexSequence &) const = default;

private:
  int q_;
  int w_;
  std::vector<ComplexSymbol> symbols_;
};

/// r[0] = w, r[j] = |psi_j \ psi_{j-1}|; counts[k] = #{j : r[j] = k}.
struct ComplexRuns {
  std::vector<int> r;
  std::vector<std::size_t> counts;
};

// --- operations ------------------------------------------------------------

inline bool is_instance(const Strand &x, const ComplexSequence &s) {
  validate_strand(x, s.q());
  if (x.size() != s.size())
    return false;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (!s[i].contains(x[i]))
      return false;
  return true;
}

// Greedy leftmost embedding; sound and complete for subsequence tests.
inline bool is_sub_instance(const Strand &y, const ComplexSequence &s) {
  validate_strand(y, s.q());
  std::size_t j = 0;
  for (std::size_t i = 0; i < s.size() && j < y.size(); ++i)
    if (s[i].contains(y[j]))
      ++j;
  return j == y.size();
}

/// Positions of s used by the greedy leftmost embedding of y. The result is
/// shorter than y when y is not a sub-instance.
inline std::vector<std::size_t> greedy_embedding(const Strand &y, const ComplexSequence &s) {
  std::vector<std::size_t> pos;
  for (std::size_t i = 0; i < s.size() && pos.size() < y.size(); ++i)
    if (s[i].contains(y[pos.size()]))
      pos.push_back(i);
  return pos;
}

namespace detail {

// Advances a mixed-radix counter (last digit fastest). Digits before
// `frozen` never move. Returns false once the counter wraps around.
inline bool next_odometer(std::vector<std::size_t> &digits, std::size_t radix,
                          std::size_t frozen = 0) {
  for (std::size_t i = digits.size(); i > frozen;) {
    --i;
    if (++digits[i] < radix)
      return true;
    digits[i] = 0;
  }
  return false;
}

} // namespace detail

inline long double pow_ld(long double base, std::size_t e) {
  return std::pow(base, static_cast<long double>(e));
}

/// All w^n instances, in lexicographic order.
inline std::vector<Strand> instances(const ComplexSequence &s, const Budget &budget = {}) {
  const std::size_t n = s.size();
  detail::check_budget(pow_ld(s.w(), n), budget.max_enum, "instances");
  std::vector<Strand> out;
  std::vector<std::size_t> idx(n, 0);
  Strand x(n);
  do {
    for (std::size_t i = 0; i < n; ++i)
      x[i] = s[i].members()[idx[i]];
    out.push_back(x);
  } while (detail::next_odometer(idx, static_cast<std::size_t>(s.w())));
  return out;
}

inline ComplexRuns complex_runs(const ComplexSequence &s) {
  detail::require(!s.empty(), "complex_runs needs a nonempty sequence");
  ComplexRuns runs;
  runs.r.reserve(s.size());
  runs.r.push_back(s.w());
  for (std::size_t j = 1; j < s.size(); ++j)
    runs.r.push_back(set_difference_size(s[j], s[j - 1]));
  runs.counts.assign(static_cast<std::size_t>(s.w()) + 1, 0);
  for (int v : runs.r)
    ++runs.counts[static_cast<std::size_t>(v)];
  return runs;
}

/// The i-th (0-based) symbol of the periodic program: {wi, ..., wi+w-1} mod q.
inline ComplexSymbol periodic_symbol(int q, int w, std::size_t i) {
  std::vector<Symbol> m(static_cast<std::size_t>(w));
  const auto start = static_cast<std::uint64_t>(w) * i;
  for (int j = 0; j < w; ++j)
    m[static_cast<std::size_t>(j)] = static_cast<Symbol>((start + static_cast<std::uint64_t>(j)) % static_cast<std::uint64_t>(q));
  return ComplexSymbol(std::move(m), q);
}

inline ComplexSequence periodic_complex_sequence(int q, int w, std::size_t n) {
  detail::require(q >= 1 && w >= 1, "q and w must be positive");
  detail::require(w <= q, "w > q");
  ComplexSequence s(q, w);
  for (std::size_t i = 0; i < n; ++i)
    s.push_back(periodic_symbol(q, w, i));
  return s;
}

/// Psi_{q,w} in canonical (lexicographic) order.
inline std::vector<ComplexSymbol> all_complex_symbols(int q, int w) {
  detail::require(w >= 1 && w <= q, "w must satisfy 1 <= w <= q");
  std::vector<ComplexSymbol> out;
  std::vector<Symbol> c(static_cast<std::size_t>(w));
  std::iota(c.begin(), c.end(), 0);
  while (true) {
    out.emplace_back(c, q);
    int i = w - 1;
    while (i >= 0 && c[static_cast<std::size_t>(i)] == q - w + i)
      --i;
    if (i < 0)
      return out;
    ++c[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < w; ++j)
      c[static_cast<std::size_t>(j)] = c[static_cast<std::size_t>(j - 1)] + 1;
  }
}

inline std::uint64_t binomial_u64(std::uint64_t n, std::uint64_t k) {
  if (k > n)
    return 0;
  k = std::min(k, n - k);
  std::uint64_t r = 1;
  for (std::uint64_t i = 1; i <= k; ++i)
    r = r * (n - k + i) / i;
  return r;
}

} // namespace complexsynth
