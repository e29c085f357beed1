#pragma once

// Sub-instance ball sizes |D(s,t)|: the number of distinct strands of length
// n - t that a complex sequence s of length n can synthesize.
//
// Several independent methods are provided so they can be cross-checked:
//   * enumeration (the trust anchor, exponential),
//   * the complex-run formula for t = 1,
//   * the first-occurrence partition recursion (any s),
//   * the periodic recursion and generating function (periodic c_n only),
//   * the w | q factorization through the classical deletion ball,
//   * the skip-vector recursion that peels w values off the alphabet.

#include "core.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <map>
#include <optional>
#include <set>
#include <unordered_map>

namespace complexsynth {

using BigInt = boost::multiprecision::cpp_int;

enum class BallMethod {
  oracle,
  run_formula,
  recursion,
  periodic_recursion,
  generating_function,
  factorization,
  skip_recursion,
};

inline const char *to_string(BallMethod m) {
  switch (m) {
  case BallMethod::oracle: return "oracle";
  case BallMethod::run_formula: return "run-formula";
  case BallMethod::recursion: return "recursion";
  case BallMethod::periodic_recursion: return "periodic-recursion";
  case BallMethod::generating_function: return "generating-function";
  case BallMethod::factorization: return "factorization";
  case BallMethod::skip_recursion: return "skip-recursion";
  }
  return "?";
}

struct BallSize {
  BigInt count;
  BallMethod method;
};

inline BigInt big_pow(std::uint64_t base, std::size_t e) {
  BigInt r = 1;
  for (std::size_t i = 0; i < e; ++i)
    r *= base;
  return r;
}

// --- enumeration oracle -----------------------------------------------------

namespace detail {

// Visits every index subset of {0..n-1} of size k in lexicographic order.
template <class F> void for_each_subset(std::size_t n, std::size_t k, F &&f) {
  std::vector<std::size_t> idx(k);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  if (k > n)
    return;
  while (true) {
    f(idx);
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + (i - 1))
      --i;
    if (i == 0)
      return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j)
      idx[j] = idx[j - 1] + 1;
  }
}

inline void check_ball_args(const ComplexSequence &s, std::size_t t) {
  require(t <= s.size(), "deletion count t exceeds sequence length");
}

} // namespace detail

/// D(s,t) enumerated two ways: deletions applied to every instance, and
/// instances of every (t-complex-deletion) subsequence of s. Throws
/// VerificationFailure if the two sets differ. Returned sorted.
inline std::vector<Strand> ball_enumerate(const ComplexSequence &s, std::size_t t,
                                          const Budget &budget = {}) {
  detail::check_ball_args(s, t);
  const std::size_t n = s.size();
  const std::size_t keep = n - t;
  detail::check_budget(pow_ld(s.w(), n) * static_cast<long double>(binomial_u64(n, keep)),
                       budget.max_enum, "ball_enumerate");

  std::set<Strand> by_instances;
  for (const Strand &x : instances(s, budget)) {
    detail::for_each_subset(n, keep, [&](const std::vector<std::size_t> &kept) {
      Strand y;
      y.reserve(keep);
      for (std::size_t i : kept)
        y.push_back(x[i]);
      by_instances.insert(std::move(y));
    });
  }

  std::set<std::vector<ComplexSymbol>> sub_sequences;
  detail::for_each_subset(n, keep, [&](const std::vector<std::size_t> &kept) {
    std::vector<ComplexSymbol> sub;
    for (std::size_t i : kept)
      sub.push_back(s[i]);
    sub_sequences.insert(std::move(sub));
  });
  std::set<Strand> by_deletions;
  for (const auto &sub : sub_sequences)
    for (Strand &x : instances(ComplexSequence(s.q(), s.w(), sub), budget))
      by_deletions.insert(std::move(x));

  if (by_instances != by_deletions)
    throw VerificationFailure("order-exchange identity failed: |instances then delete| = " +
                              std::to_string(by_instances.size()) + ", |delete then instances| = " +
                              std::to_string(by_deletions.size()));
  return {by_instances.begin(), by_instances.end()};
}

/// |D(s,t)| by enumeration only, with strands packed into integers so that
/// large balls (millions of candidates) stay cheap.
inline BallSize ball_size_oracle(const ComplexSequence &s, std::size_t t,
                                 const Budget &budget = {}) {
  detail::check_ball_args(s, t);
  const std::size_t n = s.size();
  const std::size_t keep = n - t;
  const long double work = pow_ld(s.w(), keep) * static_cast<long double>(binomial_u64(n, keep));
  detail::check_budget(work, budget.max_enum, "ball_size_oracle");
  detail::require(pow_ld(s.q(), keep) < 1.8e19L, "strand keys do not fit in 64 bits");

  // Delete first, then take instances; both orders give the same set.
  std::vector<std::uint64_t> keys;
  keys.reserve(static_cast<std::size_t>(work));
  const auto q = static_cast<std::uint64_t>(s.q());
  detail::for_each_subset(n, keep, [&](const std::vector<std::size_t> &kept) {
    std::vector<std::size_t> digit(keep, 0);
    do {
      std::uint64_t key = 0;
      for (std::size_t i = 0; i < keep; ++i)
        key = key * q + static_cast<std::uint64_t>(s[kept[i]].members()[digit[i]]);
      keys.push_back(key);
    } while (detail::next_odometer(digit, static_cast<std::size_t>(s.w())));
  });
  std::sort(keys.begin(), keys.end());
  const auto distinct = std::unique(keys.begin(), keys.end()) - keys.begin();
  return {BigInt(distinct), BallMethod::oracle};
}

// --- closed form for t = 1 --------------------------------------------------

/// |D(s,1)| = w^{n-2} * sum_k k * r_k(s).
inline BallSize ball_size_single(const ComplexSequence &s) {
  detail::require(s.size() >= 2, "single-deletion formula needs n >= 2");
  const ComplexRuns runs = complex_runs(s);
  BigInt weighted = 0;
  for (std::size_t k = 1; k < runs.counts.size(); ++k)
    weighted += BigInt(k) * runs.counts[k];
  return {big_pow(static_cast<std::uint64_t>(s.w()), s.size() - 2) * weighted,
          BallMethod::run_formula};
}

// --- recursions -------------------------------------------------------------

/// Partition by the first occurrence of each leading symbol:
/// |D(s,t)| = sum_{sigma in first t+1 symbols} |D(s after j_sigma, t - (j_sigma - 1))|.
/// Memoized on (suffix start, t).
inline BallSize ball_size_partition(const ComplexSequence &s, std::size_t t) {
  detail::check_ball_args(s, t);
  const std::size_t n = s.size();
  const auto q = static_cast<std::size_t>(s.q());

  // first[i][sigma]: first position >= i whose symbol contains sigma (n if none).
  std::vector<std::vector<std::size_t>> first(n + 1, std::vector<std::size_t>(q, n));
  for (std::size_t i = n; i-- > 0;) {
    first[i] = first[i + 1];
    for (Symbol c : s[i].members())
      first[i][static_cast<std::size_t>(c)] = i;
  }

  std::map<std::pair<std::size_t, std::size_t>, BigInt> memo;
  auto rec = [&](auto &&self, std::size_t start, std::size_t del) -> BigInt {
    const std::size_t len = n - start;
    if (del > len)
      return 0;
    if (del == len)
      return 1;
    const auto key = std::make_pair(start, del);
    if (auto it = memo.find(key); it != memo.end())
      return it->second;
    BigInt total = 0;
    for (std::size_t c = 0; c < q; ++c) {
      const std::size_t j = first[start][c];
      if (j >= n || j - start > del)
        continue;
      total += self(self, j + 1, del - (j - start));
    }
    memo.emplace(key, total);
    return total;
  };
  return {rec(rec, 0, t), BallMethod::recursion};
}

/// |D(c_n,t)| for the periodic program by
/// w * sum_{i=1}^{m} |D(c_{n-i}, t-i+1)| + (q - wm) |D(c_{n-m-1}, t-m)|.
/// Out-of-range arguments contribute 0; |D(c_k,0)| = w^k and |D(c_k,k)| = 1.
inline BallSize ball_size_periodic_recursion(int q, int w, std::size_t n, std::size_t t) {
  detail::require(w >= 1 && w <= q, "w must satisfy 1 <= w <= q");
  detail::require(t <= n, "t exceeds n");
  const long m = q / w;
  const long r = q - w * m;
  std::map<std::pair<long, long>, BigInt> memo;
  auto rec = [&](auto &&self, long len, long del) -> BigInt {
    if (len < 0 || del < 0 || del > len)
      return 0;
    if (del == len)
      return 1;
    if (del == 0)
      return big_pow(static_cast<std::uint64_t>(w), static_cast<std::size_t>(len));
    const auto key = std::make_pair(len, del);
    if (auto it = memo.find(key); it != memo.end())
      return it->second;
    BigInt total = 0;
    for (long i = 1; i <= m; ++i)
      total += w * self(self, len - i, del - i + 1);
    if (r > 0)
      total += r * self(self, len - m - 1, del - m);
    memo.emplace(key, total);
    return total;
  };
  return {rec(rec, static_cast<long>(n), static_cast<long>(t)), BallMethod::periodic_recursion};
}

/// Dispatches to the periodic recursion when s is the periodic program,
/// otherwise to the partition recursion.
inline BallSize ball_size_recursive(const ComplexSequence &s, std::size_t t) {
  detail::check_ball_args(s, t);
  if (s == periodic_complex_sequence(s.q(), s.w(), s.size()))
    return ball_size_periodic_recursion(s.q(), s.w(), s.size(), t);
  return ball_size_partition(s, t);
}

// --- generating function ----------------------------------------------------

/// [z^n] (sum_{j=1}^{m} w z^j + r z^{m+1})^{n-t} / (1 - z), with q = mw + r.
inline BallSize ball_size_gf(int q, int w, std::size_t n, std::size_t t) {
  detail::require(w >= 1 && w <= q, "w must satisfy 1 <= w <= q");
  detail::require(t <= n, "t exceeds n");
  const std::size_t m = static_cast<std::size_t>(q / w);
  const std::size_t r = static_cast<std::size_t>(q % w);

  std::vector<BigInt> base(n + 1, 0);
  for (std::size_t j = 1; j <= m && j <= n; ++j)
    base[j] = w;
  if (r > 0 && m + 1 <= n)
    base[m + 1] = r;

  std::vector<BigInt> acc(n + 1, 0);
  acc[0] = 1;
  for (std::size_t e = 0; e < n - t; ++e) {
    std::vector<BigInt> next(n + 1, 0);
    for (std::size_t i = 0; i <= n; ++i) {
      if (acc[i] == 0)
        continue;
      for (std::size_t j = 1; i + j <= n; ++j)
        if (base[j] != 0)
          next[i + j] += acc[i] * base[j];
    }
    acc.swap(next);
  }
  // Multiplying by 1/(1-z) and reading z^n sums all coefficients up to n.
  BigInt total = 0;
  for (const BigInt &c : acc)
    total += c;
  return {total, BallMethod::generating_function};
}

/// |D(c_n,t)| = |D(p_n,t)| * w^{n-t} for w | q, where p_n is the classical
/// alternating word over m = q/w letters and D the plain deletion ball.
inline BallSize ball_size_factorized(int q, int w, std::size_t n, std::size_t t) {
  detail::require(w >= 1 && w <= q, "w must satisfy 1 <= w <= q");
  detail::require(q % w == 0, "factorization requires w | q");
  detail::require(t <= n, "t exceeds n");
  const int m = q / w;
  const BigInt classical = ball_size_partition(periodic_complex_sequence(m, 1, n), t).count;
  return {classical * big_pow(static_cast<std::uint64_t>(w), n - t), BallMethod::factorization};
}

/// Number of length-`len` vectors over {0..q-1} with sum floor(v_j / w) <= budget_t.
/// Counted by splitting on how many entries are >= w: those entries, shifted
/// down by w, form a shorter instance of the same problem over q - w values.
inline BigInt count_skip_vectors(int q, int w, std::size_t len, std::size_t budget_t) {
  detail::require(w >= 1 && q >= 0, "invalid skip-vector parameters");
  if (q <= w)
    return big_pow(static_cast<std::uint64_t>(q), len);
  BigInt total = 0;
  for (std::size_t i = 0; i <= budget_t && i <= len; ++i)
    total += big_pow(static_cast<std::uint64_t>(w), len - i) * binomial_u64(len, i) *
             count_skip_vectors(q - w, w, i, budget_t - i);
  return total;
}

inline BallSize ball_size_skip_recursion(int q, int w, std::size_t n, std::size_t t) {
  detail::require(w >= 1 && w <= q, "w must satisfy 1 <= w <= q");
  detail::require(t <= n, "t exceeds n");
  return {count_skip_vectors(q, w, n - t, t), BallMethod::skip_recursion};
}

// --- skipping mapping -------------------------------------------------------

/// Zero-based skip offsets of x against the semi-infinite periodic program.
/// Entry j is the cyclic distance from the first element of the complex
/// symbol after the previous match to x_j; the match then lands v_j / w
/// symbols further on.
inline std::vector<int> skip_offsets(const Strand &x, int q, int w) {
  detail::require(w >= 1 && w <= q, "w must satisfy 1 <= w <= q");
  validate_strand(x, q);
  std::vector<int> v;
  v.reserve(x.size());
  long long pos = 0; // index of the next unused complex symbol
  for (Symbol c : x) {
    const long long first = (static_cast<long long>(w) * pos) % q;
    const int off = static_cast<int>(((c - first) % q + q) % q);
    v.push_back(off);
    pos += off / w + 1;
  }
  return v;
}

/// Inverse of skip_offsets: the strand realized by following the offsets.
inline Strand strand_from_offsets(const std::vector<int> &v, int q, int w) {
  detail::require(w >= 1 && w <= q, "w must satisfy 1 <= w <= q");
  Strand x;
  x.reserve(v.size());
  long long pos = 0;
  for (int off : v) {
    detail::require(off >= 0 && off < q, "skip offset outside 0..q-1");
    const long long first = (static_cast<long long>(w) * pos) % q;
    x.push_back(static_cast<Symbol>((first + off) % q));
    pos += off / w + 1;
  }
  return x;
}

/// A skipping vector of D(c_n,t): length n - t, entries 0..q-1, sum floor(v/w) <= t.
struct SkipVector {
  std::vector<int> v;
  bool operator==(const SkipVector &) const = default;
  auto operator<=>(const SkipVector &) const = default;
};

inline std::size_t skip_weight(const std::vector<int> &v, int w) {
  std::size_t total = 0;
  for (int e : v)
    total += static_cast<std::size_t>(e / w);
  return total;
}

inline SkipVector skip_map(const Strand &x, int q, int w, std::size_t n, std::size_t t) {
  detail::require(t <= n, "t exceeds n");
  detail::require(x.size() == n - t, "strand length must equal n - t");
  std::vector<int> v = skip_offsets(x, q, w);
  detail::require(skip_weight(v, w) <= t, "strand is not a sub-instance of the periodic sequence c_n");
  return {std::move(v)};
}

inline Strand skip_unmap(const SkipVector &sv, int q, int w, std::size_t n, std::size_t t) {
  detail::require(t <= n, "t exceeds n");
  detail::require(sv.v.size() == n - t, "skip vector length must equal n - t");
  for (int e : sv.v)
    detail::require(e >= 0 && e < q, "skip vector entry outside 0..q-1");
  detail::require(skip_weight(sv.v, w) <= t, "skip vector violates sum floor(v/w) <= t");
  return strand_from_offsets(sv.v, q, w);
}

/// Every element of V for (q,w,n,t), in lexicographic order.
inline std::vector<SkipVector> enumerate_skip_vectors(int q, int w, std::size_t n, std::size_t t,
                                                      const Budget &budget = {}) {
  detail::require(t <= n, "t exceeds n");
  const std::size_t len = n - t;
  detail::check_budget(pow_ld(q, len), budget.max_enum, "enumerate_skip_vectors");
  std::vector<SkipVector> out;
  std::vector<std::size_t> digits(len, 0);
  do {
    std::vector<int> v(digits.begin(), digits.end());
    if (skip_weight(v, w) <= t)
      out.push_back({std::move(v)});
  } while (detail::next_odometer(digits, static_cast<std::size_t>(q)));
  return out;
}

// --- maximality -------------------------------------------------------------

struct MaximalityReport {
  bool holds = true;
  BigInt periodic_size;
  BigInt largest_found;
  std::uint64_t sequences_scanned = 0;
  std::optional<ComplexSequence> counterexample;
};

/// Exhaustive scan over Psi_{q,w}^n with the first symbol fixed to
/// {0..w-1} (ball sizes are invariant under relabeling the alphabet).
/// Each ball is counted by enumeration when `use_oracle`, otherwise by the
/// partition recursion.
inline MaximalityReport ball_maximality_scan(int q, int w, std::size_t n, std::size_t t,
                                             bool use_oracle = true, const Budget &budget = {}) {
  detail::require(w >= 1 && w <= q, "w must satisfy 1 <= w <= q");
  detail::require(n >= 1 && t <= n, "need n >= 1 and t <= n");
  const auto symbols = all_complex_symbols(q, w);
  detail::check_budget(pow_ld(static_cast<long double>(symbols.size()), n - 1), budget.max_enum,
                       "ball_maximality_scan");

  MaximalityReport rep;
  rep.periodic_size = ball_size_gf(q, w, n, t).count;
  std::vector<std::size_t> idx(n, 0);
  while (true) {
    ComplexSequence s(q, w);
    for (std::size_t i = 0; i < n; ++i)
      s.push_back(symbols[idx[i]]);
    const BigInt size = use_oracle ? ball_size_oracle(s, t, budget).count
                                   : ball_size_partition(s, t).count;
    ++rep.sequences_scanned;
    if (size > rep.largest_found)
      rep.largest_found = size;
    if (size > rep.periodic_size && rep.holds) {
      rep.holds = false;
      rep.counterexample = s;
    }
    if (!detail::next_odometer(idx, symbols.size(), 1))
      return rep;
  }
}

inline bool ball_maximality_check(int q, int w, std::size_t n, std::size_t t,
                                  const Budget &budget = {}) {
  return ball_maximality_scan(q, w, n, t, true, budget).holds;
}

} // namespace complexsynth
