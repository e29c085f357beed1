#pragma once

// Synthesis-time accounting against the periodic program and the
// single-redundancy code whose codewords synthesize in at most floor(b/2)
// cycles.
//
// Shifted skip vectors use the one-based convention: entry = skip offset + 1,
// so entries lie in 1..q and a strand needs sum ceil(entry / w) cycles. The
// inverse vector replaces every entry e by q + 1 - e.

#include "ball.hpp"

namespace complexsynth {

struct ShiftedSkipVector {
  std::vector<int> v;
  bool operator==(const ShiftedSkipVector &) const = default;
};

struct CodeParams {
  int q = 0;
  int w = 0;
  std::size_t n = 0;
  std::uint64_t b = 0;         // cycle budget numerator b_{q,w}
  std::uint64_t threshold = 0; // floor(b / 2)
};

inline std::uint64_t ceil_div(std::uint64_t a, std::uint64_t b) { return (a + b - 1) / b; }

/// b = n (m + 1) when q = m w, otherwise n (1 + ceil((q + 1) / w)).
inline CodeParams make_code_params(int q, int w, std::size_t n) {
  detail::require(q >= 2, "the code needs q >= 2");
  detail::require(w >= 1 && w <= q, "w must satisfy 1 <= w <= q");
  detail::require(n >= 1, "code length n must be >= 1");
  CodeParams p{q, w, n, 0, 0};
  const auto uq = static_cast<std::uint64_t>(q);
  const auto uw = static_cast<std::uint64_t>(w);
  if (q % w == 0)
    p.b = n * (uq / uw + 1);
  else
    p.b = n * (1 + ceil_div(uq + 1, uw));
  p.threshold = p.b / 2;
  return p;
}

inline ShiftedSkipVector shifted_skip(const Strand &x, int q, int w) {
  std::vector<int> v = skip_offsets(x, q, w);
  for (int &e : v)
    ++e;
  return {std::move(v)};
}

inline Strand shifted_unskip(const ShiftedSkipVector &sv, int q, int w) {
  std::vector<int> offsets;
  offsets.reserve(sv.v.size());
  for (int e : sv.v) {
    detail::require(e >= 1 && e <= q, "shifted skip entry outside 1..q");
    offsets.push_back(e - 1);
  }
  return strand_from_offsets(offsets, q, w);
}

inline ShiftedSkipVector inverse_skip(const ShiftedSkipVector &sv, int q) {
  ShiftedSkipVector out;
  out.v.reserve(sv.v.size());
  for (int e : sv.v) {
    detail::require(e >= 1 && e <= q, "shifted skip entry outside 1..q");
    out.v.push_back(q + 1 - e);
  }
  return out;
}

/// The strand x^c realizing the inverse skip vector of x.
inline Strand complement_strand(const Strand &x, int q, int w) {
  return shifted_unskip(inverse_skip(shifted_skip(x, q, w), q), q, w);
}

inline std::uint64_t cycles_of(const ShiftedSkipVector &sv, int w) {
  std::uint64_t total = 0;
  for (int e : sv.v)
    total += ceil_div(static_cast<std::uint64_t>(e), static_cast<std::uint64_t>(w));
  return total;
}

/// Minimal number of cycles of the periodic program needed to synthesize x.
inline std::uint64_t synthesis_cycles(const Strand &x, int q, int w) {
  return cycles_of(shifted_skip(x, q, w), w);
}

/// Same quantity by walking the machine: emit periodic symbols one per cycle
/// and append the next character of x whenever it is on offer.
inline std::uint64_t synthesis_cycles_by_simulation(const Strand &x, int q, int w) {
  detail::require(w >= 1 && w <= q, "w must satisfy 1 <= w <= q");
  validate_strand(x, q);
  std::uint64_t cycle = 0;
  std::size_t next = 0;
  while (next < x.size()) {
    if (periodic_symbol(q, w, cycle).contains(x[next]))
      ++next;
    ++cycle;
  }
  return cycle;
}

/// Maps y in Sigma_q^{n-1} to a codeword of length n that synthesizes in at
/// most floor(b/2) cycles. The appended shifted-skip entry 1 marks the direct
/// branch; the inverse branch turns it into q.
inline Strand encode(const Strand &y, const CodeParams &p) {
  detail::require(y.size() + 1 == p.n, "encoder input must have length n - 1");
  ShiftedSkipVector x = shifted_skip(y, p.q, p.w);
  x.v.push_back(1);
  const ShiftedSkipVector chosen = cycles_of(x, p.w) <= p.threshold ? x : inverse_skip(x, p.q);
  if (cycles_of(chosen, p.w) > p.threshold)
    throw VerificationFailure("codeword exceeds the cycle budget");
  return shifted_unskip(chosen, p.q, p.w);
}

/// Inverse of encode. Inputs outside the code image still decode to some
/// strand, with no guarantee attached.
inline Strand decode(const Strand &c, const CodeParams &p) {
  detail::require(c.size() == p.n, "decoder input must have length n");
  const ShiftedSkipVector v = shifted_skip(c, p.q, p.w);
  Strand y = v.v.back() == 1 ? c : shifted_unskip(inverse_skip(v, p.q), p.q, p.w);
  y.pop_back();
  return y;
}

} // namespace complexsynth
