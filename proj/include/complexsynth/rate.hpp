#pragma once

// Maximal information rates of complex synthesis with the periodic program.
//
//   f(q,w)        = -log2 z, z the positive root of sum_{j=1}^{m} w z^j + r z^{m+1} = 1
//   f(q,w,alpha)  = alpha log2 q                                   for alpha below b
//                 = alpha log2(sum_i w x^{i-1/alpha} + r x^{m+1-1/alpha})   above b
// with q = m w + r, b = q / ((m+1)(q - w m / 2)) and x = x_alpha the root in
// (0,1) of sum_{i=1}^{m} w (1 - alpha i) x^i + r (1 - alpha (m+1)) x^{m+1}.
//
// All roots are bracketed and found by bisection.

#include "errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <vector>

namespace complexsynth {

struct RootResult {
  double x = 0;
  int iterations = 0;
  double residual = 0;
};

/// Bisection on [lo, hi]. The endpoint values must have opposite signs.
/// Runs until the bracket cannot be split further in double precision.
template <class F> RootResult bisect(F &&f, double lo, double hi, int max_iter = 400) {
  double flo = f(lo);
  const double fhi = f(hi);
  if (!(flo < 0 && fhi > 0) && !(flo > 0 && fhi < 0))
    throw VerificationFailure("bisection bracket has no sign change on [" + std::to_string(lo) +
                              ", " + std::to_string(hi) + "]");
  RootResult res;
  double mid = lo;
  double fmid = flo;
  for (; res.iterations < max_iter; ++res.iterations) {
    mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi)
      break;
    fmid = f(mid);
    if (fmid == 0)
      break;
    if ((fmid < 0) == (flo < 0)) {
      lo = mid;
      flo = fmid;
    } else {
      hi = mid;
    }
  }
  res.x = mid;
  res.residual = std::abs(fmid);
  return res;
}

struct RateResult {
  double value = 0;                 // bits per cycle
  std::optional<double> alpha_star; // maximizing alpha, when one exists
  std::optional<double> root;       // z_{q,w} or x_alpha
  int iterations = 0;
  double residual = 0;
};

namespace detail {

struct Split {
  int m;
  int r;
};

inline Split split(int q, int w) {
  require(q >= 1 && w >= 1 && w <= q, "need 1 <= w <= q");
  return {q / w, q % w};
}

// log2(sum_{i=1}^{m} w x^{i-1/alpha} + r x^{m+1-1/alpha}) in log space.
inline double log2_weighted_sum(int m, int w, int r, double x, double alpha) {
  const double lx = std::log(x);
  std::vector<double> terms;
  terms.reserve(static_cast<std::size_t>(m) + 1);
  for (int i = 1; i <= m; ++i)
    terms.push_back(std::log(static_cast<double>(w)) + (i - 1.0 / alpha) * lx);
  if (r > 0)
    terms.push_back(std::log(static_cast<double>(r)) + (m + 1 - 1.0 / alpha) * lx);
  const double top = *std::max_element(terms.begin(), terms.end());
  double acc = 0;
  for (double t : terms)
    acc += std::exp(t - top);
  return (top + std::log(acc)) / std::log(2.0);
}

} // namespace detail

/// The breakpoint b = q / ((m+1)(q - w m / 2)).
inline double rate_threshold(int q, int w) {
  const auto [m, r] = detail::split(q, w);
  (void)r;
  return q / ((m + 1.0) * (q - w * m / 2.0));
}

inline RateResult f_qw(int q, int w, double tol = 1e-12) {
  const auto [m, r] = detail::split(q, w);
  RateResult out;
  if (w == q) {
    out.value = std::log2(static_cast<double>(q));
    out.root = 1.0 / q;
    return out;
  }
  auto g = [m = m, r = r, w](double z) {
    // Horner on z * (w + w z + ... + w z^{m-1} + r z^m) - 1.
    double acc = r;
    for (int j = 0; j < m; ++j)
      acc = acc * z + w;
    return acc * z - 1.0;
  };
  const RootResult root = bisect(g, 0.0, 1.0);
  if (root.residual > tol)
    throw VerificationFailure("root of the rate polynomial has residual " +
                              std::to_string(root.residual));
  out.value = -std::log2(root.x);
  out.root = root.x;
  out.iterations = root.iterations;
  out.residual = root.residual;
  return out;
}

namespace detail {

// P(x)/x for the x_alpha polynomial; positive near 0, negative at 1 iff alpha > b.
inline auto x_alpha_poly(int m, int w, int r, double alpha) {
  return [=](double x) {
    double acc = r * (1.0 - alpha * (m + 1));
    for (int i = m; i >= 1; --i)
      acc = acc * x + w * (1.0 - alpha * i);
    return acc;
  };
}

inline RateResult log_branch(int q, int w, double alpha) {
  const auto [m, r] = split(q, w);
  const RootResult root = bisect(x_alpha_poly(m, w, r, alpha), 0.0, 1.0);
  RateResult out;
  out.value = alpha * log2_weighted_sum(m, w, r, root.x, alpha);
  out.root = root.x;
  out.iterations = root.iterations;
  out.residual = root.residual;
  return out;
}

} // namespace detail

inline RateResult f_qw_alpha(int q, int w, double alpha) {
  detail::split(q, w);
  detail::require(alpha >= 0 && alpha < 1, "alpha must lie in [0, 1)");
  const double b = rate_threshold(q, w);
  const double linear = alpha * std::log2(static_cast<double>(q));
  if (alpha < b) {
    RateResult out;
    out.value = linear;
    return out;
  }
  if (alpha == b) {
    // The root sits at x = 1 here and the log branch evaluates to alpha log2 q;
    // take the larger of the two branch values.
    RateResult out;
    out.value = std::max(linear, alpha * detail::log2_weighted_sum(q / w, w, q % w, 1.0, alpha));
    out.root = 1.0;
    return out;
  }
  return detail::log_branch(q, w, alpha);
}

/// max over alpha of f(q,w,alpha): grid at step 1e-3, then golden-section
/// refinement to |d alpha| <= 1e-9. Checked against f_qw to 1e-6.
inline RateResult f_qw_via_alpha_max(int q, int w) {
  detail::split(q, w);
  if (w == q) {
    // f(q,q,alpha) = alpha log2 q has no interior maximizer.
    RateResult out = f_qw(q, w);
    return out;
  }
  auto f = [&](double a) { return f_qw_alpha(q, w, a).value; };
  double best_a = 0.001;
  double best_v = -1;
  for (int k = 1; k <= 999; ++k) {
    const double a = k / 1000.0;
    const double v = f(a);
    if (v > best_v) {
      best_v = v;
      best_a = a;
    }
  }
  double lo = std::max(best_a - 1e-3, 1e-9);
  double hi = std::min(best_a + 1e-3, 1.0 - 1e-12);
  const double inv_phi = (std::sqrt(5.0) - 1) / 2;
  double c = hi - inv_phi * (hi - lo);
  double d = lo + inv_phi * (hi - lo);
  double fc = f(c);
  double fd = f(d);
  int iters = 0;
  while (hi - lo > 1e-9) {
    ++iters;
    if (fc > fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - inv_phi * (hi - lo);
      fc = f(c);
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + inv_phi * (hi - lo);
      fd = f(d);
    }
  }
  double a_star = 0.5 * (lo + hi);
  RateResult out = f_qw_alpha(q, w, a_star);
  if (best_v > out.value) {
    a_star = best_a;
    out = f_qw_alpha(q, w, best_a);
  }
  out.alpha_star = a_star;
  out.iterations = iters;

  const double direct = f_qw(q, w).value;
  if (std::abs(direct - out.value) > 1e-6)
    throw VerificationFailure("alpha maximization " + std::to_string(out.value) +
                              " disagrees with root formula " + std::to_string(direct));
  return out;
}

// --- w = 1 closed forms and special cases ------------------------------------

/// f(q,1,alpha) through the classical single-nucleotide formula:
/// alpha log2(alpha sum_i i x^{i-1/alpha}) with sum_i (1 - alpha i) x^i = 0, above 2/(q+1).
inline double f_w1_alpha_classical(int q, double alpha) {
  detail::require(q >= 1, "q must be >= 1");
  detail::require(alpha >= 0 && alpha < 1, "alpha must lie in [0, 1)");
  if (alpha <= 2.0 / (q + 1))
    return alpha * std::log2(static_cast<double>(q));
  auto poly = [&](double x) {
    double acc = 0;
    for (int i = q; i >= 1; --i)
      acc = acc * x + (1.0 - alpha * i);
    return acc;
  };
  const double x = bisect(poly, 0.0, 1.0).x;
  const double lx = std::log(x);
  double top = -std::numeric_limits<double>::infinity();
  for (int i = 1; i <= q; ++i)
    top = std::max(top, std::log(static_cast<double>(i)) + (i - 1.0 / alpha) * lx);
  double acc = 0;
  for (int i = 1; i <= q; ++i)
    acc += std::exp(std::log(static_cast<double>(i)) + (i - 1.0 / alpha) * lx - top);
  return alpha * (std::log2(alpha) + (top + std::log(acc)) / std::log(2.0));
}

/// f(q,1) = -log2 x_q with sum_{i=1}^{q} x^i = 1.
inline double f_w1_classical(int q) {
  detail::require(q >= 1, "q must be >= 1");
  if (q == 1)
    return 0.0;
  auto poly = [&](double x) {
    double acc = 0;
    for (int i = 0; i < q; ++i)
      acc = acc * x + 1.0;
    return acc * x - 1.0;
  };
  return -std::log2(bisect(poly, 0.0, 1.0).x);
}

inline double binary_entropy(double p) {
  if (p <= 0 || p >= 1)
    return 0.0;
  return -p * std::log2(p) - (1 - p) * std::log2(1 - p);
}

/// f(4,2,alpha) = 2 alpha below 2/3, alpha + alpha h(1/alpha - 1) above.
inline double f_42_closed_form(double alpha) {
  detail::require(alpha >= 0 && alpha < 1, "alpha must lie in [0, 1)");
  if (alpha < 2.0 / 3.0)
    return 2 * alpha;
  return alpha + alpha * binary_entropy(1 / alpha - 1);
}

/// For w | q: f(q,w,alpha) = alpha log2 w + f(q/w, 1, alpha). Returns the
/// right-hand side and checks it against f_qw_alpha to 1e-9.
inline double f_divisible_decomposition(int q, int w, double alpha) {
  detail::split(q, w);
  detail::require(q % w == 0, "decomposition requires w | q");
  const double rhs = alpha * std::log2(static_cast<double>(w)) + f_qw_alpha(q / w, 1, alpha).value;
  const double lhs = f_qw_alpha(q, w, alpha).value;
  if (std::abs(lhs - rhs) > 1e-9)
    throw VerificationFailure("w|q decomposition mismatch at q=" + std::to_string(q) +
                              " w=" + std::to_string(w) + " alpha=" + std::to_string(alpha));
  return rhs;
}

// --- tables -----------------------------------------------------------------

struct RateCell {
  int q = 0;
  int w = 0;
  double value = 0;
  std::optional<double> alpha_star;
};

inline RateCell rate_cell(int q, int w) {
  const RateResult r = f_qw_via_alpha_max(q, w);
  return {q, w, r.value, r.alpha_star};
}

/// f(q,w) and alpha* along q_list for fixed w. Checks f <= log2(w+1), that f
/// does not decrease along the list, and that alpha* does not move away from
/// w/(w+1).
inline std::vector<RateCell> rate_bounds_and_limits(int w, const std::vector<int> &q_list) {
  std::vector<RateCell> rows;
  const double bound = std::log2(w + 1.0);
  const double alpha_limit = w / (w + 1.0);
  for (int q : q_list) {
    detail::require(q >= w, "every q must be >= w");
    rows.push_back(rate_cell(q, w));
    const RateCell &cur = rows.back();
    if (cur.value > bound + 1e-12)
      throw VerificationFailure("f(" + std::to_string(q) + "," + std::to_string(w) +
                                ") exceeds log2(w+1)");
    if (rows.size() >= 2) {
      const RateCell &prev = rows[rows.size() - 2];
      if (cur.value < prev.value - 1e-9)
        throw VerificationFailure("f(q,w) decreased along q_list at q=" + std::to_string(q));
      if (prev.alpha_star && cur.alpha_star &&
          std::abs(*cur.alpha_star - alpha_limit) > std::abs(*prev.alpha_star - alpha_limit) + 1e-6)
        throw VerificationFailure("alpha* moved away from w/(w+1) at q=" + std::to_string(q));
    }
  }
  return rows;
}

inline const std::vector<int> &table1_axis() {
  static const std::vector<int> axis{1, 2, 3, 4, 8, 16, 64, 256};
  return axis;
}

/// Every populated cell of the (q, w) grid with q, w in {1,2,3,4,8,16,64,256}
/// restricted to q >= 2 and w <= q.
inline std::vector<RateCell> rate_table1() {
  std::vector<RateCell> cells;
  for (int q : table1_axis()) {
    if (q < 2)
      continue;
    for (int w : table1_axis())
      if (w <= q)
        cells.push_back(rate_cell(q, w));
  }
  return cells;
}

/// f(4,w) for w = 1..4.
inline std::vector<RateCell> rate_table2() {
  std::vector<RateCell> cells;
  for (int w = 1; w <= 4; ++w)
    cells.push_back(rate_cell(4, w));
  return cells;
}

/// (w, f(q,w)) for q in {8, 16, 64} and every divisor w of q.
inline std::vector<RateCell> rate_divisor_series() {
  std::vector<RateCell> cells;
  for (int q : {8, 16, 64})
    for (int w = 1; w <= q; ++w)
      if (q % w == 0)
        cells.push_back({q, w, f_qw(q, w).value, std::nullopt});
  return cells;
}

/// Round half up to `digits` decimals.
inline double round_half_up(double x, int digits = 3) {
  const double scale = std::pow(10.0, digits);
  return std::floor(x * scale + 0.5) / scale;
}

} // namespace complexsynth
