#include "complexsynth/ball.hpp"
#include "complexsynth/rate.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace complexsynth;

namespace {

ComplexSequence seq(int q, int w, std::vector<std::vector<Symbol>> syms) {
  ComplexSequence s(q, w);
  for (auto &m : syms)
    s.push_back(ComplexSymbol(std::move(m), q));
  return s;
}

// A=0 C=1 G=2 T=3 M=4
const ComplexSequence kS1 = seq(4, 2, {{0, 1}, {0, 2}, {0, 3}, {0, 3}});
const ComplexSequence kS2 = seq(4, 2, {{0, 1}, {2, 3}, {0, 1}, {2, 3}});
const ComplexSequence kRuns = seq(5, 3, {{0, 1, 2}, {0, 3, 4}, {1, 2, 4}, {1, 2, 3}, {2, 3, 4}, {2, 3, 4}});

ComplexSequence random_sequence(std::mt19937_64 &rng, int q, int w, std::size_t n) {
  const auto all = all_complex_symbols(q, w);
  ComplexSequence s(q, w);
  for (std::size_t i = 0; i < n; ++i)
    s.push_back(all[rng() % all.size()]);
  return s;
}

} // namespace

TEST(BallEnumerate, ContainsKnownSubInstances) {
  const auto ball = ball_enumerate(kS1, 1);
  EXPECT_TRUE(std::binary_search(ball.begin(), ball.end(), Strand{0, 0, 3}));
  EXPECT_TRUE(std::binary_search(ball.begin(), ball.end(), Strand{0, 0, 0}));
  EXPECT_FALSE(std::binary_search(ball.begin(), ball.end(), Strand{3, 3, 3}));
}

TEST(BallEnumerate, Extremes) {
  EXPECT_EQ(ball_enumerate(kS1, 0), instances(kS1));
  EXPECT_EQ(ball_enumerate(kS1, 4), std::vector<Strand>{Strand{}});
  EXPECT_THROW(ball_enumerate(kS1, 5), InvalidInput);
}

TEST(BallEnumerate, MatchesFilterOracleOnRandomInstances) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 100; ++trial) {
    const int q = 1 + static_cast<int>(rng() % 4);
    const int w = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(q));
    const std::size_t n = rng() % 6;
    const auto s = random_sequence(rng, q, w, n);
    const std::size_t t = n == 0 ? 0 : rng() % (n + 1);
    const auto ball = ball_enumerate(s, t); // also checks both union orders agree
    const auto ref = oracle::ball_by_filter(s, t);
    EXPECT_EQ(std::set<Strand>(ball.begin(), ball.end()), ref) << "trial " << trial;
  }
}

TEST(BallSingle, RunFormulaExamples) {
  EXPECT_EQ(ball_size_single(kRuns).count, 729);
  EXPECT_EQ(ball_size_oracle(kRuns, 1).count, 729);
  EXPECT_EQ(ball_size_single(kS2).count, 32);
  EXPECT_EQ(ball_size_oracle(kS2, 1).count, 32);
  EXPECT_EQ(ball_size_single(seq(5, 2, {{1, 3}, {1, 3}, {1, 3}, {1, 3}, {1, 3}})).count, 16);
  EXPECT_THROW(ball_size_single(seq(4, 2, {{0, 1}})), InvalidInput);
}

TEST(BallRecursive, DerivedValues) {
  const auto c4 = periodic_complex_sequence(6, 4, 4);
  EXPECT_EQ(ball_size_recursive(c4, 1).count, 160);
  EXPECT_EQ(ball_size_oracle(c4, 1).count, 160);
  EXPECT_EQ(ball_size_recursive(periodic_complex_sequence(4, 2, 8), 3).count, 832);
  EXPECT_EQ(ball_size_gf(4, 2, 8, 3).count, 832);
  const auto c9 = periodic_complex_sequence(7, 2, 9);
  EXPECT_EQ(ball_size_oracle(c9, 5).count, 1376);
  EXPECT_EQ(ball_size_gf(7, 2, 9, 5).count, 1376);
  EXPECT_EQ(ball_size_recursive(c9, 5).method, BallMethod::periodic_recursion);
  EXPECT_EQ(ball_size_recursive(kRuns, 2).method, BallMethod::recursion);
}

TEST(BallRecursive, BaseCases) {
  EXPECT_EQ(ball_size_periodic_recursion(4, 2, 0, 0).count, 1);
  EXPECT_EQ(ball_size_periodic_recursion(4, 2, 5, 0).count, 32);
  EXPECT_EQ(ball_size_periodic_recursion(4, 2, 5, 5).count, 1);
  EXPECT_EQ(ball_size_gf(5, 3, 6, 0).count, 729);
  EXPECT_EQ(ball_size_partition(kRuns, 6).count, 1);
}

TEST(BallRecursive, EqualsOracleOnRandomSequences) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 150; ++trial) {
    const int q = 1 + static_cast<int>(rng() % 5);
    const int w = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(q));
    const std::size_t n = 1 + rng() % 7;
    const auto s = random_sequence(rng, q, w, n);
    for (std::size_t t = 0; t <= n; ++t)
      ASSERT_EQ(ball_size_recursive(s, t).count, ball_size_oracle(s, t).count)
          << "trial " << trial << " t=" << t;
  }
}

TEST(BallGf, AgreesWithRecursionsAtLargeN) {
  for (auto [q, w] : {std::pair{4, 2}, {7, 2}, {5, 3}, {6, 4}, {9, 3}})
    for (std::size_t t : {1u, 7u, 25u, 59u}) {
      const BigInt gf = ball_size_gf(q, w, 60, t).count;
      EXPECT_EQ(ball_size_periodic_recursion(q, w, 60, t).count, gf);
      EXPECT_EQ(ball_size_skip_recursion(q, w, 60, t).count, gf);
      if (q % w == 0) {
        EXPECT_EQ(ball_size_factorized(q, w, 60, t).count, gf);
      }
    }
}

TEST(BallGf, FactorizationNeedsDivisibility) {
  EXPECT_THROW(ball_size_factorized(7, 2, 5, 1), InvalidInput);
  // w = q: every ball is just the instances of the remaining length
  EXPECT_EQ(ball_size_factorized(3, 3, 5, 2).count, 27);
}

TEST(BallSize, ExtremalSingleDeletionSizes) {
  // disjoint consecutive symbols (w <= q/2) attain w^{n-1} n
  EXPECT_EQ(ball_size_oracle(kS2, 1).count, 8 * 4);
  // |psi_i ∩ psi_{i+1}| = 2w - q attains w^{n-1} + w^{n-2}(n-1)(q-w) for w > q/2
  const auto s = seq(5, 3, {{0, 1, 2}, {2, 3, 4}, {0, 1, 2}, {2, 3, 4}});
  EXPECT_EQ(ball_size_oracle(s, 1).count, 27 + 9 * 3 * 2);
}

TEST(Maximality, ExhaustiveScans) {
  for (auto [q, w, n, t] : {std::tuple{3, 2, 4u, 1u}, {3, 2, 4u, 2u}, {4, 2, 4u, 1u}, {2, 1, 6u, 2u}, {2, 1, 5u, 2u}}) {
    const auto rep = ball_maximality_scan(q, w, n, t);
    EXPECT_TRUE(rep.holds) << q << ' ' << w << ' ' << n << ' ' << t;
    EXPECT_EQ(rep.largest_found, rep.periodic_size);
  }
  EXPECT_TRUE(ball_maximality_check(3, 2, 3, 0));
}

TEST(Maximality, RecursionRouteAgrees) {
  const auto a = ball_maximality_scan(4, 2, 4, 2, true);
  const auto b = ball_maximality_scan(4, 2, 4, 2, false);
  EXPECT_EQ(a.largest_found, b.largest_found);
  EXPECT_EQ(a.sequences_scanned, b.sequences_scanned);
}

TEST(SkipMap, WorkedExamples) {
  EXPECT_EQ(skip_map({2, 0, 2, 3}, 7, 2, 9, 5).v, (std::vector<int>{2, 3, 1, 0}));
  EXPECT_EQ(skip_unmap({{3, 6, 3, 1}}, 7, 2, 9, 5), (Strand{3, 3, 1, 3}));
  EXPECT_EQ(skip_map({1, 0, 0}, 6, 4, 4, 1).v, (std::vector<int>{1, 2, 4}));
  EXPECT_EQ(skip_unmap({{1, 2, 4}}, 6, 4, 4, 1), (Strand{1, 0, 0}));
}

TEST(SkipMap, RejectsOutsideBall) {
  // needs more than t complex-symbol skips
  EXPECT_THROW(skip_map({6, 6, 6, 6}, 7, 2, 9, 5), InvalidInput);
  EXPECT_THROW(skip_map({0, 0}, 7, 2, 9, 5), InvalidInput);
  EXPECT_THROW(skip_unmap({{6, 6, 6, 6}}, 7, 2, 9, 5), InvalidInput);
  EXPECT_THROW(skip_unmap({{7, 0, 0, 0}}, 7, 2, 9, 5), InvalidInput);
}

TEST(SkipMap, BijectionOnBall) {
  const auto ball = ball_enumerate(periodic_complex_sequence(7, 2, 9), 5);
  const auto vs = enumerate_skip_vectors(7, 2, 9, 5);
  ASSERT_EQ(ball.size(), vs.size());
  std::set<std::vector<int>> images;
  for (const auto &x : ball) {
    const auto v = skip_map(x, 7, 2, 9, 5);
    EXPECT_EQ(skip_unmap(v, 7, 2, 9, 5), x);
    images.insert(v.v);
  }
  EXPECT_EQ(images.size(), ball.size());
}

TEST(Reachability, CountsMatchBalls) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 30; ++trial) {
    const int q = 2 + static_cast<int>(rng() % 3);
    const int w = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(q));
    const std::size_t tau = 1 + rng() % 5;
    const auto s = random_sequence(rng, q, w, tau);
    const auto reach = oracle::reachable(s, tau);
    BigInt total = 0;
    for (std::size_t i = 0; i <= tau; ++i) {
      const std::size_t len = tau - i;
      const auto n_len = std::count_if(reach.begin(), reach.end(), [&](const Strand &x) { return x.size() == len; });
      EXPECT_EQ(BigInt(n_len), ball_size_recursive(s, i).count);
      total += ball_size_recursive(s, i).count;
    }
    EXPECT_EQ(BigInt(reach.size()), total);
  }
}

TEST(EmpiricalRate, ApproachesFqwAtModerateN) {
  const double f = f_qw(4, 2).value;
  double prev_gap = 1e9;
  for (std::size_t n : {10u, 20u, 40u}) {
    BigInt total = 0;
    for (std::size_t t = 0; t <= n; ++t)
      total += ball_size_gf(4, 2, n, t).count;
    const double empirical = std::log2(total.convert_to<double>()) / static_cast<double>(n);
    const double gap = std::abs(empirical - f);
    EXPECT_LT(gap, prev_gap);
    prev_gap = gap;
  }
  EXPECT_LE(prev_gap, 0.05);
}
