#include <gtest/gtest.h>

#include <cmath>

#include "streamkl/collision.hpp"
#include "streamkl/oracle.hpp"

using namespace streamkl;

TEST(DeriveCapacities, ReferenceValues) {
  EXPECT_EQ(derive_capacities({4, {3, 5, 1}}).k, (std::vector<int64_t>{1, 2, 0}));
  EXPECT_EQ(derive_capacities({4, {1, 1, 1}}).k, (std::vector<int64_t>{0, 0, 0}));
  EXPECT_EQ(derive_capacities({8, {4, 4, 4}}).k, (std::vector<int64_t>{1, 1, 1}));
  EXPECT_THROW(derive_capacities({4, {3, 0, 1}}), std::invalid_argument);
}

TEST(DeriveCapacities, InvariantsHoldOnRandomProfiles) {
  StableRng rng(17);
  for (int trial = 0; trial < 500; ++trial) {
    int64_t n = 2 + static_cast<int64_t>(rng.below(62));
    int q = 1 + static_cast<int>(rng.below(std::min<uint64_t>(8, n - 1)));
    MemoryProfile profile{n, {}};
    for (int i = 0; i < q; ++i) profile.s.push_back(1 + static_cast<int>(rng.below(24)));
    CapacityVector caps = derive_capacities(profile);
    int growth = ceil_log2(n);
    ASSERT_LE(caps.k[0], 1);
    for (int i = 0; i < q; ++i) {
      ASSERT_GE(caps.k[i], 0);
      ASSERT_LE(caps.k[i], i + 1);  // k_i <= i in step numbering
      ASSERT_LE(1 + caps.k[i] * growth, profile.s[i]);
      if (i > 0) ASSERT_LE(caps.k[i], caps.k[i - 1] + 1);
    }
  }
}

TEST(CollisionAlgorithm, HandTraces) {
  auto alg = make_collision_algorithm({4, {3, 1}});
  EXPECT_EQ(alg->capacities().k, (std::vector<int64_t>{1, 0}));
  // sigma_1 = (0, 3): flag 0 then the stored value
  StreamState s1 = alg->step(1, StreamState{}, 3);
  EXPECT_EQ(s1.to_string(), "011");
  // repeat raises the flag
  EXPECT_EQ(alg->output_bit(run_stream(*alg, std::vector<int64_t>{3, 3})), 1);
  // no repeat, capacity shrinks: output bit 0
  EXPECT_EQ(alg->output_bit(run_stream(*alg, std::vector<int64_t>{3, 1})), 0);
}

TEST(CollisionAlgorithm, NeverFlagsDistinctInputs) {
  // exhaustive at small scale, sampled beyond
  MemoryProfile profile{6, {3, 6, 6, 1}};
  auto alg = make_collision_algorithm(profile);
  OracleResult oracle = enumerate_distributions(*alg);
  EXPECT_EQ(oracle.p_accept_count, 0u);

  for (uint64_t seed = 0; seed < 200; ++seed) {
    auto x = sample_without_replacement(6, 4, seed);
    ASSERT_EQ(alg->output_bit(run_stream(*alg, x)), 0);
  }
}

TEST(CollisionAlgorithm, AllOnesStateAbsorbs) {
  MemoryProfile profile{6, {4, 7, 7, 1}};
  auto alg = make_collision_algorithm(profile);
  ASSERT_EQ(alg->capacities().k, (std::vector<int64_t>{1, 2, 2, 0}));
  // force a collision at step 2, then watch every later state stay all-ones
  StreamState s = alg->step(1, StreamState{}, 2);
  s = alg->step(2, s, 2);
  EXPECT_EQ(s.to_string(), "1111111");
  for (int i = 3; i <= 4; ++i) {
    for (int64_t x = 0; x < 6; ++x) {
      StreamState next = alg->step(i, s, x);
      ASSERT_EQ(next.bits, (uint64_t{1} << next.width) - 1);
    }
    s = alg->step(i, s, 1);
  }
  EXPECT_EQ(s.to_string(), "1");
}

TEST(CollisionAlgorithm, EmittedWidthsMatchProfile) {
  MemoryProfile profile{8, {4, 7, 4, 1}};
  auto alg = make_collision_algorithm(profile);
  for (uint64_t seed = 0; seed < 100; ++seed) {
    auto x = sample_with_replacement(8, 4, seed);
    run_stream(*alg, x);  // throws on any width mismatch
  }
}

TEST(CollisionAlgorithm, TruncationKeepsInsertionOrderPrefix) {
  // capacities (1, 2, 1): step 3 truncates to the first stored value
  MemoryProfile profile{4, {3, 5, 3}};
  auto alg = make_collision_algorithm(profile);
  ASSERT_EQ(alg->capacities().k, (std::vector<int64_t>{1, 2, 1}));
  StreamState s = alg->step(1, StreamState{}, 2);
  s = alg->step(2, s, 0);  // list (2, 0)
  s = alg->step(3, s, 1);  // truncate to (2); x_3 discarded
  EXPECT_EQ(s.to_string(), "010");
  // the discarded value was still checked against the list first
  StreamState t = alg->step(1, StreamState{}, 2);
  t = alg->step(2, t, 0);
  t = alg->step(3, t, 0);  // 0 is stored: flag
  EXPECT_EQ(t.to_string(), "111");
}

TEST(AnalyticAcceptProbability, ReferenceValues) {
  EXPECT_DOUBLE_EQ(analytic_accept_probability(4, CapacityVector{{0, 0, 0}}), 0.0);
  EXPECT_NEAR(analytic_accept_probability(4, CapacityVector{{1, 2, 0}}), 5.0 / 8.0, 1e-15);
  EXPECT_NEAR(analytic_accept_probability(4, CapacityVector{{1, 0}}), 0.25, 1e-15);
  EXPECT_THROW(analytic_accept_probability(4, CapacityVector{{1, 4}}), std::domain_error);
}

TEST(AnalyticAcceptProbability, MatchesExactEnumerationCounts) {
  // Q[accept] as an exact rational: q_accept_count == n^q - n * prod(n - k_i)
  for (int64_t n : {4, 6, 8}) {
    for (int q = 2; q <= std::min<int64_t>(4, n - 1); ++q) {
      std::vector<std::vector<int>> widths = {
          std::vector<int>(q, 1 + ceil_log2(n)),
          std::vector<int>(q, 1 + 2 * ceil_log2(n)),
      };
      for (auto& s : widths) {
        MemoryProfile profile{n, s};
        auto alg = make_collision_algorithm(profile);
        OracleResult oracle = enumerate_distributions(*alg);
        const auto& k = alg->capacities().k;
        uint64_t keep = static_cast<uint64_t>(n);
        for (int i = 0; i + 1 < q; ++i) keep *= static_cast<uint64_t>(n - k[i]);
        ASSERT_EQ(oracle.q_accept_count, oracle.q_total - keep) << "n=" << n << " q=" << q;
        ASSERT_NEAR(oracle.q_accept(), analytic_accept_probability(n, alg->capacities()), 1e-12);
      }
    }
  }
}

TEST(CollisionAlgorithm, NormalizationWithEqualCapacitiesPreservesDistributions) {
  // raw (3, 10, 7) and its normalization (3, 6, 7) derive the same capacities,
  // so the two algorithms induce identical exact output distributions
  MemoryProfile raw{8, {3, 10, 7}};
  MemoryProfile normalized = normalize_profile(raw);
  ASSERT_EQ(normalized.s, (std::vector<int>{3, 6, 7}));
  auto raw_alg = make_collision_algorithm(raw);
  auto norm_alg = make_collision_algorithm(normalized);
  ASSERT_EQ(raw_alg->capacities().k, norm_alg->capacities().k);

  OracleResult raw_oracle = enumerate_distributions(*raw_alg);
  OracleResult norm_oracle = enumerate_distributions(*norm_alg);
  ASSERT_EQ(raw_oracle.p_out.outcomes(), norm_oracle.p_out.outcomes());
  ASSERT_EQ(raw_oracle.p_out.probs(), norm_oracle.p_out.probs());
  ASSERT_EQ(raw_oracle.q_out.probs(), norm_oracle.q_out.probs());
  EXPECT_DOUBLE_EQ(raw_oracle.kl_exact, norm_oracle.kl_exact);
}
