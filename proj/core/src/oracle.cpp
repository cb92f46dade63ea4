#include "streamkl/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "streamkl/bounds.hpp"
#include "streamkl/entropy.hpp"
#include "streamkl/numeric.hpp"

namespace streamkl {

namespace {

constexpr double kInequalityTolerance = 1e-9;

using CountMap = std::unordered_map<uint64_t, uint64_t>;

struct Sweep {
  const StreamAlgorithm& alg;
  int64_t n;
  int q;
  std::vector<uint8_t> used;
  // joint_xs[i]: counts of (x_i = x, sigma_{i-1} = bits) keyed bits * n + x
  std::vector<CountMap> joint_xs;
  // state_p[i]: counts of sigma_i under P over the distinct i-prefixes
  std::vector<CountMap> state_p;
  uint64_t p_accept = 0;

  explicit Sweep(const StreamAlgorithm& a)
      : alg(a),
        n(a.profile().n),
        q(a.profile().q()),
        used(static_cast<std::size_t>(a.profile().n), 0),
        joint_xs(q + 1),
        state_p(q + 1) {}

  // depth = prefix length already fixed; state = sigma_depth.
  void visit(int depth, StreamState state) {
    const int i = depth + 1;  // the step about to run
    for (int64_t x = 0; x < n; ++x) {
      if (used[x]) continue;
      joint_xs[i][state.bits * static_cast<uint64_t>(n) + static_cast<uint64_t>(x)] += 1;
      StreamState next = alg.step(i, state, x);
      if (next.width != alg.profile().s[i - 1]) {
        throw std::runtime_error("enumerate_distributions: state width violates the profile at step " +
                                 std::to_string(i));
      }
      state_p[i][next.bits] += 1;
      if (i == q) {
        if (alg.output_bit(next)) ++p_accept;
      } else {
        used[x] = 1;
        visit(depth + 1, next);
        used[x] = 0;
      }
    }
  }
};

std::string state_label(uint64_t bits, int width) {
  return StreamState{bits, width}.to_string();
}

// Sorted support keys for reproducible outcome ordering.
std::vector<uint64_t> sorted_keys(const CountMap& m) {
  std::vector<uint64_t> keys;
  keys.reserve(m.size());
  for (const auto& [k, v] : m) keys.push_back(k);
  std::sort(keys.begin(), keys.end());
  return keys;
}

}  // namespace

OracleResult enumerate_distributions(const StreamAlgorithm& alg, uint64_t walk_cap) {
  const MemoryProfile& profile = alg.profile();
  profile.validate();
  const int64_t n = profile.n;
  const int q = profile.q();

  // joint counts are keyed state.bits * n + x
  for (int si : profile.s) {
    if (si + ceil_log2(n) > 63) {
      throw std::invalid_argument(
          "enumerate_distributions: state widths too large for exact joint accounting");
    }
  }

  uint64_t q_total;
  try {
    q_total = pow_u64(n, q);
  } catch (const std::overflow_error&) {
    throw CapExceededError("enumerate_distributions: n^q overflows the walk budget");
  }
  if (q_total > walk_cap) {
    throw CapExceededError("enumerate_distributions: n^q = " + std::to_string(q_total) +
                           " exceeds the cap of " + std::to_string(walk_cap) +
                           " enumeration walks");
  }
  const uint64_t p_total = falling_factorial(n, q);

  // P side: one pass over the prefix tree of distinct-value sequences.
  Sweep sweep(alg);
  sweep.visit(0, StreamState{});

  // Q side: the state process is Markov under i.i.d. inputs, so an exact
  // integer DP over reachable states covers all n^q sequences.
  CountMap q_states;
  q_states[0] = 1;  // sigma_0
  uint64_t q_accept = 0;
  for (int i = 1; i <= q; ++i) {
    const int prev_width = i == 1 ? 0 : profile.s[i - 2];
    CountMap next_states;
    next_states.reserve(q_states.size() * 2);
    for (const auto& [bits, count] : q_states) {
      StreamState state{bits, prev_width};
      for (int64_t x = 0; x < n; ++x) {
        StreamState next = alg.step(i, state, x);
        if (next.width != profile.s[i - 1]) {
          throw std::runtime_error(
              "enumerate_distributions: state width violates the profile at step " +
              std::to_string(i));
        }
        next_states[next.bits] += count;
        if (i == q && alg.output_bit(next)) q_accept += count;
      }
    }
    q_states = std::move(next_states);
  }

  // Output distributions over the Q support (which contains the P support for
  // any deterministic algorithm; anything else is an internal error).
  const int final_width = profile.s[q - 1];
  const CountMap& final_p = sweep.state_p[q];
  for (const auto& [bits, count] : final_p) {
    if (!q_states.contains(bits)) {
      throw std::logic_error("enumerate_distributions: P reaches a state Q cannot");
    }
  }
  std::vector<uint64_t> support = sorted_keys(q_states);
  std::vector<std::string> labels;
  labels.reserve(support.size());
  std::vector<uint64_t> p_counts, q_counts;
  p_counts.reserve(support.size());
  q_counts.reserve(support.size());
  for (uint64_t bits : support) {
    labels.push_back(state_label(bits, final_width));
    auto it = final_p.find(bits);
    p_counts.push_back(it == final_p.end() ? 0 : it->second);
    q_counts.push_back(q_states.at(bits));
  }

  OracleResult result{
      .p_out = FiniteDistribution::from_counts(labels, p_counts, p_total),
      .q_out = FiniteDistribution::from_counts(labels, q_counts, q_total),
  };
  result.kl_exact = kl_divergence(result.p_out, result.q_out);
  result.p_accept_count = sweep.p_accept;
  result.q_accept_count = q_accept;
  result.p_total = p_total;
  result.q_total = q_total;

  // Mutual informations under P. The joints are exact integer counts over
  // the falling-factorial many distinct i-prefixes.
  result.mi_per_step.assign(q + 1, 0.0);
  result.mi_state.assign(q + 1, 0.0);
  for (int i = 1; i <= q; ++i) {
    const uint64_t prefixes = falling_factorial(n, i);
    const int prev_width = i == 1 ? 0 : profile.s[i - 2];

    // I(X_i; Sigma_{i-1}) through the explicit joint.
    const CountMap& joint = sweep.joint_xs[i];
    std::vector<uint64_t> state_keys;
    {
      CountMap states_before;
      for (const auto& [key, count] : joint) states_before[key / static_cast<uint64_t>(n)] += count;
      state_keys = sorted_keys(states_before);
    }
    std::unordered_map<uint64_t, std::size_t> state_index;
    std::vector<std::string> col_labels;
    for (uint64_t bits : state_keys) {
      state_index[bits] = col_labels.size();
      col_labels.push_back(state_label(bits, prev_width));
    }
    std::vector<std::string> row_labels;
    row_labels.reserve(n);
    for (int64_t x = 0; x < n; ++x) row_labels.push_back(std::to_string(x));
    std::vector<uint64_t> cells(static_cast<std::size_t>(n) * col_labels.size(), 0);
    for (const auto& [key, count] : joint) {
      uint64_t bits = key / static_cast<uint64_t>(n);
      uint64_t x = key % static_cast<uint64_t>(n);
      cells[x * col_labels.size() + state_index.at(bits)] = count;
    }
    result.mi_per_step[i] = mutual_information(
        JointDistribution::from_counts(row_labels, col_labels, cells, prefixes));

    // Sigma_i is a deterministic function of the prefix, so
    // I((X_1..X_i); Sigma_i) = H(Sigma_i).
    std::vector<uint64_t> keys = sorted_keys(sweep.state_p[i]);
    std::vector<std::string> state_labels;
    std::vector<uint64_t> counts;
    for (uint64_t bits : keys) {
      state_labels.push_back(state_label(bits, profile.s[i - 1]));
      counts.push_back(sweep.state_p[i].at(bits));
    }
    result.mi_state[i] =
        shannon_entropy(FiniteDistribution::from_counts(state_labels, counts, prefixes));
  }

  return result;
}

Verdict verify_info_sum_bound(const OracleResult& r) {
  KahanSum sum;
  for (double mi : r.mi_per_step) sum.add(mi);
  Verdict v;
  v.slack = sum.value() - r.kl_exact;
  v.pass = r.kl_exact <= sum.value() + kInequalityTolerance;
  if (!v.pass) {
    v.detail = "kl_exact = " + std::to_string(r.kl_exact) + " exceeds information sum " +
               std::to_string(sum.value());
  }
  return v;
}

std::vector<StepVerdict> verify_bottleneck_bound(const OracleResult& r, int64_t n) {
  const int q = static_cast<int>(r.mi_per_step.size()) - 1;
  std::vector<StepVerdict> verdicts;
  verdicts.reserve(q);
  for (int i = 0; i <= q - 1; ++i) {
    StepVerdict sv;
    sv.i = i;
    sv.observed = r.mi_per_step[i + 1];
    sv.bound = next_draw_info_bound(n, i, i == 0 ? 0.0 : r.mi_state[i]);
    sv.slack = sv.bound - sv.observed;
    sv.pass = sv.observed <= sv.bound + kInequalityTolerance;
    verdicts.push_back(sv);
  }
  return verdicts;
}

}  // namespace streamkl
