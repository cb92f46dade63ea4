#include "streamkl/monte_carlo.hpp"

#include <cmath>
#include <stdexcept>
#include <thread>
#include <unordered_set>

namespace streamkl {

namespace {

// One sample: draw a fresh sequence from its derived sub-seed and stream it.
// Buffers are reused across samples within a worker.
struct SampleRunner {
  const StreamAlgorithm& alg;
  Source source;
  int64_t n;
  int q;
  std::vector<int64_t> buf;
  std::unordered_set<int64_t> seen;

  SampleRunner(const StreamAlgorithm& a, Source src)
      : alg(a), source(src), n(a.profile().n), q(a.profile().q()), buf(q) {
    seen.reserve(static_cast<std::size_t>(q) * 2);
  }

  void draw(uint64_t sample_seed) {
    StableRng rng(sample_seed);
    if (source == Source::with_replacement) {
      for (auto& v : buf) v = static_cast<int64_t>(rng.below(static_cast<uint64_t>(n)));
      return;
    }
    if (q <= n / 2) {
      seen.clear();
      for (int i = 0; i < q; ++i) {
        int64_t v;
        do {
          v = static_cast<int64_t>(rng.below(static_cast<uint64_t>(n)));
        } while (seen.contains(v));
        seen.insert(v);
        buf[i] = v;
      }
    } else {
      // small alphabets only reach here; materialize the partial shuffle
      buf = sample_without_replacement(n, q, sample_seed);
    }
  }

  int run(uint64_t sample_seed) {
    draw(sample_seed);
    return alg.output_bit(run_stream(alg, buf));
  }
};

uint64_t source_tag(Source source) {
  return source == Source::with_replacement ? 0x51u : 0x50u;
}

}  // namespace

Estimate estimate_accept(const StreamAlgorithm& alg, Source source, uint64_t samples,
                         uint64_t seed, int workers) {
  if (samples < 1) throw std::invalid_argument("estimate_accept: samples must be >= 1");
  if (workers < 1) throw std::invalid_argument("estimate_accept: workers must be >= 1");
  if (source == Source::without_replacement &&
      alg.profile().q() >= alg.profile().n) {
    throw std::invalid_argument("estimate_accept: q < n required to sample without replacement");
  }

  const uint64_t stream_seed = mix_seed(seed ^ source_tag(source));
  auto count_block = [&](uint64_t begin, uint64_t end) {
    SampleRunner runner(alg, source);
    uint64_t hits = 0;
    for (uint64_t idx = begin; idx < end; ++idx) {
      hits += static_cast<uint64_t>(runner.run(derive_subseed(stream_seed, idx)));
    }
    return hits;
  };

  uint64_t accepted = 0;
  if (workers == 1 || samples < 2 * static_cast<uint64_t>(workers)) {
    accepted = count_block(0, samples);
  } else {
    std::vector<uint64_t> partial(workers, 0);
    std::vector<std::thread> threads;
    threads.reserve(workers);
    uint64_t block = samples / workers;
    for (int w = 0; w < workers; ++w) {
      uint64_t begin = block * w;
      uint64_t end = w + 1 == workers ? samples : block * (w + 1);
      threads.emplace_back([&, w, begin, end] { partial[w] = count_block(begin, end); });
    }
    for (auto& t : threads) t.join();
    for (uint64_t h : partial) accepted += h;
  }

  Estimate est;
  est.samples = samples;
  est.seed = seed;
  est.value = static_cast<double>(accepted) / static_cast<double>(samples);
  est.std_error = std::sqrt(est.value * (1.0 - est.value) / static_cast<double>(samples));
  return est;
}

Estimate estimate_tv_advantage(const StreamAlgorithm& alg, uint64_t samples, uint64_t seed,
                               int workers) {
  Estimate p = estimate_accept(alg, Source::without_replacement, samples, seed, workers);
  Estimate q = estimate_accept(alg, Source::with_replacement, samples, seed, workers);
  Estimate tv;
  tv.samples = samples;
  tv.seed = seed;
  tv.value = std::abs(p.value - q.value);
  tv.std_error = std::sqrt(p.std_error * p.std_error + q.std_error * q.std_error);
  return tv;
}

}  // namespace streamkl
