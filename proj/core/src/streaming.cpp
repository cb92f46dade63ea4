#include "streamkl/streaming.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

namespace streamkl {

int ceil_log2(int64_t n) {
  if (n < 1) throw std::invalid_argument("ceil_log2: n < 1");
  int bits = 0;
  while ((int64_t{1} << bits) < n) ++bits;
  return bits;
}

int64_t MemoryProfile::sum_s_before_last() const {
  int64_t sum = 0;
  for (int i = 0; i + 1 < q(); ++i) sum += s[i];
  return sum;
}

void MemoryProfile::validate() const {
  if (n < 2) throw std::invalid_argument("MemoryProfile: alphabet size must be >= 2");
  if (s.empty()) throw std::invalid_argument("MemoryProfile: stream length must be >= 1");
  if (static_cast<int64_t>(s.size()) >= n) {
    throw std::invalid_argument("MemoryProfile: stream length q must satisfy q < n");
  }
  for (int si : s) {
    if (si < 0) throw std::invalid_argument("MemoryProfile: negative state width");
  }
}

std::string MemoryProfile::to_string() const {
  std::string out;
  for (int i = 0; i < q(); ++i) {
    if (i) out += '|';
    out += std::to_string(s[i]);
  }
  return out;
}

MemoryProfile normalize_profile(const MemoryProfile& raw) {
  raw.validate();
  int growth = ceil_log2(raw.n);
  MemoryProfile out = raw;
  out.s[0] = std::min(raw.s[0], growth);
  for (int i = 1; i < raw.q(); ++i) {
    out.s[i] = std::min(raw.s[i], out.s[i - 1] + growth);
  }
  return out;
}

MemoryProfile parse_memory_spec(const std::string& spec, int64_t n, int q_hint) {
  MemoryProfile profile;
  profile.n = n;
  if (spec.rfind("const:", 0) == 0) {
    if (q_hint < 1) {
      throw std::invalid_argument("parse_memory_spec: 'const:<s>' needs a stream length");
    }
    int width = std::stoi(spec.substr(6));
    profile.s.assign(q_hint, width);
  } else {
    std::size_t pos = 0;
    while (pos <= spec.size()) {
      std::size_t comma = spec.find(',', pos);
      std::string tok = spec.substr(pos, comma == std::string::npos ? std::string::npos
                                                                    : comma - pos);
      if (tok.empty()) throw std::invalid_argument("parse_memory_spec: empty entry in '" + spec + "'");
      profile.s.push_back(std::stoi(tok));
      if (comma == std::string::npos) break;
      pos = comma + 1;
    }
    if (q_hint >= 0 && q_hint != profile.q()) {
      throw std::invalid_argument("parse_memory_spec: list length " +
                                  std::to_string(profile.q()) + " does not match q = " +
                                  std::to_string(q_hint));
    }
  }
  profile.validate();
  return profile;
}

std::string StreamState::to_string() const {
  std::string out(width, '0');
  for (int b = 0; b < width; ++b) {
    if ((bits >> (width - 1 - b)) & 1u) out[b] = '1';
  }
  return out;
}

StreamAlgorithm::StreamAlgorithm(MemoryProfile profile) : profile_(std::move(profile)) {
  profile_.validate();
  for (int si : profile_.s) {
    if (si > 64) {
      throw std::invalid_argument("StreamAlgorithm: state widths above 64 bits are not supported");
    }
  }
}

StreamState run_stream(const StreamAlgorithm& alg, std::span<const int64_t> x) {
  const MemoryProfile& profile = alg.profile();
  if (static_cast<int>(x.size()) != profile.q()) {
    throw std::invalid_argument("run_stream: input length does not match the profile");
  }
  StreamState state;  // sigma_0, the empty state
  for (int i = 1; i <= profile.q(); ++i) {
    int64_t xi = x[i - 1];
    if (xi < 0 || xi >= profile.n) {
      throw std::invalid_argument("run_stream: input symbol out of range at step " +
                                  std::to_string(i));
    }
    state = alg.step(i, state, xi);
    if (state.width != profile.s[i - 1]) {
      throw std::runtime_error("run_stream: state width " + std::to_string(state.width) +
                               " at step " + std::to_string(i) + " violates the profile width " +
                               std::to_string(profile.s[i - 1]));
    }
  }
  return state;
}

std::vector<int64_t> sample_with_replacement(int64_t n, int q, uint64_t seed) {
  if (n < 1 || q < 1) throw std::invalid_argument("sample_with_replacement: need n >= 1, q >= 1");
  StableRng rng(seed);
  std::vector<int64_t> out(q);
  for (auto& v : out) v = static_cast<int64_t>(rng.below(static_cast<uint64_t>(n)));
  return out;
}

std::vector<int64_t> sample_without_replacement(int64_t n, int q, uint64_t seed) {
  if (q < 1 || q >= n) {
    throw std::invalid_argument("sample_without_replacement: need 1 <= q < n");
  }
  StableRng rng(seed);
  std::vector<int64_t> out(q);
  if (q <= n / 2) {
    // Sparse regime: rejection against the values seen so far.
    std::unordered_set<int64_t> seen;
    seen.reserve(static_cast<std::size_t>(q) * 2);
    for (int i = 0; i < q; ++i) {
      int64_t v;
      do {
        v = static_cast<int64_t>(rng.below(static_cast<uint64_t>(n)));
      } while (seen.contains(v));
      seen.insert(v);
      out[i] = v;
    }
  } else {
    // Dense regime: partial Fisher-Yates over a sparse displacement map.
    std::unordered_map<int64_t, int64_t> moved;
    moved.reserve(static_cast<std::size_t>(q) * 2);
    auto at = [&](int64_t idx) {
      auto it = moved.find(idx);
      return it == moved.end() ? idx : it->second;
    };
    for (int i = 0; i < q; ++i) {
      int64_t j = i + static_cast<int64_t>(rng.below(static_cast<uint64_t>(n - i)));
      int64_t vj = at(j);
      moved[j] = at(i);
      out[i] = vj;
    }
  }
  return out;
}

TableAlgorithm::TableAlgorithm(MemoryProfile profile, uint64_t seed, uint64_t table_cap)
    : StreamAlgorithm(std::move(profile)) {
  uint64_t total_entries = 0;
  for (int i = 1; i <= profile_.q(); ++i) {
    int prev_width = i == 1 ? 0 : profile_.s[i - 2];
    if (prev_width > 40) {
      throw std::invalid_argument("random_table_algorithm: table for step " + std::to_string(i) +
                                  " is too large to tabulate");
    }
    total_entries += (uint64_t{1} << prev_width) * static_cast<uint64_t>(profile_.n);
    if (total_entries > table_cap) {
      throw std::invalid_argument("random_table_algorithm: " + std::to_string(total_entries) +
                                  "+ table entries exceed the cap of " + std::to_string(table_cap));
    }
  }

  StableRng rng(seed);
  tables_.resize(profile_.q());
  for (int i = 1; i <= profile_.q(); ++i) {
    int prev_width = i == 1 ? 0 : profile_.s[i - 2];
    int width = profile_.s[i - 1];
    uint64_t states = uint64_t{1} << prev_width;
    auto& table = tables_[i - 1];
    table.resize(states * static_cast<uint64_t>(profile_.n));
    for (auto& entry : table) {
      entry = width == 64 ? rng.next() : rng.below(uint64_t{1} << width);
    }
  }
}

StreamState TableAlgorithm::step(int i, StreamState prev, int64_t x) const {
  const auto& table = tables_[i - 1];
  uint64_t idx = prev.bits * static_cast<uint64_t>(profile_.n) + static_cast<uint64_t>(x);
  return {table[idx], profile_.s[i - 1]};
}

std::unique_ptr<TableAlgorithm> random_table_algorithm(const MemoryProfile& profile,
                                                       uint64_t seed, uint64_t table_cap) {
  return std::make_unique<TableAlgorithm>(profile, seed, table_cap);
}

namespace {

class ConstantAlgorithm : public StreamAlgorithm {
 public:
  using StreamAlgorithm::StreamAlgorithm;
  StreamState step(int i, StreamState, int64_t) const override {
    return {0, profile_.s[i - 1]};
  }
};

}  // namespace

std::unique_ptr<StreamAlgorithm> constant_algorithm(MemoryProfile profile) {
  return std::make_unique<ConstantAlgorithm>(std::move(profile));
}

}  // namespace streamkl
