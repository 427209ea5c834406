#include "pgcache/simulate.hpp"

#include <algorithm>
#include <numeric>

#include <fmt/format.h>

#include "pgcache/errors.hpp"

namespace pgcache {

std::uint64_t SplitMix64::next() {
  std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::uint64_t SplitMix64::below(std::uint64_t bound) {
  if (bound == 0) throw InvalidArgument("SplitMix64::below(0)");
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
  std::uint64_t x = next();
  while (x >= limit) x = next();
  return x % bound;
}

FileStore random_store(SplitMix64& rng, std::size_t files, std::size_t subfiles, std::size_t subfile_bytes) {
  FileStore store(files, subfiles, subfile_bytes);
  for (std::size_t n = 0; n < files; ++n) {
    for (std::size_t f = 0; f < subfiles; ++f) {
      auto bytes = store.subfile(n, f);
      for (std::size_t i = 0; i < bytes.size(); i += 8) {
        std::uint64_t word = rng.next();
        for (std::size_t j = i; j < std::min(i + 8, bytes.size()); ++j, word >>= 8) {
          bytes[j] = static_cast<std::uint8_t>(word & 0xFFU);
        }
      }
    }
  }
  return store;
}

std::vector<std::uint32_t> random_demands(SplitMix64& rng, std::size_t users, std::size_t files) {
  std::vector<std::uint32_t> d(users);
  for (auto& x : d) x = static_cast<std::uint32_t>(rng.below(files));
  return d;
}

bool SimulationReport::all_decoded() const {
  return packet_count_constant &&
         std::all_of(decoded.begin(), decoded.end(), [&](std::size_t n) { return n == vectors(); });
}

SimulationReport simulate(const Scheme& scheme, const SimulationOptions& options) {
  const std::size_t K = scheme.placement.users();
  const std::size_t F = scheme.placement.subfiles();
  const std::size_t N = options.files == 0 ? K : options.files;

  SplitMix64 rng(options.seed);
  const FileStore store = random_store(rng, N, F, options.subfile_bytes);

  std::vector<std::vector<std::uint32_t>> demand_sets;
  for (std::size_t i = 0; i < options.trials; ++i) demand_sets.push_back(random_demands(rng, K, N));
  SimulationReport report;
  report.random_trials = options.trials;
  if (options.fixed_demands) {
    demand_sets.emplace_back(K, 0U);
    ++report.fixed_trials;
    if (N >= K) {
      std::vector<std::uint32_t> distinct(K);
      std::iota(distinct.begin(), distinct.end(), 0U);
      demand_sets.push_back(std::move(distinct));
      ++report.fixed_trials;
    }
  }
  report.users = K;
  report.subfiles = F;
  report.decoded.assign(K, 0);

  std::vector<CacheView> caches;
  for (std::uint32_t u = 0; u < K; ++u) caches.emplace_back(store, scheme.placement, u);

  for (std::size_t trial = 0; trial < demand_sets.size(); ++trial) {
    const auto& demands = demand_sets[trial];
    auto packets = encode(scheme.delivery, store, demands);
    if (trial == 0) report.packets = packets.size();
    if (packets.size() != report.packets) report.packet_count_constant = false;
    for (std::uint32_t u = 0; u < K; ++u) {
      try {
        auto file = decode(u, packets, scheme.delivery, scheme.placement, caches[u], demands);
        auto expected = store.file(demands[u]);
        if (std::equal(file.begin(), file.end(), expected.begin(), expected.end())) {
          ++report.decoded[u];
        } else if (report.failures.size() < 10) {
          report.failures.push_back(fmt::format("trial {}: user {} decoded wrong bytes", trial, u));
        }
      } catch (const DecodeError& e) {
        if (report.failures.size() < 10) report.failures.push_back(fmt::format("trial {}: {}", trial, e.what()));
      }
    }
    if (trial == 0 && options.trials > 0) report.first_trace = std::move(packets);
  }
  return report;
}

}  // namespace pgcache
