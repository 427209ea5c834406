#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pgcache/delivery.hpp"
#include "pgcache/scheme.hpp"

namespace pgcache {

// SplitMix64: state += 0x9E3779B97F4A7C15, then two xor-shift-multiply rounds.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next();
  // Uniform in [0, bound) by rejection.
  std::uint64_t below(std::uint64_t bound);

 private:
  std::uint64_t state_;
};

FileStore random_store(SplitMix64& rng, std::size_t files, std::size_t subfiles, std::size_t subfile_bytes);
std::vector<std::uint32_t> random_demands(SplitMix64& rng, std::size_t users, std::size_t files);

struct SimulationOptions {
  std::uint64_t seed = 1;
  std::size_t trials = 200;
  std::size_t subfile_bytes = kDefaultSubfileBytes;
  std::size_t files = 0;        // 0 means one file per user
  bool fixed_demands = true;    // also run all-equal and all-distinct demand vectors
};

struct SimulationReport {
  std::size_t random_trials = 0;
  std::size_t fixed_trials = 0;
  std::size_t users = 0;
  std::size_t subfiles = 0;
  std::vector<std::size_t> decoded;  // per user, demand vectors decoded exactly
  std::size_t packets = 0;           // per demand vector; constant across trials
  bool packet_count_constant = true;
  std::vector<std::string> failures;  // first few failures, for diagnostics
  std::vector<CodedPacket> first_trace;  // packets of the first random trial

  std::size_t vectors() const { return random_trials + fixed_trials; }
  bool all_decoded() const;
  Rational measured_rate() const { return Rational(packets, subfiles); }
};

// Random file contents and demand vectors from one SplitMix64 stream seeded with options.seed;
// every user decodes every demand vector and is compared byte for byte with the source file.
SimulationReport simulate(const Scheme& scheme, const SimulationOptions& options = {});

}  // namespace pgcache
