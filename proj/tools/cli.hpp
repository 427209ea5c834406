#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace pgcache::cli {

inline constexpr std::uint64_t kDefaultCap = 10'000'000;

enum ExitCode : int {
  kOk = 0,
  kFailure = 1,
  kBadInput = 2,
  kCap = 3,
  kIo = 4,
  kValidation = 5,
};

// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pgcache::cli
