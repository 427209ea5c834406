#pragma once

#include <string>
#include <string_view>

#include "pgcache/scheme.hpp"

namespace pgcache {

inline constexpr std::string_view kSchemeFormat = "pgcache/1";

// JSON document with keys version, params, field, W, users, subfiles, placement (one base64
// bitmask per user) and delivery (cliques of [user, subfile] pairs). Output is deterministic.
std::string serialize(const Scheme& scheme);

// Parses and cross-checks a document against the closed-form parameters, placement regularity
// and delivery coverage. Throws SchemaError on any violation.
Scheme deserialize(std::string_view document);

std::string base64_encode(std::span<const std::uint8_t> bytes);
// Throws InvalidArgument on malformed input.
std::vector<std::uint8_t> base64_decode(std::string_view text);

}  // namespace pgcache
