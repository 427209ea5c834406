#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pgcache/exact.hpp"
#include "pgcache/scheme.hpp"

namespace pgcache {

// K users, F subfiles, D uncached subfiles per user.
struct SystemTriple {
  Integer K;
  Integer F;
  Integer D;

  // Throws InvalidArgument unless K >= 1 and 0 < D <= F.
  void validate() const;
  Rational mn() const { return 1 - Rational(D, F); }
  // K(1 - M/N), the right degree of a bi-regular caching graph.
  Rational uncached_users() const { return Rational(K * D, F); }
  bool bi_regular() const { return (K * D) % F == 0; }
};

// How rho_j is read off the ordered users k_1..k_j.
enum class NeighbourhoodMode {
  kCommon,       // subfiles uncached at every one of k_1..k_j
  kCumulative,   // subfiles uncached at some k_i, i <= j
  kIncremental,  // subfiles uncached at k_j and at no earlier k_i
};

struct GenericOptions {
  std::optional<std::vector<std::uint32_t>> users;     // K', all users when empty
  std::optional<std::vector<std::uint32_t>> subfiles;  // F', all subfiles when empty
  NeighbourhoodMode mode = NeighbourhoodMode::kCommon;
};

struct OrderingTrace {
  std::vector<std::uint32_t> ordering;  // the first N' users actually used
  std::vector<Integer> rho;
  Integer total = 0;
  std::size_t n_prime = 0;  // min(|K'|, floor(K(1 - M/N)))
};

// Sum of rho_j over the first N' users of `ordering`. Throws InvalidArgument for duplicate or
// unknown users, or users outside K'.
OrderingTrace bound_generic(const PlacementMap& placement, std::span<const std::uint32_t> ordering,
                            const GenericOptions& options = {});

struct OrderingSearch {
  OrderingTrace best;
  bool exhaustive = false;  // false: greedy, a heuristic lower estimate of the maximum
};

// Best ordering: exhaustive over all orderings when |K'| <= exhaustive_limit, otherwise greedy
// (largest next rho_j, lowest index on ties). Ties between orderings go to the lexicographically
// least one.
OrderingSearch bound_generic_search(const PlacementMap& placement, const GenericOptions& options = {},
                                    std::size_t exhaustive_limit = 8);

// Nested-ceiling bound for bi-regular caching graphs: T_1 = D,
// T_{j+1} = ceil(T_j (K(1-M/N) - j) / (K - j)), summed over K(1-M/N) terms.
// Throws InvalidArgument when K*D is not divisible by F.
std::vector<Integer> theorem2_terms(const SystemTriple& st);
Integer bound_theorem2(const SystemTriple& st);

// Placement-delivery-array bound: T_1 = ceil(DK/F), T_{j+1} = ceil(T_j (D - j) / (F - j)), D terms.
std::vector<Integer> cited_pda_terms(const SystemTriple& st);
Integer bound_cited_pda(const SystemTriple& st);

// F * K(1-M/N) / (1 + K M/N), exact.
Rational bound_cutset_an(const SystemTriple& st);

struct BoundsReport {
  SystemTriple triple;
  std::optional<Integer> theorem2;  // empty when the triple is not bi-regular
  Integer cited_pda;
  Rational cutset;
  Integer cutset_ceil;
  std::optional<OrderingSearch> generic;  // only with a placement
};

BoundsReport bounds_report(const SystemTriple& st, const PlacementMap* placement = nullptr,
                           const GenericOptions& options = {});

}  // namespace pgcache
