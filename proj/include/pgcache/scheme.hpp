#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "pgcache/exact.hpp"
#include "pgcache/linegraph.hpp"

namespace pgcache {

// Closed-form parameters of the scheme built from (k, m, t, q).
struct SchemeParams {
  Integer K;  // users
  Integer F;  // subpacketization
  Integer D;  // uncached subfiles per user
  Integer c;  // users missing each subfile
  Integer d;  // users served per transmission, m + 2
  Rational mn;    // M/N = 1 - c/K
  Rational rate;  // R = c/d
  Rational gain;  // K(1 - M/N)/R

  friend bool operator==(const SchemeParams&, const SchemeParams&) = default;
};

// Throws InvalidArgument for invalid params and for m + t = k, where c = 0.
SchemeParams params_from(const ConstructionParams& params);

// K x F bit matrix; bit (k, f) set means user k does NOT cache subfile f.
class PlacementMap {
 public:
  PlacementMap() = default;
  PlacementMap(std::size_t users, std::size_t subfiles);

  std::size_t users() const { return users_; }
  std::size_t subfiles() const { return subfiles_; }
  bool uncached(std::size_t user, std::size_t subfile) const {
    return (bits_[user * stride_ + subfile / 8] >> (subfile % 8)) & 1U;
  }
  bool cached(std::size_t user, std::size_t subfile) const { return !uncached(user, subfile); }
  void set_uncached(std::size_t user, std::size_t subfile, bool value = true);

  std::size_t row_count(std::size_t user) const;
  std::size_t column_count(std::size_t subfile) const;
  // Row as bytes, bit f stored at byte f / 8, bit f % 8.
  std::span<const std::uint8_t> row_bytes(std::size_t user) const {
    return {bits_.data() + user * stride_, stride_};
  }
  void set_row_bytes(std::size_t user, std::span<const std::uint8_t> bytes);

  friend bool operator==(const PlacementMap&, const PlacementMap&) = default;

 private:
  std::size_t users_ = 0;
  std::size_t subfiles_ = 0;
  std::size_t stride_ = 0;
  std::vector<std::uint8_t> bits_;
};

PlacementMap build_placement(const CachingLineGraph& graph);

// Ordered transmission cliques over (user, subfile) pairs, indexed for clique lookup.
class DeliveryPlan {
 public:
  DeliveryPlan() = default;
  DeliveryPlan(std::size_t users, std::size_t subfiles, std::vector<std::vector<Vertex>> cliques);

  std::size_t users() const { return users_; }
  std::size_t subfiles() const { return subfiles_; }
  const std::vector<std::vector<Vertex>>& cliques() const { return cliques_; }
  std::size_t size() const { return cliques_.size(); }
  std::optional<std::uint32_t> clique_of(Vertex v) const;

  friend bool operator==(const DeliveryPlan& a, const DeliveryPlan& b) {
    return a.users_ == b.users_ && a.subfiles_ == b.subfiles_ && a.cliques_ == b.cliques_;
  }

 private:
  std::size_t users_ = 0;
  std::size_t subfiles_ = 0;
  std::vector<std::vector<Vertex>> cliques_;
  std::vector<std::pair<Vertex, std::uint32_t>> index_;  // sorted by vertex
};

DeliveryPlan build_delivery_plan(const CachingLineGraph& graph);

// Everything needed to run placement and delivery, detached from the enumeration machinery.
struct Scheme {
  ConstructionParams construction;
  SchemeParams params;
  FieldPtr field;
  SubspaceBasis w;
  std::vector<SubspaceBasis> users;
  std::vector<std::vector<std::uint32_t>> subfiles;
  PlacementMap placement;
  DeliveryPlan delivery;
};

Scheme make_scheme(const CachingLineGraph& graph);

}  // namespace pgcache
