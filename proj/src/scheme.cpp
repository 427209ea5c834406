#include "pgcache/scheme.hpp"

#include <algorithm>
#include <bit>
#include <string>

#include <fmt/format.h>

#include "pgcache/errors.hpp"

namespace pgcache {

SchemeParams params_from(const ConstructionParams& cp) {
  cp.validate();
  if (cp.alpha() == 0) {
    throw InvalidArgument("instance " + cp.label() + " has m + t = k: nothing is left uncached");
  }
  const auto [k, m, t, q] = cp;
  SchemeParams s;
  s.K = q_binomial(k - t + 1, 1, q);
  s.c = ipow(Integer(q), m + 1) * q_binomial(k - m - t, 1, q);
  s.d = m + 2;
  s.F = q_binomial(k - t + 1, m + 1, q) * generating_set_count(q, t, m).subspace_sets;
  s.D = s.F * s.c / s.K;
  s.mn = 1 - Rational(s.c, s.K);
  s.rate = Rational(s.c, s.d);
  s.gain = Rational(s.K) * (1 - s.mn) / s.rate;
  return s;
}

PlacementMap::PlacementMap(std::size_t users, std::size_t subfiles)
    : users_(users), subfiles_(subfiles), stride_((subfiles + 7) / 8), bits_(users * stride_, 0) {}

void PlacementMap::set_uncached(std::size_t user, std::size_t subfile, bool value) {
  auto& byte = bits_[user * stride_ + subfile / 8];
  const auto mask = static_cast<std::uint8_t>(1U << (subfile % 8));
  byte = value ? static_cast<std::uint8_t>(byte | mask) : static_cast<std::uint8_t>(byte & ~mask);
}

std::size_t PlacementMap::row_count(std::size_t user) const {
  std::size_t n = 0;
  for (auto b : row_bytes(user)) n += static_cast<std::size_t>(std::popcount(b));
  return n;
}

std::size_t PlacementMap::column_count(std::size_t subfile) const {
  std::size_t n = 0;
  for (std::size_t u = 0; u < users_; ++u) n += uncached(u, subfile) ? 1 : 0;
  return n;
}

void PlacementMap::set_row_bytes(std::size_t user, std::span<const std::uint8_t> bytes) {
  if (bytes.size() != stride_) {
    throw InvalidArgument(fmt::format("placement row has {} bytes, expected {}", bytes.size(), stride_));
  }
  if (subfiles_ % 8 != 0 && (bytes.back() >> (subfiles_ % 8)) != 0) {
    throw InvalidArgument("placement row sets bits past the last subfile");
  }
  std::copy(bytes.begin(), bytes.end(), bits_.begin() + static_cast<std::ptrdiff_t>(user * stride_));
}

PlacementMap build_placement(const CachingLineGraph& graph) {
  PlacementMap p(graph.users(), graph.subfiles());
  for (const auto& v : graph.vertices) p.set_uncached(v.user, v.subfile);
  return p;
}

DeliveryPlan::DeliveryPlan(std::size_t users, std::size_t subfiles, std::vector<std::vector<Vertex>> cliques)
    : users_(users), subfiles_(subfiles), cliques_(std::move(cliques)) {
  for (std::size_t ci = 0; ci < cliques_.size(); ++ci) {
    for (const auto& v : cliques_[ci]) {
      if (v.user >= users_ || v.subfile >= subfiles_) {
        throw InvalidArgument(fmt::format("clique {} names ({}, {}) outside {} users x {} subfiles", ci, v.user,
                                          v.subfile, users_, subfiles_));
      }
      index_.emplace_back(v, static_cast<std::uint32_t>(ci));
    }
  }
  std::sort(index_.begin(), index_.end());
  auto dup = std::adjacent_find(index_.begin(), index_.end(),
                                [](const auto& a, const auto& b) { return a.first == b.first; });
  if (dup != index_.end()) {
    throw InvalidArgument(fmt::format("({}, {}) appears in more than one transmission clique", dup->first.user,
                                      dup->first.subfile));
  }
}

std::optional<std::uint32_t> DeliveryPlan::clique_of(Vertex v) const {
  auto it = std::lower_bound(index_.begin(), index_.end(), v,
                             [](const auto& entry, const Vertex& key) { return entry.first < key; });
  if (it == index_.end() || it->first != v) return std::nullopt;
  return it->second;
}

DeliveryPlan build_delivery_plan(const CachingLineGraph& graph) {
  std::vector<std::vector<Vertex>> cliques;
  cliques.reserve(graph.transmission_cliques.size());
  for (const auto& tc : graph.transmission_cliques) {
    std::vector<Vertex> members;
    for (auto id : tc.vertices) members.push_back(graph.vertices[id]);
    cliques.push_back(std::move(members));
  }
  return DeliveryPlan(graph.users(), graph.subfiles(), std::move(cliques));
}

Scheme make_scheme(const CachingLineGraph& graph) {
  const Universe& u = graph.universe;
  Scheme s{u.params, params_from(u.params), u.field, u.w, u.users, {}, build_placement(graph),
           build_delivery_plan(graph)};
  s.subfiles.reserve(u.subfiles.size());
  for (const auto& x : u.subfiles) s.subfiles.push_back(x.users);
  return s;
}

}  // namespace pgcache
