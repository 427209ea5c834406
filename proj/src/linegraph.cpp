#include "pgcache/linegraph.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <stdexcept>
#include <utility>

#include <fmt/format.h>

#include "pgcache/errors.hpp"

namespace pgcache {

void ConstructionParams::validate() const {
  if (t < 1) throw InvalidArgument("t must be at least 1");
  if (m + t > k) throw InvalidArgument(fmt::format("m + t = {} exceeds k = {}", m + t, k));
  if (k > 64) throw InvalidArgument(fmt::format("k = {} is above the supported maximum of 64", k));
  field_of_order(q);
}

std::string ConstructionParams::label() const { return fmt::format("({},{},{},{})", k, m, t, q); }

PredictedSizes predict_sizes(const ConstructionParams& params) {
  params.validate();
  const auto [k, m, t, q] = params;
  const Integer qm1 = ipow(Integer(q), m + 1);
  const Integer g = generating_set_count(q, t, m).subspace_sets;
  PredictedSizes s;
  s.users = q_binomial(k - t + 1, 1, q);
  s.spans = q_binomial(k - t + 1, m + 1, q);
  s.subfiles = s.spans * g;
  s.subfile_clique = qm1 * q_binomial(k - m - t, 1, q);
  s.user_clique = qm1 * q_binomial(k - t, m + 1, q) * g;
  s.vertices = s.users * s.user_clique;
  s.transmissions = s.vertices / (m + 2);
  return s;
}

std::vector<std::vector<std::uint32_t>> independent_subsets(const SubspaceBasis& base,
                                                            const std::vector<SubspaceBasis>& users,
                                                            const std::vector<std::uint32_t>& candidates,
                                                            std::size_t size) {
  // One vector per candidate that together with `base` spans it.
  std::vector<Vector> reps;
  reps.reserve(candidates.size());
  for (auto idx : candidates) {
    const auto& u = users.at(idx);
    if (u.dim() != base.dim() + 1 || !contains(u, base)) {
      throw InvalidArgument("independent_subsets: candidate is not a one-step superspace of the base");
    }
    auto it = std::find_if(u.rows().begin(), u.rows().end(),
                           [&](const Vector& r) { return !base.contains_vector(r); });
    reps.push_back(*it);
  }

  std::vector<std::vector<std::uint32_t>> out;
  std::vector<std::uint32_t> chosen;
  std::vector<SubspaceBasis> sums{base};
  std::function<void(std::size_t)> extend = [&](std::size_t start) {
    if (chosen.size() == size) {
      out.push_back(chosen);
      return;
    }
    const std::size_t needed = size - chosen.size();
    for (std::size_t i = start; i + needed <= candidates.size(); ++i) {
      if (sums.back().contains_vector(reps[i])) continue;
      sums.push_back(sums.back().with_vector(reps[i]));
      chosen.push_back(candidates[i]);
      extend(i + 1);
      chosen.pop_back();
      sums.pop_back();
    }
  };
  extend(0);
  return out;
}

Universe build_universe(const ConstructionParams& params, const EnumerationLimits& limits) {
  const PredictedSizes predicted = predict_sizes(params);
  if (params.k > 16) throw InvalidArgument(fmt::format("k = {} is too large to enumerate (at most 16)", params.k));
  if (predicted.vertices > limits.max_vertices) {
    throw CapExceeded(fmt::format(
        "instance {} needs {} line-graph vertices (F = {}), above the cap of {}", params.label(),
        predicted.vertices.str(), predicted.subfiles.str(), limits.max_vertices));
  }
  FieldPtr field = field_of_order(params.q);
  Universe u{params, field, SubspaceBasis::standard(field, params.k, 0, params.t - 1), {}, {}, {}, {}};
  u.users = enumerate_superspaces(u.w, params.t);
  u.spans = enumerate_superspaces(u.w, params.m + params.t);

  u.users_in_span.resize(u.spans.size());
  for (std::size_t p = 0; p < u.spans.size(); ++p) {
    for (std::size_t v = 0; v < u.users.size(); ++v) {
      if (contains(u.spans[p], u.users[v])) u.users_in_span[p].push_back(static_cast<std::uint32_t>(v));
    }
  }
  for (std::size_t p = 0; p < u.spans.size(); ++p) {
    for (auto& members : independent_subsets(u.w, u.users, u.users_in_span[p], params.m + 1)) {
      u.subfiles.push_back(Subfile{std::move(members), static_cast<std::uint32_t>(p)});
    }
  }
  std::sort(u.subfiles.begin(), u.subfiles.end(),
            [](const Subfile& a, const Subfile& b) { return a.users < b.users; });
  return u;
}

std::optional<std::uint32_t> CachingLineGraph::find_vertex(Vertex v) const {
  auto it = std::lower_bound(vertices.begin(), vertices.end(), v);
  if (it == vertices.end() || *it != v) return std::nullopt;
  return static_cast<std::uint32_t>(it - vertices.begin());
}

CachingLineGraph build_line_graph(Universe universe) {
  const std::size_t users = universe.users.size();
  const std::size_t subfiles = universe.subfiles.size();

  // cached[p][v]: user v lies inside span p, i.e. caches every subfile summing to p.
  std::vector<std::vector<char>> cached(universe.spans.size(), std::vector<char>(users, 0));
  for (std::size_t p = 0; p < universe.spans.size(); ++p) {
    for (auto v : universe.users_in_span[p]) cached[p][v] = 1;
  }

  CachingLineGraph g{std::move(universe), {}, {}, {}, {}};
  g.user_cliques.resize(users);
  g.subfile_cliques.resize(subfiles);
  for (std::uint32_t v = 0; v < users; ++v) {
    for (std::uint32_t x = 0; x < subfiles; ++x) {
      if (cached[g.universe.subfiles[x].span][v]) continue;
      const auto id = static_cast<std::uint32_t>(g.vertices.size());
      g.vertices.push_back(Vertex{v, x});
      g.user_cliques[v].push_back(id);
      g.subfile_cliques[x].push_back(id);
    }
  }
  if (g.vertices.empty()) {
    throw InvalidArgument("instance " + g.universe.params.label() +
                          " has m + t = k: every user caches everything, the line graph is empty");
  }
  g.transmission_cliques = enumerate_transmission_cliques(g);
  return g;
}

CachingLineGraph build_line_graph(const ConstructionParams& params, const EnumerationLimits& limits) {
  return build_line_graph(build_universe(params, limits));
}

std::vector<TransmissionClique> enumerate_transmission_cliques(const CachingLineGraph& graph) {
  const Universe& u = graph.universe;
  const auto [k, m, t, q] = u.params;
  if (m + t + 1 > k) return {};

  auto subfile_index = [&](const std::vector<std::uint32_t>& members) -> std::optional<std::uint32_t> {
    auto it = std::lower_bound(u.subfiles.begin(), u.subfiles.end(), members,
                               [](const Subfile& s, const std::vector<std::uint32_t>& key) { return s.users < key; });
    if (it == u.subfiles.end() || it->users != members) return std::nullopt;
    return static_cast<std::uint32_t>(it - u.subfiles.begin());
  };

  std::vector<TransmissionClique> out;
  for (const auto& span : enumerate_superspaces(u.w, m + t + 1)) {
    std::vector<std::uint32_t> inside;
    for (std::size_t v = 0; v < u.users.size(); ++v) {
      if (contains(span, u.users[v])) inside.push_back(static_cast<std::uint32_t>(v));
    }
    for (auto& y : independent_subsets(u.w, u.users, inside, m + 2)) {
      TransmissionClique clique;
      for (std::size_t i = 0; i < y.size(); ++i) {
        std::vector<std::uint32_t> rest;
        for (std::size_t j = 0; j < y.size(); ++j) {
          if (j != i) rest.push_back(y[j]);
        }
        auto x = subfile_index(rest);
        std::optional<std::uint32_t> id;
        if (x) id = graph.find_vertex(Vertex{y[i], *x});
        if (!id) {
          throw std::logic_error(fmt::format("transmission set member {} of a set in instance {} is not a vertex",
                                             y[i], u.params.label()));
        }
        clique.vertices.push_back(*id);
      }
      clique.users = std::move(y);
      out.push_back(std::move(clique));
    }
  }
  std::sort(out.begin(), out.end(),
            [](const TransmissionClique& a, const TransmissionClique& b) { return a.users < b.users; });
  return out;
}

bool is_compl_square_edge(const CachingLineGraph& graph, Vertex a, Vertex b) {
  if (!graph.find_vertex(a) || !graph.find_vertex(b)) {
    throw InvalidArgument("is_compl_square_edge: argument is not a vertex of the line graph");
  }
  if (a.user == b.user || a.subfile == b.subfile) return false;
  return !graph.find_vertex(Vertex{a.user, b.subfile}) && !graph.find_vertex(Vertex{b.user, a.subfile});
}

namespace {

// Every id in [0, n) appears in exactly one group; fills owner[id] with the group index.
bool assign_partition(const std::vector<std::vector<std::uint32_t>>& groups, std::size_t n,
                      std::vector<std::uint32_t>& owner, const char* what,
                      std::vector<std::string>& violations) {
  constexpr auto kUnset = static_cast<std::uint32_t>(-1);
  owner.assign(n, kUnset);
  bool ok = true;
  for (std::size_t gi = 0; gi < groups.size(); ++gi) {
    for (auto id : groups[gi]) {
      if (id >= n) {
        violations.push_back(fmt::format("{} {} lists unknown vertex {}", what, gi, id));
        ok = false;
      } else if (owner[id] != kUnset) {
        violations.push_back(fmt::format("vertex {} lies in {}s {} and {}", id, what, owner[id], gi));
        ok = false;
      } else {
        owner[id] = static_cast<std::uint32_t>(gi);
      }
    }
  }
  for (std::size_t id = 0; id < n; ++id) {
    if (owner[id] == kUnset) {
      violations.push_back(fmt::format("vertex {} lies in no {}", id, what));
      ok = false;
    }
  }
  return ok;
}

bool adjacent(const Vertex& a, const Vertex& b) { return (a.user == b.user) != (a.subfile == b.subfile); }

}  // namespace

ValidationReport verify_line_graph(const CachingLineGraph& graph) {
  ValidationReport r;
  const auto& vs = graph.vertices;
  const std::size_t n = vs.size();
  auto fail = [&](bool& flag, std::string msg) {
    flag = false;
    r.violations.push_back(std::move(msg));
  };

  // (i)
  std::vector<std::uint32_t> user_of;
  if (!assign_partition(graph.user_cliques, n, user_of, "user clique", r.violations)) r.user_cliques_ok = false;
  r.user_count = graph.user_cliques.size();
  r.user_clique_size = graph.user_cliques.empty() ? 0 : graph.user_cliques.front().size();
  for (std::size_t a = 0; a < graph.user_cliques.size(); ++a) {
    const auto& clique = graph.user_cliques[a];
    if (clique.size() != r.user_clique_size) {
      fail(r.user_cliques_ok, fmt::format("user clique {} has {} vertices, expected {}", a, clique.size(),
                                          r.user_clique_size));
    }
    for (std::size_t i = 0; i < clique.size(); ++i) {
      for (std::size_t j = i + 1; j < clique.size(); ++j) {
        if (clique[i] < n && clique[j] < n && !adjacent(vs[clique[i]], vs[clique[j]])) {
          fail(r.user_cliques_ok, fmt::format("user clique {} is not a clique", a));
          i = clique.size();
          break;
        }
      }
    }
  }
  if (!r.user_cliques_ok) return r;

  // Label groups and, per group, how its members spread over user cliques.
  std::map<std::uint32_t, std::vector<std::uint32_t>> by_user, by_subfile;
  for (std::uint32_t id = 0; id < n; ++id) {
    by_user[vs[id].user].push_back(id);
    by_subfile[vs[id].subfile].push_back(id);
  }
  auto histogram = [&](const std::vector<std::uint32_t>& ids) {
    std::map<std::uint32_t, std::size_t> h;
    for (auto id : ids) ++h[user_of[id]];
    return h;
  };
  std::map<std::uint32_t, std::map<std::uint32_t, std::size_t>> user_hist, subfile_hist;
  for (const auto& [label, ids] : by_user) user_hist[label] = histogram(ids);
  for (const auto& [label, ids] : by_subfile) subfile_hist[label] = histogram(ids);
  if (std::adjacent_find(vs.begin(), vs.end()) != vs.end()) {
    fail(r.cross_neighbors_ok, "two vertices carry the same (user, subfile) label");
  }

  // (ii) neighbours of v in another user clique b: same user label or same subfile label.
  for (std::uint32_t id = 0; id < n && r.cross_neighbors_ok; ++id) {
    const std::uint32_t a = user_of[id];
    std::map<std::uint32_t, std::size_t> counts;
    for (const auto& [b, c] : user_hist[vs[id].user]) {
      if (b != a) counts[b] += c;
    }
    for (const auto& [b, c] : subfile_hist[vs[id].subfile]) {
      if (b != a) counts[b] += c;
    }
    for (const auto& [b, c] : counts) {
      if (c > 1) {
        fail(r.cross_neighbors_ok,
             fmt::format("vertex {} has {} neighbours in user clique {}", id, c, b));
        break;
      }
    }
  }

  // (iii)
  std::vector<std::uint32_t> subfile_of;
  if (!assign_partition(graph.subfile_cliques, n, subfile_of, "subfile clique", r.violations)) {
    r.subfile_cliques_ok = false;
  }
  std::vector<std::vector<std::uint32_t>> listed(graph.subfile_cliques.size());
  for (std::size_t j = 0; j < listed.size(); ++j) {
    listed[j] = graph.subfile_cliques[j];
    std::sort(listed[j].begin(), listed[j].end());
    bool is_clique = true;
    for (std::size_t x = 0; x < listed[j].size() && is_clique; ++x) {
      for (std::size_t y = x + 1; y < listed[j].size(); ++y) {
        if (listed[j][x] >= n || listed[j][y] >= n || !adjacent(vs[listed[j][x]], vs[listed[j][y]])) {
          is_clique = false;
          break;
        }
      }
    }
    if (!is_clique) fail(r.subfile_cliques_ok, fmt::format("subfile clique {} is not a clique", j));
  }
  if (r.subfile_cliques_ok) {
    for (std::uint32_t id = 0; id < n; ++id) {
      const std::uint32_t a = user_of[id];
      std::vector<std::uint32_t> closed{id};
      for (auto w : by_subfile[vs[id].subfile]) {
        if (w != id && user_of[w] != a && adjacent(vs[id], vs[w])) closed.push_back(w);
      }
      const auto& uh = user_hist[vs[id].user];
      if (uh.size() > 1 || uh.begin()->first != a) {
        for (auto w : by_user[vs[id].user]) {
          if (w != id && user_of[w] != a && adjacent(vs[id], vs[w])) closed.push_back(w);
        }
      }
      std::sort(closed.begin(), closed.end());
      if (closed != listed[subfile_of[id]]) {
        fail(r.subfile_cliques_ok,
             fmt::format("the subfile clique through vertex {} is not subfile clique {} that lists it", id,
                         subfile_of[id]));
        break;
      }
    }
  }

  // (iv)
  r.subfile_count = graph.subfile_cliques.size();
  if (by_subfile.size() != r.subfile_count) {
    fail(r.subfile_count_ok, fmt::format("{} subfile labels but {} subfile cliques", by_subfile.size(),
                                         r.subfile_count));
  }
  for (std::size_t j = 0; j < graph.subfile_cliques.size(); ++j) {
    if (graph.subfile_cliques[j].empty()) {
      fail(r.subfile_count_ok, fmt::format("subfile clique {} is empty", j));
      break;
    }
  }
  return r;
}

CoverReport verify_transmission_cover(const CachingLineGraph& graph) {
  CoverReport r;
  const std::size_t n = graph.vertices.size();
  const std::size_t expected = graph.universe.params.m + 2;
  r.clique_count = graph.transmission_cliques.size();
  r.clique_size = expected;
  std::vector<std::uint32_t> hits(n, 0);
  for (std::size_t ci = 0; ci < graph.transmission_cliques.size(); ++ci) {
    const auto& clique = graph.transmission_cliques[ci];
    if (clique.vertices.size() != expected) {
      r.violations.push_back(fmt::format("transmission clique {} has {} vertices, expected {}", ci,
                                         clique.vertices.size(), expected));
    }
    bool in_range = true;
    for (auto id : clique.vertices) {
      if (id >= n) {
        r.violations.push_back(fmt::format("transmission clique {} lists unknown vertex {}", ci, id));
        in_range = false;
      } else {
        ++hits[id];
      }
    }
    if (!in_range) continue;
    for (std::size_t i = 0; i < clique.vertices.size(); ++i) {
      for (std::size_t j = i + 1; j < clique.vertices.size(); ++j) {
        if (!is_compl_square_edge(graph, graph.vertices[clique.vertices[i]], graph.vertices[clique.vertices[j]])) {
          r.violations.push_back(fmt::format("transmission clique {} is not a clique of the complement square", ci));
          i = clique.vertices.size();
          break;
        }
      }
    }
  }
  for (std::size_t id = 0; id < n; ++id) {
    if (hits[id] != 1) {
      r.violations.push_back(fmt::format("vertex {} is covered by {} transmission cliques", id, hits[id]));
      break;
    }
  }
  return r;
}

}  // namespace pgcache
