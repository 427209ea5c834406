#include "pgcache/bounds.hpp"

#include <algorithm>
#include <bit>
#include <functional>

#include <fmt/format.h>

#include "pgcache/errors.hpp"

namespace pgcache {

void SystemTriple::validate() const {
  if (K < 1 || F < 1 || D < 1 || D > F) {
    throw InvalidArgument(fmt::format("invalid system (K={}, F={}, D={}): need K >= 1 and 0 < D <= F", K.str(),
                                      F.str(), D.str()));
  }
}

namespace {

using Bits = std::vector<std::uint64_t>;

struct Workspace {
  std::vector<std::uint32_t> users;
  std::vector<Bits> rows;  // per entry of `users`, uncached subfiles restricted to F'
  std::size_t n_prime = 0;
  NeighbourhoodMode mode;
};

std::size_t popcount(const Bits& b) {
  std::size_t n = 0;
  for (auto w : b) n += static_cast<std::size_t>(std::popcount(w));
  return n;
}

Workspace prepare(const PlacementMap& placement, const GenericOptions& options) {
  const std::size_t K = placement.users();
  const std::size_t F = placement.subfiles();
  Workspace ws{{}, {}, 0, options.mode};
  if (options.users) {
    ws.users = *options.users;
  } else {
    for (std::uint32_t u = 0; u < K; ++u) ws.users.push_back(u);
  }
  std::vector<std::uint32_t> sorted = ws.users;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw InvalidArgument("user restriction lists a user twice");
  }
  if (!sorted.empty() && sorted.back() >= K) throw InvalidArgument("user restriction names an unknown user");

  Bits keep((F + 63) / 64, 0);
  if (options.subfiles) {
    for (auto f : *options.subfiles) {
      if (f >= F) throw InvalidArgument("subfile restriction names an unknown subfile");
      keep[f / 64] |= std::uint64_t{1} << (f % 64);
    }
  } else {
    for (std::size_t f = 0; f < F; ++f) keep[f / 64] |= std::uint64_t{1} << (f % 64);
  }
  for (auto u : ws.users) {
    Bits row(keep.size(), 0);
    for (std::size_t f = 0; f < F; ++f) {
      if (placement.uncached(u, f)) row[f / 64] |= std::uint64_t{1} << (f % 64);
    }
    for (std::size_t i = 0; i < row.size(); ++i) row[i] &= keep[i];
    ws.rows.push_back(std::move(row));
  }

  // K(1 - M/N) = K*D/F for the whole graph; its floor when D varies or K*D/F is fractional.
  std::size_t uncached_total = 0;
  for (std::size_t u = 0; u < K; ++u) uncached_total += placement.row_count(u);
  const std::size_t right_degree = F == 0 ? 0 : uncached_total / F;
  ws.n_prime = std::min(ws.users.size(), right_degree);
  return ws;
}

// State carried along an ordering: `acc` is the running intersection (common) or union.
struct Step {
  Bits acc;
  bool first = true;
};

std::size_t advance(const Workspace& ws, const Step& in, std::size_t row, Step& out) {
  const Bits& r = ws.rows[row];
  out.first = false;
  if (in.first) {
    out.acc = r;
    return popcount(r);
  }
  out.acc = in.acc;
  switch (ws.mode) {
    case NeighbourhoodMode::kCommon:
      for (std::size_t i = 0; i < r.size(); ++i) out.acc[i] &= r[i];
      return popcount(out.acc);
    case NeighbourhoodMode::kCumulative:
      for (std::size_t i = 0; i < r.size(); ++i) out.acc[i] |= r[i];
      return popcount(out.acc);
    case NeighbourhoodMode::kIncremental: {
      std::size_t fresh = 0;
      for (std::size_t i = 0; i < r.size(); ++i) {
        fresh += static_cast<std::size_t>(std::popcount(r[i] & ~in.acc[i]));
        out.acc[i] |= r[i];
      }
      return fresh;
    }
  }
  return 0;
}

}  // namespace

OrderingTrace bound_generic(const PlacementMap& placement, std::span<const std::uint32_t> ordering,
                            const GenericOptions& options) {
  const Workspace ws = prepare(placement, options);
  OrderingTrace trace;
  trace.n_prime = ws.n_prime;
  std::vector<std::uint32_t> seen;
  Step state;
  for (std::size_t j = 0; j < ordering.size() && j < ws.n_prime; ++j) {
    const auto u = ordering[j];
    if (std::find(seen.begin(), seen.end(), u) != seen.end()) {
      throw InvalidArgument(fmt::format("user {} appears twice in the ordering", u));
    }
    seen.push_back(u);
    auto it = std::find(ws.users.begin(), ws.users.end(), u);
    if (it == ws.users.end()) throw InvalidArgument(fmt::format("user {} is not in the user restriction", u));
    Step next;
    const std::size_t rho = advance(ws, state, static_cast<std::size_t>(it - ws.users.begin()), next);
    state = std::move(next);
    trace.ordering.push_back(u);
    trace.rho.emplace_back(rho);
    trace.total += rho;
  }
  return trace;
}

OrderingSearch bound_generic_search(const PlacementMap& placement, const GenericOptions& options,
                                    std::size_t exhaustive_limit) {
  const Workspace ws = prepare(placement, options);
  OrderingSearch result;
  result.best.n_prime = ws.n_prime;
  const std::size_t n = ws.users.size();

  // Positions into ws.users, sorted so that smaller user ids are tried first.
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return ws.users[a] < ws.users[b]; });

  auto record = [&](const std::vector<std::size_t>& picks, const std::vector<std::size_t>& rhos, std::size_t total,
                    bool force) {
    if (!force && Integer(total) <= result.best.total) return;
    result.best.ordering.clear();
    result.best.rho.clear();
    for (auto p : picks) result.best.ordering.push_back(ws.users[p]);
    for (auto r : rhos) result.best.rho.emplace_back(r);
    result.best.total = total;
  };

  if (n <= exhaustive_limit) {
    result.exhaustive = true;
    std::vector<char> used(n, 0);
    std::vector<std::size_t> picks, rhos;
    bool have = false;
    std::function<void(const Step&, std::size_t)> dfs = [&](const Step& state, std::size_t total) {
      if (picks.size() == ws.n_prime) {
        record(picks, rhos, total, !have);
        have = true;
        return;
      }
      for (auto p : order) {
        if (used[p]) continue;
        Step next;
        const std::size_t rho = advance(ws, state, p, next);
        used[p] = 1;
        picks.push_back(p);
        rhos.push_back(rho);
        dfs(next, total + rho);
        rhos.pop_back();
        picks.pop_back();
        used[p] = 0;
      }
    };
    dfs(Step{}, 0);
    return result;
  }

  std::vector<char> used(n, 0);
  std::vector<std::size_t> picks, rhos;
  std::size_t total = 0;
  Step state;
  for (std::size_t j = 0; j < ws.n_prime; ++j) {
    std::size_t best_pos = n, best_rho = 0;
    Step best_step;
    for (auto p : order) {
      if (used[p]) continue;
      Step next;
      const std::size_t rho = advance(ws, state, p, next);
      if (best_pos == n || rho > best_rho) {
        best_pos = p;
        best_rho = rho;
        best_step = std::move(next);
      }
    }
    used[best_pos] = 1;
    picks.push_back(best_pos);
    rhos.push_back(best_rho);
    total += best_rho;
    state = std::move(best_step);
  }
  record(picks, rhos, total, true);
  return result;
}

std::vector<Integer> theorem2_terms(const SystemTriple& st) {
  st.validate();
  if (!st.bi_regular()) {
    throw InvalidArgument(fmt::format("(K={}, F={}, D={}) is not bi-regular: K*D is not divisible by F", st.K.str(),
                                      st.F.str(), st.D.str()));
  }
  const Integer right_degree = st.K * st.D / st.F;
  std::vector<Integer> terms{st.D};
  for (Integer j = 1; j < right_degree; ++j) {
    terms.push_back(ceil_div(terms.back() * (right_degree - j), st.K - j));
  }
  return terms;
}

Integer bound_theorem2(const SystemTriple& st) {
  Integer sum = 0;
  for (const auto& t : theorem2_terms(st)) sum += t;
  return sum;
}

std::vector<Integer> cited_pda_terms(const SystemTriple& st) {
  st.validate();
  std::vector<Integer> terms{ceil_div(st.D * st.K, st.F)};
  for (Integer j = 1; j < st.D; ++j) terms.push_back(ceil_div(terms.back() * (st.D - j), st.F - j));
  return terms;
}

Integer bound_cited_pda(const SystemTriple& st) {
  Integer sum = 0;
  for (const auto& t : cited_pda_terms(st)) sum += t;
  return sum;
}

Rational bound_cutset_an(const SystemTriple& st) {
  st.validate();
  const Rational mn = st.mn();
  return Rational(st.F) * st.uncached_users() / (1 + Rational(st.K) * mn);
}

BoundsReport bounds_report(const SystemTriple& st, const PlacementMap* placement, const GenericOptions& options) {
  BoundsReport r{st, std::nullopt, bound_cited_pda(st), bound_cutset_an(st), 0, std::nullopt};
  r.cutset_ceil = ceil(r.cutset);
  if (st.bi_regular()) r.theorem2 = bound_theorem2(st);
  if (placement != nullptr) r.generic = bound_generic_search(*placement, options);
  return r;
}

}  // namespace pgcache
