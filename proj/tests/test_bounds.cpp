#include <doctest.h>

#include <algorithm>
#include <numeric>

#include "pgcache/bounds.hpp"
#include "pgcache/errors.hpp"
#include "pgcache/scheme.hpp"

using namespace pgcache;

namespace {

const PlacementMap& fano_placement() {
  static const PlacementMap p = make_scheme(build_line_graph(ConstructionParams{3, 1, 1, 2})).placement;
  return p;
}

// rho_j straight from the definition, one subfile at a time.
std::size_t oracle_value(const PlacementMap& pm, const std::vector<std::uint32_t>& order, std::size_t n_prime,
                         NeighbourhoodMode mode) {
  std::size_t total = 0;
  for (std::size_t j = 0; j < n_prime; ++j) {
    for (std::size_t f = 0; f < pm.subfiles(); ++f) {
      bool all = true, any_before = false;
      for (std::size_t i = 0; i <= j; ++i) all &= pm.uncached(order[i], f);
      for (std::size_t i = 0; i < j; ++i) any_before |= pm.uncached(order[i], f);
      bool any = any_before || pm.uncached(order[j], f);
      switch (mode) {
        case NeighbourhoodMode::kCommon: total += all; break;
        case NeighbourhoodMode::kCumulative: total += any; break;
        case NeighbourhoodMode::kIncremental: total += pm.uncached(order[j], f) && !any_before; break;
      }
    }
  }
  return total;
}

std::size_t oracle_max(const PlacementMap& pm, std::size_t n_prime, NeighbourhoodMode mode) {
  std::vector<std::uint32_t> order(pm.users());
  std::iota(order.begin(), order.end(), 0);
  std::size_t best = 0;
  do {
    best = std::max(best, oracle_value(pm, order, n_prime, mode));
  } while (std::next_permutation(order.begin(), order.end()));
  return best;
}

}  // namespace

TEST_CASE("Table I bound cells") {
  struct Row {
    unsigned K, F, D;
    unsigned t2, pda;
    Rational cut;
  };
  // Cut-set column as exact rationals; the last row is 1404/5 whose ceiling is 281.
  const Row rows[] = {{15, 50, 30, 71, 54, Rational(450, 7)},   {24, 54, 36, 109, 90, Rational(96)},
                      {15, 20, 12, 30, 31, Rational(180, 7)},   {7, 42, 24, 43, 33, Rational(42)},
                      {15, 210, 168, 637, 444, Rational(630)}, {13, 156, 108, 285, 193, Rational(1404, 5)}};
  for (const auto& r : rows) {
    const SystemTriple st{r.K, r.F, r.D};
    CAPTURE(r.K);
    CHECK(bound_theorem2(st) == r.t2);
    CHECK(bound_cited_pda(st) == r.pda);
    CHECK(bound_cutset_an(st) == r.cut);
  }
  CHECK(ceil(bound_cutset_an(SystemTriple{15, 50, 30})) == 65);
  CHECK(ceil(bound_cutset_an(SystemTriple{13, 156, 108})) == 281);
}

TEST_CASE("nested ceiling structure") {
  for (unsigned K = 2; K <= 20; ++K) {
    for (unsigned F = 1; F <= 30; ++F) {
      for (unsigned D = 1; D <= F; ++D) {
        const SystemTriple st{K, F, D};
        const auto pda = cited_pda_terms(st);
        CHECK(pda.size() == D);
        if (!st.bi_regular()) {
          CHECK_THROWS_AS(bound_theorem2(st), InvalidArgument);
          continue;
        }
        const auto terms = theorem2_terms(st);
        const Integer ku = K * D / F;
        REQUIRE(terms.size() == ku);
        CHECK(terms.front() == D);
        // Without ceilings the same recursion can only be smaller.
        Rational x = D, plain = 0;
        for (std::size_t j = 0; j < terms.size(); ++j) {
          plain += x;
          if (j + 1 < terms.size()) x = x * (ku - (j + 1)) / (K - (j + 1));
        }
        CHECK(plain <= std::accumulate(terms.begin(), terms.end(), Integer(0)));
        for (std::size_t j = 1; j < terms.size(); ++j) CHECK(terms[j] == ceil_div(terms[j - 1] * (ku - j), Integer(K - j)));
      }
    }
  }
}

TEST_CASE("triple validation") {
  CHECK_THROWS_AS(bound_cited_pda(SystemTriple{0, 4, 2}), InvalidArgument);
  CHECK_THROWS_AS(bound_cited_pda(SystemTriple{3, 4, 5}), InvalidArgument);
  CHECK_THROWS_AS(bound_cited_pda(SystemTriple{3, 4, 0}), InvalidArgument);
  CHECK_FALSE(SystemTriple{7, 42, 25}.bi_regular());
  const auto rep = bounds_report(SystemTriple{7, 42, 25});
  CHECK_FALSE(rep.theorem2.has_value());
}

TEST_CASE("ordering bound basics") {
  const auto& pm = fano_placement();
  const std::vector<std::uint32_t> one{3};
  const auto single = bound_generic(pm, one);
  CHECK(single.total == 12);
  CHECK(single.rho == std::vector<Integer>{12});
  CHECK(single.n_prime == 4);
  CHECK(bound_generic(pm, std::vector<std::uint32_t>{}).total == 0);
  CHECK_THROWS_AS(bound_generic(pm, std::vector<std::uint32_t>{1, 1}), InvalidArgument);
  CHECK_THROWS_AS(bound_generic(pm, std::vector<std::uint32_t>{9}), InvalidArgument);
  GenericOptions restricted;
  restricted.users = std::vector<std::uint32_t>{0, 1};
  CHECK_THROWS_AS(bound_generic(pm, std::vector<std::uint32_t>{2}, restricted), InvalidArgument);
  CHECK(bound_generic(pm, std::vector<std::uint32_t>{0, 1, 2}, restricted).n_prime == 2);
}

TEST_CASE("ordering bound matches the definition") {
  const auto& pm = fano_placement();
  const std::vector<std::uint32_t> order{6, 2, 0, 5, 1, 3, 4};
  for (auto mode : {NeighbourhoodMode::kCommon, NeighbourhoodMode::kCumulative, NeighbourhoodMode::kIncremental}) {
    GenericOptions opt;
    opt.mode = mode;
    CHECK(bound_generic(pm, order, opt).total == oracle_value(pm, order, 4, mode));
    const auto search = bound_generic_search(pm, opt);
    CHECK(search.exhaustive);
    CHECK(search.best.total == oracle_max(pm, 4, mode));
    CHECK(bound_generic(pm, search.best.ordering, opt).total == search.best.total);
  }
}

TEST_CASE("max ordering value sits between the closed-form bound and the scheme") {
  for (const ConstructionParams p : {ConstructionParams{3, 1, 1, 2}, ConstructionParams{4, 1, 2, 2},
                                     ConstructionParams{3, 0, 1, 2}, ConstructionParams{4, 2, 1, 2}}) {
    CAPTURE(p.label());
    const auto s = make_scheme(build_line_graph(p));
    const SystemTriple st{s.params.K, s.params.F, s.params.D};
    const auto rep = bounds_report(st, &s.placement);
    REQUIRE(rep.generic.has_value());
    const Integer rf = numerator(Rational(s.params.rate * s.params.F));
    CHECK(rep.generic->best.total >= *rep.theorem2);
    CHECK(rep.generic->best.total <= rf);
    CHECK(*rep.theorem2 <= rf);
    CHECK(rep.cited_pda <= rf);
    CHECK(rep.cutset_ceil <= rf);
  }
}
