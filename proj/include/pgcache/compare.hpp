#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pgcache/bounds.hpp"
#include "pgcache/exact.hpp"
#include "pgcache/linegraph.hpp"

namespace pgcache {

struct ComparisonRow {
  std::string label;
  Integer K;
  Rational U;  // 1 - M/N
  Integer F;
  Rational gain;
  Rational rate;
};

// The projective-geometry scheme for (k, m, t, q).
ComparisonRow this_work_row(const ConstructionParams& params);
// Placement-delivery-array baseline: K = q'(m'+1), U = 1 - 1/q', F = q'^m', gain = m' + 1.
ComparisonRow yan_pda_params(unsigned m_prime, std::uint64_t q_prime);
// Ali-Niesen: gain 1 + KM/N, R = K(1-M/N)/gain, F = binom(K, KM/N). Needs K*M/N integral.
ComparisonRow ali_niesen_params(const Integer& K, const Rational& mn);

// Two decimals, truncated toward zero (0.516 -> "0.51").
std::string format_two_decimals(const Rational& value);
// Decimal rendering with `digits` places, truncated.
std::string format_decimal(const Rational& value, unsigned digits);
// floor(log10(value)) for value >= 1.
unsigned decimal_magnitude(const Integer& value);

// A (k, m, t, q) instance whose scheme has K users and F/scale subfiles with D/scale uncached
// per user, for scale 1 or 2.
struct InstanceMatch {
  ConstructionParams params;
  unsigned scale = 1;
};
std::optional<InstanceMatch> match_instance(const Integer& K, const Integer& F, const Integer& D);

struct Table1Row {
  SystemTriple triple;
  Integer theorem2;
  Integer cited_pda;
  Integer cutset;  // ceiling of the exact value
  Rational cutset_exact;
  std::optional<InstanceMatch> instance;
  std::optional<Integer> scheme_rf;   // from the closed forms of the matched instance
  std::optional<Integer> printed_rf;  // the value the reference table lists
};
std::vector<Table1Row> table1();

struct Table3Row {
  ConstructionParams params;
  unsigned m_prime = 0;
  std::uint64_t q_prime = 0;
  ComparisonRow ours;
  ComparisonRow baseline;
};
std::vector<Table3Row> table3();

struct SweepRow {
  unsigned span = 0;  // k - t
  ConstructionParams params;
  Integer K;
  Integer F;
  Rational U;
  Rational rate;
  bool log_bracket = false;    // log_q K - 1 <= k - t <= log_q K, checked as q^{k-t} <= K <= q^{k-t+1}
  bool rate_identity = false;  // R (m+2) = K (1 - M/N)
  bool f_bound = false;        // F (m+1)! <= K q^{alpha m + (m+1)^2}
  double log_ratio = 0;        // log_q F / (log_q K)^2
  double rate_ratio = 0;       // R / (K / log_q K)
  bool rate_in_band = false;   // U/2 <= rate_ratio <= 2U
};

// Rows for k - t in [from, to] with t = 1 and m = k - t - alpha. alpha = 0 is rejected.
std::vector<SweepRow> asymptotic_sweep(std::uint32_t q, unsigned alpha, unsigned from, unsigned to);

enum class TableFormat { kText, kCsv };
std::string render_table1(const std::vector<Table1Row>& rows, TableFormat format);
std::string render_table3(const std::vector<Table3Row>& rows, TableFormat format);
std::string render_sweep(const std::vector<SweepRow>& rows, TableFormat format);

}  // namespace pgcache
