#include "pgcache/compare.hpp"

#include <array>
#include <cmath>

#include <fmt/format.h>

#include "pgcache/errors.hpp"
#include "pgcache/scheme.hpp"

namespace pgcache {

namespace {

struct Table1Entry {
  unsigned K, F, D;
  std::optional<unsigned> printed_rf;
};

// Reference (K, F, D) triples, with the scheme RF listed next to them where applicable.
constexpr std::array<Table1Entry, 6> kTable1{{
    {15, 50, 30, std::nullopt},
    {24, 54, 36, std::nullopt},
    {15, 20, 12, std::nullopt},
    {7, 42, 24, 56},
    {15, 210, 168, 840},
    {13, 156, 108, 468},
}};

struct Table3Entry {
  ConstructionParams params;
  unsigned m_prime;
  std::uint64_t q_prime;
};

constexpr std::array<Table3Entry, 7> kTable3{{
    {{10, 2, 2, 2}, 6, 73},
    {{9, 3, 2, 2}, 14, 17},
    {{8, 3, 2, 2}, 13, 9},
    {{9, 4, 3, 2}, 31, 4},
    {{7, 3, 2, 2}, 15, 4},
    {{7, 3, 3, 3}, 39, 3},
    {{6, 3, 2, 2}, 14, 2},
}};

constexpr std::array<std::uint32_t, 10> kSmallPrimePowers{2, 3, 4, 5, 7, 8, 9, 11, 13, 16};

std::string magnitude_label(const Integer& v) { return fmt::format("10^{}", decimal_magnitude(v)); }

}  // namespace

ComparisonRow this_work_row(const ConstructionParams& params) {
  const SchemeParams sp = params_from(params);
  return ComparisonRow{params.label(), sp.K, 1 - sp.mn, sp.F, sp.gain, sp.rate};
}

ComparisonRow yan_pda_params(unsigned m_prime, std::uint64_t q_prime) {
  if (q_prime < 2 || m_prime < 1) throw InvalidArgument("baseline needs q' >= 2 and m' >= 1");
  ComparisonRow row;
  row.label = fmt::format("({},{})", m_prime, q_prime);
  row.K = Integer(q_prime) * (m_prime + 1);
  row.U = 1 - Rational(1, q_prime);
  row.F = ipow(Integer(q_prime), m_prime);
  row.gain = Rational(row.K) * row.U / (q_prime - 1);
  row.rate = Rational(row.K) * row.U / row.gain;
  return row;
}

ComparisonRow ali_niesen_params(const Integer& K, const Rational& mn) {
  if (K < 1 || mn < 0 || mn > 1) throw InvalidArgument("Ali-Niesen parameters need K >= 1 and 0 <= M/N <= 1");
  const Rational cached_users = Rational(K) * mn;
  if (boost::multiprecision::denominator(cached_users) != 1) {
    throw InvalidArgument(fmt::format("K M/N = {} is not an integer", to_string(cached_users)));
  }
  const Integer t = boost::multiprecision::numerator(cached_users);
  ComparisonRow row;
  row.label = fmt::format("AN(K={}, M/N={})", K.str(), to_string(mn));
  row.K = K;
  row.U = 1 - mn;
  row.gain = 1 + cached_users;
  row.rate = Rational(K) * row.U / row.gain;
  Integer f = 1;
  for (Integer i = 0; i < t; ++i) f = f * (K - i) / (i + 1);
  row.F = f;
  return row;
}

std::string format_decimal(const Rational& value, unsigned digits) {
  const bool negative = value < 0;
  const Rational a = negative ? Rational(-value) : value;
  const Integer scale = ipow(Integer(10), digits);
  const Integer scaled = floor(a * scale);
  std::string out = (negative && scaled != 0 ? "-" : "") + Integer(scaled / scale).str();
  if (digits > 0) {
    std::string frac = Integer(scaled % scale).str();
    out += "." + std::string(digits - frac.size(), '0') + frac;
  }
  return out;
}

std::string format_two_decimals(const Rational& value) { return format_decimal(value, 2); }

unsigned decimal_magnitude(const Integer& value) {
  if (value < 1) throw InvalidArgument("decimal_magnitude needs a positive value");
  return static_cast<unsigned>(value.str().size() - 1);
}

std::optional<InstanceMatch> match_instance(const Integer& K, const Integer& F, const Integer& D) {
  for (unsigned scale : {1U, 2U}) {
    if (F % scale != 0 || D % scale != 0) continue;
    for (auto q : kSmallPrimePowers) {
      for (unsigned span = 1; span <= 15; ++span) {
        if (q_binomial(span + 1, 1, q) > K) break;
        if (q_binomial(span + 1, 1, q) != K) continue;
        for (unsigned m = 0; m < span; ++m) {
          ConstructionParams cp{span + 1, m, 1, q};
          const SchemeParams sp = params_from(cp);
          if (sp.F * scale == F && sp.D * scale == D) return InstanceMatch{cp, scale};
        }
      }
    }
  }
  return std::nullopt;
}

std::vector<Table1Row> table1() {
  std::vector<Table1Row> rows;
  for (const auto& entry : kTable1) {
    Table1Row row;
    row.triple = SystemTriple{entry.K, entry.F, entry.D};
    row.theorem2 = bound_theorem2(row.triple);
    row.cited_pda = bound_cited_pda(row.triple);
    row.cutset_exact = bound_cutset_an(row.triple);
    row.cutset = ceil(row.cutset_exact);
    if (entry.printed_rf) row.printed_rf = Integer(*entry.printed_rf);
    row.instance = match_instance(row.triple.K, row.triple.F, row.triple.D);
    if (row.instance) {
      const SchemeParams sp = params_from(row.instance->params);
      row.scheme_rf = boost::multiprecision::numerator(Rational(sp.rate * sp.F));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<Table3Row> table3() {
  std::vector<Table3Row> rows;
  for (const auto& entry : kTable3) {
    rows.push_back(Table3Row{entry.params, entry.m_prime, entry.q_prime, this_work_row(entry.params),
                             yan_pda_params(entry.m_prime, entry.q_prime)});
  }
  return rows;
}

std::vector<SweepRow> asymptotic_sweep(std::uint32_t q, unsigned alpha, unsigned from, unsigned to) {
  if (alpha == 0) throw InvalidArgument("alpha = 0 means m + t = k: nothing is uncached, the sweep is degenerate");
  if (from > to) throw InvalidArgument("empty sweep range");
  if (from < alpha) throw InvalidArgument(fmt::format("k - t must be at least alpha = {}", alpha));
  field_of_order(q);
  const double log_q = std::log(static_cast<double>(q));
  std::vector<SweepRow> rows;
  for (unsigned span = from; span <= to; ++span) {
    SweepRow r;
    r.span = span;
    r.params = ConstructionParams{span + 1, span - alpha, 1, q};
    const unsigned m = r.params.m;
    const SchemeParams sp = params_from(r.params);
    r.K = sp.K;
    r.F = sp.F;
    r.U = 1 - sp.mn;
    r.rate = sp.rate;
    r.log_bracket = ipow(Integer(q), span) <= r.K && r.K <= ipow(Integer(q), span + 1);
    r.rate_identity = r.rate * (m + 2) == Rational(r.K) * r.U;
    r.f_bound = r.F * factorial(m + 1) <= r.K * ipow(Integer(q), alpha * m + (m + 1) * (m + 1));
    const double log_k = log_of(r.K) / log_q;
    r.log_ratio = (log_of(r.F) / log_q) / (log_k * log_k);
    r.rate_ratio = Rational(r.rate / r.K).convert_to<double>() * log_k;
    const double u = r.U.convert_to<double>();
    r.rate_in_band = r.rate_ratio >= u / 2 && r.rate_ratio <= 2 * u;
    rows.push_back(std::move(r));
  }
  return rows;
}

std::string render_table1(const std::vector<Table1Row>& rows, TableFormat format) {
  std::string out;
  if (format == TableFormat::kCsv) {
    out += "K,F,D,theorem2,cited_pda,cutset_ceil,cutset_exact,instance,scale,scheme_rf,printed_rf\n";
    for (const auto& r : rows) {
      out += fmt::format("{},{},{},{},{},{},{},{},{},{},{}\n", r.triple.K.str(), r.triple.F.str(), r.triple.D.str(),
                         r.theorem2.str(), r.cited_pda.str(), r.cutset.str(), to_string(r.cutset_exact),
                         r.instance ? r.instance->params.label() : "", r.instance ? std::to_string(r.instance->scale) : "",
                         r.scheme_rf ? r.scheme_rf->str() : "", r.printed_rf ? r.printed_rf->str() : "");
    }
    return out;
  }
  out += fmt::format("{:>4} {:>5} {:>5} | {:>8} {:>9} {:>14} | {:>10} {:>9} {:>10}\n", "K", "F", "D", "new", "PDA",
                     "cut-set", "instance", "RF", "printed");
  for (const auto& r : rows) {
    out += fmt::format("{:>4} {:>5} {:>5} | {:>8} {:>9} {:>14} | {:>10} {:>9} {:>10}", r.triple.K.str(),
                       r.triple.F.str(), r.triple.D.str(), r.theorem2.str(), r.cited_pda.str(),
                       fmt::format("{} ({})", r.cutset.str(), to_string(r.cutset_exact)),
                       r.instance ? r.instance->params.label() : "NA", r.scheme_rf ? r.scheme_rf->str() : "NA",
                       r.printed_rf ? r.printed_rf->str() : "NA");
    if (r.instance && r.instance->scale != 1) {
      out += fmt::format("  [listed F, D are {}x the construction's]", r.instance->scale);
    }
    out += "\n";
  }
  return out;
}

std::string render_table3(const std::vector<Table3Row>& rows, TableFormat format) {
  std::string out;
  if (format == TableFormat::kCsv) {
    out += "k,m,t,q,K1,U1,U1_exact,F1,F1_pow10,gamma1,m_prime,q_prime,K2,U2,U2_exact,F2,F2_pow10,gamma2\n";
    for (const auto& r : rows) {
      out += fmt::format("{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}\n", r.params.k, r.params.m, r.params.t,
                         r.params.q, r.ours.K.str(), format_two_decimals(r.ours.U), to_string(r.ours.U),
                         r.ours.F.str(), decimal_magnitude(r.ours.F), to_string(r.ours.gain), r.m_prime, r.q_prime,
                         r.baseline.K.str(), format_two_decimals(r.baseline.U), to_string(r.baseline.U),
                         r.baseline.F.str(), decimal_magnitude(r.baseline.F), to_string(r.baseline.gain));
    }
    return out;
  }
  out += fmt::format("{:>10} {:>5} {:>5} {:>7} {:>3} || {:>8} {:>5} {:>5} {:>7} {:>3}\n", "(k,m,t,q)", "K1", "U1",
                     "F1", "g1", "(m',q')", "K2", "U2", "F2", "g2");
  for (const auto& r : rows) {
    out += fmt::format("{:>10} {:>5} {:>5} {:>7} {:>3} || {:>8} {:>5} {:>5} {:>7} {:>3}\n", r.ours.label,
                       r.ours.K.str(), format_two_decimals(r.ours.U), magnitude_label(r.ours.F),
                       to_string(r.ours.gain), r.baseline.label, r.baseline.K.str(),
                       format_two_decimals(r.baseline.U), magnitude_label(r.baseline.F), to_string(r.baseline.gain));
  }
  return out;
}

std::string render_sweep(const std::vector<SweepRow>& rows, TableFormat format) {
  std::string out;
  if (format == TableFormat::kCsv) {
    out += "k_minus_t,k,m,t,q,K,F,U,R,log_bracket,rate_identity,f_bound,log_ratio,rate_ratio,rate_in_band\n";
    for (const auto& r : rows) {
      out += fmt::format("{},{},{},{},{},{},{},{},{},{},{},{},{:.6f},{:.6f},{}\n", r.span, r.params.k, r.params.m,
                         r.params.t, r.params.q, r.K.str(), r.F.str(), to_string(r.U), to_string(r.rate),
                         r.log_bracket, r.rate_identity, r.f_bound, r.log_ratio, r.rate_ratio, r.rate_in_band);
    }
    return out;
  }
  out += fmt::format("{:>4} {:>4} {:>9} {:>8} {:>8} {:>12} {:>6} {:>6} {:>6} {:>8} {:>8} {:>5}\n", "k-t", "m", "K",
                     "F", "U", "R", "log", "ident", "Fbnd", "lgF/lgK2", "R/(K/lg)", "band");
  for (const auto& r : rows) {
    out += fmt::format("{:>4} {:>4} {:>9} {:>8} {:>8} {:>12} {:>6} {:>6} {:>6} {:>8.4f} {:>8.4f} {:>5}\n", r.span,
                       r.params.m, r.K.str(), magnitude_label(r.F), format_decimal(r.U, 4),
                       format_decimal(r.rate, 2), r.log_bracket, r.rate_identity, r.f_bound, r.log_ratio,
                       r.rate_ratio, r.rate_in_band);
  }
  return out;
}

}  // namespace pgcache
