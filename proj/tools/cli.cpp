#include "cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ostream.h>
#include <json.hpp>

#include "pgcache/bounds.hpp"
#include "pgcache/compare.hpp"
#include "pgcache/delivery.hpp"
#include "pgcache/errors.hpp"
#include "pgcache/linegraph.hpp"
#include "pgcache/scheme.hpp"
#include "pgcache/serialize.hpp"
#include "pgcache/simulate.hpp"

namespace pgcache::cli {

namespace {

using Json = nlohmann::ordered_json;

enum class Format { kText, kCsv, kJson };

struct RunConfig {
  Format format = Format::kText;
  std::optional<std::uint64_t> cap;
  ConstructionParams params;
  std::string path;
  std::string out_path;
  std::string trace_path;
  std::uint64_t seed = 1;
  std::size_t trials = 200;
  std::size_t payload = kDefaultSubfileBytes;
  std::size_t files = 0;
  std::string K, F, D;
  std::string scheme_path;
  std::string mode = "common";
  std::string table;
  std::uint32_t q = 2;
  unsigned alpha = 1;
  unsigned from = 3;
  unsigned to = 20;
};

std::uint64_t effective_cap(const RunConfig& cfg) {
  if (cfg.cap) {
    if (*cfg.cap == 0) throw InvalidArgument("--cap must be positive");
    return *cfg.cap;
  }
  if (const char* env = std::getenv("PGCACHE_CAP"); env && *env) {
    std::uint64_t v = 0;
    std::istringstream in(env);
    if (!(in >> v) || !in.eof() || v == 0) throw InvalidArgument(fmt::format("PGCACHE_CAP={} is not a positive integer", env));
    return v;
  }
  return kDefaultCap;
}

Integer parse_integer(const std::string& text, const char* name) {
  const Rational r = parse_rational(text);
  if (boost::multiprecision::denominator(r) != 1) throw InvalidArgument(fmt::format("{} must be an integer", name));
  return boost::multiprecision::numerator(r);
}

Json rational_json(const Rational& r) {
  return Json{{"exact", to_string(r)}, {"decimal", r.convert_to<double>()}};
}

std::string rational_text(const Rational& r) {
  if (boost::multiprecision::denominator(r) == 1) return to_string(r);
  return fmt::format("{} ({})", to_string(r), format_decimal(r, 4));
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(fmt::format("cannot open {}", path));
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (in.bad()) throw IoError(fmt::format("error reading {}", path));
  return text;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError(fmt::format("cannot write {}", path));
  out << text;
  if (!out.flush()) throw IoError(fmt::format("error writing {}", path));
}

int cmd_params(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const SchemeParams sp = params_from(cfg.params);
  if (cfg.params.degenerate()) err << "warning: m = 0 gives delivery cliques of size 2\n";
  switch (cfg.format) {
    case Format::kJson: {
      Json j{{"k", cfg.params.k}, {"m", cfg.params.m}, {"t", cfg.params.t}, {"q", cfg.params.q},
             {"K", sp.K.str()}, {"F", sp.F.str()}, {"D", sp.D.str()}, {"c", sp.c.str()}, {"d", sp.d.str()},
             {"MN", rational_json(sp.mn)}, {"R", rational_json(sp.rate)}, {"gain", rational_json(sp.gain)}};
      out << j.dump(2) << "\n";
      break;
    }
    case Format::kCsv:
      out << "k,m,t,q,K,F,D,c,d,MN,R,gain\n";
      out << fmt::format("{},{},{},{},{},{},{},{},{},{},{},{}\n", cfg.params.k, cfg.params.m, cfg.params.t,
                         cfg.params.q, sp.K.str(), sp.F.str(), sp.D.str(), sp.c.str(), sp.d.str(), to_string(sp.mn),
                         to_string(sp.rate), to_string(sp.gain));
      break;
    case Format::kText:
      out << fmt::format("instance {}\n", cfg.params.label());
      out << fmt::format("K={} F={} D={} c={} d={}\n", sp.K.str(), sp.F.str(), sp.D.str(), sp.c.str(), sp.d.str());
      out << fmt::format("M/N={} R={} gain={}\n", rational_text(sp.mn), rational_text(sp.rate),
                         rational_text(sp.gain));
      break;
  }
  return kOk;
}

int cmd_construct(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const std::uint64_t cap = effective_cap(cfg);
  if (cfg.params.degenerate()) err << "warning: m = 0 gives delivery cliques of size 2\n";
  const CachingLineGraph graph = build_line_graph(cfg.params, EnumerationLimits{cap});
  const ValidationReport lg = verify_line_graph(graph);
  const CoverReport cover = verify_transmission_cover(graph);
  for (const auto& v : lg.violations) err << "line graph: " << v << "\n";
  for (const auto& v : cover.violations) err << "cover: " << v << "\n";
  if (!lg.ok() || !cover.ok()) return kValidation;
  const Scheme scheme = make_scheme(graph);
  write_file(cfg.out_path, serialize(scheme));
  out << fmt::format("wrote {}: K={} F={} vertices={} transmissions={}\n", cfg.out_path, scheme.users.size(),
                     scheme.subfiles.size(), graph.vertices.size(), graph.transmission_cliques.size());
  return kOk;
}

int cmd_simulate(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const Scheme scheme = deserialize(read_file(cfg.path));
  SimulationOptions opts;
  opts.seed = cfg.seed;
  opts.trials = cfg.trials;
  opts.subfile_bytes = cfg.payload;
  opts.files = cfg.files;
  const SimulationReport rep = simulate(scheme, opts);
  if (!cfg.trace_path.empty()) {
    std::ostringstream buf;
    write_packet_trace(buf, rep.first_trace);
    write_file(cfg.trace_path, buf.str());
  }
  for (const auto& f : rep.failures) err << "failure: " << f << "\n";
  const std::size_t ok_users =
      static_cast<std::size_t>(std::count(rep.decoded.begin(), rep.decoded.end(), rep.vectors()));
  switch (cfg.format) {
    case Format::kJson: {
      Json j{{"random_trials", rep.random_trials},
             {"fixed_trials", rep.fixed_trials},
             {"users", rep.users},
             {"subfiles", rep.subfiles},
             {"decoded", rep.decoded},
             {"packets", rep.packets},
             {"packet_count_constant", rep.packet_count_constant},
             {"measured_rate", rational_json(rep.measured_rate())},
             {"success", rep.all_decoded()}};
      out << j.dump(2) << "\n";
      break;
    }
    case Format::kCsv:
      out << "user,decoded,vectors\n";
      for (std::size_t u = 0; u < rep.decoded.size(); ++u) {
        out << fmt::format("{},{},{}\n", u, rep.decoded[u], rep.vectors());
      }
      break;
    case Format::kText:
      out << fmt::format("trials: {} random + {} fixed demand vectors\n", rep.random_trials, rep.fixed_trials);
      out << fmt::format("decode: {}/{} users decoded all {} vectors\n", ok_users, rep.users, rep.vectors());
      out << fmt::format("packets: {} per demand vector{}\n", rep.packets,
                         rep.packet_count_constant ? "" : " (varies)");
      out << fmt::format("measured RF: {}, formula R: {}\n", rep.packets, rational_text(scheme.params.rate));
      out << fmt::format("{}\n", rep.all_decoded() ? "OK" : "FAILED");
      break;
  }
  return rep.all_decoded() ? kOk : kValidation;
}

NeighbourhoodMode parse_mode(const std::string& s) {
  if (s == "common") return NeighbourhoodMode::kCommon;
  if (s == "cumulative") return NeighbourhoodMode::kCumulative;
  if (s == "incremental") return NeighbourhoodMode::kIncremental;
  throw InvalidArgument(fmt::format("unknown neighbourhood mode '{}'", s));
}

int cmd_bounds(const RunConfig& cfg, std::ostream& out, std::ostream&) {
  SystemTriple st{parse_integer(cfg.K, "K"), parse_integer(cfg.F, "F"), parse_integer(cfg.D, "D")};
  st.validate();
  std::optional<Scheme> scheme;
  if (!cfg.scheme_path.empty()) {
    scheme = deserialize(read_file(cfg.scheme_path));
    if (scheme->params.K != st.K || scheme->params.F != st.F || scheme->params.D != st.D) {
      throw InvalidArgument("scheme document does not match -K/-F/-D");
    }
  }
  GenericOptions gopts;
  gopts.mode = parse_mode(cfg.mode);
  const BoundsReport rep = bounds_report(st, scheme ? &scheme->placement : nullptr, gopts);
  const std::string thm2 = rep.theorem2 ? rep.theorem2->str() : "NA";
  switch (cfg.format) {
    case Format::kJson: {
      Json j{{"K", st.K.str()},
             {"F", st.F.str()},
             {"D", st.D.str()},
             {"theorem2", rep.theorem2 ? Json(rep.theorem2->str()) : Json(nullptr)},
             {"cited_pda", rep.cited_pda.str()},
             {"cutset", rational_json(rep.cutset)},
             {"cutset_ceil", rep.cutset_ceil.str()}};
      if (rep.generic) {
        j["generic"] = Json{{"value", rep.generic->best.total.str()},
                            {"ordering", rep.generic->best.ordering},
                            {"exhaustive", rep.generic->exhaustive}};
      }
      out << j.dump(2) << "\n";
      break;
    }
    case Format::kCsv:
      out << "K,F,D,theorem2,cited_pda,cutset_ceil,cutset_exact,generic\n";
      out << fmt::format("{},{},{},{},{},{},{},{}\n", st.K.str(), st.F.str(), st.D.str(), thm2, rep.cited_pda.str(),
                         rep.cutset_ceil.str(), to_string(rep.cutset),
                         rep.generic ? rep.generic->best.total.str() : "");
      break;
    case Format::kText:
      out << fmt::format("theorem2={} cited_pda={} cutset={} (exact {})\n", thm2, rep.cited_pda.str(),
                         rep.cutset_ceil.str(), rational_text(rep.cutset));
      if (rep.generic) {
        out << fmt::format("ordering bound: {} ({})\n", rep.generic->best.total.str(),
                           rep.generic->exhaustive ? "exhaustive" : "greedy");
      }
      break;
  }
  return kOk;
}

TableFormat table_format(Format f) { return f == Format::kCsv ? TableFormat::kCsv : TableFormat::kText; }

int cmd_tables(const RunConfig& cfg, std::ostream& out, std::ostream&) {
  if (cfg.table == "table1") {
    const auto rows = table1();
    if (cfg.format != Format::kJson) {
      out << render_table1(rows, table_format(cfg.format));
      return kOk;
    }
    Json j = Json::array();
    for (const auto& r : rows) {
      Json row{{"K", r.triple.K.str()},         {"F", r.triple.F.str()},
               {"D", r.triple.D.str()},         {"theorem2", r.theorem2.str()},
               {"cited_pda", r.cited_pda.str()}, {"cutset", r.cutset.str()},
               {"cutset_exact", to_string(r.cutset_exact)}};
      if (r.instance) {
        row["instance"] = r.instance->params.label();
        row["scale"] = r.instance->scale;
      }
      if (r.scheme_rf) row["scheme_rf"] = r.scheme_rf->str();
      if (r.printed_rf) row["printed_rf"] = r.printed_rf->str();
      j.push_back(std::move(row));
    }
    out << j.dump(2) << "\n";
    return kOk;
  }
  if (cfg.table == "table3") {
    const auto rows = table3();
    if (cfg.format != Format::kJson) {
      out << render_table3(rows, table_format(cfg.format));
      return kOk;
    }
    Json j = Json::array();
    auto side = [](const ComparisonRow& c) {
      return Json{{"label", c.label},
                  {"K", c.K.str()},
                  {"U", format_two_decimals(c.U)},
                  {"U_exact", to_string(c.U)},
                  {"F", c.F.str()},
                  {"F_pow10", decimal_magnitude(c.F)},
                  {"gain", to_string(c.gain)}};
    };
    for (const auto& r : rows) j.push_back(Json{{"ours", side(r.ours)}, {"baseline", side(r.baseline)}});
    out << j.dump(2) << "\n";
    return kOk;
  }
  throw InvalidArgument(fmt::format("unknown table '{}'", cfg.table));
}

int cmd_sweep(const RunConfig& cfg, std::ostream& out, std::ostream&) {
  const auto rows = asymptotic_sweep(cfg.q, cfg.alpha, cfg.from, cfg.to);
  if (cfg.format != Format::kJson) {
    out << render_sweep(rows, table_format(cfg.format));
  } else {
    Json j = Json::array();
    for (const auto& r : rows) {
      j.push_back(Json{{"k_minus_t", r.span},
                       {"k", r.params.k},
                       {"m", r.params.m},
                       {"K", r.K.str()},
                       {"F", r.F.str()},
                       {"U", to_string(r.U)},
                       {"R", to_string(r.rate)},
                       {"log_bracket", r.log_bracket},
                       {"rate_identity", r.rate_identity},
                       {"f_bound", r.f_bound},
                       {"log_ratio", r.log_ratio},
                       {"rate_ratio", r.rate_ratio},
                       {"rate_in_band", r.rate_in_band}});
    }
    out << j.dump(2) << "\n";
  }
  for (const auto& r : rows) {
    if (!r.log_bracket || !r.rate_identity || !r.f_bound) return kValidation;
  }
  return kOk;
}

void add_instance_options(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("-k", cfg.params.k, "ambient dimension")->required();
  sub->add_option("-m", cfg.params.m, "subfile span dimension offset")->required();
  sub->add_option("-t", cfg.params.t, "user subspace dimension")->required();
  sub->add_option("-q", cfg.params.q, "field order")->required();
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Coded caching schemes from projective geometry"};
  app.require_subcommand(1, 1);
  app.fallthrough();
  std::map<std::string, Format> formats{{"text", Format::kText}, {"csv", Format::kCsv}, {"json", Format::kJson}};
  app.add_option("--format", cfg.format, "output format")
      ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case))
      ->default_str("text");
  app.add_option("--cap", cfg.cap, "largest line graph (vertices) to enumerate; PGCACHE_CAP also sets it");

  auto* params = app.add_subcommand("params", "closed-form scheme parameters");
  add_instance_options(params, cfg);

  auto* construct = app.add_subcommand("construct", "build, verify and save a scheme document");
  add_instance_options(construct, cfg);
  construct->add_option("-o,--output", cfg.out_path, "scheme document path")->required();

  auto* sim = app.add_subcommand("simulate", "run placement and delivery on random demands");
  sim->add_option("scheme", cfg.path, "scheme document")->required();
  sim->add_option("--seed", cfg.seed, "SplitMix64 seed");
  sim->add_option("--trials", cfg.trials, "random demand vectors");
  sim->add_option("--payload", cfg.payload, "bytes per subfile")->check(CLI::PositiveNumber);
  sim->add_option("--files", cfg.files, "library size N (default K)");
  sim->add_option("--trace", cfg.trace_path, "write the first trial's packets here");

  auto* bounds = app.add_subcommand("bounds", "lower bounds on the rate for (K, F, D)");
  bounds->add_option("-K", cfg.K)->required();
  bounds->add_option("-F", cfg.F)->required();
  bounds->add_option("-D", cfg.D)->required();
  bounds->add_option("--scheme", cfg.scheme_path, "placement to evaluate the ordering bound on");
  bounds->add_option("--mode", cfg.mode, "common|cumulative|incremental");

  auto* tables = app.add_subcommand("tables", "comparison tables");
  tables->add_option("which", cfg.table, "table1 or table3")->required();

  auto* sweep = app.add_subcommand("sweep", "closed-form checks over growing k - t with t = 1");
  sweep->add_option("-q", cfg.q);
  sweep->add_option("--alpha", cfg.alpha);
  sweep->add_option("--from", cfg.from);
  sweep->add_option("--to", cfg.to);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kBadInput;
  }

  try {
    if (*params) return cmd_params(cfg, out, err);
    if (*construct) return cmd_construct(cfg, out, err);
    if (*sim) return cmd_simulate(cfg, out, err);
    if (*bounds) return cmd_bounds(cfg, out, err);
    if (*tables) return cmd_tables(cfg, out, err);
    if (*sweep) return cmd_sweep(cfg, out, err);
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << "\n";
    return kBadInput;
  } catch (const CapExceeded& e) {
    err << "error: " << e.what() << "\n";
    return kCap;
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return kIo;
  } catch (const DecodeError& e) {
    err << "error: " << e.what() << "\n";
    return kValidation;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kFailure;
  }
  return kBadInput;
}

}  // namespace pgcache::cli
