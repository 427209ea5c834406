#include "pgcache/serialize.hpp"

#include <algorithm>
#include <cctype>

#include <boost/archive/iterators/base64_from_binary.hpp>
#include <boost/archive/iterators/binary_from_base64.hpp>
#include <boost/archive/iterators/transform_width.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include "pgcache/errors.hpp"

namespace pgcache {

using nlohmann::json;

namespace {

json matrix_json(const SubspaceBasis& b) {
  json rows = json::array();
  for (const auto& row : b.rows()) {
    json r = json::array();
    for (auto x : row) r.push_back(x.value());
    rows.push_back(std::move(r));
  }
  return rows;
}

SubspaceBasis matrix_from(const json& j, const FieldPtr& field, std::size_t k, std::size_t dim, const char* what) {
  std::vector<Vector> rows;
  for (const auto& r : j) {
    Vector v;
    for (const auto& x : r) v.push_back(field->element(x.get<std::uint32_t>()));
    rows.push_back(std::move(v));
  }
  auto basis = SubspaceBasis::canonicalize(field, k, rows);
  if (basis.rows() != rows || basis.dim() != dim) {
    throw SchemaError(fmt::format("{} is not a canonical {}-dim basis", what, dim));
  }
  return basis;
}

void expect(bool ok, const std::string& msg) {
  if (!ok) throw SchemaError(msg);
}

}  // namespace

std::string base64_encode(std::span<const std::uint8_t> bytes) {
  using namespace boost::archive::iterators;
  using It = base64_from_binary<transform_width<const std::uint8_t*, 6, 8>>;
  std::string out(It(bytes.data()), It(bytes.data() + bytes.size()));
  out.append((3 - bytes.size() % 3) % 3, '=');
  return out;
}

std::vector<std::uint8_t> base64_decode(std::string_view text) {
  using namespace boost::archive::iterators;
  if (text.size() % 4 != 0) throw InvalidArgument("base64 length is not a multiple of 4");
  std::string s(text);
  std::size_t pad = 0;
  while (pad < 2 && !s.empty() && s[s.size() - 1 - pad] == '=') ++pad;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const char c = s[i];
    const bool ok = std::isalnum(static_cast<unsigned char>(c)) || c == '+' || c == '/' ||
                    (c == '=' && i >= s.size() - pad);
    if (!ok) throw InvalidArgument("invalid base64 character");
  }
  std::replace(s.end() - static_cast<std::ptrdiff_t>(pad), s.end(), '=', 'A');
  using It = transform_width<binary_from_base64<std::string::const_iterator>, 8, 6>;
  std::vector<std::uint8_t> out(It(s.cbegin()), It(s.cend()));
  out.resize(s.size() / 4 * 3 - pad);
  return out;
}

std::string serialize(const Scheme& s) {
  json doc;
  doc["version"] = kSchemeFormat;
  doc["params"] = {{"k", s.construction.k},
                   {"m", s.construction.m},
                   {"t", s.construction.t},
                   {"q", s.construction.q},
                   {"K", to_u64(s.params.K)},
                   {"F", to_u64(s.params.F)},
                   {"D", to_u64(s.params.D)},
                   {"c", to_u64(s.params.c)},
                   {"d", to_u64(s.params.d)},
                   {"MN", to_string(s.params.mn)},
                   {"R", to_string(s.params.rate)}};
  doc["field"] = {{"p", s.field->characteristic()}, {"n", s.field->degree()}, {"modulus", s.field->modulus()}};
  doc["W"] = matrix_json(s.w);
  doc["users"] = json::array();
  for (const auto& u : s.users) doc["users"].push_back(matrix_json(u));
  doc["subfiles"] = s.subfiles;
  doc["placement"] = json::array();
  for (std::size_t u = 0; u < s.placement.users(); ++u) doc["placement"].push_back(base64_encode(s.placement.row_bytes(u)));
  json delivery = json::array();
  for (const auto& clique : s.delivery.cliques()) {
    json c = json::array();
    for (const auto& v : clique) c.push_back({v.user, v.subfile});
    delivery.push_back(std::move(c));
  }
  doc["delivery"] = std::move(delivery);
  return doc.dump() + "\n";
}

Scheme deserialize(std::string_view document) {
  try {
    const json doc = json::parse(document);
    expect(doc.is_object(), "scheme document must be a JSON object");
    expect(doc.contains("version") && doc["version"].is_string(), "missing version field");
    const auto version = doc["version"].get<std::string>();
    expect(version == kSchemeFormat, fmt::format("unsupported version '{}', expected '{}'", version, kSchemeFormat));

    const json& p = doc.at("params");
    ConstructionParams cp{p.at("k").get<unsigned>(), p.at("m").get<unsigned>(), p.at("t").get<unsigned>(),
                          p.at("q").get<std::uint32_t>()};
    SchemeParams sp = params_from(cp);
    expect(p.at("K").get<std::uint64_t>() == sp.K && p.at("F").get<std::uint64_t>() == sp.F &&
               p.at("D").get<std::uint64_t>() == sp.D && p.at("c").get<std::uint64_t>() == sp.c &&
               p.at("d").get<std::uint64_t>() == sp.d && parse_rational(p.at("MN").get<std::string>()) == sp.mn &&
               parse_rational(p.at("R").get<std::string>()) == sp.rate,
           "params disagree with the closed forms for " + cp.label());

    const json& fj = doc.at("field");
    FieldPtr field = field_new(fj.at("p").get<std::uint32_t>(), fj.at("n").get<unsigned>());
    expect(field->order() == cp.q, "field order differs from q");
    expect(fj.at("modulus").get<std::vector<std::uint32_t>>() == field->modulus(), "field modulus differs");

    const std::size_t K = to_u64(sp.K);
    const std::size_t F = to_u64(sp.F);
    const std::size_t D = to_u64(sp.D);
    const std::size_t c = to_u64(sp.c);
    const std::size_t d = to_u64(sp.d);

    SubspaceBasis w = matrix_from(doc.at("W"), field, cp.k, cp.t - 1, "W");
    std::vector<SubspaceBasis> users;
    expect(doc.at("users").size() == K, "users list has the wrong length");
    for (const auto& u : doc.at("users")) {
      users.push_back(matrix_from(u, field, cp.k, cp.t, "user"));
      expect(contains(users.back(), w), "user subspace does not contain W");
    }

    auto subfiles = doc.at("subfiles").get<std::vector<std::vector<std::uint32_t>>>();
    expect(subfiles.size() == F, "subfiles list has the wrong length");
    for (const auto& x : subfiles) {
      expect(x.size() == cp.m + 1, "subfile is not an (m+1)-set");
      expect(std::is_sorted(x.begin(), x.end()) && std::adjacent_find(x.begin(), x.end()) == x.end(),
             "subfile members must be sorted and distinct");
      expect(x.back() < K, "subfile names an unknown user");
    }

    PlacementMap placement(K, F);
    const json& rows = doc.at("placement");
    expect(rows.is_array() && rows.size() == K, "placement must have one row per user");
    for (std::size_t u = 0; u < K; ++u) {
      placement.set_row_bytes(u, base64_decode(rows[u].get<std::string>()));
      expect(placement.row_count(u) == D, fmt::format("placement row {} does not have D = {} ones", u, D));
    }
    for (std::size_t f = 0; f < F; ++f) {
      expect(placement.column_count(f) == c, fmt::format("placement column {} does not have c = {} ones", f, c));
      SubspaceBasis span = w;
      for (auto u : subfiles[f]) span = subspace_sum(span, users[u]);
      expect(span.dim() == cp.m + cp.t, fmt::format("subfile {} does not span m + t dimensions", f));
      for (std::size_t u = 0; u < K; ++u) {
        expect(placement.cached(u, f) == contains(span, users[u]),
               fmt::format("placement bit ({}, {}) disagrees with the subfile span", u, f));
      }
    }

    std::vector<std::vector<Vertex>> cliques;
    std::size_t covered = 0;
    for (const auto& cj : doc.at("delivery")) {
      std::vector<Vertex> clique;
      for (const auto& pair : cj) {
        expect(pair.is_array() && pair.size() == 2, "delivery entries must be [user, subfile] pairs");
        Vertex v{pair[0].get<std::uint32_t>(), pair[1].get<std::uint32_t>()};
        expect(v.user < K && v.subfile < F && placement.uncached(v.user, v.subfile),
               "delivery names a pair that is not uncached");
        clique.push_back(v);
      }
      expect(clique.size() == d, fmt::format("transmission clique of size {}, expected {}", clique.size(), d));
      for (const auto& a : clique) {
        for (const auto& b : clique) {
          expect(a == b || (a.user != b.user && placement.cached(a.user, b.subfile)),
                 "transmission clique member cannot cancel another member's subfile");
        }
      }
      covered += clique.size();
      cliques.push_back(std::move(clique));
    }
    expect(covered == K * D, "delivery does not cover every uncached pair");
    DeliveryPlan plan(K, F, std::move(cliques));

    return Scheme{cp, std::move(sp), field, std::move(w), std::move(users), std::move(subfiles),
                  std::move(placement), std::move(plan)};
  } catch (const SchemaError&) {
    throw;
  } catch (const json::exception& e) {
    throw SchemaError(std::string("malformed scheme document: ") + e.what());
  } catch (const InvalidArgument& e) {
    throw SchemaError(std::string("invalid scheme document: ") + e.what());
  }
}

}  // namespace pgcache
