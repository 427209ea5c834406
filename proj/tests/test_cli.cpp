#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include <json.hpp>

#include "cli.hpp"
#include "pgcache/serialize.hpp"
#include "pgcache/simulate.hpp"

namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = pgcache::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("pgcache_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string file(const std::string& name) const { return (path / name).string(); }
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

bool contains(const std::string& text, const std::string& what) { return text.find(what) != std::string::npos; }

}  // namespace

TEST_CASE("params") {
  auto r = run({"params", "-k", "6", "-m", "3", "-t", "2", "-q", "2"});
  CHECK(r.code == 0);
  CHECK(contains(r.out, "K=31"));
  CHECK(contains(r.out, "R=16/5"));
  r = run({"params", "-k", "3", "-m", "1", "-t", "1", "-q", "2"});
  CHECK(contains(r.out, "F=21"));
  r = run({"params", "-k", "2", "-m", "2", "-t", "2", "-q", "2"});
  CHECK(r.code == 2);
  CHECK(contains(r.err, "exceeds"));
  r = run({"--format", "json", "params", "-k", "3", "-m", "1", "-t", "1", "-q", "2"});
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["F"] == "21");
  CHECK(j["R"]["exact"] == "4/3");
  r = run({"params", "-k", "3", "-m", "1", "-t", "1", "-q", "2", "--format", "csv"});
  CHECK(r.code == 0);
  CHECK(contains(r.out, "3,1,1,2,7,21,12,4,3,3/7,4/3,3\n"));
}

TEST_CASE("argument errors") {
  CHECK(run({}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"params", "-k", "3"}).code == 2);
  CHECK(run({"params", "-k", "x", "-m", "1", "-t", "1", "-q", "2"}).code == 2);
  CHECK(run({"--format", "yaml", "tables", "table1"}).code == 2);
  CHECK(run({"tables", "table2"}).code == 2);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("construct then simulate") {
  TempDir tmp;
  const auto doc = tmp.file("fano.json");
  auto r = run({"construct", "-k", "3", "-m", "1", "-t", "1", "-q", "2", "-o", doc});
  REQUIRE(r.code == 0);
  CHECK(fs::exists(doc));
  r = run({"simulate", doc, "--trials", "200", "--trace", tmp.file("a.trace")});
  CHECK(r.code == 0);
  CHECK(contains(r.out, "200 random"));
  CHECK(contains(r.out, "7/7 users decoded all 202 vectors"));
  CHECK(contains(r.out, "packets: 28 per demand vector"));

  // Re-serialized copy gives the same packets for the same seed.
  const auto copy = tmp.file("copy.json");
  {
    std::ofstream out(copy, std::ios::binary);
    out << pgcache::serialize(pgcache::deserialize(slurp(doc)));
  }
  CHECK(slurp(copy) == slurp(doc));
  r = run({"simulate", copy, "--trials", "200", "--trace", tmp.file("b.trace")});
  CHECK(r.code == 0);
  CHECK(slurp(tmp.file("a.trace")) == slurp(tmp.file("b.trace")));
  std::ifstream trace(tmp.file("a.trace"), std::ios::binary);
  const auto scheme = pgcache::deserialize(slurp(doc));
  CHECK(pgcache::read_packet_trace(trace) == pgcache::simulate(scheme, {}).first_trace);

  r = run({"simulate", doc, "--trials", "5", "--seed", "9", "--trace", tmp.file("c.trace")});
  CHECK(r.code == 0);
  CHECK(slurp(tmp.file("c.trace")) != slurp(tmp.file("a.trace")));

  r = run({"--format", "json", "simulate", doc, "--trials", "3"});
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["packets"] == 28);
  CHECK(j["success"] == true);

  r = run({"bounds", "-K", "7", "-F", "21", "-D", "12", "--scheme", doc});
  CHECK(r.code == 0);
  CHECK(contains(r.out, "ordering bound: 24 (exhaustive)"));
  CHECK(run({"bounds", "-K", "7", "-F", "42", "-D", "24", "--scheme", doc}).code == 2);
}

TEST_CASE("file and schema errors") {
  TempDir tmp;
  CHECK(run({"simulate", tmp.file("missing.json")}).code == 4);
  CHECK(run({"construct", "-k", "3", "-m", "1", "-t", "1", "-q", "2", "-o", tmp.file("no/such/dir/x.json")}).code == 4);
  {
    std::ofstream out(tmp.file("junk.json"));
    out << "{\"version\": \"pgcache/9\"}";
  }
  const auto r = run({"simulate", tmp.file("junk.json")});
  CHECK(r.code == 2);
  CHECK_FALSE(r.err.empty());
}

TEST_CASE("enumeration cap") {
  TempDir tmp;
  auto r = run({"--cap", "1000", "construct", "-k", "6", "-m", "3", "-t", "2", "-q", "2", "-o", tmp.file("x.json")});
  CHECK(r.code == 3);
  CHECK(contains(r.err, "F = 26040"));
  CHECK_FALSE(fs::exists(tmp.file("x.json")));
  CHECK(run({"--cap", "0", "construct", "-k", "3", "-m", "1", "-t", "1", "-q", "2", "-o", tmp.file("y.json")}).code == 2);

  ::setenv("PGCACHE_CAP", "50", 1);
  r = run({"construct", "-k", "3", "-m", "1", "-t", "1", "-q", "2", "-o", tmp.file("z.json")});
  CHECK(r.code == 3);
  CHECK(run({"--cap", "100", "construct", "-k", "3", "-m", "1", "-t", "1", "-q", "2", "-o", tmp.file("z.json")}).code == 0);
  ::setenv("PGCACHE_CAP", "lots", 1);
  CHECK(run({"construct", "-k", "3", "-m", "1", "-t", "1", "-q", "2", "-o", tmp.file("z.json")}).code == 2);
  ::unsetenv("PGCACHE_CAP");
}

TEST_CASE("bounds, tables and sweep") {
  auto r = run({"bounds", "-K", "7", "-F", "42", "-D", "24"});
  CHECK(r.code == 0);
  CHECK(contains(r.out, "theorem2=43 cited_pda=33 cutset=42"));
  r = run({"bounds", "-K", "7", "-F", "42", "-D", "25"});
  CHECK(r.code == 0);
  CHECK(contains(r.out, "theorem2=NA"));
  CHECK(run({"bounds", "-K", "7", "-F", "4", "-D", "25"}).code == 2);
  CHECK(run({"bounds", "-K", "7", "-F", "42", "-D", "24", "--mode", "other"}).code == 2);

  r = run({"tables", "table3"});
  CHECK(r.code == 0);
  CHECK(contains(r.out, "(6,3,2,2)"));
  CHECK(contains(r.out, "(14,2)"));
  r = run({"--format", "csv", "tables", "table3"});
  CHECK(contains(r.out, "6,3,2,2,31,0.51,16/31,26040,4,5,14,2,30,0.50,1/2,16384,4,15\n"));
  r = run({"--format", "json", "tables", "table1"});
  CHECK(nlohmann::json::parse(r.out).size() == 6);

  r = run({"sweep", "-q", "2", "--alpha", "2", "--from", "3", "--to", "20"});
  CHECK(r.code == 0);
  r = run({"sweep", "--alpha", "0"});
  CHECK(r.code == 2);
  r = run({"sweep", "--format", "csv"});
  CHECK(r.code == 0);
  CHECK(contains(r.out, "k_minus_t,k,m,t,q,K,F,U,R"));
}
