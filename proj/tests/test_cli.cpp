#include <doctest.h>

#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>

#include <unistd.h>

#include "cli.hpp"

using namespace cofill;
using nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run invoke(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path scratch_dir() {
  const auto dir = std::filesystem::temp_directory_path() / ("cofill_cli_test_" + std::to_string(::getpid()));
  std::filesystem::create_directories(dir);
  return dir;
}

void write(const std::filesystem::path& p, const std::string& text) {
  std::ofstream f(p, std::ios::binary);
  f << text;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

// No floating point anywhere: numbers are integers or "p/q" strings.
void check_exact(const json& j) {
  static const std::regex floaty(R"(^-?[0-9]*\.[0-9]+([eE][-+]?[0-9]+)?$)");
  if (j.is_number_float()) FAIL("floating point in output");
  if (j.is_string()) CHECK_FALSE(std::regex_match(j.get<std::string>(), floaty));
  if (j.is_structured()) {
    for (const auto& x : j) check_exact(x);
  }
}

}  // namespace

TEST_CASE("spec examples") {
  const Run fill = invoke({"fill", "--group", "z2", "--radius", "3", "--word", "a b a^-1 b^-1"});
  REQUIRE(fill.code == 0);
  const json j = json::parse(fill.out);
  CHECK(j["value"] == "1");
  CHECK(j["status"] == "Optimal");
  CHECK(j["certificate"] == json::parse(R"([["1", 0, "1"]])"));

  const Run dehn = invoke({"dehn", "--group", "free2", "--n", "4"});
  REQUIRE(dehn.code == 0);
  CHECK(dehn.out == "n,value,witness,radius,truncated\n4,0,\"\",3,false\n");

  const Run cof = invoke({"cof", "--group", "z2", "--n", "4", "--radius", "3"});
  REQUIRE(cof.code == 0);
  CHECK(cof.out == "n,value,witness,radius,truncated\n4,1/4,\"a b a^-1 b^-1\",3,false\n");
}

TEST_CASE("integer lists") {
  CHECK(cli::parse_int_list("4") == std::vector<int>{4});
  CHECK(cli::parse_int_list("12,4,8,4") == std::vector<int>{4, 8, 12});
  CHECK(cli::parse_int_list("8..10,2") == std::vector<int>{2, 8, 9, 10});
  CHECK_THROWS(cli::parse_int_list(""));
  CHECK_THROWS(cli::parse_int_list("3..1"));
  CHECK_THROWS(cli::parse_int_list("x"));
  CHECK_THROWS(cli::parse_int_list("-1"));
}

TEST_CASE("exit codes") {
  SUBCASE("usage") {
    CHECK(invoke({}).code == cli::kUsage);
    CHECK(invoke({"frobnicate"}).code == cli::kUsage);
    CHECK(invoke({"fill", "--group", "z2"}).code == cli::kUsage);
    CHECK(invoke({"fill", "--group", "nope", "--word", "a"}).code == cli::kUsage);
    CHECK(invoke({"fill", "--group", "z2", "--word", "a q"}).code == cli::kUsage);
    CHECK(invoke({"fill", "--group", "z2", "--word", "a b a^-1 b^-1", "--format", "csv"}).code == cli::kUsage);
    CHECK(invoke({"cof", "--group", "z2"}).code == cli::kUsage);
    CHECK(invoke({"cof", "--group", "z2", "--n", "4", "--mode", "sample:x"}).code == cli::kUsage);
    CHECK(invoke({"thm4", "--group", "z2"}).code == cli::kUsage);
    CHECK(invoke({"ball", "--radius", "2"}).code == cli::kUsage);
    const Run r = invoke({"ball", "--group", "z2", "--radius", "x"});
    CHECK(r.code == cli::kUsage);
    CHECK_FALSE(r.err.empty());
  }
  SUBCASE("help is not an error") { CHECK(invoke({"--help"}).code == 0); }
  SUBCASE("mathematical negatives") {
    const Run r = invoke({"fill", "--group", "z2", "--word", "a b"});
    CHECK(r.code == cli::kNegative);
    CHECK(r.out.empty());
    CHECK(invoke({"fill", "--group", "z2", "--radius", "1", "--word", "a a b a^-1 a^-1 b^-1"}).code == cli::kNegative);
  }
  SUBCASE("infeasible is a successful answer") {
    const Run r = invoke({"complex-primitive", "--complex", "octahedron", "--seed", "3", "--bound", "0"});
    CHECK(r.code == 0);
    const json j = json::parse(r.out);
    CHECK(j["status"] == "Infeasible");
    CHECK(j["farkas_verified"] == true);
  }
  SUBCASE("budget") {
    const Run r = invoke({"cof", "--group", "z2", "--radius", "3", "--n", "6", "--budget", "10"});
    CHECK(r.code == cli::kBudget);
  }
}

TEST_CASE("presentation files, stdin-free oracles, and output files") {
  const auto dir = scratch_dir();
  write(dir / "z2.txt", "gens a b\nrels a b a^-1 b^-1\n");
  const Run r = invoke({"fill", "--presentation", (dir / "z2.txt").string(), "--radius", "4", "--word", "a a b a^-1 a^-1 b^-1"});
  REQUIRE(r.code == 0);
  CHECK(json::parse(r.out)["value"] == "2");

  // Z/3 as <a | a^3> with an explicit table.
  write(dir / "z3.txt", "gens a\nrels a a a\n");
  write(dir / "z3.json", R"({"table":[[0,1,2],[1,2,0],[2,0,1]],"images":[1]})");
  const Run t = invoke({"ball", "--presentation", (dir / "z3.txt").string(), "--oracle", "table", "--table",
                     (dir / "z3.json").string(), "--radius", "2"});
  REQUIRE(t.code == 0);
  CHECK(json::parse(t.out)["vertices"] == 3);
  CHECK(invoke({"ball", "--presentation", (dir / "z3.txt").string(), "--oracle", "table"}).code == cli::kUsage);
  CHECK(invoke({"ball", "--presentation", (dir / "missing.txt").string()}).code == cli::kUsage);

  const auto out = dir / "ball.csv";
  const Run o = invoke({"ball", "--group", "z2", "--radius", "2", "--format", "csv", "--output", out.string()});
  REQUIRE(o.code == 0);
  CHECK(o.out.empty());
  CHECK(slurp(out) == "radius,vertices,edges,cells\n2,13,16,4\n");
  std::filesystem::remove_all(dir);
}

TEST_CASE("manifests replay byte for byte") {
  const auto dir = scratch_dir();
  const std::vector<std::vector<std::string>> runs{
      {"fill", "--group", "z2", "--radius", "4", "--word", "a a b a^-1 a^-1 b^-1", "--int"},
      {"dual-check", "--group", "z2", "--radius", "3", "--word", "a b a^-1 b^-1"},
      {"cof", "--group", "z2", "--radius", "3", "--n", "4,6", "--format", "json"},
      {"dehn", "--group", "free2", "--n", "1..4"},
      {"thm4", "--group", "z2", "--radius", "3", "--seed", "11"},
      {"primitive", "--group", "z2", "--radius", "2", "--seed", "2"},
      {"check-ii", "--group", "heisenberg", "--radius", "2", "--seed", "4", "--max-len", "4"},
      {"complex-primitive", "--complex", "octahedron", "--seed", "9"},
      {"ball", "--group", "surface2", "--radius", "2", "--full"}};
  int k = 0;
  for (auto args : runs) {
    CAPTURE(args[0]);
    const auto manifest = dir / ("m" + std::to_string(k++) + ".json");
    args.push_back("--manifest");
    args.push_back(manifest.string());
    const Run first = invoke(args);
    REQUIRE(first.code == 0);
    check_exact(json::parse(first.out.rfind('{', 0) == 0 ? first.out : "{}"));
    const json m = json::parse(slurp(manifest));
    CHECK(m["command"] == args[0]);
    CHECK(m["version"] == cli::kVersion);
    CHECK(m.contains("wall_time_ms"));
    CHECK(m.contains("presentation_hash"));
    CHECK(m["argv"].size() + 2 == args.size());
    const Run again = invoke({"replay", manifest.string()});
    CHECK(again.code == 0);
    CHECK(again.out == first.out);
  }

  // Editing the presentation file invalidates the manifest.
  write(dir / "p.txt", "gens a b\nrels a b a^-1 b^-1\n");
  const auto manifest = dir / "p.json";
  REQUIRE(invoke({"ball", "--presentation", (dir / "p.txt").string(), "--manifest", manifest.string()}).code == 0);
  CHECK(invoke({"replay", manifest.string()}).code == 0);
  write(dir / "p.txt", "gens a b\nrels\n");
  CHECK(invoke({"replay", manifest.string()}).code == cli::kNegative);
  std::filesystem::remove_all(dir);
}

TEST_CASE("seeded generators are deterministic") {
  const GroupSpec z2 = builtin_group("z2");
  const CayleyBall b = build_ball(z2.presentation, z2.oracle, 3);
  const auto x = cli::random_thm4_instance(b, 17);
  const auto y = cli::random_thm4_instance(b, 17);
  const auto z = cli::random_thm4_instance(b, 18);
  CHECK(x.cd.alpha0.values == y.cd.alpha0.values);
  CHECK(x.cd.alpha0.values != z.cd.alpha0.values);
  REQUIRE(x.F.values.size() == static_cast<std::size_t>(b.num_vertices()));
  for (const Bound& f : x.F.values) {
    if (!f.is_infinite()) CHECK(*f.value >= 0);
  }

  const FiniteComplex oct = octahedron();
  const auto e = cli::random_exact_cochain(oct, 2, 5);
  CHECK(e.u == coboundary(oct, 2, e.witness));
  for (const auto& t : e.witness) CHECK(abs_value(t) <= e.sup);
  CHECK(cli::random_exact_cochain(oct, 2, 5).u == e.u);
  CHECK_THROWS(cli::random_exact_cochain(oct, 3, 5));

  CHECK(cli::presentation_hash(z2) == cli::presentation_hash(builtin_group("z2")));
  CHECK(cli::presentation_hash(z2) != cli::presentation_hash(builtin_group("free2")));
}
