#include <catch2/catch_amalgamated.hpp>

#include <unistd.h>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "qcyc/cli.hpp"

using namespace qcyc;
using nlohmann::json;

namespace {

struct TempFile {
  std::filesystem::path path;

  explicit TempFile(const std::string& contents) {
    static int counter = 0;
    path = std::filesystem::temp_directory_path() /
           ("qcyc_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter++) + ".json");
    std::ofstream out(path);
    out << contents;
  }
  ~TempFile() {
    std::error_code ec;
    std::filesystem::remove(path, ec);
  }
};

struct RunResult {
  int code;
  std::string out;
  std::string err;
};

RunResult run_cli(const std::vector<std::string>& args) {
  std::vector<const char*> argv{"qcyc"};
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

const char* kViolatingA1 = R"({
  "type": "A1",
  "symbols": ["a"],
  "factors": [
    {"kind": "kr", "node": 1, "m": 1, "a": "a"},
    {"kind": "kr", "node": 1, "m": 1, "a": "a*q^2"}
  ]
})";

const char* kSingleA2 = R"({
  "type": "A2",
  "symbols": ["a"],
  "factors": [{"kind": "kr", "node": 1, "m": 1, "a": "a"}]
})";

}  // namespace

TEST_CASE("check: violated pair exits 1 with the witness", "[cli]") {
  TempFile f(kViolatingA1);
  const auto res = run_cli({"check", f.path.string()});
  CHECK(res.code == 1);
  CHECK(res.out.find("main criterion: violated") != std::string::npos);
  CHECK(res.out.find("exponent: -2") != std::string::npos);
  CHECK(res.out.find("kashiwara criterion: violated") != std::string::npos);
}

TEST_CASE("check: single factor exits 0", "[cli]") {
  TempFile f(kSingleA2);
  const auto res = run_cli({"check", f.path.string()});
  CHECK(res.code == 0);
  CHECK(res.out.find("main criterion: satisfied") != std::string::npos);
}

TEST_CASE("check: input errors exit 2", "[cli]") {
  TempFile unknown_type(R"({"type": "H3", "factors": []})");
  auto res = run_cli({"check", unknown_type.path.string()});
  CHECK(res.code == 2);
  CHECK(res.err.find("error:") != std::string::npos);

  CHECK(run_cli({"check", "/nonexistent/file.json"}).code == 2);

  TempFile bad_json("{not json");
  CHECK(run_cli({"check", bad_json.path.string()}).code == 2);

  TempFile undeclared(R"({"type": "A1", "factors": [{"kind": "kr", "node": 1, "m": 1, "a": "a"}]})");
  res = run_cli({"check", undeclared.path.string()});
  CHECK(res.code == 2);
  CHECK(res.err.find("undeclared symbol") != std::string::npos);

  TempFile bad_node(R"({"type": "A1", "symbols": ["a"],
                        "factors": [{"kind": "kr", "node": 2, "m": 1, "a": "a"}]})");
  CHECK(run_cli({"check", bad_node.path.string()}).code == 2);

  TempFile bad_mult(R"({"type": "A1", "symbols": ["a"],
                        "factors": [{"kind": "tuple", "components": [[{"root": "a", "mult": 0}]]}]})");
  CHECK(run_cli({"check", bad_mult.path.string()}).code == 2);

  TempFile cap(R"({"type": "B3", "symbols": ["a"],
                   "factors": [{"kind": "kr", "node": 1, "m": 1, "a": "a"},
                               {"kind": "kr", "node": 2, "m": 1, "a": "a"}],
                   "options": {"weyl_cap": 5}})");
  res = run_cli({"check", cap.path.string()});
  CHECK(res.code == 2);
  CHECK(res.err.find("cap") != std::string::npos);
}

TEST_CASE("check: json output round-trips and the witness re-validates", "[cli]") {
  TempFile f(kViolatingA1);
  const auto res = run_cli({"check", f.path.string(), "--json"});
  CHECK(res.code == 1);
  const json j = json::parse(res.out);
  CHECK(j["type"] == "A1");
  CHECK(j["main"]["status"] == "violated");
  const auto& w = j["main"]["witness"];

  // rebuild the witness and re-check it against the Cartan data
  Witness wit;
  wit.left_factor = w["left_factor"].get<std::size_t>() - 1;
  wit.right_factor = w["right_factor"].get<std::size_t>() - 1;
  for (const auto& entry : w["word"]) wit.word.push_back(entry.get<int>() - 1);
  wit.node = w["node"].get<int>() - 1;
  wit.root = SpectralParam::parse(w["root"].get<std::string>());
  wit.string_length = w["string_m"].get<int>();
  wit.string_center = SpectralParam::parse(w["string_center"].get<std::string>());
  wit.exponent = w["exponent"].get<int>();
  CHECK(witness_checks(build_cartan(LieType::parse("A1")), wit));

  CHECK(j["kashiwara"]["status"] == "violated");
  CHECK(j["kashiwara"]["violation"]["exponent"] == -2);
}

TEST_CASE("check: flags", "[cli]") {
  TempFile f(kViolatingA1);
  const auto pairs_only = run_cli({"check", f.path.string(), "--pairs-only"});
  CHECK(pairs_only.code == 1);
  CHECK(pairs_only.out.find("kashiwara") == std::string::npos);

  const auto all = run_cli({"check", f.path.string(), "--witness-all", "--json"});
  CHECK(all.code == 1);
  const json j = json::parse(all.out);
  CHECK(j["main"]["witnesses"].size() >= 1);

  const auto capped = run_cli({"check", f.path.string(), "--weyl-cap", "1"});
  CHECK(capped.code == 2);
}

TEST_CASE("braid-orbit: word and full modes", "[cli]") {
  TempFile a2(R"({
    "type": "A2",
    "symbols": ["a"],
    "factors": [{"kind": "tuple", "components": [[{"root": "a"}], []]}]
  })");
  const auto word = run_cli({"braid-orbit", a2.path.string(), "--word", "2 1"});
  CHECK(word.code == 0);
  CHECK(word.out == "({}; {a*q^3: -1})\n");

  const auto empty_word = run_cli({"braid-orbit", a2.path.string(), "--word", ""});
  CHECK(empty_word.code == 0);
  CHECK(empty_word.out == "({a}; {})\n");

  TempFile a1(R"({"type": "A1", "symbols": ["a"],
                  "factors": [{"kind": "kr", "node": 1, "m": 1, "a": "a"}]})");
  const auto full = run_cli({"braid-orbit", a1.path.string(), "--full"});
  CHECK(full.code == 0);
  CHECK(std::count(full.out.begin(), full.out.end(), '\n') == 2);

  // exactly one of --word / --full, and exactly one factor
  CHECK(run_cli({"braid-orbit", a2.path.string()}).code == 2);
  CHECK(run_cli({"braid-orbit", a2.path.string(), "--word", "1", "--full"}).code == 2);
  CHECK(run_cli({"braid-orbit", a2.path.string(), "--word", "3"}).code == 2);
  TempFile two(kViolatingA1);
  CHECK(run_cli({"braid-orbit", two.path.string(), "--full"}).code == 2);
}

TEST_CASE("factorize command", "[cli]") {
  auto res = run_cli({"factorize", "{a*q, a*q^-1}"});
  CHECK(res.code == 0);
  CHECK(res.out == "(m=2, a)\n");

  res = run_cli({"factorize", "{a}"});
  CHECK(res.out == "(m=1, a)\n");

  res = run_cli({"factorize", "{a*q^2, a, a*q^-2, a}"});
  CHECK(res.out == "(m=3, a), (m=1, a)\n");

  res = run_cli({"factorize", "{a*q^4, a, a*q^-4}", "--d", "2"});
  CHECK(res.out == "(m=3, a)\n");

  CHECK(run_cli({"factorize", "{a: -1}"}).code == 2);
  CHECK(run_cli({"factorize", "{a", "--d", "1"}).code == 2);
  CHECK(run_cli({"factorize", "{a}", "--d", "0"}).code == 2);
}

TEST_CASE("weyl info command", "[cli]") {
  const auto res = run_cli({"weyl", "info", "A2"});
  CHECK(res.code == 0);
  CHECK(res.out.find("|W| = 6") != std::string::npos);
  CHECK(res.out.find("l(w0) = 3") != std::string::npos);
  CHECK(res.out.find("generators = 2") != std::string::npos);

  CHECK(run_cli({"weyl", "info", "H3"}).code == 2);
}

TEST_CASE("exit codes are total", "[cli]") {
  TempFile f(kSingleA2);
  for (const auto& args : std::vector<std::vector<std::string>>{
           {"check", f.path.string()},
           {"check", "/missing.json"},
           {"nonsense"},
           {"--help"},
           {"factorize", "{a}"},
           {"weyl", "info", "G2"},
       }) {
    const int code = run_cli(args).code;
    CHECK(code >= 0);
    CHECK(code <= 2);
  }
}
