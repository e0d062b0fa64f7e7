#include <doctest.h>

#include <filesystem>
#include <fstream>

#include <unistd.h>

#include "cli.hpp"
#include "omega/io.hpp"

using namespace omega;
using omega::cli::run;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() : path(fs::temp_directory_path() / ("omega_cli_" + std::to_string(::getpid()))) { fs::create_directories(path); }
  ~TempDir() { fs::remove_all(path); }
  std::string file(const std::string& name, const std::string& text) const {
    auto p = (path / name).string();
    std::ofstream(p) << text;
    return p;
  }
  std::string at(const std::string& name) const { return (path / name).string(); }
};

const char* kUniversal = R"({"kind":"nba","alphabet":["0","1"],"states":["q"],"initial":"q",
  "transitions":[{"from":"q","letter":"0","to":"q"},{"from":"q","letter":"1","to":"q"}],"accepting":["q"]})";

const char* kOnes = R"({"kind":"nba","alphabet":["0","1"],"states":["p","q"],"initial":"p",
  "transitions":[{"from":"p","letter":"0","to":"p"},{"from":"p","letter":"1","to":"q"},
                 {"from":"q","letter":"1","to":"q"}],"accepting":["q"]})";

const char* kEq = R"({"kind":"2tba","alphabet1":["0","1"],"alphabet2":["0","1"],"states":["q"],"initial":"q",
  "transitions":[{"from":"q","in1":"0","in2":"0","to":"q"},{"from":"q","in1":"1","in2":"1","to":"q"}],"accepting":["q"]})";

const char* kTwoCounter = R"({"kind":"cm","k":2,"alphabet":["0","1"],"states":["q"],"initial":"q","accepting":["q"],
  "real_time":true,"transitions":[{"from":"q","input":"0","tests":[0,0],"to":"q","deltas":[0,0]}]})";

const char* kOneCounter = R"({"kind":"cm","k":1,"alphabet":["0","1","A","B","C","E","F"],"states":["q"],"initial":"q",
  "accepting":["q"],"real_time":true,"transitions":[{"from":"q","input":"A","tests":[0],"to":"q","deltas":[1]},
  {"from":"q","input":"A","tests":[1],"to":"q","deltas":[1]},{"from":"q","input":"B","tests":[1],"to":"q","deltas":[-1]}]})";

const char* kTm = R"({"kind":"tm","input":["0","1"],"tape":["_","0","1"],"states":["go"],"initial":"go","accepting":["go"],
  "transitions":[{"from":"go","read":"0","to":"go","write":"_","move":"R"},{"from":"go","read":"1","to":"go","write":"_","move":"R"}]})";

std::string first_line(const std::string& s) { return s.substr(0, s.find('\n')); }

}  // namespace

TEST_CASE("documented command examples") {
  TempDir d;
  auto universal = d.file("universal.json", kUniversal);
  auto card = run({"card", "--nba", universal});
  CHECK(card.exit_code == 0);
  CHECK(first_line(card.out) == "CONTINUUM");

  auto two = d.file("two.json", kTwoCounter);
  auto pl = run({"pipeline", "--machine", two, "--out", d.at("pl"), "-K", "3"});
  REQUIRE(pl.exit_code == 0);
  auto mem = run({"member", "--expr", d.at("pl/final.json"), "--word", "lasso:|A"});
  CHECK(mem.exit_code == 0);
  CHECK(first_line(mem.out) == "IN");

  auto eq = d.file("eq.json", kEq);
  auto rc = run({"rel", "card", "--rel", eq, "--json"});
  CHECK(rc.exit_code == 1);
  CHECK(io::parse(rc.out)["countable"] == false);
}

TEST_CASE("exit codes") {
  TempDir d;
  auto ones = d.file("ones.json", kOnes);
  CHECK(run({"member", "--nba", ones, "--word", "lasso:0|1"}).exit_code == 0);
  CHECK(run({"member", "--nba", ones, "--word", "lasso:1|0"}).exit_code == 1);
  auto two = d.file("two.json", kTwoCounter);
  auto counting = d.file("counting.json", R"({"kind":"cm","k":2,"alphabet":["0","1"],"states":["q"],"initial":"q",
    "accepting":["q"],"real_time":true,"transitions":[{"from":"q","input":"0","tests":[0,0],"to":"q","deltas":[1,0]},
    {"from":"q","input":"0","tests":[1,0],"to":"q","deltas":[1,0]}]})");
  CHECK(run({"member", "--cm", two, "--word", "lasso:|1"}).exit_code == 1);
  auto unknown = run({"member", "--cm", counting, "--word", "lasso:|1", "--max-steps", "500"});
  CHECK(unknown.exit_code == 2);
  CHECK(first_line(unknown.out) == "UNKNOWN");
  CHECK(run({"empty", "--nba", ones}).exit_code == 1);
  CHECK(run({"decode", "--coding", "h", "--word", "lasso:|0"}).exit_code == 1);
  CHECK(run({"decode", "--coding", "phik", "--param", "3", "--word", "lasso:FF1|FF0"}).exit_code == 0);

  auto broken = d.file("broken.json", "{\"kind\": \"nba\", ");
  auto bad = run({"card", "--nba", broken});
  CHECK(bad.exit_code == 3);
  CHECK(bad.err.find("byte") != std::string::npos);
  auto wrong = d.file("wrong.json", R"({"kind":"nba","alphabet":["0"],"states":["q"],"initial":"r","transitions":[],"accepting":[]})");
  auto located = run({"card", "--nba", wrong});
  CHECK(located.exit_code == 3);
  CHECK(located.err.find("/initial") != std::string::npos);
  CHECK(run({"frobnicate"}).exit_code == 3);
  CHECK(run({"member", "--nba", ones}).exit_code == 3);
  CHECK(run({"encode", "--coding", "zeta", "--word", "lasso:|0"}).exit_code == 3);
}

TEST_CASE("json output is stable") {
  TempDir d;
  auto ones = d.file("ones.json", kOnes);
  auto eq = d.file("eq.json", kEq);
  for (const std::vector<std::string>& args :
       {std::vector<std::string>{"card", "--nba", ones, "--json"}, {"determinize", "--nba", ones, "--json"},
        {"rel", "project", "--rel", eq, "--tape", "2", "--json"}, {"encode", "--coding", "theta", "--param", "2", "--word", "lasso:|01", "--json"}}) {
    auto a = run(args), b = run(args);
    CHECK(a.exit_code == 0);
    CHECK(a.out == b.out);
    CHECK_NOTHROW(io::parse(a.out));
  }
}

TEST_CASE("emitted documents are accepted back") {
  TempDir d;
  auto ones = d.file("ones.json", kOnes);
  auto universal = d.file("universal.json", kUniversal);

  REQUIRE(run({"determinize", "--nba", ones, "--out", d.at("ones.dpa.json")}).exit_code == 0);
  auto card = run({"card", "--dpa", d.at("ones.dpa.json")});
  CHECK(first_line(card.out) == "ALEPH0");
  CHECK(run({"member", "--dpa", d.at("ones.dpa.json"), "--word", "lasso:|01"}).exit_code == 1);

  REQUIRE(run({"combine", "--mode", "intersection", ones, universal, "--out", d.at("both.json")}).exit_code == 0);
  CHECK(run({"member", "--nba", d.at("both.json"), "--word", "lasso:00|1"}).exit_code == 0);

  auto eq = d.file("eq.json", kEq);
  REQUIRE(run({"rel", "project", "--rel", eq, "--out", d.at("dom.json")}).exit_code == 0);
  CHECK(run({"empty", "--nba", d.at("dom.json")}).exit_code == 1);

  auto one = d.file("one.json", kOneCounter);
  REQUIRE(run({"rel", "build-r", "--machine", one, "--out", d.at("r.json")}).exit_code == 0);
  CHECK(run({"rel", "member", "--rel", d.at("r.json"), "--u", "lasso:|0", "--v", "lasso:|D0"}).exit_code == 0);
  CHECK(run({"rel", "member", "--rel", d.at("r.json"), "--u", "lasso:|0", "--v", "alpha"}).exit_code == 0);
  CHECK(run({"rel", "member", "--rel", eq, "--u", "lasso:|0", "--v", "lasso:|1"}).exit_code == 1);

  auto idx = run({"index", "encode", "--machine", one});
  REQUIRE(idx.exit_code == 0);
  REQUIRE(run({"index", "decode", "--index", first_line(idx.out), "--out", d.at("back.json")}).exit_code == 0);
  CHECK(run({"index", "encode", "--machine", d.at("back.json")}).out == idx.out);
  auto zero = run({"index", "decode", "--index", "0", "--json"});
  CHECK(io::cm_from_json(io::parse(zero.out)).num_states() == 1);

  REQUIRE(run({"recognizer", "--kind", "phik", "--param", "3", "--out", d.at("rec.json")}).exit_code == 0);
  CHECK(run({"member", "--nba", d.at("rec.json"), "--word", "lasso:|FF0F"}).exit_code == 0);
  REQUIRE(run({"recognizer", "--kind", "theta", "--param", "2", "--out", d.at("rec2.json")}).exit_code == 0);
  CHECK(run({"member", "--cm", d.at("rec2.json"), "--word", "lasso:|0"}).exit_code == 0);

  auto tm = d.file("tm.json", kTm);
  REQUIRE(run({"tm", "compile", "--tm", tm, "--out", d.at("tm2.json")}).exit_code == 0);
  REQUIRE(run({"tm", "compile", "--tm", tm, "--counters", "4", "--out", d.at("tm4.json")}).exit_code == 0);
  CHECK(run({"member", "--cm", d.at("tm4.json"), "--word", "lasso:|01"}).exit_code == 0);
  CHECK(run({"export", "dot", "--cm", d.at("tm2.json")}).out.rfind("digraph cm", 0) == 0);
  CHECK(run({"export", "dot", "--rel", eq}).out.rfind("digraph", 0) == 0);

  auto pl = run({"pipeline", "--machine", d.file("two.json", kTwoCounter), "--out", d.at("pl"), "-K", "2", "-S", "2"});
  REQUIRE(pl.exit_code == 0);
  for (const auto& entry : fs::directory_iterator(d.at("pl")))
    CHECK(run({"member", "--expr", entry.path().string(), "--word", "lasso:|F"}).exit_code != 3);
}

TEST_CASE("encode and decode agree") {
  auto enc = run({"encode", "--coding", "phik", "--param", "2", "--word", "lasso:1|0", "--prefix", "6"});
  CHECK(enc.exit_code == 0);
  CHECK(enc.out.find("F1F0F0") != std::string::npos);
  auto dec = run({"decode", "--coding", "phik", "--param", "2", "--word", "lasso:F1|F0"});
  CHECK(first_line(dec.out) == "IN_IMAGE(lasso:1|0)");
  auto dev = run({"decode", "--coding", "h", "--word", "lasso:|0", "--json"});
  auto doc = io::parse(dev.out);
  CHECK(doc["status"] == "DEVIATES");
  CHECK(doc["position"] == "1");
  CHECK(doc["reason"] == "EXPECTED_D");
}
