#include <doctest.h>

#include <random>
#include <set>

#include "cm_support.hpp"
#include "omega/errors.hpp"
#include "omega/io.hpp"
#include "omega/machine_index.hpp"

using namespace omega;
using namespace omega::testing;

namespace {

/// Same states in the same order, same flags and the same set of moves.
bool same_structure(const CounterMachine& a, const CounterMachine& b) {
  return canonical_machine_text(a) == canonical_machine_text(b);
}

}  // namespace

TEST_CASE("index roundtrip on random machines") {
  std::mt19937 rng(3);
  for (int i = 0; i < 50; ++i) {
    auto m = random_machine(rng, 1 + rng() % 4, alphabets::kOmega, false);
    auto back = index_decode(index_encode(m));
    CHECK(same_structure(m, back));
    CHECK(back.num_states() == m.num_states());
    CHECK(back.alphabet() == m.alphabet());
  }
}

TEST_CASE("index_decode(0) is the one-state empty machine") {
  auto m = index_decode(0);
  CHECK(m.num_states() == 1);
  CHECK(m.transitions().empty());
  CHECK_FALSE(m.accepting(0));
  CHECK(m.alphabet().letters() == alphabets::kOmega);
  // garbage decodes to the same machine
  CHECK(same_structure(index_decode(123456789), m));
  CHECK(index_encode(m) > 0);
}

TEST_CASE("index_encode is injective on distinct machines") {
  std::mt19937 rng(4);
  std::set<std::string> texts;
  std::set<BigNat> indices;
  while (texts.size() < 500) {
    auto m = random_machine(rng, 1 + rng() % 3, "01", false);
    if (texts.insert(canonical_machine_text(m)).second) indices.insert(index_encode(m));
  }
  CHECK(indices.size() == 500);
}

TEST_CASE("only real-time one-counter machines are numbered") {
  CHECK_THROWS_AS(index_encode(universal_machine("01", 2)), Error);
  CounterMachine lam(Alphabet("01"), 1, false);
  int q = lam.add_state("q");
  lam.add_transition(move(q, 0, 0, q, 0));
  try {
    index_encode(lam);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotIndexable);
  }
}

TEST_CASE("machine documents roundtrip") {
  auto m = balanced_machine();
  auto doc = io::to_json(m);
  CHECK(doc["kind"] == "cm");
  auto back = io::cm_from_json(doc);
  CHECK(io::to_json(back) == doc);
  auto text = doc.dump();
  CHECK(io::to_json(io::cm_from_json(io::parse(text))).dump() == text);
  CHECK_THROWS_AS(io::parse("{\"kind\": "), Error);
  auto bad = doc;
  bad["transitions"][0]["from"] = "nowhere";
  try {
    io::cm_from_json(bad);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("/transitions/0/from") != std::string::npos);
  }
}
