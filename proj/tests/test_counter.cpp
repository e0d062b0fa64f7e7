#include <doctest.h>

#include <random>

#include "cm_support.hpp"
#include "omega/errors.hpp"
#include "omega/one_counter.hpp"
#include "omega/run_search.hpp"

using namespace omega;
using namespace omega::testing;

namespace {

LassoWord L(const std::string& u, const std::string& v) { return canonicalize_lasso(u, v); }
IndexedWord W(const std::string& u, const std::string& v) { return IndexedWord::lasso(L(u, v)); }

}  // namespace

TEST_CASE("validate_machine") {
  CounterMachine m(Alphabet("01"), 1, true);
  int q = m.add_state("q"), r = m.add_state("r");
  m.add_transition(move(q, '0', 0, r, -1));
  auto v = validate_machine(m);
  REQUIRE(v.size() == 1);
  CHECK(to_string(v[0].kind) == "DECREMENT_ON_ZERO");

  CounterMachine l(Alphabet("01"), 1, true);
  q = l.add_state("q");
  l.add_transition(move(q, 0, 0, q, 0));
  v = validate_machine(l);
  REQUIRE(v.size() == 1);
  CHECK(to_string(v[0].kind) == "LAMBDA_IN_REALTIME");

  CHECK(validate_machine(balanced_machine()).empty());
  CHECK_THROWS_AS(m.add_transition({q, '0', {0, 0}, q, {0, 0}}), Error);
  CHECK_THROWS_AS(m.add_transition(move(q, '7', 0, q, 0)), Error);
}

TEST_CASE("successors") {
  CounterMachine m(Alphabet("01"), 1);
  int q = m.add_state("q"), r = m.add_state("r");
  m.add_transition(move(q, '0', 1, r, 0));
  CHECK(successors(m, {q, {0}}, '0').empty());
  m.add_transition(move(q, '0', 0, r, 1));
  CHECK(successors(m, {q, {0}}, '0') == std::vector<Configuration>{{r, {1}}});
  m.add_transition(move(q, '0', 0, q, 0));
  CHECK(successors(m, {q, {0}}, '0') == std::vector<Configuration>{{q, {0}}, {r, {1}}});
  CHECK(successors(m, {q, {3}}, '0') == std::vector<Configuration>{{r, {3}}});
  CHECK(successors(m, {q, {0}}, std::nullopt).empty());
}

TEST_CASE("guards hold on random walks") {
  std::mt19937 rng(11);
  for (int walk = 0; walk < 10'000; ++walk) {
    auto m = random_machine(rng, 1 + rng() % 4, "01", true);
    Configuration c = initial_configuration(m);
    for (int step = 0; step < 20; ++step) {
      std::vector<std::pair<std::size_t, Configuration>> options;
      for (auto i : m.outgoing(c.state))
        if (enabled(m.transitions()[i], c)) options.emplace_back(i, apply(m.transitions()[i], c));
      if (options.empty()) break;
      auto [i, next] = options[rng() % options.size()];
      const auto& t = m.transitions()[i];
      REQUIRE((c.counters[0] == 0) == (t.tests[0] == 0));
      REQUIRE(next.counters[0] + 1 >= 1);  // unsigned; a negative step would wrap around
      REQUIRE(next.counters[0] <= c.counters[0] + 1);
      c = next;
    }
  }
}

TEST_CASE("bounded_run_search") {
  auto m = balanced_machine();
  auto r = bounded_run_search(m, W("0011", "2"));
  REQUIRE(r.accepted());
  CHECK(r.certificate->verify(m, L("0011", "2")));
  CHECK(r.certificate->stem_letters.substr(0, 4) == "0011");
  CHECK_FALSE(bounded_run_search(m, W("001", "2")).accepted());
  CHECK_FALSE(bounded_run_search(m, W("001", "2"), {1'000'000, 10'000}).accepted());

  auto g = growing_machine();
  auto pumped = bounded_run_search(g, W("", "0"));
  REQUIRE(pumped.accepted());
  CHECK(pumped.certificate->verify(g, L("", "0")));

  // non-lasso descriptors have no admissible certificate
  CHECK_FALSE(bounded_run_search(universal_machine("01"), IndexedWord::theta(2, W("", "0"))).accepted());
}

TEST_CASE("runs that stop reading are not accepting") {
  CounterMachine m(Alphabet("01"), 1, false);
  int q = m.add_state("q", true);
  m.add_transition(move(q, 0, 0, q, 0));
  CHECK_FALSE(bounded_run_search(m, W("", "0")).accepted());
  CHECK_FALSE(oca_up_membership(m, L("", "0")));
}

TEST_CASE("oca_up_membership examples") {
  auto all = universal_machine("01");
  for (const auto& w : all_canonical_lassos(Alphabet("01"), 3)) CHECK(oca_up_membership(all, w));
  auto m = balanced_machine();
  CHECK(oca_up_membership(m, L("0011", "2")));
  CHECK(oca_up_membership(m, L("", "2")));
  CHECK_FALSE(oca_up_membership(m, L("011", "2")));
  CHECK_FALSE(oca_up_membership(m, L("001", "2")));
  CHECK_FALSE(oca_up_membership(m, L("", "0")));

  auto g = growing_machine();
  auto cert = oca_up_witness(g, L("", "0"));
  REQUIRE(cert);
  CHECK(cert->verify(g, L("", "0")));
  CHECK(cert->loop_letters.size() >= 1);

  CounterMachine two(Alphabet("01"), 2);
  two.add_state("q", true);
  CHECK_THROWS_AS(oca_up_membership(two, L("", "0")), Error);
}

TEST_CASE("witness needs a counter that grows forever") {
  // reads 0 with +1, then 1s with -1 must not exceed the stock: 0^ω accepted, 0^n 1^ω not
  CounterMachine m(Alphabet("01"), 1);
  int up = m.add_state("up", true), down = m.add_state("down", true);
  m.add_transition(move(up, '0', 0, up, 1));
  m.add_transition(move(up, '0', 1, up, 1));
  m.add_transition(move(up, '1', 1, down, -1));
  m.add_transition(move(down, '1', 1, down, -1));
  CHECK(oca_up_membership(m, L("", "0")));
  CHECK_FALSE(oca_up_membership(m, L("000", "1")));
  // alternating 0 and 1 keeps the counter bounded but positive
  CHECK_FALSE(oca_up_membership(m, L("", "01")));
  CHECK_FALSE(oca_up_membership(m, L("00", "01")));
}

TEST_CASE("machine_union") {
  auto a = only_letter("01", '0'), b = only_letter("01", '1');
  auto u = machine_union(a, b);
  CHECK(u.real_time());
  CHECK(oca_up_membership(u, L("", "0")));
  CHECK(oca_up_membership(u, L("", "1")));
  CHECK_FALSE(oca_up_membership(u, L("", "01")));

  auto g = growing_machine();
  auto same = machine_union(g, empty_machine("01"));
  for (const auto& w : all_canonical_lassos(Alphabet("01"), 4)) CHECK(oca_up_membership(same, w) == oca_up_membership(g, w));

  CounterMachine lam(Alphabet("01"), 1, false);
  lam.add_state("q");
  CHECK_FALSE(machine_union(a, lam).real_time());
  CHECK_THROWS_AS(machine_union(a, universal_machine("01", 2)), Error);
}

TEST_CASE("union law on random machines") {
  std::mt19937 rng(5);
  auto words = all_canonical_lassos(Alphabet("01"), 4);
  for (int trial = 0; trial < 40; ++trial) {
    auto a = random_machine(rng, 1 + rng() % 3, "01", false);
    auto b = random_machine(rng, 1 + rng() % 3, "01", false);
    auto u = machine_union(a, b);
    for (const auto& w : words) REQUIRE(oca_up_membership(u, w) == (oca_up_membership(a, w) || oca_up_membership(b, w)));
  }
}

TEST_CASE("as_nba agrees with the machine") {
  std::mt19937 rng(9);
  auto words = all_canonical_lassos(Alphabet("01"), 4);
  for (int trial = 0; trial < 40; ++trial) {
    CounterMachine m(Alphabet("01"), 1, false);
    int n = 1 + rng() % 4;
    for (int q = 0; q < n; ++q) m.add_state("q" + std::to_string(q), rng() % 3 == 0);
    for (int i = 0; i < 2 * n + 2; ++i)
      m.add_transition(move(rng() % n, rng() % 5 == 0 ? 0 : "01"[rng() % 2], rng() % 4 == 0, rng() % n, 0));
    auto nba = as_nba(m);
    for (const auto& w : words) REQUIRE(nba_membership(nba, w) == oca_up_membership(m, w));
  }
  CHECK_THROWS_AS(as_nba(growing_machine()), Error);
}

TEST_CASE("engine agrees with bounded search on random machines") {
  std::mt19937 rng(2024);
  int pairs = 0, accepted = 0;
  for (int trial = 0; trial < 300; ++trial) {
    auto m = random_machine(rng, 1 + rng() % 4, "01", trial % 3 == 0);
    std::string u, v;
    for (int i = rng() % 3; i > 0; --i) u.push_back("01"[rng() % 2]);
    for (int i = 1 + rng() % 3; i > 0; --i) v.push_back("01"[rng() % 2]);
    auto w = L(u, v);
    bool exact = oca_up_membership(m, w);
    auto search = bounded_run_search(m, IndexedWord::lasso(w), {20'000, 200});
    ++pairs;
    if (search.accepted()) {
      ++accepted;
      REQUIRE(search.certificate->verify(m, w));
      REQUIRE(exact);
    }
    if (exact) {
      auto cert = oca_up_witness(m, w);
      REQUIRE(cert);
      REQUIRE(cert->verify(m, w));
    }
  }
  CHECK(pairs >= 200);
  CHECK(accepted > 20);
}

TEST_CASE("trace follows a deterministic machine") {
  auto m = balanced_machine();
  auto steps = trace(m, W("0011", "2"), 6);
  REQUIRE(steps.size() == 7);
  CHECK(steps[2].config == Configuration{0, {2}});
  CHECK(steps[4].config == Configuration{1, {0}});
  CHECK(steps[6].config.state == 2);
  CHECK(steps[6].consumed == 6);
  CHECK(trace(m, W("1", "2"), 5).size() == 1);
}
