#include <doctest.h>

#include "omega/errors.hpp"
#include "omega/run_search.hpp"
#include "omega/turing.hpp"
#include "tm_support.hpp"

using namespace omega;
using namespace omega::testing;

namespace {

LassoWord L(const std::string& u, const std::string& v) { return canonicalize_lasso(u, v); }

}  // namespace

TEST_CASE("tm validation") {
  auto tm = eraser(true);
  CHECK_NOTHROW(tm.validate());
  tm.tape = "_0";
  CHECK_THROWS_AS(tm.validate(), Error);
  tm = eraser(true);
  tm.delta[{0, 'Z'}] = {0, '_', true};
  CHECK_THROWS_AS(tm.validate(), Error);
}

TEST_CASE("two-stack steps") {
  auto m = tm_to_two_stack(bounce());
  TwoStackMachine::Config c{0, {}, {}};
  auto next = m.step(c, '1');
  REQUIRE(next.size() == 1);
  CHECK(next[0].second == '1');
  CHECK(next[0].first.state == 3);
  CHECK(next[0].first.right == std::vector<int>{3, 0});
  CHECK(stack_base(m) == 6);
  CHECK(encode_right(m, next[0].first.right) == 4 * 6 + 1);
  CHECK(encode_left(m, {3, 3}) == 21);
}

TEST_CASE("four-counter machine follows the two-stack machine") {
  for (const auto& tm : {bounce(), last_one()}) {
    auto c = tm_to_counter(tm);
    CHECK(validate_machine(c.four_counter).empty());
    CHECK(validate_machine(c.two_counter).empty());
    const auto& tsm = c.two_stack;
    const auto w = L("1", "011");

    std::vector<TwoStackMachine::Config> expected{{tsm.initial, {}, {}}};
    std::size_t pos = 0;
    while (expected.size() < 26) {
      auto next = tsm.step(expected.back(), w.structural_letter(pos));
      REQUIRE(next.size() == 1);
      if (next[0].second) pos = w.next_position(pos);
      expected.push_back(next[0].first);
    }

    auto steps = trace(c.four_counter, IndexedWord::lasso(w), 200'000);
    std::vector<Configuration> boundaries;
    for (const auto& s : steps)
      if (c.four_counter.name(s.config.state).rfind("step:", 0) == 0) boundaries.push_back(s.config);
    REQUIRE(boundaries.size() >= 26);
    for (std::size_t i = 0; i < 26; ++i) {
      const auto& e = expected[i];
      CHECK(c.four_counter.name(boundaries[i].state) == "step:" + tsm.states[e.state]);
      CHECK(boundaries[i].counters[0] == encode_left(tsm, e.left));
      CHECK(boundaries[i].counters[1] == encode_right(tsm, e.right));
      CHECK(boundaries[i].counters[2] == 0);
      CHECK(boundaries[i].counters[3] == 0);
    }
  }
}

TEST_CASE("two-counter machine packs the four counters") {
  auto c = tm_to_counter(last_one());
  auto steps = trace(c.two_counter, IndexedWord::lasso(L("", "01")), 5'000);
  int seen = 0;
  for (const auto& s : steps) {
    if (c.two_counter.name(s.config.state).rfind("step:", 0) != 0) continue;
    ++seen;
    CHECK(s.config.counters == std::vector<std::uint64_t>{1, 0});
  }
  CHECK(seen > 10);
}

TEST_CASE("stages agree on sample words") {
  struct Case {
    BuchiTM tm;
    bool (*expected)(const LassoWord&);
  };
  std::vector<Case> cases = {
      {eraser(true), [](const LassoWord&) { return true; }},
      {eraser(false), [](const LassoWord&) { return false; }},
      {last_one(), [](const LassoWord& w) { return w.loop().find('1') != std::string::npos; }},
  };
  for (const auto& [tm, expected] : cases) {
    auto c = tm_to_counter(tm);
    for (const auto& w : sample_words()) {
      bool want = expected(w);
      auto two_stack = two_stack_run_search(c.two_stack, w, 100'000);
      auto four = bounded_run_search(c.four_counter, IndexedWord::lasso(w));
      auto two = bounded_run_search(c.two_counter, IndexedWord::lasso(w));
      CHECK((two_stack == SearchResult::Status::Accepted) == want);
      CHECK(four.accepted() == want);
      CHECK(two.accepted() == want);
      if (four.accepted()) CHECK(four.certificate->verify(c.four_counter, w));
      if (two.accepted()) CHECK(two.certificate->verify(c.two_counter, w));
    }
  }
}

TEST_CASE("growing tapes stay unknown") {
  auto c = tm_to_counter(bounce());
  CHECK(two_stack_run_search(c.two_stack, L("", "0"), 5'000) == SearchResult::Status::Accepted);
  auto marks = bounce();
  marks.delta[{4, 'X'}] = {0, 'X', true};
  marks.delta[{5, 'X'}] = {1, 'X', true};
  auto g = tm_to_two_stack(marks);
  CHECK(two_stack_run_search(g, L("", "0"), 5'000) == SearchResult::Status::Unknown);
}
