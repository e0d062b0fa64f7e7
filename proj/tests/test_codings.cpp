#include <doctest.h>

#include <random>
#include <set>

#include "cm_support.hpp"
#include "omega/block_layout.hpp"
#include "omega/codings.hpp"
#include "omega/errors.hpp"
#include "omega/one_counter.hpp"
#include "support.hpp"

using namespace omega;

namespace {

LassoWord L(const std::string& u, const std::string& v) { return canonicalize_lasso(u, v); }
IndexedWord W(const std::string& u, const std::string& v) { return IndexedWord::lasso(L(u, v)); }

CodingParams small() {
  CodingParams p;
  p.S = 2;
  p.K = 3;
  return p;
}

std::vector<CodingParams> param_sets() {
  std::vector<CodingParams> sets{small(), small(), small()};
  sets[1].S = 1;
  sets[1].K = 1;
  sets[2].S = 3;
  sets[2].K = 2;
  return sets;
}

constexpr Coding kAll[] = {Coding::Theta, Coding::HK, Coding::PhiK, Coding::H};

LassoWord random_lasso(std::mt19937& rng, const Alphabet& a, std::size_t max_stem = 3, std::size_t max_loop = 3) {
  std::string u, v;
  for (std::size_t i = rng() % (max_stem + 1); i > 0; --i) u.push_back(a[rng() % a.size()]);
  for (std::size_t i = 1 + rng() % max_loop; i > 0; --i) v.push_back(a[rng() % a.size()]);
  return L(u, v);
}

}  // namespace

TEST_CASE("coding parameters") {
  auto p = CodingParams::primorial();
  CHECK(p.k() == 4);
  CHECK(p.S == 1728);
  CHECK(p.K == 9699690);
  CHECK(CodingParams::kPrimorialK == 2ull * 3 * 5 * 7 * 11 * 13 * 17 * 19);
  CHECK(p.input(Coding::Theta).letters() == "01");
  CHECK(p.output(Coding::Theta).letters() == "01E");
  CHECK(p.output(Coding::HK).letters() == "01EABC");
  CHECK(p.output(Coding::PhiK).letters() == "01EABCF");
  CHECK(p.output(Coding::H).letters() == "01EABCFD");
}

TEST_CASE("encode examples") {
  auto p = small();
  CHECK(encode(Coding::PhiK, p, W("", "0")) == W("", "FF0"));
  CHECK(encode(Coding::H, p, W("", "1")).prefix(7) == "D01D001");
  CHECK(encode(Coding::Theta, p, W("", "0")).prefix(8) == "0EE0EEEE");
  CHECK_THROWS_AS(encode(Coding::Theta, p, W("", "E")), Error);
  CHECK_NOTHROW(encode(Coding::HK, p, W("", "E")));
}

TEST_CASE("source positions follow the layout") {
  for (Coding c : kAll) {
    for (std::uint64_t param : {1ull, 2ull, 3ull}) {
      if (c == Coding::H && param > 1) continue;
      for (std::uint64_t n = 1; n <= 6; ++n) {
        auto pos = source_position(c, c == Coding::H ? 0 : param, n);
        auto slot = coding_slot(c, c == Coding::H ? 0 : param, pos);
        CHECK(slot.kind == Slot::Kind::Source);
        CHECK(slot.source_index == n);
      }
    }
  }
  CHECK(source_position(Coding::Theta, 2, 2) == 4);
  CHECK(source_position(Coding::HK, 2, 1) == 4);
  CHECK(source_position(Coding::HK, 2, 2) == 5 + 4 + 1 + 4 + 1);
}

TEST_CASE("decode examples") {
  auto p = small();
  auto d = decode(Coding::H, p, W("", "0"));
  REQUIRE(d.deviates());
  CHECK(d.position == 1);
  CHECK(d.reason() == "EXPECTED_D");

  d = decode(Coding::Theta, p, W("0EE", "0EEE"));
  REQUIRE(d.deviates());
  CHECK(d.position == 8);
  CHECK(d.reason() == "EXPECTED_E");

  d = decode(Coding::Theta, p, W("", "E"));
  REQUIRE(d.deviates());
  CHECK(d.position == 1);
  CHECK(d.reason() == "EXPECTED_SOURCE");

  d = decode(Coding::PhiK, p, W("FF1", "FF0"));
  REQUIRE(d.in_image());
  CHECK(*d.preimage == W("1", "0"));
  CHECK(decode(Coding::PhiK, p, W("", "FF0F")).position == 6);

  CHECK(d.to_string() == "IN_IMAGE(lasso:1|0)");
}

TEST_CASE("roundtrip on lasso words") {
  std::mt19937 rng(3);
  for (Coding c : kAll) {
    for (std::uint64_t param : {2ull, 3ull}) {
      auto p = small();
      p.S = p.K = param;
      for (int i = 0; i < 20; ++i) {
        auto x = IndexedWord::lasso(random_lasso(rng, p.input(c)));
        auto d = decode(c, p, encode(c, p, x));
        REQUIRE(d.in_image());
        CHECK(*d.preimage == x);
      }
    }
  }
}

TEST_CASE("decode of coded descriptors scans for deviations") {
  auto p = small();
  auto theta = encode(Coding::Theta, p, W("", "01"));
  auto d = decode(Coding::Theta, 3, p.input(Coding::Theta), theta);
  REQUIRE(d.deviates());
  CHECK(d.position == 4);
  CHECK(decode(Coding::H, p, IndexedWord::alpha()).deviates());
  CHECK(decode(Coding::H, p, IndexedWord::alpha()).position == 3);
  // same shape as an image for more than the scan window
  auto like = IndexedWord::phik(1, IndexedWord::theta(2, W("", "0")));
  CHECK(decode(Coding::Theta, 2, Alphabet("01"), like, 8).status == DecodeResult::Status::Undetermined);
}

TEST_CASE("injectivity on small lassos") {
  auto p = small();
  for (Coding c : kAll) {
    auto words = all_canonical_lassos(Alphabet(c == Coding::Theta ? "01" : "0E"), 4);
    for (std::size_t i = 0; i < words.size(); ++i) {
      auto a = encode(c, p, IndexedWord::lasso(words[i]));
      for (std::size_t j = i + 1; j < words.size(); ++j) {
        std::size_t first = 1;
        while (words[i].letter_at(first) == words[j].letter_at(first)) ++first;
        auto b = encode(c, p, IndexedWord::lasso(words[j]));
        auto pos = source_position(c, p.param(c), first);
        REQUIRE(a.letter_at(pos) != b.letter_at(pos));
        REQUIRE(a.prefix(static_cast<std::size_t>(pos) - 1) == b.prefix(static_cast<std::size_t>(pos) - 1));
      }
    }
  }
}

TEST_CASE("phi_K recognizer") {
  auto p = small();
  auto r = complement_recognizer(Coding::PhiK, p);
  REQUIRE(std::holds_alternative<NBA>(r));
  CHECK(recognizer_accepts(r, L("", "000")));
  for (const auto& x : all_canonical_lassos(p.input(Coding::PhiK), 3))
    CHECK_FALSE(recognizer_accepts(r, *encode(Coding::PhiK, p, IndexedWord::lasso(x)).to_lasso()));
}

TEST_CASE("theta recognizer") {
  auto p = small();
  auto r = complement_recognizer(Coding::Theta, p);
  REQUIRE(std::holds_alternative<CounterMachine>(r));
  const auto& m = std::get<CounterMachine>(r);
  CHECK(m.real_time());
  CHECK(m.k() == 1);
  CHECK(validate_machine(m).empty());
  CHECK(recognizer_accepts(r, L("", "E")));
}

TEST_CASE("recognizers accept exactly the deviating lasso words") {
  for (const auto& p : param_sets())
  for (Coding c : kAll) {
    auto r = complement_recognizer(c, p);
    if (auto m = std::get_if<CounterMachine>(&r)) CHECK(validate_machine(*m).empty());
    std::size_t bound = 4;
    int in_image = 0;
    for (const auto& w : all_canonical_lassos(p.output(c), bound)) {
      bool dev = decode(c, p, IndexedWord::lasso(w)).deviates();
      in_image += !dev;
      REQUIRE_MESSAGE(recognizer_accepts(r, w) == dev, to_string(c), " ", w.to_string());
    }
    CAPTURE(to_string(c));
    CAPTURE(p.S);
    CHECK((in_image > 0) == (c == Coding::PhiK || (c == Coding::Theta && p.S == 1)));
  }
}

TEST_CASE("recognizers on image prefixes with arbitrary tails") {
  std::mt19937 rng(17);
  for (const auto& p : param_sets())
  for (Coding c : kAll) {
    auto r = complement_recognizer(c, p);
    const Alphabet out = p.output(c);
    for (int i = 0; i < 150; ++i) {
      auto x = IndexedWord::lasso(random_lasso(rng, p.input(c)));
      std::string stem = encode(c, p, x).prefix(rng() % 60);
      auto tail = random_lasso(rng, out, 0, 3);
      auto w = L(stem, tail.loop());
      REQUIRE_MESSAGE(recognizer_accepts(r, w) == decode(c, p, IndexedWord::lasso(w)).deviates(), w.to_string());
    }
  }
}

TEST_CASE("length checks of the counter recognizers") {
  // words that follow the block grammar for a while and then break one length rule
  auto p = small();
  auto theta = complement_recognizer(Coding::Theta, p);
  CHECK(oca_up_membership(std::get<CounterMachine>(theta), L("0EE0EEE", "E")));
  CHECK(oca_up_membership(std::get<CounterMachine>(theta), L("0EE0EEE1", "E")));
  auto h = complement_recognizer(Coding::H, p);
  CHECK(oca_up_membership(std::get<CounterMachine>(h), L("D01D0001", "D")));
  auto hk = complement_recognizer(Coding::HK, p);
  CHECK(oca_up_membership(std::get<CounterMachine>(hk), L("ACCC0B", "C")));
  CHECK(oca_up_membership(std::get<CounterMachine>(hk), L("ACCC0BCCCCCCCCCACCCCCCCCC1B", "A")));
  CHECK(oca_up_membership(std::get<CounterMachine>(hk), L("ACCC0BCCCCCCCCCACCCCCCCC1B", "A")));
}

TEST_CASE("recognizer size guard") {
  auto p = CodingParams::primorial();
  CHECK_THROWS_AS(complement_recognizer(Coding::HK, p), Error);
  CHECK_NOTHROW(complement_recognizer(Coding::Theta, p));
}

TEST_CASE("expr_membership") {
  auto p = small();
  auto universal = LanguageExpr::leaf(universal_nba(Alphabet("01")));
  for (const auto& w : all_canonical_lassos(Alphabet("01"), 3))
    CHECK(expr_membership(universal, IndexedWord::lasso(w)) == Membership::In);
  CHECK(expr_membership(LanguageExpr::image(Coding::Theta, 2, universal), W("", "0")) == Membership::Out);
  CHECK(expr_membership(LanguageExpr::image(Coding::Theta, 2, universal), encode(Coding::Theta, p, W("", "0"))) ==
        Membership::In);

  auto inf_ones = testing::nba_corpus()[0].nba;
  for (const auto& e : testing::nba_corpus())
    if (e.name == "infinitely many 1s") inf_ones = e.nba;
  auto leaf = LanguageExpr::leaf(inf_ones);
  auto all = LanguageExpr::union_of(leaf, LanguageExpr::complement_of(leaf));
  std::mt19937 rng(8);
  for (int i = 0; i < 20; ++i)
    CHECK(expr_membership(all, IndexedWord::lasso(random_lasso(rng, Alphabet("01")))) == Membership::In);

  // a two-counter leaf is only certified by an accepting run
  auto counting = [](bool accepting) {
    CounterMachine m(Alphabet("01"), 2);
    int q = m.add_state("q", accepting);
    for (int t : {0, 1}) m.add_transition({q, '0', {t, 0}, q, {1, 0}});
    return LanguageExpr::leaf(m);
  };
  CHECK(expr_membership(counting(false), W("", "0")) == Membership::Unknown);
  CHECK(expr_membership(LanguageExpr::complement_of(counting(false)), W("", "0")) == Membership::Unknown);
  CHECK(expr_membership(counting(true), W("", "0")) == Membership::In);
  CHECK(expr_membership(counting(true), W("", "1")) == Membership::Unknown);
}

TEST_CASE("pipeline") {
  auto p = small();
  auto universal = testing::universal_machine("01", 2);
  auto pipe = pipeline(universal, p);
  CHECK(pipe.stage_exprs.size() == 3);
  std::mt19937 rng(4);
  for (int i = 0; i < 10; ++i) {
    auto w = encode_chain(p, IndexedWord::lasso(random_lasso(rng, Alphabet("01"))));
    CHECK(expr_membership(pipe.final_complement_expr, w) == Membership::Out);
    CHECK(expr_membership(pipe.final_expr, w) == Membership::In);
  }
  CHECK(expr_membership(pipe.final_expr, W("", "A")) == Membership::In);

  // counter-ignoring machine for infinitely many 1s
  CounterMachine ones(Alphabet("01"), 2);
  int q = ones.add_state("q"), r = ones.add_state("r", true);
  for (int from : {q, r}) {
    ones.add_transition({from, '0', {0, 0}, q, {0, 0}});
    ones.add_transition({from, '1', {0, 0}, r, {0, 0}});
  }
  auto pipe1 = pipeline(ones, p);
  CHECK(expr_membership(pipe1.final_complement_expr, encode_chain(p, W("", "0"))) == Membership::In);
  CHECK(expr_membership(pipe1.final_complement_expr, encode_chain(p, W("", "01"))) == Membership::Out);
  CHECK(expr_membership(pipe1.final_expr, encode_chain(p, W("", "0"))) == Membership::Out);

  CHECK_THROWS_AS(pipeline(testing::universal_machine("01", 1), p), Error);
}
