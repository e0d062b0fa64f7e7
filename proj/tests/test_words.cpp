#include <doctest.h>

#include <random>
#include <set>

#include "omega/block_layout.hpp"
#include "omega/errors.hpp"
#include "omega/words.hpp"
#include "support.hpp"

using namespace omega;
using omega::testing::expand;

TEST_CASE("alphabet validation") {
  CHECK_THROWS_AS(Alphabet(""), Error);
  CHECK_THROWS_AS(Alphabet("00"), Error);
  Alphabet a("01E");
  CHECK(a.index_of('E') == 2);
  CHECK(a.index_of('x') == -1);
  CHECK(a.united("EA").letters() == "01EA");
  CHECK(Alphabet::of_word("1001").letters() == "01");
}

TEST_CASE("canonicalize_lasso examples") {
  auto w = canonicalize_lasso("", "00");
  CHECK(w.stem() == "");
  CHECK(w.loop() == "0");
  w = canonicalize_lasso("1", "1");
  CHECK(w.stem() == "");
  CHECK(w.loop() == "1");
  w = canonicalize_lasso("01", "10");
  CHECK(w.stem() == "01");
  CHECK(w.loop() == "10");
  w = canonicalize_lasso("0110", "10");
  CHECK(w.stem() == "01");
  CHECK(w.loop() == "10");
  CHECK_THROWS_AS(canonicalize_lasso("0", ""), Error);
  try {
    canonicalize_lasso("", "");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::EmptyLoop);
  }
}

TEST_CASE("canonicalization soundness and idempotence for all small lassos") {
  // every (u, v) over {0,1} with |u| + |v| <= 8
  for (std::size_t total = 1; total <= 8; ++total) {
    for (std::size_t lv = 1; lv <= total; ++lv) {
      std::size_t lu = total - lv;
      for (unsigned bits = 0; bits < (1u << total); ++bits) {
        std::string u, v;
        for (std::size_t i = 0; i < lu; ++i) u.push_back((bits >> i) & 1 ? '1' : '0');
        for (std::size_t i = 0; i < lv; ++i) v.push_back((bits >> (lu + i)) & 1 ? '1' : '0');
        auto w = canonicalize_lasso(u, v);
        REQUIRE(expand(w.stem(), w.loop(), 4 * total) == expand(u, v, 4 * total));
        CHECK(canonicalize_lasso(w.stem(), w.loop()) == w);
        CHECK(primitive_root_length(w.loop()) == w.loop().size());
        if (!w.stem().empty()) CHECK(w.stem().back() != w.loop().back());
      }
    }
  }
}

TEST_CASE("canonical uniqueness") {
  auto all = all_canonical_lassos(Alphabet("01"), 6);
  std::set<std::string> seen;
  for (const auto& w : all) {
    // two lassos of size <= 6 that agree on 64 letters denote the same word
    auto key = expand(w.stem(), w.loop(), 64);
    CHECK(seen.insert(key).second);
  }
}

TEST_CASE("canonical lasso count") {
  // sizes 1..4 contribute 2 + 4 + 12 + 30 (oracle: brute-force dedup of prefixes)
  auto all = all_canonical_lassos(Alphabet("01"), 4);
  CHECK(all.size() == 48);
  std::set<std::string> brute;
  for (std::size_t total = 1; total <= 4; ++total)
    for (std::size_t lv = 1; lv <= total; ++lv)
      for (unsigned bits = 0; bits < (1u << total); ++bits) {
        std::string u, v;
        for (std::size_t i = 0; i < total - lv; ++i) u.push_back((bits >> i) & 1 ? '1' : '0');
        for (std::size_t i = 0; i < lv; ++i) v.push_back((bits >> (total - lv + i)) & 1 ? '1' : '0');
        brute.insert(expand(u, v, 40));
      }
  CHECK(brute.size() == 48);
}

TEST_CASE("alpha word letters") {
  auto a = IndexedWord::alpha();
  CHECK(a.letter_at(std::size_t{1}) == 'D');
  CHECK(a.letter_at(std::size_t{2}) == '0');
  CHECK(a.letter_at(std::size_t{3}) == 'D');
  CHECK(a.letter_at(std::size_t{5}) == '0');
  CHECK(a.letter_at(std::size_t{6}) == 'D');
  CHECK(a.prefix(10) == "D0D00D000D");
  CHECK_THROWS_AS(a.letter_at(std::size_t{0}), Error);
}

TEST_CASE("h and theta letters") {
  auto h = IndexedWord::h(IndexedWord::lasso(canonicalize_lasso("", "1")));
  CHECK(h.prefix(7) == "D01D001");
  auto t = IndexedWord::theta(2, IndexedWord::lasso(canonicalize_lasso("", "01")));
  CHECK(t.prefix(9) == "0EE1EEEE0");
  auto t0 = IndexedWord::theta(2, IndexedWord::lasso(canonicalize_lasso("", "0")));
  CHECK(t0.prefix(8) == "0EE0EEEE");
}

TEST_CASE("hk and phik letters") {
  auto x = IndexedWord::lasso(canonicalize_lasso("", "01"));
  // A C^2 x1 B | C^4 A C^4 x2 B | C^8 ...
  CHECK(IndexedWord::hk(2, x).prefix(22) == "ACC0BCCCCACCCC1BCCCCCC");
  CHECK(IndexedWord::phik(3, x).prefix(9) == "FF0FF1FF0");
  auto lasso = IndexedWord::phik(3, IndexedWord::lasso(canonicalize_lasso("", "0"))).to_lasso();
  REQUIRE(lasso);
  CHECK(lasso->stem() == "");
  CHECK(lasso->loop() == "FF0");
}

TEST_CASE("pair_index is the Cantor bijection") {
  CHECK(pair_index(1, 1) == 1);
  CHECK(pair_index(1, 2) == 2);
  CHECK(pair_index(2, 1) == 3);
  std::set<BigNat> values;
  for (int s = 2; s <= 50; ++s)
    for (int i = 1; i < s; ++i) values.insert(pair_index(i, s - i));
  CHECK(values.size() == 1225);
  CHECK(*values.begin() == 1);
  CHECK(*values.rbegin() == 1225);
  for (int i = 1; i <= 100; ++i)
    for (int j = 1; j <= 100; ++j) {
      auto [a, b] = unpair(pair_index(i, j));
      REQUIRE(a == i);
      REQUIRE(b == j);
    }
}

TEST_CASE("split_tracks") {
  auto zero = IndexedWord::lasso(canonicalize_lasso("", "0"));
  for (int i = 1; i <= 5; ++i) CHECK(split_tracks(zero, i).prefix(20) == std::string(20, '0'));

  // θ_2 of 01^ω has letters at irregular positions; track 1 reads b(1, j) = j(j-1)/2 + 1
  auto sigma = IndexedWord::theta(2, IndexedWord::lasso(canonicalize_lasso("", "01")));
  for (std::uint64_t i = 1; i <= 4; ++i) {
    auto track = split_tracks(sigma, i);
    for (std::size_t j = 1; j <= 20; ++j) CHECK(track.letter_at(j) == sigma.letter_at(pair_index(i, j)));
  }

  std::mt19937 rng(7);
  for (int trial = 0; trial < 10; ++trial) {
    std::string u, v;
    for (int n = rng() % 4; n > 0; --n) u.push_back("01"[rng() % 2]);
    for (int n = 1 + rng() % 4; n > 0; --n) v.push_back("01"[rng() % 2]);
    auto s = IndexedWord::lasso(canonicalize_lasso(u, v));
    CHECK(split_tracks(s, 3).letter_at(std::size_t{1}) == s.letter_at(pair_index(3, 1)));
  }
}

TEST_CASE("letter_at is pure") {
  auto w = IndexedWord::hk(3, IndexedWord::theta(2, IndexedWord::lasso(canonicalize_lasso("1", "0"))));
  for (std::size_t n = 1; n < 200; ++n) CHECK(w.letter_at(n) == w.letter_at(n));
}

TEST_CASE("word literals roundtrip") {
  for (std::string s : {"lasso:|0", "lasso:01|10", "alpha", "h:lasso:|1", "theta[2]:lasso:0|1",
                        "hk[3]:theta[2]:lasso:|01", "phik[3]:lasso:|0", "track[2]:lasso:|01"}) {
    auto w = parse_word_literal(s);
    CHECK(parse_word_literal(w.to_string()) == w);
  }
  CHECK_THROWS_AS(parse_word_literal("lasso:0"), Error);
  CHECK_THROWS_AS(parse_word_literal("theta[x]:lasso:|0"), Error);
}

TEST_CASE("slots of the layouts") {
  auto s = coding_slot(Coding::Theta, 2, 4);
  CHECK(s.kind == Slot::Kind::Source);
  CHECK(s.source_index == 2);
  s = coding_slot(Coding::H, 0, 3);
  CHECK(s.kind == Slot::Kind::Source);
  CHECK(s.source_index == 1);
  s = coding_slot(Coding::H, 0, 4);
  CHECK(s.kind == Slot::Kind::Marker);
  CHECK(s.letter == 'D');
  CHECK(triangular_ceiling(0, 3) == 0);
  CHECK(triangular_ceiling(4, 3) == 2);
  CHECK(triangular_ceiling(5, 3) == 2);
  CHECK(triangular_ceiling(6, 3) == 3);
}
