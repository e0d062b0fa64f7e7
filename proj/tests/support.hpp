#pragma once

#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "omega/buchi.hpp"
#include "omega/cardinality.hpp"

namespace omega::testing {

struct Edge {
  int from;
  char letter;
  int to;
};

inline NBA make_nba(const std::string& alphabet, std::vector<bool> accepting, const std::vector<Edge>& edges,
                    int initial = 0) {
  NBA a{Alphabet(alphabet)};
  for (std::size_t q = 0; q < accepting.size(); ++q) a.add_state("q" + std::to_string(q), accepting[q]);
  a.set_initial(initial);
  for (const auto& e : edges) a.add_transition(e.from, e.letter, e.to);
  return a;
}

struct CorpusEntry {
  std::string name;
  NBA nba;
  CardinalityVerdict::Class cls;
  std::optional<std::uint64_t> count;
};

/// Hand-analysed NBAs over small alphabets, at most 6 states each.
inline std::vector<CorpusEntry> nba_corpus() {
  using C = CardinalityVerdict::Class;
  std::vector<CorpusEntry> c;
  c.push_back({"no accepting state", make_nba("01", {false}, {{0, '0', 0}, {0, '1', 0}}), C::Finite, 0});
  c.push_back({"accepting state unreachable", make_nba("01", {false, true}, {{0, '0', 0}, {1, '1', 1}}), C::Finite, 0});
  c.push_back({"accepting state off every cycle", make_nba("01", {true, false}, {{0, '0', 1}, {1, '0', 1}}), C::Finite, 0});
  c.push_back({"only 0^w", make_nba("01", {true}, {{0, '0', 0}}), C::Finite, 1});
  c.push_back({"only 1^w", make_nba("01", {true}, {{0, '1', 0}}), C::Finite, 1});
  c.push_back({"only (01)^w", make_nba("01", {true, false}, {{0, '0', 1}, {1, '1', 0}}), C::Finite, 1});
  c.push_back({"0^w by two redundant paths",
               make_nba("01", {false, true, true}, {{0, '0', 1}, {0, '0', 2}, {1, '0', 1}, {2, '0', 2}}), C::Finite, 1});
  c.push_back({"0^w or 1^w", make_nba("01", {false, true, true}, {{0, '0', 1}, {0, '1', 2}, {1, '0', 1}, {2, '1', 2}}),
               C::Finite, 2});
  c.push_back({"0^w or 10^w", make_nba("01", {false, true}, {{0, '0', 1}, {0, '1', 1}, {1, '0', 1}}), C::Finite, 2});
  c.push_back({"0^w, 10^w, 110^w",
               make_nba("01", {false, false, false, true},
                        {{0, '0', 3}, {0, '1', 1}, {1, '0', 3}, {1, '1', 2}, {2, '0', 3}, {3, '0', 3}}),
               C::Finite, 3});
  c.push_back({"0^w, 1^w, (01)^w",
               make_nba("01", {false, true, true, true, false},
                        {{0, '0', 1}, {0, '1', 2}, {0, '0', 4}, {1, '0', 1}, {2, '1', 2}, {4, '1', 3}, {3, '0', 4}}),
               C::Finite, 3});
  c.push_back({"finitely many 1s",
               make_nba("01", {false, true}, {{0, '0', 0}, {0, '1', 0}, {0, '0', 1}, {1, '0', 1}}), C::Aleph0, {}});
  c.push_back({"finitely many 0s",
               make_nba("01", {false, true}, {{0, '0', 0}, {0, '1', 0}, {0, '1', 1}, {1, '1', 1}}), C::Aleph0, {}});
  c.push_back({"0*1^w", make_nba("01", {false, true}, {{0, '0', 0}, {0, '1', 1}, {1, '1', 1}}), C::Aleph0, {}});
  c.push_back({"exactly one 1", make_nba("01", {false, true}, {{0, '0', 0}, {0, '1', 1}, {1, '0', 1}}), C::Aleph0, {}});
  c.push_back({"exactly two 1s",
               make_nba("01", {false, false, true}, {{0, '0', 0}, {0, '1', 1}, {1, '0', 1}, {1, '1', 2}, {2, '0', 2}}),
               C::Aleph0, {}});
  c.push_back({"eventually (01)^w",
               make_nba("01", {false, true, false}, {{0, '0', 0}, {0, '1', 0}, {0, '0', 2}, {2, '1', 1}, {1, '0', 2}}),
               C::Aleph0, {}});
  c.push_back({"0^n (01)^w",
               make_nba("01", {false, false, true}, {{0, '0', 0}, {0, '0', 1}, {1, '1', 2}, {2, '0', 1}}), C::Aleph0, {}});
  c.push_back({"universal", make_nba("01", {true}, {{0, '0', 0}, {0, '1', 0}}), C::Continuum, {}});
  c.push_back({"infinitely many 1s",
               make_nba("01", {false, true}, {{0, '0', 0}, {0, '1', 1}, {1, '0', 0}, {1, '1', 1}}), C::Continuum, {}});
  c.push_back({"no two consecutive 1s",
               make_nba("01", {true, true}, {{0, '0', 0}, {0, '1', 1}, {1, '0', 0}}), C::Continuum, {}});
  c.push_back({"0^w or infinitely many 1s",
               make_nba("01", {false, true, false, true},
                        {{0, '0', 1}, {1, '0', 1}, {0, '0', 2}, {0, '1', 3}, {2, '0', 2}, {2, '1', 3}, {3, '0', 2}, {3, '1', 3}}),
               C::Continuum, {}});
  c.push_back({"{0,1}^w inside a ternary alphabet", make_nba("012", {true}, {{0, '0', 0}, {0, '1', 0}}), C::Continuum, {}});
  c.push_back({"(0+01)^w after a 2",
               make_nba("012", {false, true, false}, {{0, '2', 1}, {1, '0', 1}, {1, '0', 2}, {2, '1', 1}}),
               C::Continuum, {}});
  c.push_back({"infinitely many 1s and infinitely many 2s",
               make_nba("012", {false, false, true, false, false, false},
                        {{0, '0', 0}, {0, '1', 1}, {0, '2', 0},
                         {1, '0', 1}, {1, '1', 1}, {1, '2', 2},
                         {2, '0', 0}, {2, '1', 1}, {2, '2', 0}}),
               C::Continuum, {}});
  return c;
}

/// First n letters of u·v^ω.
inline std::string expand(const std::string& u, const std::string& v, std::size_t n) {
  std::string out = u;
  while (out.size() < n) out += v;
  out.resize(n);
  return out;
}

}  // namespace omega::testing
