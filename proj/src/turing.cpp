#include "omega/turing.hpp"

#include <algorithm>
#include <deque>
#include <set>

#include "cm_builder.hpp"
#include "omega/errors.hpp"
#include "omega/graph.hpp"

namespace omega {

int BuchiTM::symbol(char c) const {
  auto pos = tape.find(c);
  return pos == std::string::npos ? -1 : static_cast<int>(pos);
}

void BuchiTM::validate() const {
  if (tape.empty()) throw Error(ErrorCode::InvalidArgument, "empty tape alphabet");
  static_cast<void>(Alphabet(tape));  // distinct printable letters
  for (char a : input.letters())
    if (symbol(a) < 0) throw Error(ErrorCode::InvalidArgument, std::string("input letter '") + a + "' is not a tape symbol");
  if (input.contains(blank())) throw Error(ErrorCode::InvalidArgument, "the blank cannot be an input letter");
  if (accepting.size() != states.size()) throw Error(ErrorCode::InvalidArgument, "accepting flags do not match states");
  const int n = static_cast<int>(states.size());
  if (initial < 0 || initial >= n) throw Error(ErrorCode::InvalidArgument, "bad initial state");
  for (const auto& [key, act] : delta) {
    if (key.first < 0 || key.first >= n || act.to < 0 || act.to >= n)
      throw Error(ErrorCode::InvalidArgument, "move refers to an unknown state");
    if (symbol(key.second) < 0 || symbol(act.write) < 0)
      throw Error(ErrorCode::InvalidArgument, "move uses a letter outside the tape alphabet");
  }
}

// ------------------------------------------------------------------ two stacks

TwoStackMachine tm_to_two_stack(const BuchiTM& tm) {
  tm.validate();
  TwoStackMachine m{tm.input, tm.tape, tm.states, tm.initial, tm.accepting, {}};
  for (const auto& [key, act] : tm.delta) {
    auto [q, scanned] = key;
    TwoStackMachine::Rule base;
    base.from = q;
    base.to = act.to;
    int w = tm.symbol(act.write);
    if (act.right) {
      base.push_left = w;
    } else {
      base.push_right = w;
      base.shift_left = true;
    }
    TwoStackMachine::Rule written = base;
    written.top = tm.symbol(scanned);
    m.rules.push_back(written);
    if (tm.input.contains(scanned)) {
      TwoStackMachine::Rule fresh = base;
      fresh.top = -1;
      fresh.input = scanned;
      m.rules.push_back(fresh);
    }
  }
  return m;
}

std::vector<std::pair<TwoStackMachine::Config, char>> TwoStackMachine::step(const Config& c, char next_input) const {
  std::vector<std::pair<Config, char>> out;
  for (const auto& r : rules) {
    if (r.from != c.state) continue;
    Config n = c;
    char read = 0;
    if (r.top < 0) {
      if (!n.right.empty() || r.input != next_input) continue;
      read = next_input;
    } else {
      if (n.right.empty() || n.right.back() != r.top) continue;
      n.right.pop_back();
    }
    // blanks at the bottom of the left stack are implicit
    if (r.push_left > 0 || (r.push_left == 0 && !n.left.empty())) n.left.push_back(r.push_left);
    if (r.push_right >= 0) n.right.push_back(r.push_right);
    if (r.shift_left) {
      int x = 0;
      if (!n.left.empty()) {
        x = n.left.back();
        n.left.pop_back();
      }
      n.right.push_back(x);
    }
    n.state = r.to;
    out.emplace_back(std::move(n), read);
  }
  return out;
}

std::uint64_t stack_base(const TwoStackMachine& m) { return m.tape.size() + 2; }

BigNat encode_left(const TwoStackMachine& m, const std::vector<int>& stack) {
  BigNat n = 0;
  for (int s : stack) n = n * stack_base(m) + s;
  return n;
}

BigNat encode_right(const TwoStackMachine& m, const std::vector<int>& stack) {
  BigNat n = 0;
  for (int s : stack) n = n * stack_base(m) + (s + 1);
  return n;
}

namespace {

constexpr int kLeft = 0, kRight = 1, kScratchL = 2, kScratchR = 3;

}  // namespace

CounterMachine two_stack_to_four_counter(const TwoStackMachine& tsm) {
  CounterMachine m(tsm.input, 4, false);
  detail::Builder b(m);
  const unsigned base = static_cast<unsigned>(stack_base(tsm));
  const int n = static_cast<int>(tsm.states.size());
  for (int q = 0; q < n; ++q) b.state("step:" + tsm.states[q], tsm.accepting[q]);
  m.set_initial(b.state("step:" + tsm.states[tsm.initial]));

  for (int q = 0; q < n; ++q) {
    const std::string name = tsm.states[q];
    // pop the right stack into control
    std::vector<int> top;
    for (unsigned j = 0; j < base; ++j) top.push_back(b.state("top:" + name + ":" + std::to_string(j)));
    int div = b.state("div:" + name);
    b.step(b.state("step:" + name), div, -1, 0);
    b.divide(div, kRight, kScratchR, base, top, "div:" + name);

    for (std::size_t ri = 0; ri < tsm.rules.size(); ++ri) {
      const auto& r = tsm.rules[ri];
      if (r.from != q) continue;
      const std::string tag = "rule" + std::to_string(ri);
      const int src = top[r.top < 0 ? 0 : r.top + 1];
      int at = b.state(tag + ":restore");
      if (r.top < 0) {
        b.add(src, r.input, std::vector<int>(4, -1), at, std::vector<int>(4, 0));
      } else {
        b.step(src, at, -1, 0);
      }
      // right = quotient, or quotient * base + digit when pushing
      int next = b.state(tag + ":pushr");
      b.transfer(at, kScratchR, kRight, r.push_right >= 0 ? base : 1, next, tag + ":restore");
      at = next;
      if (r.push_right >= 0) {
        next = b.state(tag + ":pushl");
        b.add_const(at, kRight, static_cast<unsigned>(r.push_right + 1), next, tag + ":pushr");
        at = next;
      }
      if (r.push_left >= 0) {
        int moved = b.state(tag + ":pushl-back");
        b.transfer(at, kLeft, kScratchL, base, moved, tag + ":pushl");
        int back = b.state(tag + ":pushl-digit");
        b.transfer(moved, kScratchL, kLeft, 1, back, tag + ":pushl-back");
        at = b.state(tag + ":done");
        b.add_const(back, kLeft, static_cast<unsigned>(r.push_left), at, tag + ":pushl-digit");
      }
      if (r.shift_left) {
        std::vector<int> rem;
        for (unsigned j = 0; j < base; ++j) rem.push_back(b.state(tag + ":shift-rem" + std::to_string(j)));
        b.divide(at, kLeft, kScratchL, base, rem, tag + ":shift");
        for (unsigned j = 0; j < base; ++j) {
          const std::string jt = tag + ":shift" + std::to_string(j);
          int restored = b.state(jt + ":restored");
          b.transfer(rem[j], kScratchL, kLeft, 1, restored, jt + ":left");
          int spread = b.state(jt + ":spread");
          b.transfer(restored, kRight, kScratchR, base, spread, jt + ":mul");
          int gathered = b.state(jt + ":gathered");
          b.transfer(spread, kScratchR, kRight, 1, gathered, jt + ":gather");
          b.add_const(gathered, kRight, j + 1, b.state(tag + ":done"), jt + ":digit");
        }
        at = b.state(tag + ":done");
      }
      b.step(at, b.state("step:" + tsm.states[r.to]), -1, 0);
    }
  }
  return m;
}

CounterMachine four_to_two_counter(const CounterMachine& src) {
  static const unsigned kPrimes[] = {2, 3, 5, 7};
  if (src.k() > 4) throw Error(ErrorCode::WrongArity, "at most four counters can be packed");
  const int k = src.k();
  CounterMachine m(src.alphabet(), 2, false);
  detail::Builder b(m);
  for (int q = 0; q < src.num_states(); ++q) b.state(src.name(q), src.accepting(q));
  int init = b.state("init");
  m.set_initial(init);
  b.add_const(init, 0, 1, b.state(src.name(src.initial())), "init");

  for (int q = 0; q < src.num_states(); ++q) {
    const std::string name = src.name(q);
    const auto& out = src.outgoing(q);
    if (out.empty()) continue;
    // counters whose zero test matters at q
    std::vector<int> relevant;
    for (int c = 0; c < k; ++c) {
      std::set<std::tuple<std::optional<Letter>, std::vector<int>, int, std::vector<int>>> with0, with1;
      for (auto i : out) {
        auto t = src.transitions()[i];
        int bit = t.tests[c];
        t.tests[c] = 0;
        (bit == 0 ? with0 : with1).insert({t.input, t.tests, t.to, t.deltas});
      }
      if (with0 != with1) relevant.push_back(c);
    }
    unsigned modulus = 1;
    for (int c : relevant) modulus *= kPrimes[c];

    // residue of counter 0 modulo the relevant primes; scratch ends holding the value
    std::vector<int> ring{b.state(name)};
    for (unsigned r = 1; r < modulus; ++r) ring.push_back(b.state("res:" + name + ":" + std::to_string(r)));
    if (modulus > 1) {
      for (unsigned r = 0; r < modulus; ++r) {
        int known = b.state("known:" + name + ":" + std::to_string(r));
        b.add(ring[r], std::nullopt, {0, -1}, known, {0, 0});
        b.add(ring[r], std::nullopt, {1, -1}, ring[(r + 1) % modulus], {-1, 1});
      }
    }
    for (unsigned r = 0; r < modulus; ++r) {
      const std::string rt = name + ":" + std::to_string(r);
      int ready = ring[0];
      if (modulus > 1) {
        ready = b.state("ready:" + rt);
        b.transfer(b.state("known:" + rt), 1, 0, 1, ready, "restore:" + rt);
      }

      std::set<std::tuple<std::optional<Letter>, int, std::vector<int>>> chosen;
      for (auto i : out) {
        const auto& t = src.transitions()[i];
        bool match = true;
        for (int c : relevant) match &= (t.tests[c] == 1) == (r % kPrimes[c] == 0);
        if (match) chosen.insert({t.input, t.to, t.deltas});
      }
      int variant = 0;
      for (const auto& [input, to, deltas] : chosen) {
        const std::string vt = "apply:" + rt + ":" + std::to_string(variant++);
        int at = b.state(vt);
        b.add(ready, input, {-1, 0}, at, {0, 0});
        for (int c = 0; c < k; ++c) {
          if (deltas[c] == 0) continue;
          const std::string ct = vt + ":c" + std::to_string(c);
          int moved = b.state(ct + ":moved");
          if (deltas[c] > 0) {
            b.transfer(at, 0, 1, kPrimes[c], moved, ct + ":mul");
          } else {
            // divide counter 0 by p into scratch
            std::vector<int> rem(kPrimes[c], moved);
            b.divide(at, 0, 1, kPrimes[c], rem, ct + ":div");
          }
          int back = b.state(ct + ":back");
          b.transfer(moved, 1, 0, 1, back, ct + ":gather");
          at = back;
        }
        b.step(at, b.state(src.name(to)), -1, 0);
      }
    }
  }
  return m;
}

TMCompilation tm_to_counter(const BuchiTM& tm) {
  TMCompilation out;
  out.two_stack = tm_to_two_stack(tm);
  out.four_counter = two_stack_to_four_counter(out.two_stack);
  out.two_counter = four_to_two_counter(out.four_counter);
  return out;
}

SearchResult::Status two_stack_run_search(const TwoStackMachine& m, const LassoWord& w, std::size_t max_steps) {
  struct Key {
    TwoStackMachine::Config config;
    std::size_t pos;
    auto operator<=>(const Key&) const = default;
  };
  std::map<Key, int> ids;
  std::vector<Key> nodes;
  graph::Digraph g;
  std::deque<int> work;
  auto get = [&](Key key) {
    auto it = ids.find(key);
    if (it != ids.end()) return it->second;
    if (nodes.size() >= max_steps) return -1;
    int id = static_cast<int>(nodes.size());
    ids.emplace(key, id);
    nodes.push_back(std::move(key));
    g.add_node();
    work.push_back(id);
    return id;
  };
  get({TwoStackMachine::Config{m.initial, {}, {}}, 0});
  while (!work.empty()) {
    int id = work.front();
    work.pop_front();
    Key cur = nodes[id];
    for (auto& [next, read] : m.step(cur.config, w.structural_letter(cur.pos))) {
      std::size_t pos = read ? w.next_position(cur.pos) : cur.pos;
      int to = get({next, pos});
      if (to < 0) continue;
      // label 1 marks a move that read a letter
      g.add_arc(id, {to, static_cast<bool>(m.accepting[cur.config.state]), read ? 1 : 0});
    }
  }
  auto classes = [&](int v, int a) {
    const auto& arc = g.out[v][a];
    return (arc.accepting ? 1u : 0u) | (arc.label ? 2u : 0u);
  };
  return graph::find_generalized_lasso(g, 0, classes, 3u) ? SearchResult::Status::Accepted
                                                          : SearchResult::Status::Unknown;
}

}  // namespace omega
