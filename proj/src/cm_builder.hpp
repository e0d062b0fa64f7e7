#pragma once

#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "omega/counter_machine.hpp"

namespace omega::detail {

/// Adds moves with "don't care" tests (-1) expanded into every zero profile.
class Builder {
 public:
  explicit Builder(CounterMachine& m) : m_(m) {}

  int state(const std::string& name, bool accepting = false) {
    auto it = ids_.find(name);
    if (it != ids_.end()) return it->second;
    int id = m_.add_state(name, accepting);
    ids_.emplace(name, id);
    return id;
  }

  int fresh(const std::string& prefix) { return state(prefix + "#" + std::to_string(counter_++)); }

  void add(int from, std::optional<Letter> input, std::vector<int> tests, int to, std::vector<int> deltas) {
    for (std::size_t c = 0; c < tests.size(); ++c) {
      if (tests[c] >= 0) continue;
      auto zero = tests, positive = tests;
      zero[c] = 0;
      positive[c] = 1;
      if (deltas[c] >= 0) add(from, input, zero, to, deltas);
      add(from, input, positive, to, deltas);
      return;
    }
    m_.add_transition({from, input, std::move(tests), to, std::move(deltas)});
  }

  /// λ-move with arbitrary tests, adding `d` to counter c.
  void step(int from, int to, int c, int d) {
    std::vector<int> deltas(m_.k(), 0), tests(m_.k(), -1);
    if (c >= 0) deltas[c] = d;
    add(from, std::nullopt, tests, to, deltas);
  }

  /// from: while src > 0 { src--; dst += factor } then go to `done`.
  void transfer(int from, int src, int dst, unsigned factor, int done, const std::string& tag) {
    const int k = m_.k();
    std::vector<int> t0(k, -1), d0(k, 0);
    t0[src] = 0;
    add(from, std::nullopt, t0, done, d0);
    std::vector<int> t1(k, -1), d1(k, 0);
    t1[src] = 1;
    d1[src] = -1;
    int at = from;
    if (factor == 0) {
      add(from, std::nullopt, t1, from, d1);
      return;
    }
    int next = factor == 1 ? from : fresh(tag);
    d1[dst] = 1;
    add(at, std::nullopt, t1, next, d1);
    at = next;
    for (unsigned i = 1; i < factor; ++i) {
      next = i + 1 == factor ? from : fresh(tag);
      step(at, next, dst, 1);
      at = next;
    }
  }

  /// Chain of `amount` increments of counter c from `from` to `to`.
  void add_const(int from, int c, unsigned amount, int to, const std::string& tag) {
    if (amount == 0) {
      step(from, to, -1, 0);
      return;
    }
    int at = from;
    for (unsigned i = 0; i < amount; ++i) {
      int next = i + 1 == amount ? to : fresh(tag);
      step(at, next, c, 1);
      at = next;
    }
  }

  /// Divides src by `base` into dst (which must be 0); state remainder[j] is reached
  /// with src = 0 and remainder j.
  void divide(int from, int src, int dst, unsigned base, const std::vector<int>& remainder, const std::string& tag) {
    const int k = m_.k();
    std::vector<int> ring{from};
    for (unsigned j = 1; j < base; ++j) ring.push_back(fresh(tag));
    for (unsigned j = 0; j < base; ++j) {
      std::vector<int> t0(k, -1), d0(k, 0);
      t0[src] = 0;
      add(ring[j], std::nullopt, t0, remainder[j], d0);
      std::vector<int> t1(k, -1), d1(k, 0);
      t1[src] = 1;
      d1[src] = -1;
      if (j + 1 == base) d1[dst] = 1;
      add(ring[j], std::nullopt, t1, ring[(j + 1) % base], d1);
    }
  }

 private:
  CounterMachine& m_;
  std::unordered_map<std::string, int> ids_;
  int counter_ = 0;
};

}  // namespace omega::detail
