#include "omega/counter_machine.hpp"

#include <algorithm>
#include <deque>

#include "omega/errors.hpp"

namespace omega {

int CounterMachine::add_state(std::string name, bool accepting) {
  names_.push_back(std::move(name));
  accepting_.push_back(accepting);
  outgoing_.emplace_back();
  return num_states() - 1;
}

std::size_t CounterMachine::add_transition(CMTransition t) {
  if (t.from < 0 || t.from >= num_states() || t.to < 0 || t.to >= num_states())
    throw Error(ErrorCode::InvalidArgument, "transition refers to an unknown state");
  if (static_cast<int>(t.tests.size()) != k_ || static_cast<int>(t.deltas.size()) != k_)
    throw Error(ErrorCode::WrongArity, "expected " + std::to_string(k_) + " tests and deltas");
  if (t.input && !alphabet_.contains(*t.input))
    throw Error(ErrorCode::WrongAlphabet, std::string("letter '") + *t.input + "' is not in the alphabet");
  for (int m = 0; m < k_; ++m) {
    if (t.tests[m] != 0 && t.tests[m] != 1) throw Error(ErrorCode::InvalidArgument, "zero tests are 0 or 1");
    if (t.deltas[m] < -1 || t.deltas[m] > 1) throw Error(ErrorCode::InvalidArgument, "deltas are -1, 0 or 1");
  }
  outgoing_[t.from].push_back(transitions_.size());
  transitions_.push_back(std::move(t));
  return transitions_.size() - 1;
}

int CounterMachine::find_state(const std::string& name) const {
  auto it = std::find(names_.begin(), names_.end(), name);
  return it == names_.end() ? -1 : static_cast<int>(it - names_.begin());
}

bool CounterMachine::counter_ignoring() const {
  return std::all_of(transitions_.begin(), transitions_.end(), [](const CMTransition& t) {
    return std::all_of(t.deltas.begin(), t.deltas.end(), [](int d) { return d == 0; });
  });
}

std::string_view to_string(Violation::Kind kind) {
  switch (kind) {
    case Violation::Kind::DecrementOnZero: return "DECREMENT_ON_ZERO";
    case Violation::Kind::LambdaInRealtime: return "LAMBDA_IN_REALTIME";
  }
  return "?";
}

std::vector<Violation> validate_machine(const CounterMachine& m) {
  std::vector<Violation> out;
  const auto& ts = m.transitions();
  for (std::size_t i = 0; i < ts.size(); ++i) {
    const auto& t = ts[i];
    std::string where = "transition " + std::to_string(i) + " (" + m.name(t.from) + " -> " + m.name(t.to) + ")";
    for (int c = 0; c < m.k(); ++c) {
      if (t.tests[c] == 0 && t.deltas[c] == -1)
        out.push_back({Violation::Kind::DecrementOnZero, i, where + " decrements counter " + std::to_string(c) + " at zero"});
    }
    if (m.real_time() && t.is_lambda())
      out.push_back({Violation::Kind::LambdaInRealtime, i, where + " is a lambda move of a real-time machine"});
  }
  return out;
}

Configuration initial_configuration(const CounterMachine& m) {
  return Configuration{m.initial(), std::vector<std::uint64_t>(m.k(), 0)};
}

bool enabled(const CMTransition& t, const Configuration& c) {
  if (t.from != c.state) return false;
  for (std::size_t m = 0; m < c.counters.size(); ++m) {
    if ((c.counters[m] == 0) != (t.tests[m] == 0)) return false;
    if (c.counters[m] == 0 && t.deltas[m] < 0) return false;
  }
  return true;
}

Configuration apply(const CMTransition& t, const Configuration& c) {
  Configuration next{t.to, c.counters};
  for (std::size_t m = 0; m < next.counters.size(); ++m) next.counters[m] += t.deltas[m];
  return next;
}

std::vector<Configuration> successors(const CounterMachine& m, const Configuration& c, std::optional<Letter> input) {
  std::vector<Configuration> out;
  for (auto i : m.outgoing(c.state)) {
    const auto& t = m.transitions()[i];
    if (t.input != input || !enabled(t, c)) continue;
    out.push_back(apply(t, c));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

namespace {

struct Replay {
  Configuration end;
  std::string letters;
  std::vector<Configuration> visited;  // configuration before each move, then the final one
};

std::optional<Replay> replay(const CounterMachine& m, Configuration c, const std::vector<std::size_t>& moves) {
  Replay r;
  for (auto i : moves) {
    if (i >= m.transitions().size()) return std::nullopt;
    const auto& t = m.transitions()[i];
    if (!enabled(t, c)) return std::nullopt;
    r.visited.push_back(c);
    if (t.input) r.letters.push_back(*t.input);
    c = apply(t, c);
  }
  r.visited.push_back(c);
  r.end = std::move(c);
  return r;
}

}  // namespace

std::optional<AcceptanceCertificate> make_certificate(const CounterMachine& m, std::vector<std::size_t> stem,
                                                      std::vector<std::size_t> loop) {
  auto s = replay(m, initial_configuration(m), stem);
  if (!s) return std::nullopt;
  auto l = replay(m, s->end, loop);
  if (!l) return std::nullopt;
  AcceptanceCertificate cert;
  cert.stem = std::move(stem);
  cert.loop = std::move(loop);
  cert.loop_start = s->end;
  cert.stem_letters = s->letters;
  cert.loop_letters = l->letters;
  for (std::size_t i = 0; i + 1 < l->visited.size(); ++i) {
    if (m.accepting(l->visited[i].state)) {
      cert.accepting_state = l->visited[i].state;
      break;
    }
  }
  return cert;
}

bool AcceptanceCertificate::verify(const CounterMachine& m, const LassoWord& w) const {
  auto s = replay(m, initial_configuration(m), stem);
  if (!s || s->end != loop_start || s->letters != stem_letters) return false;
  auto l = replay(m, loop_start, loop);
  if (!l || l->letters != loop_letters || loop_letters.empty()) return false;
  if (l->end.state != loop_start.state) return false;

  // letters: the loop must start inside the period and cover whole periods
  const std::size_t n = stem_letters.size();
  if (n < w.stem().size() || loop_letters.size() % w.loop().size() != 0) return false;
  for (std::size_t i = 0; i < n; ++i)
    if (w.letter_at(i + 1) != stem_letters[i]) return false;
  for (std::size_t i = 0; i < loop_letters.size(); ++i)
    if (w.letter_at(n + i + 1) != loop_letters[i]) return false;

  bool saw_accepting = false;
  for (std::size_t i = 0; i + 1 < l->visited.size(); ++i) {
    if (l->visited[i].state == accepting_state) saw_accepting = true;
  }
  if (!saw_accepting || accepting_state < 0 || !m.accepting(accepting_state)) return false;

  // a counter either returns exactly or grows without ever touching zero
  for (std::size_t c = 0; c < loop_start.counters.size(); ++c) {
    if (l->end.counters[c] < loop_start.counters[c]) return false;
    if (l->end.counters[c] == loop_start.counters[c]) continue;
    for (const auto& conf : l->visited)
      if (conf.counters[c] == 0) return false;
  }
  return true;
}

CounterMachine machine_union(const CounterMachine& a, const CounterMachine& b) {
  if (a.k() != b.k()) throw Error(ErrorCode::WrongArity, "union of machines with different counter counts");
  if (a.alphabet() != b.alphabet()) throw Error(ErrorCode::AlphabetMismatch, "union of machines over different alphabets");
  CounterMachine u(a.alphabet(), a.k(), a.real_time() && b.real_time());
  int init = u.add_state("init");
  u.set_initial(init);
  auto copy = [&](const CounterMachine& m, const std::string& prefix) {
    int base = u.num_states();
    for (int q = 0; q < m.num_states(); ++q) u.add_state(prefix + m.name(q), m.accepting(q));
    for (const auto& t : m.transitions()) {
      CMTransition c = t;
      c.from += base;
      c.to += base;
      u.add_transition(c);
      if (t.from == m.initial()) {
        c.from = init;
        u.add_transition(c);
      }
    }
  };
  copy(a, "a.");
  copy(b, "b.");
  return u;
}

NBA as_nba(const CounterMachine& m) {
  if (!m.counter_ignoring()) throw Error(ErrorCode::InvalidArgument, "machine changes its counters");
  auto live = [&](const CMTransition& t) {
    return std::all_of(t.tests.begin(), t.tests.end(), [](int x) { return x == 0; });
  };
  const int n = m.num_states();
  NBA out(m.alphabet());
  for (int q = 0; q < n; ++q) {
    out.add_state(m.name(q), m.accepting(q));
    out.add_state(m.name(q) + "*", true);
  }
  out.set_initial(2 * m.initial());
  for (int q = 0; q < n; ++q) {
    // λ-closure of q over (state, passed-an-accepting-state) pairs
    std::vector<char> seen(2 * n, 0);
    std::deque<int> work{2 * q};
    seen[2 * q] = 1;
    while (!work.empty()) {
      int node = work.front();
      work.pop_front();
      int p = node / 2, flag = node % 2;
      for (auto i : m.outgoing(p)) {
        const auto& t = m.transitions()[i];
        if (!live(t)) continue;
        if (t.is_lambda()) {
          int next = 2 * t.to + (flag || m.accepting(t.to) ? 1 : 0);
          if (!seen[next]) {
            seen[next] = 1;
            work.push_back(next);
          }
        } else {
          for (int f = 0; f < 2; ++f) out.add_transition(2 * q + f, *t.input, 2 * t.to + flag);
        }
      }
    }
  }
  return nba_trim(out);
}

std::vector<TraceStep> trace(const CounterMachine& m, const IndexedWord& w, std::size_t steps) {
  std::vector<TraceStep> out;
  out.push_back({initial_configuration(m), 0, 0});
  for (std::size_t s = 0; s < steps; ++s) {
    const auto& cur = out.back();
    Letter next = w.letter_at(cur.consumed + 1);
    std::optional<std::size_t> chosen;
    for (auto i : m.outgoing(cur.config.state)) {
      const auto& t = m.transitions()[i];
      if (!enabled(t, cur.config) || (t.input && *t.input != next)) continue;
      if (chosen) throw Error(ErrorCode::InvalidArgument, "two moves enabled at step " + std::to_string(s));
      chosen = i;
    }
    if (!chosen) break;
    const auto& t = m.transitions()[*chosen];
    out.push_back({apply(t, cur.config), cur.consumed + (t.input ? 1 : 0), *chosen});
  }
  return out;
}

}  // namespace omega
