#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "omega/buchi.hpp"
#include "omega/words.hpp"

namespace omega {

/// One element of Δ. `tests[m]` is 0 when counter m must be zero and 1 when it
/// must be positive; `deltas[m]` is in {-1, 0, 1}. No input letter means λ.
struct CMTransition {
  int from = 0;
  std::optional<Letter> input;
  std::vector<int> tests;
  int to = 0;
  std::vector<int> deltas;

  bool is_lambda() const noexcept { return !input.has_value(); }
  friend bool operator==(const CMTransition&, const CMTransition&) = default;
};

/// Büchi k-counter machine.
class CounterMachine {
 public:
  CounterMachine() = default;
  CounterMachine(Alphabet alphabet, int k, bool real_time = true)
      : alphabet_(std::move(alphabet)), k_(k), real_time_(real_time) {}

  const Alphabet& alphabet() const noexcept { return alphabet_; }
  int k() const noexcept { return k_; }
  bool real_time() const noexcept { return real_time_; }
  int num_states() const noexcept { return static_cast<int>(names_.size()); }
  int initial() const noexcept { return initial_; }
  bool accepting(int q) const { return accepting_[q]; }
  const std::string& name(int q) const { return names_[q]; }
  const std::vector<CMTransition>& transitions() const noexcept { return transitions_; }
  /// Indices into transitions() of the moves leaving q.
  const std::vector<std::size_t>& outgoing(int q) const { return outgoing_[q]; }

  int add_state(std::string name, bool accepting = false);
  void set_initial(int q) { initial_ = q; }
  void set_accepting(int q, bool value = true) { accepting_[q] = value; }
  void set_real_time(bool value) noexcept { real_time_ = value; }
  /// Throws WrongArity / WrongAlphabet / InvalidArgument on malformed moves;
  /// Def 2.1 violations are left to validate_machine.
  std::size_t add_transition(CMTransition t);
  int find_state(const std::string& name) const;
  /// All deltas are 0: the counters stay at 0 forever.
  bool counter_ignoring() const;

 private:
  Alphabet alphabet_;
  int k_ = 1;
  bool real_time_ = true;
  std::vector<std::string> names_;
  std::vector<bool> accepting_;
  std::vector<CMTransition> transitions_;
  std::vector<std::vector<std::size_t>> outgoing_;
  int initial_ = 0;
};

struct Violation {
  enum class Kind { DecrementOnZero, LambdaInRealtime };
  Kind kind;
  std::size_t transition;
  std::string message;
};

std::string_view to_string(Violation::Kind kind);
std::vector<Violation> validate_machine(const CounterMachine& m);

struct Configuration {
  int state = 0;
  std::vector<std::uint64_t> counters;

  friend bool operator==(const Configuration&, const Configuration&) = default;
  friend auto operator<=>(const Configuration&, const Configuration&) = default;
};

Configuration initial_configuration(const CounterMachine& m);
/// Zero-test profile of c matches t.tests.
bool enabled(const CMTransition& t, const Configuration& c);
Configuration apply(const CMTransition& t, const Configuration& c);

/// One-step successors on `input` (nullopt = λ), sorted and deduplicated.
std::vector<Configuration> successors(const CounterMachine& m, const Configuration& c, std::optional<Letter> input);

/// A run prefix followed by a loop that can be repeated forever on the word.
struct AcceptanceCertificate {
  std::vector<std::size_t> stem;  // transition indices
  std::vector<std::size_t> loop;
  Configuration loop_start;
  int accepting_state = -1;       // an accepting state visited inside the loop
  std::string stem_letters;
  std::string loop_letters;

  /// Replays the certificate from the initial configuration and checks that it
  /// spells a complete accepting run on w.
  bool verify(const CounterMachine& m, const LassoWord& w) const;
};

/// Builds a certificate from transition sequences, recomputing configurations
/// and letters. Returns nullopt if some move is not enabled.
std::optional<AcceptanceCertificate> make_certificate(const CounterMachine& m, std::vector<std::size_t> stem,
                                                      std::vector<std::size_t> loop);

/// L(a) ∪ L(b) through a fresh initial state copying both initial fan-outs.
CounterMachine machine_union(const CounterMachine& a, const CounterMachine& b);

/// NBA for a counter-ignoring machine (λ-moves eliminated). Throws InvalidArgument otherwise.
NBA as_nba(const CounterMachine& m);

struct TraceStep {
  Configuration config;
  std::size_t consumed = 0;  // letters read so far
  std::size_t transition = 0;  // move that led here (unused for the first step)
};

/// Deterministic replay: follows the unique enabled move for at most `steps` moves,
/// reading letters from w. Stops early when no move is enabled; throws
/// InvalidArgument when two moves are enabled.
std::vector<TraceStep> trace(const CounterMachine& m, const IndexedWord& w, std::size_t steps);

}  // namespace omega
