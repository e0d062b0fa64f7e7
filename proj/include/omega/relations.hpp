#pragma once

#include <optional>
#include <string>
#include <vector>

#include "omega/buchi.hpp"
#include "omega/cardinality.hpp"
#include "omega/counter_machine.hpp"
#include "omega/run_search.hpp"
#include "omega/words.hpp"

namespace omega {

/// Büchi automaton reading two infinite words with independent heads. A run accepts
/// when it visits accepting states infinitely often and reads infinitely many
/// letters from each tape.
class TwoTapeBA {
 public:
  struct Transition {
    int from = 0;
    std::optional<Letter> in1, in2;  // nullopt = ε
    int to = 0;
    friend auto operator<=>(const Transition&, const Transition&) = default;
  };

  TwoTapeBA() = default;
  TwoTapeBA(Alphabet a1, Alphabet a2) : a1_(std::move(a1)), a2_(std::move(a2)) {}

  const Alphabet& alphabet(int tape) const { return tape == 1 ? a1_ : a2_; }
  int num_states() const noexcept { return static_cast<int>(names_.size()); }
  int initial() const noexcept { return initial_; }
  bool accepting(int q) const { return accepting_[q]; }
  const std::string& name(int q) const { return names_[q]; }
  const std::vector<Transition>& transitions() const noexcept { return transitions_; }

  int add_state(std::string name, bool accepting = false);
  void set_initial(int q) { initial_ = q; }
  void set_accepting(int q, bool value = true) { accepting_[q] = value; }
  /// Throws WrongAlphabet for letters outside the tape alphabets.
  void add_transition(Transition t);
  int find_state(const std::string& name) const;

 private:
  Alphabet a1_, a2_;
  std::vector<std::string> names_;
  std::vector<bool> accepting_;
  std::vector<Transition> transitions_;
  int initial_ = 0;
};

/// Exact; throws AlphabetMismatch when u or v leave the tape alphabets.
bool rel_pair_membership(const TwoTapeBA& b, const LassoWord& u, const LassoWord& v);

/// Domain (tape 1) or image (tape 2) as an NBA.
NBA rel_projection(const TwoTapeBA& b, int tape);

struct RelationVerdict {
  CardinalityVerdict cardinality;
  CardinalityVerdict dom, im;
  bool countable = true;
};

RelationVerdict rel_cardinality(const TwoTapeBA& b, DeterminizeBudget budget = {});

struct RelSearchResult {
  SearchResult::Status status = SearchResult::Status::Unknown;
  std::size_t explored = 0;
  /// Explored configurations in an accepting state.
  std::size_t accepting_configs = 0;
  /// Per state: 1 + the furthest tape-2 position explored there, 0 if never visited.
  std::vector<std::uint64_t> reach;
  bool accepted() const noexcept { return status == SearchResult::Status::Accepted; }
};

/// Semi-decision for arbitrary descriptors (e.g. v = α). Accepts when a reachable
/// configuration starts an accepting loop that reads a lasso tape along its own
/// structure and any other tape only through moves present for every letter.
RelSearchResult rel_search(const TwoTapeBA& b, const IndexedWord& u, const IndexedWord& v,
                           std::size_t max_configs = 100'000);

/// 2-tape automaton over Ω′ × Ω′ for  h(L(A)) ∪ (h(Ω^ω))⁻  paired with α, together
/// with every pair whose second word is not α. Throws WrongArity, NotRealtime or
/// WrongAlphabet unless A is a real-time one-counter machine over Ω.
TwoTapeBA build_R(const CounterMachine& a);

}  // namespace omega
