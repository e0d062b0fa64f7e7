#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "omega/words.hpp"

namespace omega {

/// Nondeterministic Büchi automaton with state-based acceptance.
class NBA {
 public:
  NBA() = default;
  explicit NBA(Alphabet alphabet) : alphabet_(std::move(alphabet)) {}

  const Alphabet& alphabet() const noexcept { return alphabet_; }
  int num_states() const noexcept { return static_cast<int>(names_.size()); }
  int initial() const noexcept { return initial_; }
  const std::string& name(int q) const { return names_[q]; }
  bool accepting(int q) const { return accepting_[q]; }
  /// Successors of q on the letter with alphabet index `letter`.
  const std::vector<int>& successors(int q, int letter) const { return delta_[q][letter]; }

  int add_state(std::string name, bool accepting = false);
  void set_initial(int q);
  void set_accepting(int q, bool value = true);
  /// Throws WrongAlphabet when `a` is not in the alphabet.
  void add_transition(int from, Letter a, int to);
  int find_state(const std::string& name) const;
  std::size_t num_transitions() const;

 private:
  Alphabet alphabet_;
  std::vector<std::string> names_;
  std::vector<bool> accepting_;
  std::vector<std::vector<std::vector<int>>> delta_;
  int initial_ = 0;
};

/// Deterministic parity automaton: total transition function, priorities on
/// transitions, a run accepts iff the maximal priority seen infinitely often is even.
class DPA {
 public:
  DPA() = default;
  explicit DPA(Alphabet alphabet) : alphabet_(std::move(alphabet)) {}

  const Alphabet& alphabet() const noexcept { return alphabet_; }
  int num_states() const noexcept { return static_cast<int>(next_.size()); }
  int initial() const noexcept { return initial_; }
  int next(int q, int letter) const { return next_[q][letter]; }
  int priority(int q, int letter) const { return priority_[q][letter]; }
  const std::string& name(int q) const { return names_[q]; }

  /// New state with every transition undefined (-1) until set.
  int add_state(std::string name);
  void set_initial(int q) { initial_ = q; }
  void set_transition(int from, Letter a, int to, int priority);
  int find_state(const std::string& name) const;
  /// Throws InvalidArgument if some transition is undefined.
  void validate() const;
  int max_priority() const;

 private:
  Alphabet alphabet_;
  std::vector<std::string> names_;
  std::vector<std::vector<int>> next_;
  std::vector<std::vector<int>> priority_;
  int initial_ = 0;
};

NBA universal_nba(const Alphabet& alphabet);
NBA empty_nba(const Alphabet& alphabet);

/// Throws AlphabetMismatch when w uses letters outside A's alphabet.
bool nba_membership(const NBA& a, const LassoWord& w);
std::optional<LassoWord> nba_emptiness(const NBA& a);

enum class CombineMode { Union, Intersection };
NBA nba_combine(CombineMode mode, const NBA& a, const NBA& b);

/// Restriction to states that are reachable and can reach an accepting cycle.
NBA nba_trim(const NBA& a);

bool dpa_membership(const DPA& d, const LassoWord& w);
DPA dpa_complement(const DPA& d);

struct DeterminizeBudget {
  std::size_t max_tree_nodes = 1'000'000;
};

/// Safra-tree determinization to a parity automaton; throws BudgetExceeded.
DPA determinize(const NBA& a, DeterminizeBudget budget = {});

/// All canonical lassos over the alphabet with |stem| + |loop| <= bound, sorted.
std::vector<LassoWord> all_canonical_lassos(const Alphabet& alphabet, std::size_t bound);
std::vector<LassoWord> enumerate_lassos(const NBA& a, std::size_t bound);
std::vector<LassoWord> enumerate_lassos(const DPA& d, std::size_t bound);

}  // namespace omega
