#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "omega/counter_machine.hpp"
#include "omega/run_search.hpp"

namespace omega {

/// Turing machine on ω-inputs. The tape is infinite in both directions; cell i >= 0
/// holds input letter i+1 until first written, cells left of 0 are blank. A run
/// accepts when it visits accepting states infinitely often and its head goes
/// arbitrarily far right.
struct BuchiTM {
  struct Action {
    int to = 0;
    char write = '_';
    bool right = true;
  };

  Alphabet input;
  std::string tape;  // tape alphabet; tape[0] is the blank, input letters included
  std::vector<std::string> states;
  int initial = 0;
  std::vector<bool> accepting;
  std::map<std::pair<int, char>, Action> delta;

  char blank() const { return tape[0]; }
  int symbol(char c) const;
  /// Throws InvalidArgument when the declared alphabets or moves are inconsistent.
  void validate() const;
};

/// Left stack holds the cells left of the head (top = nearest, no blanks at the
/// bottom), right stack the scanned cell and the written cells beyond it. An empty right stack means the
/// head is on a fresh cell, which is read from the input.
struct TwoStackMachine {
  struct Rule {
    int from = 0;
    int top = 0;          // symbol index on top of the right stack, -1 = fresh cell
    char input = 0;       // letter read when top == -1
    int to = 0;
    int push_left = -1;   // symbol index pushed on the left stack, -1 = none
    int push_right = -1;  // symbol index pushed on the right stack, -1 = none
    bool shift_left = false;  // then move the left top (blank if empty) onto the right stack
  };

  Alphabet input;
  std::string tape;
  std::vector<std::string> states;
  int initial = 0;
  std::vector<bool> accepting;
  std::vector<Rule> rules;

  struct Config {
    int state = 0;
    std::vector<int> left, right;  // bottom first
    friend auto operator<=>(const Config&, const Config&) = default;
  };

  /// Successor configurations with the letter consumed (0 when none).
  std::vector<std::pair<Config, char>> step(const Config& c, char next_input) const;
};

TwoStackMachine tm_to_two_stack(const BuchiTM& tm);

/// Stack numerals: right digits are symbol+1 (0 = bottom of an empty stack), left
/// digits are the symbol index, blank = 0. Base = |tape| + 2.
std::uint64_t stack_base(const TwoStackMachine& m);
BigNat encode_left(const TwoStackMachine& m, const std::vector<int>& stack);
BigNat encode_right(const TwoStackMachine& m, const std::vector<int>& stack);

/// Counters 0 = left, 1 = right, 2 and 3 scratch. State "step:<q>" starts the
/// simulation of one two-stack move from q.
CounterMachine two_stack_to_four_counter(const TwoStackMachine& m);

/// Counter 0 holds 2^a 3^b 5^c 7^d for the four counters of `m`, counter 1 is scratch.
/// States named "step:..." of `m` keep their names.
CounterMachine four_to_two_counter(const CounterMachine& m);

struct TMCompilation {
  TwoStackMachine two_stack;
  CounterMachine four_counter;
  CounterMachine two_counter;
};

TMCompilation tm_to_counter(const BuchiTM& tm);

/// Exact-repetition search over two-stack configurations on a lasso word.
SearchResult::Status two_stack_run_search(const TwoStackMachine& m, const LassoWord& w, std::size_t max_steps);

}  // namespace omega
