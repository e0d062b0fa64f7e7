#pragma once

#include "omega/counter_machine.hpp"
#include "omega/words.hpp"

namespace omega {

/// Canonical compact serialization used by the numbering: states renamed 0..n-1
/// in order, transitions sorted, keys in fixed order, no whitespace.
std::string canonical_machine_text(const CounterMachine& m);

/// Index of a real-time one-counter machine: the bijective base-256 value of its
/// canonical text. Throws NotIndexable otherwise.
BigNat index_encode(const CounterMachine& m);

/// Inverse numbering; indices that do not spell a valid real-time one-counter
/// machine (including 0) give the one-state empty machine over Ω.
CounterMachine index_decode(const BigNat& z);

CounterMachine empty_indexed_machine();

}  // namespace omega
