#pragma once

#include <cstdint>

#include "omega/words.hpp"

namespace omega {

/// What occupies one position of a coded word.
struct Slot {
  enum class Kind { Source, Marker, Filler };
  Kind kind = Kind::Filler;
  Letter letter = 0;      // fixed letter for Marker / Filler
  BigNat source_index;    // 1-based index into the preimage for Source
};

/// Slot at 1-based position `n` of the coding's block layout:
///   Theta(S): x(n) E^{S^n}
///   HK(K):    A C^K x(1) B, then C^{K^n} A C^{K^n} x(n) B for n >= 2
///   PhiK(K):  F^{K-1} x(n)
///   H:        D 0^n x(n)
Slot coding_slot(Coding coding, std::uint64_t param, const BigNat& n);

/// Letter of α = D 0 D 0^2 D 0^3 ... at 1-based position `n`.
Letter alpha_letter(const BigNat& n);

/// Letters introduced by a coding (markers and fillers).
std::string coding_letters(Coding coding);

/// Smallest m >= 0 with m(m + c)/2 >= p (c >= 1).
BigNat triangular_ceiling(const BigNat& p, unsigned c);

}  // namespace omega
