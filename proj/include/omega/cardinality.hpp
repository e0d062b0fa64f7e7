#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "omega/buchi.hpp"

namespace omega {

/// Finite (with an exact count when it fits), countably infinite, or continuum.
struct CardinalityVerdict {
  enum class Class { Finite = 0, Aleph0 = 1, Continuum = 2 };

  /// Two non-commuting loops x, y at the state reached by `stem`, each with an
  /// even maximal priority: stem·{x,y}^ω lies in the language.
  struct Fork {
    std::string stem;
    std::string x;
    std::string y;
  };

  Class cls = Class::Finite;
  std::optional<std::uint64_t> count;  // Finite only; nullopt = UNCOUNTED
  std::optional<Fork> fork;            // Continuum only
  /// Every member of a finite language has a canonical lasso of at most this size.
  std::size_t stabilization_bound = 0;

  bool countable() const noexcept { return cls != Class::Continuum; }
  /// FINITE(n) | FINITE(UNCOUNTED) | ALEPH0 | CONTINUUM
  std::string to_string() const;

  static CardinalityVerdict finite(std::optional<std::uint64_t> n) { return {Class::Finite, n, std::nullopt, 0}; }
  static CardinalityVerdict aleph0() { return {Class::Aleph0, std::nullopt, std::nullopt, 0}; }
  static CardinalityVerdict continuum() { return {Class::Continuum, std::nullopt, std::nullopt, 0}; }
};

std::string to_string(CardinalityVerdict::Class c);

CardinalityVerdict dpa_cardinality(const DPA& d);
CardinalityVerdict nba_cardinality(const NBA& a, DeterminizeBudget budget = {});

}  // namespace omega
