#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>

#include "omega/counter_machine.hpp"

namespace omega {

struct SearchBudget {
  std::size_t max_steps = 100'000;     // explored configurations
  std::uint64_t max_counter = 1'000;   // counter values above this are not explored
};

struct SearchResult {
  enum class Status { Accepted, Unknown };
  Status status = Status::Unknown;
  std::optional<AcceptanceCertificate> certificate;
  std::size_t explored = 0;

  bool accepted() const noexcept { return status == Status::Accepted; }
};

/// Breadth-first search for a certificate: an exactly repeating cycle or a
/// pumpable loop, each consuming letters and visiting an accepting state.
/// Words without a lasso form give Unknown.
SearchResult bounded_run_search(const CounterMachine& m, const IndexedWord& w, SearchBudget budget = {});

}  // namespace omega
