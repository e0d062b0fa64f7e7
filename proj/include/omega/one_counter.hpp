#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "omega/counter_machine.hpp"

namespace omega {

/// Finite control with one counter and acceptance on edges. `zero` edges need the
/// counter at 0, the others need it positive.
struct OneCounterSystem {
  struct Edge {
    int from = 0;
    int to = 0;
    bool zero = true;
    int delta = 0;
    bool accepting = false;
    std::size_t tag = 0;
  };
  int num_states = 0;
  int initial = 0;
  std::vector<Edge> edges;
};

/// Edge indices of an infinite run from (initial, 0): `stem` once, then `loop`
/// forever, with infinitely many accepting edges.
struct OneCounterLasso {
  std::vector<std::size_t> stem;
  std::vector<std::size_t> loop;
};

/// Exact Büchi emptiness for one-counter systems.
std::optional<OneCounterLasso> one_counter_buchi(const OneCounterSystem& s);

/// Exact membership of an ultimately periodic word for k = 1 machines; throws WrongArity.
bool oca_up_membership(const CounterMachine& m, const LassoWord& w);

/// Same decision with a replayable certificate when w is accepted.
std::optional<AcceptanceCertificate> oca_up_witness(const CounterMachine& m, const LassoWord& w);

}  // namespace omega
