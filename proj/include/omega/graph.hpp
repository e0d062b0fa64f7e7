#pragma once

#include <optional>
#include <vector>

namespace omega::graph {

/// Arc of an explicit digraph. `label` is caller payload (letter, transition id, ...).
struct Arc {
  int to = 0;
  bool accepting = false;
  int label = 0;
};

struct Digraph {
  std::vector<std::vector<Arc>> out;

  explicit Digraph(std::size_t n = 0) : out(n) {}
  int size() const noexcept { return static_cast<int>(out.size()); }
  int add_node() {
    out.emplace_back();
    return size() - 1;
  }
  void add_arc(int from, Arc arc) { out[from].push_back(arc); }
};

/// One step along a path: the node left and the index of the arc taken in out[node].
struct Step {
  int node = 0;
  int arc = 0;
};

/// A stem from the start node to `loop_start`, then a nonempty loop back to it.
struct LassoPath {
  std::vector<Step> stem;
  std::vector<Step> loop;
};

/// Strongly connected components (Tarjan, iterative). component[v] for every v;
/// components are numbered in reverse topological order.
std::vector<int> strongly_connected_components(const Digraph& g, int* count = nullptr);

std::vector<bool> reachable_from(const Digraph& g, const std::vector<int>& sources);

/// Nodes that can reach some node in `targets`.
std::vector<bool> coreachable_to(const Digraph& g, const std::vector<bool>& targets);

/// Shortest path from `from` to `to` using only nodes with allowed[v] (empty = all).
/// Returns nullopt if none; an empty vector when from == to.
std::optional<std::vector<Step>> shortest_path(const Digraph& g, int from, int to,
                                               const std::vector<bool>& allowed = {});

/// Reachable cycle (from `start`) containing an accepting arc; Büchi emptiness on arcs.
std::optional<LassoPath> find_accepting_lasso(const Digraph& g, int start);

/// Same, but the cycle must contain at least one arc from each of the given arc
/// classes; `classes(node, arc_index)` returns a bitmask of the classes an arc is in
/// and `all` is the mask of required classes.
template <typename ClassFn>
std::optional<LassoPath> find_generalized_lasso(const Digraph& g, int start, ClassFn classes, unsigned all);

}  // namespace omega::graph

#include "omega/graph_impl.hpp"
