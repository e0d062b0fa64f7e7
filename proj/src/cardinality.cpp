#include "omega/cardinality.hpp"

#include <algorithm>
#include <limits>
#include <set>

#include "omega/graph.hpp"

namespace omega {

std::string to_string(CardinalityVerdict::Class c) {
  switch (c) {
    case CardinalityVerdict::Class::Finite: return "FINITE";
    case CardinalityVerdict::Class::Aleph0: return "ALEPH0";
    case CardinalityVerdict::Class::Continuum: return "CONTINUUM";
  }
  return "?";
}

std::string CardinalityVerdict::to_string() const {
  if (cls == Class::Finite) return "FINITE(" + (count ? std::to_string(*count) : std::string("UNCOUNTED")) + ")";
  return omega::to_string(cls);
}

namespace {

/// Transition graph of the reachable part of a DPA; arc label = letter index,
/// arc "accepting" unused.
graph::Digraph reachable_graph(const DPA& d, std::vector<bool>& reach, int max_priority = -1) {
  graph::Digraph full(d.num_states());
  for (int q = 0; q < d.num_states(); ++q)
    for (int l = 0; l < static_cast<int>(d.alphabet().size()); ++l) full.add_arc(q, {d.next(q, l), false, l});
  reach = graph::reachable_from(full, {d.initial()});
  graph::Digraph g(d.num_states());
  for (int q = 0; q < d.num_states(); ++q) {
    if (!reach[q]) continue;
    for (int l = 0; l < static_cast<int>(d.alphabet().size()); ++l) {
      if (max_priority >= 0 && d.priority(q, l) > max_priority) continue;
      g.add_arc(q, {d.next(q, l), false, l});
    }
  }
  return g;
}

std::string spell(const DPA& d, const graph::Digraph& g, const std::vector<graph::Step>& path) {
  std::string out;
  for (auto s : path) out.push_back(d.alphabet()[g.out[s.node][s.arc].label]);
  return out;
}

}  // namespace

CardinalityVerdict dpa_cardinality(const DPA& d) {
  d.validate();
  std::vector<bool> reach;
  graph::Digraph all = reachable_graph(d, reach);

  std::set<int> even_priorities;
  for (int q = 0; q < d.num_states(); ++q)
    for (int l = 0; l < static_cast<int>(d.alphabet().size()); ++l)
      if (reach[q] && d.priority(q, l) % 2 == 0) even_priorities.insert(d.priority(q, l));

  // States lying in an SCC of the (<= p)-subgraph that contains a p-edge, p even:
  // exactly the states carrying an accepting cycle.
  std::vector<bool> good(d.num_states(), false);
  for (int p : even_priorities) {
    std::vector<bool> unused;
    graph::Digraph g = reachable_graph(d, unused, p);
    int count = 0;
    auto comp = graph::strongly_connected_components(g, &count);
    std::vector<bool> has_top(count, false);
    for (int q = 0; q < g.size(); ++q)
      for (const auto& arc : g.out[q])
        if (comp[arc.to] == comp[q] && d.priority(q, arc.label) == p) has_top[comp[q]] = true;

    for (int q = 0; q < g.size(); ++q) {
      if (!reach[q] || !has_top[comp[q]]) continue;
      good[q] = true;
      std::vector<int> internal;
      for (int a = 0; a < static_cast<int>(g.out[q].size()); ++a)
        if (comp[g.out[q][a].to] == comp[q]) internal.push_back(a);
      if (internal.size() < 2) continue;

      // Fork: two cycles through the top edge diverging at q.
      std::vector<bool> inside(g.size(), false);
      for (int v = 0; v < g.size(); ++v) inside[v] = comp[v] == comp[q];
      int top_from = -1, top_arc = -1;
      for (int v = 0; v < g.size() && top_from < 0; ++v) {
        if (!inside[v]) continue;
        for (int a = 0; a < static_cast<int>(g.out[v].size()); ++a) {
          if (inside[g.out[v][a].to] && d.priority(v, g.out[v][a].label) == p) {
            top_from = v;
            top_arc = a;
            break;
          }
        }
      }
      const auto& top = g.out[top_from][top_arc];
      auto to_fork = graph::shortest_path(g, top.to, q, inside);
      std::string head(1, d.alphabet()[top.label]);
      head += spell(d, g, *to_fork);
      auto branch = [&](int a) {
        const auto& arc = g.out[q][a];
        std::string w = head;
        w.push_back(d.alphabet()[arc.label]);
        w += spell(d, g, *graph::shortest_path(g, arc.to, top_from, inside));
        return w;
      };
      CardinalityVerdict v = CardinalityVerdict::continuum();
      v.fork = CardinalityVerdict::Fork{spell(d, all, *graph::shortest_path(all, d.initial(), top_from)),
                                        branch(internal[0]), branch(internal[1])};
      return v;
    }
  }

  // Countable. Finite iff the live part is a DAG feeding simple cycles that
  // nothing live leaves.
  auto live = graph::coreachable_to(all, good);
  CardinalityVerdict::Class cls = CardinalityVerdict::Class::Finite;
  const std::size_t bound = static_cast<std::size_t>(d.num_states()) + 1;
  if (!live[d.initial()]) {
    auto v = CardinalityVerdict::finite(0);
    v.stabilization_bound = bound;
    return v;
  }
  graph::Digraph lg(d.num_states());
  for (int q = 0; q < d.num_states(); ++q) {
    if (!reach[q] || !live[q]) continue;
    for (const auto& arc : all.out[q])
      if (live[arc.to]) lg.add_arc(q, arc);
  }
  int count = 0;
  auto comp = graph::strongly_connected_components(lg, &count);
  std::vector<bool> cyclic(count, false);
  for (int q = 0; q < lg.size(); ++q) {
    for (const auto& arc : lg.out[q])
      if (comp[arc.to] == comp[q]) cyclic[comp[q]] = true;
  }
  for (int q = 0; q < lg.size() && cls == CardinalityVerdict::Class::Finite; ++q) {
    if (!cyclic[comp[q]]) continue;
    int internal = 0;
    for (const auto& arc : lg.out[q]) {
      if (comp[arc.to] == comp[q]) ++internal;
      else cls = CardinalityVerdict::Class::Aleph0;  // a live exit from a cycle
    }
    if (internal != 1) cls = CardinalityVerdict::Class::Aleph0;
  }
  if (cls == CardinalityVerdict::Class::Aleph0) return CardinalityVerdict::aleph0();

  // Count paths into the cycles; components come in reverse topological order.
  constexpr std::uint64_t kMax = std::numeric_limits<std::uint64_t>::max();
  std::vector<std::uint64_t> paths(d.num_states(), 0);
  std::vector<std::vector<int>> by_comp(count);
  for (int q = 0; q < lg.size(); ++q) by_comp[comp[q]].push_back(q);
  bool overflow = false;
  for (int c = 0; c < count; ++c) {
    for (int q : by_comp[c]) {
      if (cyclic[c]) {
        paths[q] = 1;
        continue;
      }
      std::uint64_t sum = 0;
      for (const auto& arc : lg.out[q]) {
        if (paths[arc.to] > kMax - sum) overflow = true;
        else sum += paths[arc.to];
      }
      paths[q] = sum;
    }
  }
  auto v = CardinalityVerdict::finite(overflow ? std::nullopt : std::optional<std::uint64_t>(paths[d.initial()]));
  v.stabilization_bound = bound;
  return v;
}

CardinalityVerdict nba_cardinality(const NBA& a, DeterminizeBudget budget) {
  return dpa_cardinality(determinize(a, budget));
}

}  // namespace omega
