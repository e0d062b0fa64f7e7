#pragma once

// Template part of graph.hpp.

namespace omega::graph {

template <typename ClassFn>
std::optional<LassoPath> find_generalized_lasso(const Digraph& g, int start, ClassFn classes, unsigned all) {
  auto reach = reachable_from(g, {start});
  int count = 0;
  auto comp = strongly_connected_components(g, &count);
  std::vector<unsigned> seen(count, 0);
  for (int v = 0; v < g.size(); ++v) {
    if (!reach[v]) continue;
    for (int a = 0; a < static_cast<int>(g.out[v].size()); ++a) {
      if (comp[g.out[v][a].to] == comp[v]) seen[comp[v]] |= classes(v, a);
    }
  }
  for (int c = 0; c < count; ++c) {
    if ((seen[c] & all) != all) continue;
    // Inside component c, chain arcs covering every class into one cycle.
    std::vector<bool> inside(g.size(), false);
    int anchor = -1;
    for (int v = 0; v < g.size(); ++v) {
      if (comp[v] == c && reach[v]) {
        inside[v] = true;
        if (anchor < 0) anchor = v;
      }
    }
    LassoPath result;
    auto stem = shortest_path(g, start, anchor);
    if (!stem) continue;
    result.stem = std::move(*stem);
    int cursor = anchor;
    unsigned covered = 0;
    while ((covered & all) != all) {
      // pick an internal arc covering a missing class
      int best_v = -1, best_a = -1;
      for (int v = 0; v < g.size() && best_v < 0; ++v) {
        if (!inside[v]) continue;
        for (int a = 0; a < static_cast<int>(g.out[v].size()); ++a) {
          if (inside[g.out[v][a].to] && (classes(v, a) & all & ~covered)) {
            best_v = v;
            best_a = a;
            break;
          }
        }
      }
      auto hop = shortest_path(g, cursor, best_v, inside);
      for (auto& s : *hop) {
        covered |= classes(s.node, s.arc);
        result.loop.push_back(s);
      }
      result.loop.push_back(Step{best_v, best_a});
      covered |= classes(best_v, best_a);
      cursor = g.out[best_v][best_a].to;
    }
    auto back = shortest_path(g, cursor, anchor, inside);
    for (auto& s : *back) result.loop.push_back(s);
    return result;
  }
  return std::nullopt;
}

}  // namespace omega::graph
