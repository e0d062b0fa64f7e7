#include "omega/graph.hpp"

#include <algorithm>
#include <deque>

namespace omega::graph {

std::vector<int> strongly_connected_components(const Digraph& g, int* count) {
  const int n = g.size();
  std::vector<int> index(n, -1), low(n, 0), comp(n, -1);
  std::vector<bool> on_stack(n, false);
  std::vector<int> stack;
  int next_index = 0, next_comp = 0;

  struct Frame {
    int v;
    std::size_t arc;
  };
  std::vector<Frame> call;
  for (int root = 0; root < n; ++root) {
    if (index[root] >= 0) continue;
    call.push_back({root, 0});
    index[root] = low[root] = next_index++;
    stack.push_back(root);
    on_stack[root] = true;
    while (!call.empty()) {
      Frame& f = call.back();
      if (f.arc < g.out[f.v].size()) {
        int w = g.out[f.v][f.arc++].to;
        if (index[w] < 0) {
          index[w] = low[w] = next_index++;
          stack.push_back(w);
          on_stack[w] = true;
          call.push_back({w, 0});
        } else if (on_stack[w]) {
          low[f.v] = std::min(low[f.v], index[w]);
        }
        continue;
      }
      int v = f.v;
      call.pop_back();
      if (!call.empty()) low[call.back().v] = std::min(low[call.back().v], low[v]);
      if (low[v] == index[v]) {
        int w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          comp[w] = next_comp;
        } while (w != v);
        ++next_comp;
      }
    }
  }
  if (count) *count = next_comp;
  return comp;
}

std::vector<bool> reachable_from(const Digraph& g, const std::vector<int>& sources) {
  std::vector<bool> seen(g.size(), false);
  std::vector<int> work;
  for (int s : sources) {
    if (!seen[s]) {
      seen[s] = true;
      work.push_back(s);
    }
  }
  while (!work.empty()) {
    int v = work.back();
    work.pop_back();
    for (const Arc& a : g.out[v]) {
      if (!seen[a.to]) {
        seen[a.to] = true;
        work.push_back(a.to);
      }
    }
  }
  return seen;
}

std::vector<bool> coreachable_to(const Digraph& g, const std::vector<bool>& targets) {
  std::vector<std::vector<int>> rev(g.size());
  for (int v = 0; v < g.size(); ++v) {
    for (const Arc& a : g.out[v]) rev[a.to].push_back(v);
  }
  std::vector<bool> seen = targets;
  std::vector<int> work;
  for (int v = 0; v < g.size(); ++v) {
    if (seen[v]) work.push_back(v);
  }
  while (!work.empty()) {
    int v = work.back();
    work.pop_back();
    for (int u : rev[v]) {
      if (!seen[u]) {
        seen[u] = true;
        work.push_back(u);
      }
    }
  }
  return seen;
}

std::optional<std::vector<Step>> shortest_path(const Digraph& g, int from, int to, const std::vector<bool>& allowed) {
  if (from == to) return std::vector<Step>{};
  std::vector<Step> parent(g.size(), Step{-1, -1});
  std::vector<bool> seen(g.size(), false);
  std::deque<int> queue{from};
  seen[from] = true;
  while (!queue.empty()) {
    int v = queue.front();
    queue.pop_front();
    for (int a = 0; a < static_cast<int>(g.out[v].size()); ++a) {
      int w = g.out[v][a].to;
      if (seen[w] || (!allowed.empty() && !allowed[w])) continue;
      seen[w] = true;
      parent[w] = Step{v, a};
      if (w == to) {
        std::vector<Step> path;
        for (int x = to; x != from; x = parent[x].node) path.push_back(parent[x]);
        std::reverse(path.begin(), path.end());
        return path;
      }
      queue.push_back(w);
    }
  }
  return std::nullopt;
}

std::optional<LassoPath> find_accepting_lasso(const Digraph& g, int start) {
  return find_generalized_lasso(
      g, start, [&](int v, int a) { return g.out[v][a].accepting ? 1u : 0u; }, 1u);
}

}  // namespace omega::graph
