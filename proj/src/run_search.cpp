#include "omega/run_search.hpp"

#include <deque>
#include <map>

#include "omega/graph.hpp"

namespace omega {

namespace {

struct Node {
  Configuration config;
  std::size_t pos;  // structural lasso position
  int parent = -1;
  std::size_t via = 0;  // transition from parent
  std::size_t depth = 0;
};

constexpr std::size_t kAncestorWindow = 256;

}  // namespace

SearchResult bounded_run_search(const CounterMachine& m, const IndexedWord& w, SearchBudget budget) {
  SearchResult result;
  auto lasso = w.to_lasso();
  if (!lasso) return result;
  if (!m.alphabet().contains_all(lasso->stem()) || !m.alphabet().contains_all(lasso->loop())) return result;

  std::vector<Node> nodes;
  std::map<std::pair<std::size_t, Configuration>, int> index;
  graph::Digraph g;
  auto get = [&](Configuration c, std::size_t pos, int parent, std::size_t via) -> int {
    auto key = std::make_pair(pos, c);
    auto it = index.find(key);
    if (it != index.end()) return it->second;
    if (nodes.size() >= budget.max_steps) return -1;
    int id = static_cast<int>(nodes.size());
    std::size_t depth = parent < 0 ? 0 : nodes[parent].depth + 1;
    nodes.push_back({std::move(c), pos, parent, via, depth});
    g.add_node();
    index.emplace(std::move(key), id);
    return id;
  };

  std::deque<int> work{get(initial_configuration(m), 0, -1, 0)};
  while (!work.empty()) {
    int id = work.front();
    work.pop_front();
    const auto state = nodes[id].config.state;
    for (auto i : m.outgoing(state)) {
      const auto& t = m.transitions()[i];
      const Node& cur = nodes[id];
      if (!enabled(t, cur.config)) continue;
      std::size_t pos = cur.pos;
      if (t.input) {
        if (*t.input != lasso->structural_letter(pos)) continue;
        pos = lasso->next_position(pos);
      }
      Configuration next = apply(t, cur.config);
      bool too_high = false;
      for (auto c : next.counters) too_high |= c > budget.max_counter;
      if (too_high) continue;
      std::size_t before = nodes.size();
      int to = get(std::move(next), pos, id, i);
      if (to < 0) continue;
      if (nodes.size() > before) work.push_back(to);
      // arc class bits: 1 = leaves an accepting state, 2 = reads a letter
      g.add_arc(id, {to, m.accepting(state), static_cast<int>(i)});
    }
  }
  result.explored = nodes.size();

  auto tree_path = [&](int from, int to) {
    std::vector<std::size_t> moves;
    for (int v = to; v != from; v = nodes[v].parent) moves.push_back(nodes[v].via);
    return std::vector<std::size_t>(moves.rbegin(), moves.rend());
  };
  auto accept = [&](std::vector<std::size_t> stem, std::vector<std::size_t> loop) {
    auto cert = make_certificate(m, std::move(stem), std::move(loop));
    if (cert && cert->verify(m, *lasso)) {
      result.status = SearchResult::Status::Accepted;
      result.certificate = std::move(cert);
      return true;
    }
    return false;
  };

  // exact repetition
  auto classes = [&](int v, int a) {
    const auto& arc = g.out[v][a];
    unsigned mask = arc.accepting ? 1u : 0u;
    if (m.transitions()[arc.label].input) mask |= 2u;
    return mask;
  };
  if (auto found = graph::find_generalized_lasso(g, 0, classes, 3u)) {
    auto moves = [&](const std::vector<graph::Step>& steps) {
      std::vector<std::size_t> out;
      for (auto s : steps) out.push_back(static_cast<std::size_t>(g.out[s.node][s.arc].label));
      return out;
    };
    if (accept(moves(found->stem), moves(found->loop))) return result;
  }

  // pumping along tree branches
  for (int id = 0; id < static_cast<int>(nodes.size()); ++id) {
    const Node& low = nodes[id];
    std::size_t steps = 0;
    for (int anc = low.parent; anc >= 0 && steps < kAncestorWindow; anc = nodes[anc].parent, ++steps) {
      const Node& a = nodes[anc];
      if (a.pos != low.pos || a.config.state != low.config.state) continue;
      bool ge = true;
      for (std::size_t c = 0; c < a.config.counters.size(); ++c) ge &= low.config.counters[c] >= a.config.counters[c];
      if (!ge) continue;
      bool reads = false, visits = false, stays_positive = true;
      for (int v = id; v != anc; v = nodes[v].parent) {
        const Node& from = nodes[nodes[v].parent];
        reads |= m.transitions()[nodes[v].via].input.has_value();
        visits |= m.accepting(from.config.state);
        for (std::size_t c = 0; c < a.config.counters.size(); ++c)
          if (low.config.counters[c] > a.config.counters[c] && from.config.counters[c] == 0) stays_positive = false;
      }
      if (!reads || !visits || !stays_positive) continue;
      if (accept(tree_path(0, anc), tree_path(anc, id))) return result;
    }
  }
  return result;
}

}  // namespace omega
