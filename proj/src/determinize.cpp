// Piterman's compact Safra trees: nodes are named 1..k in age order (a parent is
// older than its children, an older sibling older than a younger one), so a tree
// is fully described by the list of (parent, label) in name order. Priorities are
// computed in min-parity form and flipped to the max-even convention of DPA.

#include <algorithm>
#include <string>
#include <unordered_map>

#include <boost/dynamic_bitset.hpp>

#include "omega/buchi.hpp"
#include "omega/errors.hpp"

namespace omega {

namespace {

using StateSet = boost::dynamic_bitset<>;

struct TreeNode {
  int parent;  // -1 for the root
  StateSet label;
};

using Tree = std::vector<TreeNode>;

std::string tree_key(const Tree& t) {
  std::string key;
  for (const auto& node : t) {
    key += std::to_string(node.parent);
    key.push_back(':');
    std::string bits;
    boost::to_string(node.label, bits);
    key += bits;
    key.push_back(';');
  }
  return key;
}

class SafraStepper {
 public:
  explicit SafraStepper(const NBA& a) : a_(a), n_(a.num_states()), accepting_(n_) {
    for (int q = 0; q < n_; ++q) accepting_[q] = a.accepting(q);
    post_.resize(a.alphabet().size(), std::vector<StateSet>(n_, StateSet(n_)));
    for (int l = 0; l < static_cast<int>(a.alphabet().size()); ++l)
      for (int q = 0; q < n_; ++q)
        for (int r : a.successors(q, l)) post_[l][q].set(r);
  }

  /// Successor tree and min-parity priority.
  std::pair<Tree, int> step(const Tree& tree, int letter) const {
    const int none = 4 * n_ + 1;
    if (tree.empty()) return {Tree{}, none};

    Tree work = tree;
    const int original = static_cast<int>(tree.size());
    // 1. spawn children for accepting states
    for (int v = 0; v < original; ++v) {
      StateSet acc = work[v].label & accepting_;
      if (acc.any()) work.push_back(TreeNode{v, acc});
    }
    // 2. move labels
    for (auto& node : work) node.label = image(node.label, letter);

    std::vector<std::vector<int>> children(work.size());
    for (int v = 1; v < static_cast<int>(work.size()); ++v) children[work[v].parent].push_back(v);
    // indices grow with age, so children lists are already oldest first

    // 3. horizontal merge: a state stays only in the leftmost branch
    horizontal(work, children, 0, StateSet(n_));

    std::vector<bool> removed(work.size(), false);
    std::vector<bool> green(work.size(), false);
    // 4. drop empty nodes (their subtrees are empty too)
    for (int v = 0; v < static_cast<int>(work.size()); ++v)
      if (work[v].label.none()) removed[v] = true;
    for (int v = 1; v < static_cast<int>(work.size()); ++v)
      if (removed[work[v].parent]) removed[v] = true;
    // 5. vertical merge: a node covered by its children absorbs them
    for (int v = 0; v < static_cast<int>(work.size()); ++v) {
      if (removed[v]) continue;
      StateSet below(n_);
      bool has_child = false;
      for (int c : children[v]) {
        if (removed[c]) continue;
        below |= work[c].label;
        has_child = true;
      }
      if (has_child && below == work[v].label) {
        green[v] = true;
        remove_descendants(children, v, removed);
      }
    }

    int priority = none;
    for (int v = 0; v < static_cast<int>(work.size()); ++v) {
      if (green[v] && !removed[v]) priority = std::min(priority, 2 * (v + 1));
      if (removed[v] && v < original) priority = std::min(priority, 2 * (v + 1) - 1);
    }
    // 6. compact names
    std::vector<int> rename(work.size(), -1);
    Tree next;
    for (int v = 0; v < static_cast<int>(work.size()); ++v) {
      if (removed[v]) continue;
      rename[v] = static_cast<int>(next.size());
      next.push_back(TreeNode{v == 0 ? -1 : rename[work[v].parent], work[v].label});
    }
    return {std::move(next), priority};
  }

  int none_priority() const { return 4 * n_ + 1; }

 private:
  StateSet image(const StateSet& s, int letter) const {
    StateSet out(n_);
    for (auto q = s.find_first(); q != StateSet::npos; q = s.find_next(q)) out |= post_[letter][q];
    return out;
  }

  void horizontal(Tree& work, const std::vector<std::vector<int>>& children, int v, StateSet blocked) const {
    work[v].label -= blocked;
    for (int c : children[v]) {
      horizontal(work, children, c, blocked);
      blocked |= work[c].label;
    }
  }

  static void remove_descendants(const std::vector<std::vector<int>>& children, int v, std::vector<bool>& removed) {
    for (int c : children[v]) {
      removed[c] = true;
      remove_descendants(children, c, removed);
    }
  }

  const NBA& a_;
  int n_;
  StateSet accepting_;
  std::vector<std::vector<StateSet>> post_;
};

std::string describe(const Tree& t) {
  if (t.empty()) return "{}";
  std::string s;
  for (std::size_t v = 0; v < t.size(); ++v) {
    if (v) s += " ";
    s += std::to_string(v + 1) + "<" + (t[v].parent < 0 ? std::string("-") : std::to_string(t[v].parent + 1)) + ":";
    std::string bits;
    for (auto q = t[v].label.find_first(); q != StateSet::npos; q = t[v].label.find_next(q)) {
      if (!bits.empty()) bits += ",";
      bits += std::to_string(q);
    }
    s += bits + ">";
  }
  return s;
}

}  // namespace

DPA determinize(const NBA& input, DeterminizeBudget budget) {
  NBA a = nba_trim(input);
  const Alphabet& sigma = a.alphabet();
  DPA out(sigma);
  SafraStepper stepper(a);
  const int flip = stepper.none_priority() + 1;  // even, above every min-parity value

  std::unordered_map<std::string, int> ids;
  std::vector<Tree> trees;
  std::size_t total_nodes = 0;
  auto get = [&](const Tree& t) {
    auto key = tree_key(t);
    auto it = ids.find(key);
    if (it != ids.end()) return it->second;
    total_nodes += std::max<std::size_t>(t.size(), 1);
    if (total_nodes > budget.max_tree_nodes) {
      throw Error(ErrorCode::BudgetExceeded, "determinization exceeded " + std::to_string(budget.max_tree_nodes) +
                                                 " tree nodes after " + std::to_string(trees.size()) + " states");
    }
    int id = out.add_state(describe(t));
    ids.emplace(std::move(key), id);
    trees.push_back(t);
    return id;
  };

  StateSet root(a.num_states());
  root.set(a.initial());
  Tree init{TreeNode{-1, root}};
  // An empty-language automaton trims to one non-accepting state with no moves;
  // its tree empties after one letter, which is the rejecting sink.
  out.set_initial(get(init));
  for (std::size_t i = 0; i < trees.size(); ++i) {
    for (int l = 0; l < static_cast<int>(sigma.size()); ++l) {
      auto [next, prio] = stepper.step(trees[i], l);
      int to = get(next);
      out.set_transition(static_cast<int>(i), sigma[l], to, flip - prio);
    }
  }
  return out;
}

}  // namespace omega
