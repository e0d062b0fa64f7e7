#include "omega/buchi.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "omega/errors.hpp"
#include "omega/graph.hpp"

namespace omega {

// ---------------------------------------------------------------- NBA

int NBA::add_state(std::string name, bool accepting) {
  names_.push_back(std::move(name));
  accepting_.push_back(accepting);
  delta_.emplace_back(alphabet_.size());
  return num_states() - 1;
}

void NBA::set_initial(int q) {
  if (q < 0 || q >= num_states()) throw Error(ErrorCode::InvalidArgument, "initial state out of range");
  initial_ = q;
}

void NBA::set_accepting(int q, bool value) { accepting_[q] = value; }

void NBA::add_transition(int from, Letter a, int to) {
  int idx = alphabet_.index_of(a);
  if (idx < 0) throw Error(ErrorCode::WrongAlphabet, std::string("letter '") + a + "' not in alphabet");
  if (from < 0 || from >= num_states() || to < 0 || to >= num_states()) {
    throw Error(ErrorCode::InvalidArgument, "transition endpoint out of range");
  }
  auto& succ = delta_[from][idx];
  if (std::find(succ.begin(), succ.end(), to) == succ.end()) succ.push_back(to);
}

int NBA::find_state(const std::string& name) const {
  auto it = std::find(names_.begin(), names_.end(), name);
  return it == names_.end() ? -1 : static_cast<int>(it - names_.begin());
}

std::size_t NBA::num_transitions() const {
  std::size_t n = 0;
  for (const auto& row : delta_)
    for (const auto& succ : row) n += succ.size();
  return n;
}

NBA universal_nba(const Alphabet& alphabet) {
  NBA a(alphabet);
  int q = a.add_state("all", true);
  for (Letter c : alphabet.letters()) a.add_transition(q, c, q);
  return a;
}

NBA empty_nba(const Alphabet& alphabet) {
  NBA a(alphabet);
  a.add_state("none", false);
  return a;
}

namespace {

void require_letters(const Alphabet& alphabet, const LassoWord& w) {
  if (!alphabet.contains_all(w.stem()) || !alphabet.contains_all(w.loop())) {
    throw Error(ErrorCode::AlphabetMismatch, "word " + w.to_string() + " uses letters outside {" + alphabet.letters() + "}");
  }
}

}  // namespace

bool nba_membership(const NBA& a, const LassoWord& w) {
  require_letters(a.alphabet(), w);
  const int positions = static_cast<int>(w.size());
  const int n = a.num_states();
  graph::Digraph g(static_cast<std::size_t>(n) * positions);
  auto node = [&](int q, int pos) { return q * positions + pos; };
  for (int q = 0; q < n; ++q) {
    for (int pos = 0; pos < positions; ++pos) {
      int letter = a.alphabet().index_of(w.structural_letter(pos));
      int next = static_cast<int>(w.next_position(pos));
      for (int r : a.successors(q, letter)) g.add_arc(node(q, pos), {node(r, next), a.accepting(q), 0});
    }
  }
  return graph::find_accepting_lasso(g, node(a.initial(), 0)).has_value();
}

std::optional<LassoWord> nba_emptiness(const NBA& a) {
  graph::Digraph g(a.num_states());
  for (int q = 0; q < a.num_states(); ++q) {
    for (int l = 0; l < static_cast<int>(a.alphabet().size()); ++l) {
      for (int r : a.successors(q, l)) g.add_arc(q, {r, a.accepting(q), l});
    }
  }
  auto lasso = graph::find_accepting_lasso(g, a.initial());
  if (!lasso) return std::nullopt;
  std::string stem, loop;
  for (auto s : lasso->stem) stem.push_back(a.alphabet()[g.out[s.node][s.arc].label]);
  for (auto s : lasso->loop) loop.push_back(a.alphabet()[g.out[s.node][s.arc].label]);
  return LassoWord::canonical(std::move(stem), std::move(loop));
}

NBA nba_combine(CombineMode mode, const NBA& a, const NBA& b) {
  if (!(a.alphabet() == b.alphabet())) throw Error(ErrorCode::AlphabetMismatch, "nba_combine needs equal alphabets");
  const Alphabet& sigma = a.alphabet();
  const int letters = static_cast<int>(sigma.size());
  if (mode == CombineMode::Union) {
    // Fresh initial state copying the outgoing transitions of both initials.
    NBA out(sigma);
    int init = out.add_state("init", a.accepting(a.initial()) && b.accepting(b.initial()));
    for (int q = 0; q < a.num_states(); ++q) out.add_state("a." + a.name(q), a.accepting(q));
    for (int q = 0; q < b.num_states(); ++q) out.add_state("b." + b.name(q), b.accepting(q));
    const int off_a = 1, off_b = 1 + a.num_states();
    for (int l = 0; l < letters; ++l) {
      for (int q = 0; q < a.num_states(); ++q)
        for (int r : a.successors(q, l)) out.add_transition(off_a + q, sigma[l], off_a + r);
      for (int q = 0; q < b.num_states(); ++q)
        for (int r : b.successors(q, l)) out.add_transition(off_b + q, sigma[l], off_b + r);
      for (int r : a.successors(a.initial(), l)) out.add_transition(init, sigma[l], off_a + r);
      for (int r : b.successors(b.initial(), l)) out.add_transition(init, sigma[l], off_b + r);
    }
    out.set_initial(init);
    return out;
  }
  // Product with a phase bit: phase 0 waits for an accepting state of a,
  // phase 1 for one of b; states (p, q, 0) with p accepting are accepting.
  NBA out(sigma);
  std::map<std::tuple<int, int, int>, int> ids;
  std::vector<std::tuple<int, int, int>> work;
  auto get = [&](int p, int q, int phase) {
    auto key = std::make_tuple(p, q, phase);
    auto it = ids.find(key);
    if (it != ids.end()) return it->second;
    int id = out.add_state("(" + a.name(p) + "," + b.name(q) + "," + std::to_string(phase) + ")",
                           phase == 0 && a.accepting(p));
    ids.emplace(key, id);
    work.push_back(key);
    return id;
  };
  out.set_initial(get(a.initial(), b.initial(), 0));
  while (!work.empty()) {
    auto [p, q, phase] = work.back();
    work.pop_back();
    int from = ids.at({p, q, phase});
    int next_phase = phase;
    if (phase == 0 && a.accepting(p)) next_phase = 1;
    else if (phase == 1 && b.accepting(q)) next_phase = 0;
    for (int l = 0; l < letters; ++l) {
      for (int p2 : a.successors(p, l))
        for (int q2 : b.successors(q, l)) out.add_transition(from, sigma[l], get(p2, q2, next_phase));
    }
  }
  return out;
}

NBA nba_trim(const NBA& a) {
  const int n = a.num_states();
  graph::Digraph g(n);
  for (int q = 0; q < n; ++q)
    for (int l = 0; l < static_cast<int>(a.alphabet().size()); ++l)
      for (int r : a.successors(q, l)) g.add_arc(q, {r, a.accepting(q), l});
  auto reach = graph::reachable_from(g, {a.initial()});
  int count = 0;
  auto comp = graph::strongly_connected_components(g, &count);
  std::vector<bool> good_comp(count, false);
  for (int q = 0; q < n; ++q) {
    if (!reach[q] || !a.accepting(q)) continue;
    for (const auto& arc : g.out[q])
      if (comp[arc.to] == comp[q]) good_comp[comp[q]] = true;
  }
  std::vector<bool> good(n, false);
  for (int q = 0; q < n; ++q) good[q] = reach[q] && good_comp[comp[q]];
  auto useful = graph::coreachable_to(g, good);
  NBA out(a.alphabet());
  std::vector<int> remap(n, -1);
  for (int q = 0; q < n; ++q) {
    if (reach[q] && useful[q]) remap[q] = out.add_state(a.name(q), a.accepting(q));
  }
  if (remap[a.initial()] < 0) return empty_nba(a.alphabet());
  for (int q = 0; q < n; ++q) {
    if (remap[q] < 0) continue;
    for (int l = 0; l < static_cast<int>(a.alphabet().size()); ++l)
      for (int r : a.successors(q, l))
        if (remap[r] >= 0) out.add_transition(remap[q], a.alphabet()[l], remap[r]);
  }
  out.set_initial(remap[a.initial()]);
  return out;
}

// ---------------------------------------------------------------- DPA

int DPA::add_state(std::string name) {
  names_.push_back(std::move(name));
  next_.emplace_back(alphabet_.size(), -1);
  priority_.emplace_back(alphabet_.size(), 0);
  return num_states() - 1;
}

void DPA::set_transition(int from, Letter a, int to, int priority) {
  int idx = alphabet_.index_of(a);
  if (idx < 0) throw Error(ErrorCode::WrongAlphabet, std::string("letter '") + a + "' not in alphabet");
  if (priority < 0) throw Error(ErrorCode::InvalidArgument, "priorities are natural numbers");
  next_[from][idx] = to;
  priority_[from][idx] = priority;
}

int DPA::find_state(const std::string& name) const {
  auto it = std::find(names_.begin(), names_.end(), name);
  return it == names_.end() ? -1 : static_cast<int>(it - names_.begin());
}

void DPA::validate() const {
  if (num_states() == 0) throw Error(ErrorCode::InvalidArgument, "DPA has no states");
  for (int q = 0; q < num_states(); ++q)
    for (int l = 0; l < static_cast<int>(alphabet_.size()); ++l)
      if (next_[q][l] < 0 || next_[q][l] >= num_states()) {
        throw Error(ErrorCode::InvalidArgument, "DPA transition function is not total at state " + names_[q]);
      }
}

int DPA::max_priority() const {
  int m = 0;
  for (const auto& row : priority_)
    for (int p : row) m = std::max(m, p);
  return m;
}

bool dpa_membership(const DPA& d, const LassoWord& w) {
  require_letters(d.alphabet(), w);
  int q = d.initial();
  for (Letter a : w.stem()) q = d.next(q, d.alphabet().index_of(a));
  // iterate the loop until the state at the loop start repeats
  std::vector<int> first_seen(d.num_states(), -1);
  std::vector<int> loop_max;
  for (int round = 0;; ++round) {
    if (first_seen[q] >= 0) {
      int best = 0;
      for (int r = first_seen[q]; r < round; ++r) best = std::max(best, loop_max[r]);
      return best % 2 == 0;
    }
    first_seen[q] = round;
    int best = 0;
    for (Letter a : w.loop()) {
      int l = d.alphabet().index_of(a);
      best = std::max(best, d.priority(q, l));
      q = d.next(q, l);
    }
    loop_max.push_back(best);
  }
}

DPA dpa_complement(const DPA& d) {
  DPA out(d.alphabet());
  for (int q = 0; q < d.num_states(); ++q) out.add_state(d.name(q));
  for (int q = 0; q < d.num_states(); ++q)
    for (int l = 0; l < static_cast<int>(d.alphabet().size()); ++l)
      out.set_transition(q, d.alphabet()[l], d.next(q, l), d.priority(q, l) + 1);
  out.set_initial(d.initial());
  return out;
}

// ---------------------------------------------------------------- lasso enumeration

std::vector<LassoWord> all_canonical_lassos(const Alphabet& alphabet, std::size_t bound) {
  std::set<LassoWord> out;
  const std::size_t k = alphabet.size();
  // all words of length <= bound, indexed by length
  std::vector<std::vector<std::string>> words(bound + 1);
  words[0].push_back("");
  for (std::size_t len = 1; len <= bound; ++len)
    for (const auto& w : words[len - 1])
      for (std::size_t i = 0; i < k; ++i) words[len].push_back(w + alphabet[i]);
  for (std::size_t total = 1; total <= bound; ++total) {
    for (std::size_t loop_len = 1; loop_len <= total; ++loop_len) {
      for (const auto& u : words[total - loop_len])
        for (const auto& v : words[loop_len]) {
          auto c = LassoWord::canonical(u, v);
          if (c.stem() == u && c.loop() == v) out.insert(std::move(c));
        }
    }
  }
  return {out.begin(), out.end()};
}

std::vector<LassoWord> enumerate_lassos(const NBA& a, std::size_t bound) {
  if (bound < 1) throw Error(ErrorCode::InvalidArgument, "size bound must be >= 1");
  std::vector<LassoWord> out;
  for (auto& w : all_canonical_lassos(a.alphabet(), bound))
    if (nba_membership(a, w)) out.push_back(std::move(w));
  return out;
}

std::vector<LassoWord> enumerate_lassos(const DPA& d, std::size_t bound) {
  if (bound < 1) throw Error(ErrorCode::InvalidArgument, "size bound must be >= 1");
  std::vector<LassoWord> out;
  for (auto& w : all_canonical_lassos(d.alphabet(), bound))
    if (dpa_membership(d, w)) out.push_back(std::move(w));
  return out;
}

}  // namespace omega
