#include "omega/relations.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <tuple>

#include "omega/errors.hpp"
#include "omega/graph.hpp"

namespace omega {

int TwoTapeBA::add_state(std::string name, bool accepting) {
  names_.push_back(std::move(name));
  accepting_.push_back(accepting);
  return num_states() - 1;
}

void TwoTapeBA::add_transition(Transition t) {
  if (t.from < 0 || t.from >= num_states() || t.to < 0 || t.to >= num_states())
    throw Error(ErrorCode::InvalidArgument, "transition between unknown states");
  if (t.in1 && !a1_.contains(*t.in1))
    throw Error(ErrorCode::WrongAlphabet, std::string("letter '") + *t.in1 + "' not in tape 1 alphabet");
  if (t.in2 && !a2_.contains(*t.in2))
    throw Error(ErrorCode::WrongAlphabet, std::string("letter '") + *t.in2 + "' not in tape 2 alphabet");
  transitions_.push_back(t);
}

int TwoTapeBA::find_state(const std::string& name) const {
  auto it = std::find(names_.begin(), names_.end(), name);
  return it == names_.end() ? -1 : static_cast<int>(it - names_.begin());
}

namespace {

constexpr int kEps = -1;

int code(const std::optional<Letter>& l) { return l ? static_cast<unsigned char>(*l) : kEps; }

// One tape as seen by the loop analysis: a lasso is followed along its structure,
// anything else collapses to a single node and may only be read by wildcard moves.
struct TapeView {
  std::optional<LassoWord> lasso;
  const Alphabet* alphabet = nullptr;

  std::size_t nodes() const { return lasso ? lasso->size() : 1; }
};

// Nodes (q, s1, s2) of the finite product together with the ones that start an
// accepting loop reading both tapes.
struct LoopAnalysis {
  std::size_t n1 = 1, n2 = 1;
  std::vector<bool> good;

  std::size_t index(int q, std::size_t s1, std::size_t s2) const { return (static_cast<std::size_t>(q) * n1 + s1) * n2 + s2; }
};

LoopAnalysis analyse_loops(const TwoTapeBA& b, const TapeView& t1, const TapeView& t2) {
  LoopAnalysis la;
  la.n1 = t1.nodes();
  la.n2 = t2.nodes();
  std::set<std::tuple<int, int, int, int>> present;
  std::vector<std::vector<const TwoTapeBA::Transition*>> out(b.num_states());
  for (const auto& t : b.transitions()) {
    present.emplace(t.from, code(t.in1), code(t.in2), t.to);
    out[t.from].push_back(&t);
  }

  // Letters an arc may need on a tape: ε, the structural letter, or all of them.
  auto options = [](const TapeView& tv, const std::optional<Letter>& in, std::size_t s) -> std::optional<std::vector<int>> {
    if (!in) return std::vector<int>{kEps};
    if (tv.lasso) {
      if (tv.lasso->structural_letter(s) != *in) return std::nullopt;
      return std::vector<int>{code(in)};
    }
    if (*in != (*tv.alphabet)[0]) return std::nullopt;  // one representative per wildcard group
    std::vector<int> all;
    for (Letter a : tv.alphabet->letters()) all.push_back(static_cast<unsigned char>(a));
    return all;
  };

  graph::Digraph g(b.num_states() * la.n1 * la.n2);
  for (int q = 0; q < b.num_states(); ++q)
    for (std::size_t s1 = 0; s1 < la.n1; ++s1)
      for (std::size_t s2 = 0; s2 < la.n2; ++s2)
        for (const auto* t : out[q]) {
          auto o1 = options(t1, t->in1, s1);
          auto o2 = options(t2, t->in2, s2);
          if (!o1 || !o2) continue;
          bool all = true;
          for (int x : *o1)
            for (int y : *o2) all = all && present.count({q, x, y, t->to});
          if (!all) continue;
          std::size_t d1 = t->in1 && t1.lasso ? t1.lasso->next_position(s1) : s1;
          std::size_t d2 = t->in2 && t2.lasso ? t2.lasso->next_position(s2) : s2;
          int bits = (b.accepting(q) ? 1 : 0) | (t->in1 ? 2 : 0) | (t->in2 ? 4 : 0);
          g.add_arc(static_cast<int>(la.index(q, s1, s2)),
                    {static_cast<int>(la.index(t->to, d1, d2)), b.accepting(q), bits});
        }

  int count = 0;
  auto comp = graph::strongly_connected_components(g, &count);
  std::vector<int> seen(count, 0);
  for (int v = 0; v < g.size(); ++v)
    for (const auto& arc : g.out[v])
      if (comp[arc.to] == comp[v]) seen[comp[v]] |= arc.label;
  std::vector<bool> target(g.size());
  for (int v = 0; v < g.size(); ++v) target[v] = seen[comp[v]] == 7;
  la.good = graph::coreachable_to(g, target);
  return la;
}

void check_word(const Alphabet& a, const LassoWord& w, int tape) {
  if (!a.contains_all(w.stem()) || !a.contains_all(w.loop()))
    throw Error(ErrorCode::AlphabetMismatch,
                "word " + w.to_string() + " is not over tape " + std::to_string(tape) + " alphabet " + a.letters());
}

}  // namespace

bool rel_pair_membership(const TwoTapeBA& b, const LassoWord& u, const LassoWord& v) {
  check_word(b.alphabet(1), u, 1);
  check_word(b.alphabet(2), v, 2);
  if (b.num_states() == 0) return false;
  auto la = analyse_loops(b, {u, &b.alphabet(1)}, {v, &b.alphabet(2)});
  return la.good[la.index(b.initial(), 0, 0)];
}

// ---------------------------------------------------------------- search

namespace {

// Letters of a descriptor, fetched in growing chunks.
class TapeReader {
 public:
  explicit TapeReader(const IndexedWord& w) : w_(w), lasso_(w.to_lasso()) {}

  const std::optional<LassoWord>& lasso() const { return lasso_; }
  // Lasso: structural index. Otherwise the 0-based absolute position.
  Letter at(std::uint64_t p) {
    if (lasso_) return lasso_->structural_letter(p);
    if (p >= cache_.size()) cache_ = w_.prefix(std::max<std::size_t>(2 * cache_.size(), p + 64));
    return cache_[p];
  }
  std::uint64_t next(std::uint64_t p) const { return lasso_ ? lasso_->next_position(p) : p + 1; }
  std::size_t node(std::uint64_t p) const { return lasso_ ? p : 0; }

 private:
  IndexedWord w_;
  std::optional<LassoWord> lasso_;
  std::string cache_;
};

}  // namespace

RelSearchResult rel_search(const TwoTapeBA& b, const IndexedWord& u, const IndexedWord& v, std::size_t max_configs) {
  RelSearchResult r;
  r.reach.assign(b.num_states(), 0);
  if (b.num_states() == 0) return r;
  TapeReader r1(u), r2(v);
  if (r1.lasso()) check_word(b.alphabet(1), *r1.lasso(), 1);
  if (r2.lasso()) check_word(b.alphabet(2), *r2.lasso(), 2);
  auto la = analyse_loops(b, {r1.lasso(), &b.alphabet(1)}, {r2.lasso(), &b.alphabet(2)});

  std::vector<std::vector<const TwoTapeBA::Transition*>> out(b.num_states());
  for (const auto& t : b.transitions()) out[t.from].push_back(&t);

  using Config = std::tuple<int, std::uint64_t, std::uint64_t>;
  std::set<Config> seen{{b.initial(), 0, 0}};
  std::deque<Config> queue{{b.initial(), 0, 0}};
  while (!queue.empty()) {
    auto [q, p1, p2] = queue.front();
    queue.pop_front();
    ++r.explored;
    if (b.accepting(q)) ++r.accepting_configs;
    r.reach[q] = std::max(r.reach[q], p2 + 1);
    if (la.good[la.index(q, r1.node(p1), r2.node(p2))]) {
      r.status = SearchResult::Status::Accepted;
      return r;
    }
    if (r.explored >= max_configs) break;
    for (const auto* t : out[q]) {
      if (t->in1 && r1.at(p1) != *t->in1) continue;
      if (t->in2 && r2.at(p2) != *t->in2) continue;
      Config next{t->to, t->in1 ? r1.next(p1) : p1, t->in2 ? r2.next(p2) : p2};
      if (seen.insert(next).second) queue.push_back(next);
    }
  }
  return r;
}

// ---------------------------------------------------------------- projection

NBA rel_projection(const TwoTapeBA& b, int tape) {
  if (tape != 1 && tape != 2) throw Error(ErrorCode::InvalidArgument, "tape must be 1 or 2");
  const auto& alphabet = b.alphabet(tape);
  NBA a(alphabet);
  if (b.num_states() == 0) {
    a.add_state("empty");
    return a;
  }
  auto kept = [&](const TwoTapeBA::Transition& t) { return tape == 1 ? t.in1 : t.in2; };
  auto other = [&](const TwoTapeBA::Transition& t) { return tape == 1 ? t.in2 : t.in1; };
  std::vector<std::vector<const TwoTapeBA::Transition*>> out(b.num_states());
  for (const auto& t : b.transitions()) out[t.from].push_back(&t);

  // (q, s): s = 0 waits for an accepting state, 1 for an other-tape letter, 2 just completed both.
  const int n = b.num_states();
  for (int q = 0; q < n; ++q)
    for (int s = 0; s < 3; ++s) a.add_state(b.name(q) + "/" + std::to_string(s), s == 2);
  a.set_initial(3 * b.initial());

  for (int q = 0; q < n; ++q) {
    // ε-closure on the kept tape, tracking (accepting seen, other letter seen).
    std::set<std::tuple<int, bool, bool>> closure{{q, false, false}};
    std::vector<std::tuple<int, bool, bool>> stack{{q, false, false}};
    std::set<std::tuple<int, Letter, bool, bool>> moves;
    while (!stack.empty()) {
      auto [p, fa, fo] = stack.back();
      stack.pop_back();
      bool fa2 = fa || b.accepting(p);
      for (const auto* t : out[p]) {
        bool fo2 = fo || other(*t).has_value();
        if (auto l = kept(*t)) {
          moves.emplace(t->to, *l, fa2, fo2);
        } else if (closure.emplace(t->to, fa2, fo2).second) {
          stack.emplace_back(t->to, fa2, fo2);
        }
      }
    }
    for (const auto& [to, l, fa, fo] : moves)
      for (int s = 0; s < 3; ++s) {
        int base = s == 2 ? 0 : s;
        int next = base == 0 ? (fa ? (fo ? 2 : 1) : 0) : (fo ? 2 : 1);
        a.add_transition(3 * q + s, l, 3 * to + next);
      }
  }
  return nba_trim(a);
}

RelationVerdict rel_cardinality(const TwoTapeBA& b, DeterminizeBudget budget) {
  RelationVerdict v;
  v.dom = nba_cardinality(rel_projection(b, 1), budget);
  v.im = nba_cardinality(rel_projection(b, 2), budget);
  using C = CardinalityVerdict::Class;
  if (v.dom.cls == C::Continuum || v.im.cls == C::Continuum) {
    v.cardinality = CardinalityVerdict::continuum();
  } else if (v.dom.cls == C::Finite && v.im.cls == C::Finite) {
    std::optional<std::uint64_t> n;
    if (v.dom.count == 0u || v.im.count == 0u) n = 0;
    else if (v.dom.count == 1u) n = v.im.count;
    else if (v.im.count == 1u) n = v.dom.count;
    v.cardinality = CardinalityVerdict::finite(n);
  } else {
    v.cardinality = CardinalityVerdict::aleph0();
  }
  v.countable = v.cardinality.countable();
  return v;
}

// ---------------------------------------------------------------- build_R

namespace {

class RBuilder {
 public:
  RBuilder() : b_(Alphabet(alphabets::kOmegaPrime), Alphabet(alphabets::kOmegaPrime)) {}

  int state(const std::string& name, bool acc = false) {
    int q = b_.find_state(name);
    return q >= 0 ? q : b_.add_state(name, acc);
  }
  void add(int from, std::optional<Letter> x, std::optional<Letter> y, int to) { b_.add_transition({from, x, y, to}); }
  // Every letter of Ω′ satisfying `pred` on the first (second) tape.
  template <typename Pred>
  void read1(int from, Pred pred, int to) {
    for (Letter a : alphabets::kOmegaPrime)
      if (pred(a)) add(from, a, std::nullopt, to);
  }
  template <typename Pred>
  void read2(int from, Pred pred, int to) {
    for (Letter a : alphabets::kOmegaPrime)
      if (pred(a)) add(from, std::nullopt, a, to);
  }
  template <typename P1, typename P2>
  void read_both(int from, P1 p1, P2 p2, int to) {
    for (Letter a : alphabets::kOmegaPrime)
      for (Letter c : alphabets::kOmegaPrime)
        if (p1(a) && p2(c)) add(from, a, c, to);
  }

  TwoTapeBA& get() { return b_; }

 private:
  TwoTapeBA b_;
};

const auto any = [](Letter) { return true; };
const auto is_d = [](Letter a) { return a == 'D'; };
const auto not_d = [](Letter a) { return a != 'D'; };
const auto is_0 = [](Letter a) { return a == '0'; };
const auto not_0 = [](Letter a) { return a != '0'; };
const auto plain = [](Letter a) { return a != '0' && a != 'D'; };
// The first word breaks the shape D 0^+y D 0^+y ...
void branch_u_shape(RBuilder& r, int init, int sink) {
  int s = r.state("g1:start"), a = r.state("g1:after_D"), z = r.state("g1:zeros"), y = r.state("g1:letter");
  int tail = r.state("g1:tail", true);
  r.add(init, std::nullopt, std::nullopt, s);
  r.read1(s, not_d, sink);
  r.read1(s, is_d, a);
  r.read1(a, is_0, z);
  r.read1(a, not_0, sink);
  r.read1(z, is_0, z);
  r.read1(z, is_d, a);
  r.read1(z, plain, y);
  r.read1(y, is_d, a);
  r.read1(y, not_d, sink);
  for (int q : {s, a, z, y}) r.add(q, std::nullopt, std::nullopt, tail);
  r.read_both(tail, not_d, any, tail);
}

// The second word breaks the shape D 0 D 0^+ D 0^+ ...
void branch_v_shape(RBuilder& r, int init, int sink) {
  int s = r.state("g2:start"), a = r.state("g2:first"), f = r.state("g2:first_zero"), c = r.state("g2:segment"),
      z = r.state("g2:zeros");
  int tail = r.state("g2:tail", true);
  r.add(init, std::nullopt, std::nullopt, s);
  r.read2(s, not_d, sink);
  r.read2(s, is_d, a);
  r.read2(a, is_0, f);
  r.read2(a, not_0, sink);
  r.read2(f, is_d, c);
  r.read2(f, not_d, sink);
  r.read2(c, is_0, z);
  r.read2(c, not_0, sink);
  r.read2(z, is_0, z);
  r.read2(z, is_d, c);
  r.read2(z, plain, sink);
  for (int q : {s, a, f, c, z}) r.add(q, std::nullopt, std::nullopt, tail);
  r.read_both(tail, any, not_d, tail);
}

// Segment lengths: ℓ_n of the first word, m_n of the second. With `shifted` false
// some n has m_n ≠ ℓ_n − 1, with `shifted` true some n has m_{n+1} ≠ ℓ_n.
void branch_lengths(RBuilder& r, int init, int sink, bool shifted) {
  std::string p = shifted ? "l2:" : "l1:";
  int s = r.state(p + "start"), v = r.state(p + "after_uD"), k = r.state(p + "aligned");
  int su = r.state(p + "skip_u"), sv = r.state(p + "skip_v"), c = r.state(p + "compare");
  r.add(init, std::nullopt, std::nullopt, s);
  r.read1(s, is_d, v);
  if (shifted) {
    int w = r.state(p + "skip_first");
    r.read2(v, is_d, w);
    r.read2(w, not_d, w);
    r.read2(w, is_d, k);
  } else {
    r.read2(v, is_d, k);
  }
  r.read1(k, not_d, su);
  r.read1(k, is_d, sv);
  r.read1(su, not_d, su);
  r.read1(su, is_d, sv);
  r.read2(sv, not_d, sv);
  r.read2(sv, is_d, k);
  r.add(k, std::nullopt, std::nullopt, c);
  r.read_both(c, not_d, not_d, c);
  if (shifted) {
    int ud = r.state(p + "u_ended"), vd = r.state(p + "v_ended");
    r.read1(c, is_d, ud);
    r.read2(c, is_d, vd);
    r.read2(ud, not_d, sink);
    r.read1(vd, not_d, sink);
  } else {
    int n1 = r.state(p + "need_one"), n2 = r.state(p + "need_end");
    r.read1(c, is_d, sink);
    r.read2(c, is_d, n1);
    r.read1(n1, is_d, sink);
    r.read1(n1, not_d, n2);
    r.read1(n2, not_d, sink);
  }
}

// Runs A on the letters y_n of the first word; the counter is the offset of the
// second head inside the current α segment.
void branch_simulate(RBuilder& r, int init, const CounterMachine& a) {
  const int n = a.num_states();
  auto seg = [&](int q) { return r.state("m:seg:" + a.name(q), a.accepting(q)); };
  auto rem = [&](int q) { return r.state("m:rem:" + a.name(q)); };
  auto end = [&](int q) { return r.state("m:end:" + a.name(q)); };
  for (int q = 0; q < n; ++q) {
    seg(q);
    rem(q);
    end(q);
  }
  int start = r.state("m:start");
  r.add(init, std::nullopt, std::nullopt, start);
  r.add(start, 'D', 'D', seg(a.initial()));
  for (int q = 0; q < n; ++q) {
    r.read_both(seg(q), not_d, is_0, seg(q));
    r.read2(seg(q), is_d, rem(q));
    r.read1(end(q), is_d, seg(q));
  }
  const auto& ts = a.transitions();
  for (std::size_t i = 0; i < ts.size(); ++i) {
    const auto& t = ts[i];
    Letter y = *t.input;
    int test = t.tests[0], d = t.deltas[0];
    int from = rem(t.from), to = end(t.to);
    if (test == 0) {
      if (d == 1) r.add(from, y, '0', to);
      if (d == 0) r.add(from, y, std::nullopt, to);
      continue;
    }
    std::string tag = "m:t" + std::to_string(i) + ":";
    int p0 = r.state(tag + "0");
    r.add(from, std::nullopt, std::nullopt, p0);
    int p1 = r.state(tag + "1");
    if (d == 1) r.add(p0, '0', '0', p1);
    else r.add(p0, '0', std::nullopt, p1);
    if (d >= 0) {
      r.add(p1, '0', '0', p1);
      r.add(p1, y, '0', to);
      continue;
    }
    int p2 = r.state(tag + "2");
    r.add(p1, y, std::nullopt, to);
    r.add(p1, '0', std::nullopt, p2);
    r.add(p2, '0', '0', p2);
    r.add(p2, y, '0', to);
  }
}

}  // namespace

TwoTapeBA build_R(const CounterMachine& a) {
  if (a.k() != 1) throw Error(ErrorCode::WrongArity, "build_R needs a one-counter machine");
  if (!a.real_time()) throw Error(ErrorCode::NotRealtime, "build_R needs a real-time machine");
  if (a.alphabet() != Alphabet(alphabets::kOmega))
    throw Error(ErrorCode::WrongAlphabet, "build_R needs the alphabet " + alphabets::kOmega);
  for (const auto& t : a.transitions())
    if (t.is_lambda()) throw Error(ErrorCode::NotRealtime, "build_R needs a real-time machine");

  RBuilder r;
  int init = r.state("init");
  int sink = r.state("sink", true);
  r.get().set_initial(init);
  r.read_both(sink, any, any, sink);
  branch_u_shape(r, init, sink);
  branch_v_shape(r, init, sink);
  branch_lengths(r, init, sink, false);
  branch_lengths(r, init, sink, true);
  branch_simulate(r, init, a);
  return std::move(r.get());
}

}  // namespace omega
