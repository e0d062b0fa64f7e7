// Summaries of well-nested excursions. Z(p, q) holds when some nonempty path
// from p to q starts and ends at the same positive level without dropping below
// it; Z0 is the same for excursions based at level 0. Values: 0 none, 1 some
// path, 2 some path through an accepting edge.

#include "omega/one_counter.hpp"

#include <algorithm>
#include <deque>
#include <tuple>

#include "omega/errors.hpp"
#include "omega/graph.hpp"

namespace omega {

namespace {

using Edge = OneCounterSystem::Edge;

struct Derivation {
  enum class Kind { None, Base, Wrap, Compose } kind = Kind::None;
  std::size_t e1 = 0, e2 = 0;  // Base uses e1; Wrap uses both
  int mid_from = -1, mid_to = -1;  // Wrap middle in Z (or empty); Compose split point in mid_to
  std::uint8_t mid_level = 0, left_level = 0, right_level = 0;
};

class Relation {
 public:
  explicit Relation(int n) : n_(n), value_(static_cast<std::size_t>(n) * n, 0), deriv_(value_.size() * 3) {}

  std::uint8_t at(int p, int q) const { return value_[idx(p, q)]; }
  const Derivation& derivation(int p, int q, std::uint8_t level) const { return deriv_[idx(p, q) * 3 + level]; }

  bool offer(int p, int q, std::uint8_t level, const Derivation& d) {
    auto& v = value_[idx(p, q)];
    if (level <= v) return false;
    // record every level this derivation newly covers
    for (std::uint8_t l = v + 1; l <= level; ++l) deriv_[idx(p, q) * 3 + l] = d;
    v = level;
    work_.emplace_back(p, q);
    return true;
  }

  bool pop(int& p, int& q) {
    if (work_.empty()) return false;
    std::tie(p, q) = work_.front();
    work_.pop_front();
    return true;
  }

  int size() const { return n_; }

 private:
  std::size_t idx(int p, int q) const { return static_cast<std::size_t>(p) * n_ + q; }
  int n_;
  std::vector<std::uint8_t> value_;
  std::vector<Derivation> deriv_;
  std::deque<std::pair<int, int>> work_;
};

std::uint8_t acc(const Edge& e) { return e.accepting ? 2 : 1; }

class Summaries {
 public:
  explicit Summaries(const OneCounterSystem& s) : s_(s), z_(s.num_states), z0_(s.num_states) {
    const int n = s.num_states;
    up_into_.resize(n);
    down_from_.resize(n);
    zero_up_into_.resize(n);
    for (std::size_t i = 0; i < s.edges.size(); ++i) {
      const auto& e = s.edges[i];
      if (!e.zero && e.delta == 1) up_into_[e.to].push_back(i);
      if (!e.zero && e.delta == -1) down_from_[e.from].push_back(i);
      if (e.zero && e.delta == 1) zero_up_into_[e.to].push_back(i);
    }
    compute_z();
    compute_z0();
  }

  const Relation& z() const { return z_; }
  const Relation& z0() const { return z0_; }

  /// Edge sequence realizing rel(p, q) at `level`.
  std::vector<std::size_t> expand(bool base_zero, int p, int q, std::uint8_t level) const {
    struct Task {
      bool zero;
      int p, q;
      std::uint8_t level;
      std::optional<std::size_t> edge;
    };
    std::vector<std::size_t> out;
    std::vector<Task> stack{{base_zero, p, q, level, std::nullopt}};
    while (!stack.empty()) {
      Task t = stack.back();
      stack.pop_back();
      if (t.edge) {
        out.push_back(*t.edge);
        continue;
      }
      const Relation& rel = t.zero ? z0_ : z_;
      const Derivation& d = rel.derivation(t.p, t.q, t.level);
      switch (d.kind) {
        case Derivation::Kind::Base:
          out.push_back(d.e1);
          break;
        case Derivation::Kind::Wrap:
          stack.push_back({false, 0, 0, 0, d.e2});
          if (d.mid_from >= 0) stack.push_back({false, d.mid_from, d.mid_to, d.mid_level, std::nullopt});
          stack.push_back({false, 0, 0, 0, d.e1});
          break;
        case Derivation::Kind::Compose:
          stack.push_back({t.zero, d.mid_to, t.q, d.right_level, std::nullopt});
          stack.push_back({t.zero, t.p, d.mid_to, d.left_level, std::nullopt});
          break;
        case Derivation::Kind::None:
          throw Error(ErrorCode::InvalidArgument, "missing summary derivation");
      }
    }
    return out;
  }

 private:
  void wrap(Relation& rel, const std::vector<std::vector<std::size_t>>& ups, int p, int q, std::uint8_t level) {
    // e1 enters p going up, e2 leaves q going down; p == q with level 0 is the empty middle
    for (auto i1 : ups[p]) {
      for (auto i2 : down_from_[q]) {
        const auto& e1 = s_.edges[i1];
        const auto& e2 = s_.edges[i2];
        Derivation d;
        d.kind = Derivation::Kind::Wrap;
        d.e1 = i1;
        d.e2 = i2;
        if (level > 0) {
          d.mid_from = p;
          d.mid_to = q;
          d.mid_level = level;
        }
        rel.offer(e1.from, e2.to, std::max({level, acc(e1), acc(e2)}), d);
      }
    }
  }

  void close(Relation& rel, bool wraps) {
    const int n = rel.size();
    int p, q;
    while (rel.pop(p, q)) {
      const std::uint8_t v = rel.at(p, q);
      for (int r = 0; r < n; ++r) {
        if (auto a = rel.at(r, p)) {
          Derivation d;
          d.kind = Derivation::Kind::Compose;
          d.mid_to = p;
          d.left_level = a;
          d.right_level = v;
          rel.offer(r, q, std::max(a, v), d);
        }
        if (auto b = rel.at(q, r)) {
          Derivation d;
          d.kind = Derivation::Kind::Compose;
          d.mid_to = q;
          d.left_level = v;
          d.right_level = b;
          rel.offer(p, r, std::max(v, b), d);
        }
      }
      if (wraps) wrap(rel, up_into_, p, q, v);
    }
  }

  void compute_z() {
    for (std::size_t i = 0; i < s_.edges.size(); ++i) {
      const auto& e = s_.edges[i];
      if (!e.zero && e.delta == 0) z_.offer(e.from, e.to, acc(e), {Derivation::Kind::Base, i});
    }
    for (int p = 0; p < s_.num_states; ++p) wrap(z_, up_into_, p, p, 0);
    close(z_, true);
  }

  void compute_z0() {
    for (std::size_t i = 0; i < s_.edges.size(); ++i) {
      const auto& e = s_.edges[i];
      if (e.zero && e.delta == 0) z0_.offer(e.from, e.to, acc(e), {Derivation::Kind::Base, i});
    }
    for (int p = 0; p < s_.num_states; ++p) {
      wrap(z0_, zero_up_into_, p, p, 0);
      for (int q = 0; q < s_.num_states; ++q)
        if (auto v = z_.at(p, q)) wrap(z0_, zero_up_into_, p, q, v);
    }
    close(z0_, false);
  }

  const OneCounterSystem& s_;
  Relation z_, z0_;
  std::vector<std::vector<std::size_t>> up_into_, down_from_, zero_up_into_;
};

/// Graph whose arcs are summary entries or single edges; label indexes `arcs`.
struct SummaryArc {
  bool is_edge;
  bool zero;  // which relation, when not an edge
  int p, q;
  std::uint8_t level;
  std::size_t edge;
};

std::vector<std::size_t> spell(const Summaries& sum, const graph::Digraph& g, const std::vector<SummaryArc>& arcs,
                               const std::vector<graph::Step>& path) {
  std::vector<std::size_t> out;
  for (auto step : path) {
    const auto& a = arcs[g.out[step.node][step.arc].label];
    if (a.is_edge) {
      out.push_back(a.edge);
    } else {
      auto part = sum.expand(a.zero, a.p, a.q, a.level);
      out.insert(out.end(), part.begin(), part.end());
    }
  }
  return out;
}

}  // namespace

std::optional<OneCounterLasso> one_counter_buchi(const OneCounterSystem& s) {
  const int n = s.num_states;
  if (n == 0) return std::nullopt;
  Summaries sum(s);

  // level-0 graph: arcs are Z0 entries
  std::vector<SummaryArc> arcs;
  graph::Digraph g0(n);
  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q)
      if (auto v = sum.z0().at(p, q)) {
        g0.add_arc(p, {q, v == 2, static_cast<int>(arcs.size())});
        arcs.push_back({false, true, p, q, v, 0});
      }
  auto at_zero = graph::reachable_from(g0, {s.initial});

  // Case A: an accepting level-0 excursion repeated forever
  for (int p = 0; p < n; ++p) {
    if (!at_zero[p] || sum.z0().at(p, p) != 2) continue;
    OneCounterLasso out;
    out.stem = spell(sum, g0, arcs, *graph::shortest_path(g0, s.initial, p));
    out.loop = sum.expand(true, p, p, 2);
    return out;
  }

  // Case B: leave level 0 for good, then cycle through positive-level summaries
  // and increments
  graph::Digraph gp(n + 1);
  const int start = n;
  for (std::size_t i = 0; i < s.edges.size(); ++i) {
    const auto& e = s.edges[i];
    if (e.zero && e.delta == 1 && at_zero[e.from]) {
      gp.add_arc(start, {e.to, false, static_cast<int>(arcs.size())});
      arcs.push_back({true, false, e.from, e.to, 0, i});
    }
    if (!e.zero && e.delta == 1) {
      gp.add_arc(e.from, {e.to, e.accepting, static_cast<int>(arcs.size())});
      arcs.push_back({true, false, e.from, e.to, 0, i});
    }
  }
  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q)
      if (auto v = sum.z().at(p, q)) {
        gp.add_arc(p, {q, v == 2, static_cast<int>(arcs.size())});
        arcs.push_back({false, false, p, q, v, 0});
      }
  auto lasso = graph::find_accepting_lasso(gp, start);
  if (!lasso) return std::nullopt;

  // nothing enters the virtual start, so the stem begins there with a seed edge
  OneCounterLasso out;
  const auto& seed = s.edges[arcs[gp.out[start][lasso->stem.front().arc].label].edge];
  out.stem = spell(sum, g0, arcs, *graph::shortest_path(g0, s.initial, seed.from));
  auto rest = spell(sum, gp, arcs, lasso->stem);
  out.stem.insert(out.stem.end(), rest.begin(), rest.end());
  out.loop = spell(sum, gp, arcs, lasso->loop);
  return out;
}

namespace {

struct Product {
  OneCounterSystem system;
  std::vector<int> machine_state;
};

/// Product of a one-counter machine with the positions of a lasso; the flag
/// records an accepting visit since the last accepting edge, and an edge is
/// accepting when it reads a letter with the flag up.
Product product(const CounterMachine& m, const LassoWord& w) {
  if (m.k() != 1) throw Error(ErrorCode::WrongArity, "expected a one-counter machine, got k = " + std::to_string(m.k()));
  if (!m.alphabet().contains_all(w.stem()) || !m.alphabet().contains_all(w.loop()))
    throw Error(ErrorCode::AlphabetMismatch, "word " + w.to_string() + " leaves the machine alphabet");
  const int len = static_cast<int>(w.size());
  auto id = [&](int q, int pos, int flag) { return (q * len + pos) * 2 + flag; };
  const int total = m.num_states() * len * 2;

  std::vector<int> index(total, -1);
  Product out;
  auto& s = out.system;
  std::deque<int> work;
  auto touch = [&](int node) {
    if (index[node] < 0) {
      index[node] = s.num_states++;
      out.machine_state.push_back(node / 2 / len);
      work.push_back(node);
    }
    return index[node];
  };
  s.initial = touch(id(m.initial(), 0, m.accepting(m.initial()) ? 1 : 0));
  while (!work.empty()) {
    int node = work.front();
    work.pop_front();
    int flag = node % 2, pos = (node / 2) % len, q = node / 2 / len;
    for (auto i : m.outgoing(q)) {
      const auto& t = m.transitions()[i];
      OneCounterSystem::Edge e;
      e.zero = t.tests[0] == 0;
      e.delta = t.deltas[0];
      e.tag = i;
      if (e.zero && e.delta < 0) continue;
      int next_flag;
      int next_pos = pos;
      if (t.is_lambda()) {
        next_flag = flag || m.accepting(t.to);
      } else {
        if (*t.input != w.structural_letter(pos)) continue;
        next_pos = static_cast<int>(w.next_position(pos));
        e.accepting = flag == 1;
        next_flag = e.accepting ? m.accepting(t.to) : (flag || m.accepting(t.to));
      }
      e.from = index[node];
      e.to = touch(id(t.to, next_pos, next_flag ? 1 : 0));
      s.edges.push_back(e);
    }
  }
  return out;
}

}  // namespace

bool oca_up_membership(const CounterMachine& m, const LassoWord& w) {
  return one_counter_buchi(product(m, w).system).has_value();
}

std::optional<AcceptanceCertificate> oca_up_witness(const CounterMachine& m, const LassoWord& w) {
  auto p = product(m, w);
  auto lasso = one_counter_buchi(p.system);
  if (!lasso) return std::nullopt;
  auto tags = [&](const std::vector<std::size_t>& edges) {
    std::vector<std::size_t> out;
    for (auto e : edges) out.push_back(p.system.edges[e].tag);
    return out;
  };
  return make_certificate(m, tags(lasso->stem), tags(lasso->loop));
}

}  // namespace omega
