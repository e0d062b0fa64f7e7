#include "omega/codings.hpp"

#include <numeric>

#include "cm_builder.hpp"
#include "omega/block_layout.hpp"
#include "omega/errors.hpp"
#include "omega/one_counter.hpp"

namespace omega {

CodingParams CodingParams::primorial(Alphabet sigma) { return with_k(kPrimorialK, std::move(sigma)); }

CodingParams CodingParams::with_k(std::uint64_t K, Alphabet sigma) {
  CodingParams p;
  p.sigma = std::move(sigma);
  const std::uint64_t t = 3 * p.k();
  p.S = t * t * t;
  p.K = K;
  return p;
}

std::uint64_t CodingParams::param(Coding c) const noexcept {
  switch (c) {
    case Coding::Theta: return S;
    case Coding::HK:
    case Coding::PhiK: return K;
    case Coding::H: return 0;
  }
  return 0;
}

Alphabet CodingParams::input(Coding c) const {
  switch (c) {
    case Coding::Theta: return sigma;
    case Coding::HK: return sigma.united("E");
    case Coding::PhiK: return sigma.united("EABC");
    case Coding::H: return sigma.united("EABCF");
  }
  return sigma;
}

Alphabet CodingParams::output(Coding c) const { return input(c).united(coding_letters(c)); }

namespace {

struct Run {
  Slot::Kind kind = Slot::Kind::Filler;
  Letter letter = 0;
  BigNat length = 1;
  BigNat source = 0;
};

/// Walks the block layout of a coding run by run.
class RunCursor {
 public:
  RunCursor(Coding c, std::uint64_t param) : c_(c), param_(param), power_(param) {}

  Run next() {
    for (;;) {
      Run r = current();
      advance();
      if (r.length > 0) return r;
    }
  }

 private:
  Run source() const { return {Slot::Kind::Source, 0, 1, n_}; }
  static Run fixed(Slot::Kind kind, Letter a, BigNat len = 1) { return {kind, a, std::move(len), 0}; }

  Run current() const {
    using K = Slot::Kind;
    switch (c_) {
      case Coding::Theta:
        return part_ == 0 ? source() : fixed(K::Filler, 'E', power_);
      case Coding::HK:
        if (n_ == 1) {
          switch (part_) {
            case 0: return fixed(K::Marker, 'A');
            case 1: return fixed(K::Filler, 'C', power_);
            case 2: return source();
            default: return fixed(K::Marker, 'B');
          }
        }
        switch (part_) {
          case 0: return fixed(K::Filler, 'C', power_);
          case 1: return fixed(K::Marker, 'A');
          case 2: return fixed(K::Filler, 'C', power_);
          case 3: return source();
          default: return fixed(K::Marker, 'B');
        }
      case Coding::PhiK:
        return part_ == 0 ? fixed(K::Filler, 'F', BigNat(param_) - 1) : source();
      case Coding::H:
        switch (part_) {
          case 0: return fixed(K::Marker, 'D');
          case 1: return fixed(K::Filler, '0', n_);
          default: return source();
        }
    }
    return source();
  }

  int parts() const {
    switch (c_) {
      case Coding::Theta: return 2;
      case Coding::HK: return n_ == 1 ? 4 : 5;
      case Coding::PhiK: return 2;
      case Coding::H: return 3;
    }
    return 1;
  }

  void advance() {
    if (++part_ < parts()) return;
    part_ = 0;
    ++n_;
    if (c_ == Coding::Theta || c_ == Coding::HK) power_ *= param_;
  }

  Coding c_;
  std::uint64_t param_;
  BigNat n_ = 1;
  BigNat power_;
  int part_ = 0;
};

void check_param(Coding c, std::uint64_t param) {
  if (c != Coding::H && param < 1) throw Error(ErrorCode::InvalidArgument, "coding parameter must be positive");
}

/// First position in [from, from + len) where w differs from `a`.
std::optional<BigNat> first_mismatch(const LassoWord& w, const BigNat& from, const BigNat& len, Letter a) {
  const BigNat end = from + len;  // exclusive
  const std::size_t stem = w.stem().size(), loop = w.loop().size();
  BigNat p = from;
  while (p < end && p <= stem) {
    if (w.stem()[static_cast<std::size_t>(p) - 1] != a) return p;
    ++p;
  }
  if (p >= end) return std::nullopt;
  const std::size_t offset = static_cast<std::size_t>((p - stem - 1) % loop);
  for (std::size_t i = 0; i < loop; ++i) {
    if (w.loop()[(offset + i) % loop] == a) continue;
    BigNat q = p + i;
    return q < end ? std::optional<BigNat>(q) : std::nullopt;
  }
  return std::nullopt;
}

DecodeResult deviates(BigNat pos, Letter expected) {
  DecodeResult r;
  r.status = DecodeResult::Status::Deviates;
  r.position = std::move(pos);
  r.expected = expected;
  return r;
}

DecodeResult in_image(IndexedWord x) {
  DecodeResult r;
  r.status = DecodeResult::Status::InImage;
  r.preimage = std::move(x);
  return r;
}

constexpr std::size_t kMaxRuns = 1'000'000;

DecodeResult decode_lasso(Coding c, std::uint64_t param, const Alphabet& input, const LassoWord& w) {
  RunCursor cursor(c, param);
  BigNat pos = 1;
  const std::size_t stem = w.stem().size(), loop = w.loop().size();
  // φ_K images repeat with period |loop|·K past the stem
  const BigNat horizon = BigNat(stem) + BigNat(loop) * param;
  for (std::size_t i = 0; i < kMaxRuns; ++i) {
    if (c == Coding::PhiK && pos > horizon) {
      std::uint64_t first = stem / param + 1;  // first source index past the stem
      std::uint64_t period = loop / std::gcd<std::uint64_t>(loop, param);
      std::string u, v;
      for (std::uint64_t n = 1; n < first; ++n) u.push_back(w.letter_at(BigNat(n) * param));
      for (std::uint64_t n = first; n < first + period; ++n) v.push_back(w.letter_at(BigNat(n) * param));
      return in_image(IndexedWord::lasso(canonicalize_lasso(u, v)));
    }
    Run r = cursor.next();
    if (r.kind == Slot::Kind::Source) {
      if (!input.contains(w.letter_at(pos))) return deviates(pos, 0);
    } else if (auto bad = first_mismatch(w, pos, r.length, r.letter)) {
      return deviates(*bad, r.letter);
    }
    pos += r.length;
  }
  return {};
}

DecodeResult decode_scan(Coding c, std::uint64_t param, const Alphabet& input, const IndexedWord& w,
                         std::size_t scan_limit) {
  RunCursor cursor(c, param);
  BigNat pos = 1;
  while (pos <= scan_limit) {
    Run r = cursor.next();
    for (BigNat i = 0; i < r.length && pos <= scan_limit; ++i, ++pos) {
      Letter a = w.letter_at(pos);
      if (r.kind == Slot::Kind::Source ? !input.contains(a) : a != r.letter)
        return deviates(pos, r.kind == Slot::Kind::Source ? 0 : r.letter);
    }
  }
  return {};
}

}  // namespace

BigNat source_position(Coding c, std::uint64_t param, std::uint64_t n) {
  check_param(c, param);
  if (n < 1) throw Error(ErrorCode::IndexOutOfRange, "positions are 1-based");
  RunCursor cursor(c, param);
  BigNat pos = 1;
  for (;;) {
    Run r = cursor.next();
    if (r.kind == Slot::Kind::Source && r.source == n) return pos;
    pos += r.length;
  }
}

IndexedWord encode(Coding c, const CodingParams& params, const IndexedWord& x) {
  const std::uint64_t param = params.param(c);
  check_param(c, param);
  const Alphabet input = params.input(c);
  if (!input.contains_all(x.alphabet().letters()))
    throw Error(ErrorCode::AlphabetMismatch, "word " + x.to_string() + " is not over " + input.letters());
  IndexedWord out = IndexedWord::coded(c, param, x);
  if (c == Coding::PhiK && x.kind() == IndexedWord::Kind::Lasso)
    if (auto l = out.to_lasso()) return IndexedWord::lasso(*l);
  return out;
}

std::string DecodeResult::reason() const {
  if (status != Status::Deviates) return "";
  return expected ? std::string("EXPECTED_") + expected : "EXPECTED_SOURCE";
}

std::string DecodeResult::to_string() const {
  switch (status) {
    case Status::InImage: return "IN_IMAGE(" + preimage->to_string() + ")";
    case Status::Deviates: return "DEVIATES(" + position.str() + ", " + reason() + ")";
    case Status::Undetermined: return "UNDETERMINED";
  }
  return "";
}

DecodeResult decode(Coding c, std::uint64_t param, const Alphabet& input, const IndexedWord& w, std::size_t scan_limit) {
  check_param(c, param);
  if (w.coding() == c && w.parameter() == param && input.contains_all(w.inner().alphabet().letters()))
    return in_image(w.inner());
  if (auto l = w.to_lasso()) return decode_lasso(c, param, input, *l);
  return decode_scan(c, param, input, w, scan_limit);
}

DecodeResult decode(Coding c, const CodingParams& params, const IndexedWord& w, std::size_t scan_limit) {
  return decode(c, params.param(c), params.input(c), w, scan_limit);
}

// ------------------------------------------------------------------ recognizers

namespace {

NBA phik_recognizer(std::uint64_t K, const Alphabet& input, const Alphabet& output) {
  NBA a(output);
  std::vector<int> phase;
  for (std::uint64_t j = 0; j < K; ++j) phase.push_back(a.add_state("t" + std::to_string(j)));
  int bad = a.add_state("deviated", true);
  a.set_initial(phase[0]);
  for (Letter x : output.letters()) {
    a.add_transition(bad, x, bad);
    for (std::uint64_t j = 0; j < K; ++j) {
      bool ok = j + 1 < K ? x == 'F' : input.contains(x);
      a.add_transition(phase[j], x, ok ? phase[(j + 1) % K] : bad);
    }
  }
  return a;
}

/// Shared pieces of the one-counter recognizers.
struct RecognizerBuilder {
  CounterMachine m;
  detail::Builder b;
  int sink;

  explicit RecognizerBuilder(const Alphabet& output) : m(output, 1, true), b(m), sink(b.state("deviated", true)) {
    for (Letter x : output.letters()) on(sink, x, sink);
  }

  void on(int from, Letter x, int to, int test = -1, int delta = 0) { b.add(from, x, {test}, to, {delta}); }
  template <typename Pred>
  void on_if(int from, Pred pred, int to, int test = -1, int delta = 0) {
    for (Letter x : m.alphabet().letters())
      if (pred(x)) on(from, x, to, test, delta);
  }
  std::vector<int> chain(const std::string& prefix, std::uint64_t n) {
    std::vector<int> out;
    for (std::uint64_t j = 0; j < n; ++j) out.push_back(b.state(prefix + std::to_string(j)));
    return out;
  }
};

constexpr std::uint64_t kMaxRecognizerStates = 2'000'000;

void check_size(std::uint64_t n) {
  if (n > kMaxRecognizerStates)
    throw Error(ErrorCode::BudgetExceeded, "recognizer would need " + std::to_string(n) + " states");
}

CounterMachine theta_recognizer(std::uint64_t S, const Alphabet& input, const Alphabet& output) {
  check_size(2 * S);
  RecognizerBuilder r(output);
  auto& b = r.b;
  auto is_input = [&](Letter x) { return input.contains(x); };
  auto not_input = [&](Letter x) { return !input.contains(x); };
  auto any = [](Letter) { return true; };

  int start = b.state("start"), skip = b.state("skip"), tail = b.state("tail", true), load = b.state("load");
  r.m.set_initial(start);
  auto first = r.chain("first", S + 1);  // E's read in block 1
  auto phase = r.chain("phase", S);      // E's of the next block, mod S

  r.on_if(start, not_input, r.sink);
  for (int to : {skip, load, tail, first[0]}) r.on_if(start, is_input, to);
  r.on_if(skip, any, skip);
  r.on_if(skip, any, tail);
  r.on_if(skip, is_input, load);
  r.on(tail, 'E', tail);

  for (std::uint64_t j = 0; j <= S; ++j) {
    r.on(first[j], 'E', j < S ? first[j + 1] : r.sink);
    if (j != S) r.on_if(first[j], is_input, r.sink);
  }

  r.on(load, 'E', load, -1, 1);
  r.on_if(load, is_input, phase[0]);
  for (std::uint64_t j = 0; j < S; ++j) {
    if (j + 1 < S) {
      r.on(phase[j], 'E', phase[j + 1]);
    } else {
      r.on(phase[j], 'E', phase[0], 1, -1);
      r.on(phase[j], 'E', r.sink, 0);
    }
    if (j != 0) r.on_if(phase[j], is_input, r.sink);
  }
  r.on_if(phase[0], is_input, r.sink, 1);
  return std::move(r.m);
}

CounterMachine hk_recognizer(std::uint64_t K, const Alphabet& input, const Alphabet& output) {
  check_size(2 * K);
  RecognizerBuilder r(output);
  auto& b = r.b;
  auto is_input = [&](Letter x) { return input.contains(x); };
  auto other = [&](std::string_view allowed) {
    return [allowed, &input](Letter x) {
      bool ok = false;
      for (char a : allowed) ok |= a == '*' ? input.contains(x) : a == x;
      return !ok;
    };
  };

  // pattern  A C* x B (C* A C* x B)^ω
  int g0 = b.state("start"), g1 = b.state("after-A"), g2 = b.state("after-x"), g3 = b.state("after-B");
  int tail = b.state("tail", true);
  r.m.set_initial(g0);
  r.on(g0, 'A', g1);
  r.on_if(g0, other("A"), r.sink);
  r.on(g1, 'C', g1);
  r.on_if(g1, is_input, g2);
  r.on_if(g1, other("C*"), r.sink);
  r.on(g2, 'B', g3);
  r.on_if(g2, other("B"), r.sink);
  r.on(g3, 'C', g3);
  r.on(g3, 'A', g1);
  r.on_if(g3, other("CA"), r.sink);
  for (int g : {g1, g3}) r.on(g, 'C', tail);
  r.on(tail, 'C', tail);

  // first block: C^K between A and the source letter
  auto first = r.chain("first", K + 1);
  r.on(g0, 'A', first[0]);
  for (std::uint64_t j = 0; j <= K; ++j) {
    r.on(first[j], 'C', j < K ? first[j + 1] : r.sink);
    r.on_if(first[j], other(j == K ? "C*" : "C"), r.sink);
  }

  // leading C's of block n+1 = K times the C's after A in block n
  int up = b.state("up"), up_x = b.state("up-x");
  auto phase = r.chain("phase", K);
  for (int g : {g0, g3}) r.on(g, 'A', up);
  r.on(up, 'C', up, -1, 1);
  r.on_if(up, is_input, up_x);
  r.on_if(up, other("C*"), r.sink);
  r.on(up_x, 'B', phase[0]);
  r.on_if(up_x, other("B"), r.sink);
  for (std::uint64_t j = 0; j < K; ++j) {
    if (j + 1 < K) {
      r.on(phase[j], 'C', phase[j + 1]);
    } else {
      r.on(phase[j], 'C', phase[0], 1, -1);
      r.on(phase[j], 'C', r.sink, 0);
    }
    r.on_if(phase[j], other(j == 0 ? "CA" : "C"), r.sink);
  }
  r.on(phase[0], 'A', r.sink, 1);

  // C's after A equal the leading C's of the same block
  int lead = b.state("lead"), rest = b.state("rest");
  r.on(g2, 'B', lead);
  r.on(lead, 'C', lead, -1, 1);
  r.on(lead, 'A', rest);
  r.on_if(lead, other("CA"), r.sink);
  r.on(rest, 'C', rest, 1, -1);
  r.on(rest, 'C', r.sink, 0);
  r.on_if(rest, is_input, r.sink, 1);
  r.on_if(rest, other("C*"), r.sink);
  return std::move(r.m);
}

CounterMachine h_recognizer(const Alphabet& output) {
  RecognizerBuilder r(output);
  auto& b = r.b;
  auto not_d = [](Letter x) { return x != 'D'; };
  auto letter_only = [](Letter x) { return x != 'D' && x != '0'; };

  // segments between D's: 0^+ followed by at most one other letter
  int e0 = b.state("start"), e1 = b.state("after-D"), e2 = b.state("zeros"), e3 = b.state("after-letter");
  int tail = b.state("tail", true);
  r.m.set_initial(e0);
  r.on_if(e0, not_d, r.sink);
  r.on(e0, 'D', e1);
  r.on(e1, '0', e2);
  r.on_if(e1, [](Letter x) { return x != '0'; }, r.sink);
  r.on(e2, '0', e2);
  r.on(e2, 'D', e1);
  r.on_if(e2, letter_only, e3);
  r.on(e3, 'D', e1);
  r.on_if(e3, not_d, r.sink);
  for (int e : {e0, e1, e2, e3}) r.on_if(e, not_d, tail);
  r.on_if(tail, not_d, tail);

  // the first segment has length 2
  auto first = r.chain("first", 3);
  r.on(e0, 'D', first[0]);
  for (int j = 0; j < 3; ++j) {
    r.on_if(first[j], not_d, j < 2 ? first[j + 1] : r.sink);
    if (j != 2) r.on(first[j], 'D', r.sink);
  }

  // each segment is one letter longer than the previous one
  int up = b.state("up"), down_first = b.state("down-first"), down = b.state("down");
  for (int e : {e0, e2, e3}) r.on(e, 'D', up);
  r.on_if(up, not_d, up, -1, 1);
  r.on(up, 'D', down_first);
  r.on_if(down_first, not_d, down);
  r.on(down_first, 'D', r.sink);
  r.on_if(down, not_d, down, 1, -1);
  r.on_if(down, not_d, r.sink, 0);
  r.on(down, 'D', r.sink, 1);
  return std::move(r.m);
}

}  // namespace

Recognizer complement_recognizer(Coding c, const CodingParams& params) {
  const std::uint64_t param = params.param(c);
  check_param(c, param);
  const Alphabet input = params.input(c), output = params.output(c);
  switch (c) {
    case Coding::PhiK:
      check_size(param);
      return phik_recognizer(param, input, output);
    case Coding::Theta: return theta_recognizer(param, input, output);
    case Coding::HK: return hk_recognizer(param, input, output);
    case Coding::H: return h_recognizer(output);
  }
  throw Error(ErrorCode::InvalidArgument, "unknown coding");
}

bool recognizer_accepts(const Recognizer& r, const LassoWord& w) {
  if (auto a = std::get_if<NBA>(&r)) return nba_membership(*a, w);
  return oca_up_membership(std::get<CounterMachine>(r), w);
}

// ------------------------------------------------------------------ expressions

struct LanguageExpr::Node {
  Kind kind = Kind::Nba;
  Coding coding = Coding::Theta;
  std::uint64_t param = 0;
  Alphabet input;
  std::optional<NBA> nba;
  std::optional<CounterMachine> machine;
  std::vector<LanguageExpr> operands;
};

namespace {

std::shared_ptr<LanguageExpr::Node> make_node(LanguageExpr::Kind kind, std::vector<LanguageExpr> operands = {}) {
  auto n = std::make_shared<LanguageExpr::Node>();
  n->kind = kind;
  n->operands = std::move(operands);
  return n;
}

}  // namespace

LanguageExpr LanguageExpr::leaf(NBA a) {
  auto n = make_node(Kind::Nba);
  n->nba = std::move(a);
  return LanguageExpr(n);
}

LanguageExpr LanguageExpr::leaf(CounterMachine m) {
  auto n = make_node(Kind::Machine);
  n->machine = std::move(m);
  return LanguageExpr(n);
}

LanguageExpr LanguageExpr::image(Coding c, std::uint64_t param, LanguageExpr of) {
  check_param(c, param);
  auto n = make_node(Kind::Image, {std::move(of)});
  n->coding = c;
  n->param = param;
  return LanguageExpr(n);
}

LanguageExpr LanguageExpr::pattern_complement(Coding c, std::uint64_t param, Alphabet input) {
  check_param(c, param);
  auto n = make_node(Kind::PatternComplement);
  n->coding = c;
  n->param = param;
  n->input = std::move(input);
  return LanguageExpr(n);
}

LanguageExpr LanguageExpr::union_of(LanguageExpr a, LanguageExpr b) {
  return LanguageExpr(make_node(Kind::Union, {std::move(a), std::move(b)}));
}

LanguageExpr LanguageExpr::complement_of(LanguageExpr e) { return LanguageExpr(make_node(Kind::Complement, {std::move(e)})); }

LanguageExpr::Kind LanguageExpr::kind() const noexcept { return node_->kind; }
Coding LanguageExpr::coding() const { return node_->coding; }
std::uint64_t LanguageExpr::param() const { return node_->param; }
const Alphabet& LanguageExpr::input() const { return node_->input; }
const NBA& LanguageExpr::nba() const { return *node_->nba; }
const CounterMachine& LanguageExpr::machine() const { return *node_->machine; }
const std::vector<LanguageExpr>& LanguageExpr::operands() const { return node_->operands; }

namespace {

std::string coding_tag(Coding c, std::uint64_t param) {
  std::string s(to_string(c));
  return c == Coding::H ? s : s + "[" + std::to_string(param) + "]";
}

/// Letters the words of e may use.
Alphabet expr_alphabet(const LanguageExpr& e) {
  using K = LanguageExpr::Kind;
  switch (e.kind()) {
    case K::Nba: return e.nba().alphabet();
    case K::Machine: return e.machine().alphabet();
    case K::Image: return expr_alphabet(e.operands()[0]).united(coding_letters(e.coding()));
    case K::PatternComplement: return e.input().united(coding_letters(e.coding()));
    case K::Union: return expr_alphabet(e.operands()[0]).united(expr_alphabet(e.operands()[1]).letters());
    case K::Complement: return expr_alphabet(e.operands()[0]);
  }
  return {};
}

Membership from_bool(bool b) { return b ? Membership::In : Membership::Out; }

}  // namespace

std::string LanguageExpr::to_string() const {
  switch (kind()) {
    case Kind::Nba: return "nba(" + std::to_string(nba().num_states()) + " states)";
    case Kind::Machine:
      return "machine(k=" + std::to_string(machine().k()) + ", " + std::to_string(machine().num_states()) + " states)";
    case Kind::Image: return coding_tag(coding(), param()) + "(" + operands()[0].to_string() + ")";
    case Kind::PatternComplement: return "pattern-complement:" + coding_tag(coding(), param());
    case Kind::Union: return "union(" + operands()[0].to_string() + ", " + operands()[1].to_string() + ")";
    case Kind::Complement: return "complement(" + operands()[0].to_string() + ")";
  }
  return "";
}

std::string_view to_string(Membership m) {
  switch (m) {
    case Membership::In: return "IN";
    case Membership::Out: return "OUT";
    case Membership::Unknown: return "UNKNOWN";
  }
  return "";
}

Membership expr_membership(const LanguageExpr& e, const IndexedWord& w, ExprBudget budget) {
  using K = LanguageExpr::Kind;
  switch (e.kind()) {
    case K::Nba: {
      auto l = w.to_lasso();
      if (!l) return Membership::Unknown;
      if (!e.nba().alphabet().contains_all(l->stem() + l->loop())) return Membership::Out;
      return from_bool(nba_membership(e.nba(), *l));
    }
    case K::Machine: {
      const auto& m = e.machine();
      auto l = w.to_lasso();
      if (l && !m.alphabet().contains_all(l->stem() + l->loop())) return Membership::Out;
      if (l && m.counter_ignoring()) return from_bool(nba_membership(as_nba(m), *l));
      if (l && m.k() == 1) return from_bool(oca_up_membership(m, *l));
      return bounded_run_search(m, w, budget.search).accepted() ? Membership::In : Membership::Unknown;
    }
    case K::Image: {
      const auto& of = e.operands()[0];
      auto d = decode(e.coding(), e.param(), expr_alphabet(of), w, budget.scan_limit);
      if (d.deviates()) return Membership::Out;
      if (!d.in_image()) return Membership::Unknown;
      return expr_membership(of, *d.preimage, budget);
    }
    case K::PatternComplement: {
      auto d = decode(e.coding(), e.param(), e.input(), w, budget.scan_limit);
      if (d.deviates()) return Membership::In;
      return d.in_image() ? Membership::Out : Membership::Unknown;
    }
    case K::Union: {
      auto a = expr_membership(e.operands()[0], w, budget);
      if (a == Membership::In) return a;
      auto b = expr_membership(e.operands()[1], w, budget);
      if (b == Membership::In) return b;
      return a == Membership::Out && b == Membership::Out ? Membership::Out : Membership::Unknown;
    }
    case K::Complement: {
      auto a = expr_membership(e.operands()[0], w, budget);
      if (a == Membership::Unknown) return a;
      return a == Membership::In ? Membership::Out : Membership::In;
    }
  }
  return Membership::Unknown;
}

Pipeline pipeline(const CounterMachine& m, const CodingParams& params) {
  if (m.k() != 2) throw Error(ErrorCode::WrongArity, "the pipeline takes a 2-counter machine");
  if (!(m.alphabet() == params.sigma))
    throw Error(ErrorCode::AlphabetMismatch, "machine alphabet must be " + params.sigma.letters());
  auto stage = [&](Coding c, LanguageExpr of) {
    return LanguageExpr::union_of(LanguageExpr::image(c, params.param(c), std::move(of)),
                                  LanguageExpr::pattern_complement(c, params.param(c), params.input(c)));
  };
  auto leaf = LanguageExpr::leaf(m);
  auto a3 = stage(Coding::Theta, leaf);
  auto a4 = stage(Coding::HK, a3);
  auto a6 = stage(Coding::PhiK, a4);
  auto complement = LanguageExpr::image(
      Coding::PhiK, params.K,
      LanguageExpr::image(Coding::HK, params.K,
                          LanguageExpr::image(Coding::Theta, params.S, LanguageExpr::complement_of(leaf))));
  return Pipeline{a6, complement, {{"A3", a3}, {"A4", a4}, {"A6", a6}}};
}

IndexedWord encode_chain(const CodingParams& params, const IndexedWord& x) {
  return encode(Coding::PhiK, params, encode(Coding::HK, params, encode(Coding::Theta, params, x)));
}

}  // namespace omega
