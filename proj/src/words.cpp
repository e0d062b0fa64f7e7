#include "omega/words.hpp"

#include <algorithm>
#include <charconv>
#include <vector>

#include "omega/block_layout.hpp"
#include "omega/errors.hpp"

namespace omega {

// ---------------------------------------------------------------- Alphabet

Alphabet::Alphabet(std::string letters) : letters_(std::move(letters)) {
  if (letters_.empty()) throw Error(ErrorCode::InvalidArgument, "alphabet must be nonempty");
  for (std::size_t i = 0; i < letters_.size(); ++i) {
    unsigned char c = static_cast<unsigned char>(letters_[i]);
    if (c <= 0x20 || c >= 0x7f) throw Error(ErrorCode::InvalidArgument, "letters must be printable characters");
    if (letters_.find(letters_[i], i + 1) != std::string::npos) {
      throw Error(ErrorCode::InvalidArgument, std::string("duplicate letter '") + letters_[i] + "'");
    }
  }
}

Alphabet Alphabet::of_word(std::string_view word) {
  std::string s(word);
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  return Alphabet(std::move(s));
}

int Alphabet::index_of(Letter a) const noexcept {
  auto pos = letters_.find(a);
  return pos == std::string::npos ? -1 : static_cast<int>(pos);
}

bool Alphabet::contains_all(std::string_view word) const noexcept {
  return std::all_of(word.begin(), word.end(), [&](Letter a) { return contains(a); });
}

Alphabet Alphabet::united(std::string_view other) const {
  std::string s = letters_;
  for (Letter a : other) {
    if (s.find(a) == std::string::npos) s.push_back(a);
  }
  return Alphabet(std::move(s));
}

// ---------------------------------------------------------------- LassoWord

std::size_t primitive_root_length(std::string_view w) {
  const std::size_t n = w.size();
  if (n == 0) return 0;
  std::vector<std::size_t> fail(n, 0);
  for (std::size_t i = 1, k = 0; i < n; ++i) {
    while (k > 0 && w[i] != w[k]) k = fail[k - 1];
    if (w[i] == w[k]) ++k;
    fail[i] = k;
  }
  std::size_t period = n - fail[n - 1];
  return n % period == 0 ? period : n;
}

LassoWord LassoWord::canonical(std::string stem, std::string loop) {
  if (loop.empty()) throw Error(ErrorCode::EmptyLoop, "lasso loop must be nonempty");
  loop.resize(primitive_root_length(loop));
  while (!stem.empty() && stem.back() == loop.back()) {
    stem.pop_back();
    std::rotate(loop.rbegin(), loop.rbegin() + 1, loop.rend());
  }
  return LassoWord(std::move(stem), std::move(loop));
}

LassoWord canonicalize_lasso(std::string_view stem, std::string_view loop) {
  return LassoWord::canonical(std::string(stem), std::string(loop));
}

Letter LassoWord::letter_at(std::size_t n) const {
  if (n == 0) throw Error(ErrorCode::IndexOutOfRange, "positions are 1-based");
  if (n <= stem_.size()) return stem_[n - 1];
  return loop_[(n - 1 - stem_.size()) % loop_.size()];
}

Letter LassoWord::letter_at(const BigNat& n) const {
  if (n < 1) throw Error(ErrorCode::IndexOutOfRange, "positions are 1-based");
  if (n <= stem_.size()) return stem_[static_cast<std::size_t>(n) - 1];
  BigNat offset = (n - 1 - stem_.size()) % loop_.size();
  return loop_[static_cast<std::size_t>(offset)];
}

std::string LassoWord::prefix(std::size_t n) const {
  std::string out;
  out.reserve(n);
  for (std::size_t i = 1; i <= n; ++i) out.push_back(letter_at(i));
  return out;
}

// ---------------------------------------------------------------- IndexedWord

std::string_view to_string(Coding c) {
  switch (c) {
    case Coding::Theta: return "theta";
    case Coding::HK: return "hk";
    case Coding::PhiK: return "phik";
    case Coding::H: return "h";
  }
  return "?";
}

std::optional<Coding> parse_coding(std::string_view s) {
  if (s == "theta" || s == "THETA") return Coding::Theta;
  if (s == "hk" || s == "HK") return Coding::HK;
  if (s == "phik" || s == "PHIK") return Coding::PhiK;
  if (s == "h" || s == "H") return Coding::H;
  return std::nullopt;
}

struct IndexedWord::Node {
  Kind kind;
  std::uint64_t param = 0;
  std::optional<LassoWord> lasso;
  std::optional<IndexedWord> inner;
};

namespace {

IndexedWord::Kind kind_of(Coding c) {
  switch (c) {
    case Coding::Theta: return IndexedWord::Kind::Theta;
    case Coding::HK: return IndexedWord::Kind::HK;
    case Coding::PhiK: return IndexedWord::Kind::PhiK;
    case Coding::H: return IndexedWord::Kind::H;
  }
  return IndexedWord::Kind::Lasso;
}

constexpr std::size_t kMaxUnrolledLasso = std::size_t{1} << 20;

}  // namespace

IndexedWord IndexedWord::lasso(LassoWord w) {
  return IndexedWord(std::make_shared<const Node>(Node{Kind::Lasso, 0, std::move(w), std::nullopt}));
}

IndexedWord IndexedWord::alpha() {
  return IndexedWord(std::make_shared<const Node>(Node{Kind::Alpha, 0, std::nullopt, std::nullopt}));
}

IndexedWord IndexedWord::coded(Coding c, std::uint64_t param, IndexedWord inner) {
  if (c != Coding::H && param < 1) throw Error(ErrorCode::InvalidArgument, "coding parameter must be >= 1");
  if (c == Coding::H) param = 0;
  return IndexedWord(std::make_shared<const Node>(Node{kind_of(c), param, std::nullopt, std::move(inner)}));
}

IndexedWord IndexedWord::track(std::uint64_t i, IndexedWord inner) {
  if (i < 1) throw Error(ErrorCode::IndexOutOfRange, "tracks are 1-based");
  return IndexedWord(std::make_shared<const Node>(Node{Kind::Track, i, std::nullopt, std::move(inner)}));
}

IndexedWord::Kind IndexedWord::kind() const noexcept { return node_->kind; }

std::optional<Coding> IndexedWord::coding() const noexcept {
  switch (node_->kind) {
    case Kind::Theta: return Coding::Theta;
    case Kind::HK: return Coding::HK;
    case Kind::PhiK: return Coding::PhiK;
    case Kind::H: return Coding::H;
    default: return std::nullopt;
  }
}

std::uint64_t IndexedWord::parameter() const noexcept { return node_->param; }

const IndexedWord& IndexedWord::inner() const {
  if (!node_->inner) throw Error(ErrorCode::InvalidArgument, "descriptor has no inner word");
  return *node_->inner;
}

const LassoWord& IndexedWord::lasso_word() const {
  if (!node_->lasso) throw Error(ErrorCode::InvalidArgument, "descriptor is not a lasso");
  return *node_->lasso;
}

Letter IndexedWord::letter_at(const BigNat& n) const {
  if (n < 1) throw Error(ErrorCode::IndexOutOfRange, "positions are 1-based");
  // Walk down the descriptor chain iteratively.
  const IndexedWord* w = this;
  BigNat pos = n;
  for (;;) {
    switch (w->node_->kind) {
      case Kind::Lasso:
        return w->node_->lasso->letter_at(pos);
      case Kind::Alpha:
        return alpha_letter(pos);
      case Kind::Track:
        pos = pair_index(BigNat(w->node_->param), pos);
        w = &*w->node_->inner;
        break;
      default: {
        Slot slot = coding_slot(*w->coding(), w->node_->param, pos);
        if (slot.kind != Slot::Kind::Source) return slot.letter;
        pos = slot.source_index;
        w = &*w->node_->inner;
        break;
      }
    }
  }
}

std::string IndexedWord::prefix(std::size_t n) const {
  std::string out;
  out.reserve(n);
  for (std::size_t i = 1; i <= n; ++i) out.push_back(letter_at(i));
  return out;
}

std::optional<LassoWord> IndexedWord::to_lasso() const {
  switch (node_->kind) {
    case Kind::Lasso:
      return node_->lasso;
    case Kind::PhiK: {
      auto inner = node_->inner->to_lasso();
      if (!inner) return std::nullopt;
      const std::uint64_t k = node_->param;
      if (k * inner->size() > kMaxUnrolledLasso) return std::nullopt;
      auto expand = [k](const std::string& s) {
        std::string out;
        out.reserve(s.size() * k);
        for (Letter a : s) {
          out.append(k - 1, 'F');
          out.push_back(a);
        }
        return out;
      };
      return LassoWord::canonical(expand(inner->stem()), expand(inner->loop()));
    }
    default:
      return std::nullopt;
  }
}

Alphabet IndexedWord::alphabet() const {
  switch (node_->kind) {
    case Kind::Lasso:
      return Alphabet::of_word(node_->lasso->stem() + node_->lasso->loop());
    case Kind::Alpha:
      return Alphabet("0D");
    case Kind::Track:
      return node_->inner->alphabet();
    default:
      return node_->inner->alphabet().united(coding_letters(*coding()));
  }
}

std::string IndexedWord::to_string() const {
  switch (node_->kind) {
    case Kind::Lasso: return node_->lasso->to_string();
    case Kind::Alpha: return "alpha";
    case Kind::Track: return "track[" + std::to_string(node_->param) + "]:" + node_->inner->to_string();
    case Kind::H: return "h:" + node_->inner->to_string();
    default:
      return std::string(omega::to_string(*coding())) + "[" + std::to_string(node_->param) + "]:" +
             node_->inner->to_string();
  }
}

bool operator==(const IndexedWord& a, const IndexedWord& b) {
  if (a.node_ == b.node_) return true;
  if (a.node_->kind != b.node_->kind || a.node_->param != b.node_->param) return false;
  if (a.node_->kind == IndexedWord::Kind::Lasso) return *a.node_->lasso == *b.node_->lasso;
  if (a.node_->kind == IndexedWord::Kind::Alpha) return true;
  return *a.node_->inner == *b.node_->inner;
}

namespace {

std::uint64_t parse_bracket_param(std::string_view& text, std::size_t at) {
  if (text.size() <= at || text[at] != '[') throw Error(ErrorCode::ParseError, "expected '[' at offset " + std::to_string(at));
  auto close = text.find(']', at);
  if (close == std::string_view::npos) throw Error(ErrorCode::ParseError, "unterminated '['");
  std::uint64_t value = 0;
  auto digits = text.substr(at + 1, close - at - 1);
  auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value);
  if (ec != std::errc() || ptr != digits.data() + digits.size() || digits.empty()) {
    throw Error(ErrorCode::ParseError, "bad parameter '" + std::string(digits) + "'");
  }
  if (close + 1 >= text.size() || text[close + 1] != ':') {
    throw Error(ErrorCode::ParseError, "expected ':' at offset " + std::to_string(close + 1));
  }
  text.remove_prefix(close + 2);
  return value;
}

}  // namespace

IndexedWord parse_word_literal(std::string_view text) {
  const std::string original(text);
  try {
    if (text == "alpha") return IndexedWord::alpha();
    if (text.starts_with("lasso:")) {
      text.remove_prefix(6);
      auto bar = text.find('|');
      if (bar == std::string_view::npos) throw Error(ErrorCode::ParseError, "lasso literal needs '|'");
      return IndexedWord::lasso(canonicalize_lasso(text.substr(0, bar), text.substr(bar + 1)));
    }
    if (text.starts_with("h:")) {
      text.remove_prefix(2);
      return IndexedWord::h(parse_word_literal(text));
    }
    for (auto [prefix, coding] : {std::pair{std::string_view("theta"), Coding::Theta},
                                  std::pair{std::string_view("hk"), Coding::HK},
                                  std::pair{std::string_view("phik"), Coding::PhiK}}) {
      if (text.starts_with(prefix)) {
        std::uint64_t p = parse_bracket_param(text, prefix.size());
        return IndexedWord::coded(coding, p, parse_word_literal(text));
      }
    }
    if (text.starts_with("track")) {
      std::uint64_t i = parse_bracket_param(text, 5);
      return IndexedWord::track(i, parse_word_literal(text));
    }
  } catch (const Error& e) {
    if (e.code() == ErrorCode::ParseError) throw;
    throw Error(ErrorCode::ParseError, "in word literal '" + original + "': " + e.what());
  }
  throw Error(ErrorCode::ParseError, "unrecognized word literal '" + original + "' at offset 0");
}

// ---------------------------------------------------------------- pairing

BigNat pair_index(const BigNat& i, const BigNat& j) {
  if (i < 1 || j < 1) throw Error(ErrorCode::IndexOutOfRange, "pair_index takes positive integers");
  BigNat d = i + j - 1;
  return d * (d - 1) / 2 + i;
}

std::pair<BigNat, BigNat> unpair(const BigNat& n) {
  if (n < 1) throw Error(ErrorCode::IndexOutOfRange, "unpair takes a positive integer");
  // diagonal d is the smallest with d(d+1)/2 >= n
  BigNat d = triangular_ceiling(n, 1);
  BigNat i = n - d * (d - 1) / 2;
  return {i, d + 1 - i};
}

IndexedWord split_tracks(const IndexedWord& sigma, std::uint64_t i) { return IndexedWord::track(i, sigma); }

}  // namespace omega
