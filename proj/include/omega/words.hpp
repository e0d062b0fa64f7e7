#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>

#include <boost/multiprecision/cpp_int.hpp>

namespace omega {

using BigNat = boost::multiprecision::cpp_int;
using Letter = char;

/// Ordered finite set of single-character letters.
class Alphabet {
 public:
  Alphabet() = default;
  /// Throws InvalidArgument on an empty string, duplicates or non-printable letters.
  explicit Alphabet(std::string letters);

  /// Distinct letters of `word`, sorted.
  static Alphabet of_word(std::string_view word);

  const std::string& letters() const noexcept { return letters_; }
  std::size_t size() const noexcept { return letters_.size(); }
  bool empty() const noexcept { return letters_.empty(); }
  bool contains(Letter a) const noexcept { return letters_.find(a) != std::string::npos; }
  int index_of(Letter a) const noexcept;
  Letter operator[](std::size_t i) const { return letters_[i]; }
  bool contains_all(std::string_view word) const noexcept;

  /// This alphabet followed by the letters of `other` not already present.
  Alphabet united(std::string_view other) const;

  friend bool operator==(const Alphabet&, const Alphabet&) = default;

 private:
  std::string letters_;
};

namespace alphabets {
inline const std::string kBinary = "01";
inline const std::string kOmega = "01ABCEF";
inline const std::string kOmegaPrime = "01ABCEFD";
}  // namespace alphabets

/// Ultimately periodic word stem·loop^ω in canonical form: the loop is primitive
/// and the stem cannot be shortened by rotating the loop.
class LassoWord {
 public:
  /// Throws EmptyLoop when `loop` is empty.
  static LassoWord canonical(std::string stem, std::string loop);

  const std::string& stem() const noexcept { return stem_; }
  const std::string& loop() const noexcept { return loop_; }
  std::size_t size() const noexcept { return stem_.size() + loop_.size(); }

  /// 1-based access.
  Letter letter_at(const BigNat& n) const;
  Letter letter_at(std::size_t n) const;
  /// Letter at 0-based position `i` of the unrolled stem+loop structure
  /// (i < size()); positions wrap from size()-1 back to stem().size().
  std::size_t next_position(std::size_t i) const noexcept {
    return i + 1 < size() ? i + 1 : stem_.size();
  }
  Letter structural_letter(std::size_t i) const noexcept {
    return i < stem_.size() ? stem_[i] : loop_[i - stem_.size()];
  }

  /// First `n` letters.
  std::string prefix(std::size_t n) const;
  std::string to_string() const { return "lasso:" + stem_ + "|" + loop_; }

  friend bool operator==(const LassoWord&, const LassoWord&) = default;
  friend auto operator<=>(const LassoWord&, const LassoWord&) = default;

 private:
  LassoWord(std::string stem, std::string loop) : stem_(std::move(stem)), loop_(std::move(loop)) {}
  std::string stem_;
  std::string loop_;
};

LassoWord canonicalize_lasso(std::string_view stem, std::string_view loop);

/// Length of the smallest period p of `w` with p dividing |w| (primitive root length).
std::size_t primitive_root_length(std::string_view w);

/// The four coding maps.
enum class Coding { Theta, HK, PhiK, H };

std::string_view to_string(Coding c);
std::optional<Coding> parse_coding(std::string_view s);

/// Finite description of an ω-word with letter access at arbitrary positions.
class IndexedWord {
 public:
  enum class Kind { Lasso, Theta, HK, PhiK, H, Alpha, Track };

  static IndexedWord lasso(LassoWord w);
  static IndexedWord alpha();
  static IndexedWord coded(Coding c, std::uint64_t param, IndexedWord inner);
  static IndexedWord theta(std::uint64_t s, IndexedWord inner) { return coded(Coding::Theta, s, std::move(inner)); }
  static IndexedWord hk(std::uint64_t k, IndexedWord inner) { return coded(Coding::HK, k, std::move(inner)); }
  static IndexedWord phik(std::uint64_t k, IndexedWord inner) { return coded(Coding::PhiK, k, std::move(inner)); }
  static IndexedWord h(IndexedWord inner) { return coded(Coding::H, 0, std::move(inner)); }
  /// Track i of `inner`: letter j is inner's letter at pair_index(i, j).
  static IndexedWord track(std::uint64_t i, IndexedWord inner);

  Kind kind() const noexcept;
  std::optional<Coding> coding() const noexcept;
  std::uint64_t parameter() const noexcept;
  /// Only for coded and track descriptors.
  const IndexedWord& inner() const;
  /// Only for Kind::Lasso.
  const LassoWord& lasso_word() const;

  /// 1-based; throws IndexOutOfRange for n = 0.
  Letter letter_at(const BigNat& n) const;
  Letter letter_at(std::size_t n) const { return letter_at(BigNat(n)); }
  std::string prefix(std::size_t n) const;

  /// Ultimately periodic form when the descriptor is a lasso, or a φ_K image of
  /// one small enough to unroll.
  std::optional<LassoWord> to_lasso() const;

  /// Letters that may occur in the word.
  Alphabet alphabet() const;

  /// Literal syntax: lasso:<stem>|<loop>, alpha, theta[S]:w, hk[K]:w, phik[K]:w, h:w, track[i]:w.
  std::string to_string() const;

  /// Structural equality of descriptors.
  friend bool operator==(const IndexedWord& a, const IndexedWord& b);

 private:
  struct Node;
  explicit IndexedWord(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

IndexedWord parse_word_literal(std::string_view text);

/// Cantor pairing b(i, j) = (i+j-1)(i+j-2)/2 + i over positive integers.
BigNat pair_index(const BigNat& i, const BigNat& j);
std::pair<BigNat, BigNat> unpair(const BigNat& n);

IndexedWord split_tracks(const IndexedWord& sigma, std::uint64_t i);

}  // namespace omega

template <>
struct std::hash<omega::LassoWord> {
  std::size_t operator()(const omega::LassoWord& w) const noexcept {
    return std::hash<std::string>{}(w.stem()) * 31 ^ std::hash<std::string>{}(w.loop());
  }
};
