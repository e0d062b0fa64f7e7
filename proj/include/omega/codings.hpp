#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "omega/buchi.hpp"
#include "omega/counter_machine.hpp"
#include "omega/run_search.hpp"
#include "omega/words.hpp"

namespace omega {

struct CodingParams {
  static constexpr std::uint64_t kPrimorialK = 9699690;  // 2·3·5·7·11·13·17·19

  Alphabet sigma{"01"};
  std::uint64_t S = 1728;
  std::uint64_t K = 3;

  /// S = (3k)^3 with k = |sigma| + 2 and K = kPrimorialK.
  static CodingParams primorial(Alphabet sigma = Alphabet("01"));
  /// S = (3k)^3 and the given K.
  static CodingParams with_k(std::uint64_t K, Alphabet sigma = Alphabet("01"));

  std::uint64_t k() const noexcept { return sigma.size() + 2; }
  /// S for θ, K for h_K and φ_K, 0 for h.
  std::uint64_t param(Coding c) const noexcept;
  /// Preimage alphabet: Σ, Γ = Σ+E, Γ₁ = Γ+ABC, Γ₁+F.
  Alphabet input(Coding c) const;
  Alphabet output(Coding c) const;
};

/// Positions of the coded word where source letter n (1-based) lands.
BigNat source_position(Coding c, std::uint64_t param, std::uint64_t n);

/// Throws AlphabetMismatch when x uses letters outside params.input(c). A φ_K image of
/// a lasso is returned in lasso form.
IndexedWord encode(Coding c, const CodingParams& params, const IndexedWord& x);

struct DecodeResult {
  enum class Status { InImage, Deviates, Undetermined };
  Status status = Status::Undetermined;
  std::optional<IndexedWord> preimage;  // InImage
  BigNat position = 0;                  // Deviates, 1-based
  Letter expected = 0;                  // marker or filler letter, 0 for a source slot

  bool in_image() const noexcept { return status == Status::InImage; }
  bool deviates() const noexcept { return status == Status::Deviates; }
  /// EXPECTED_<letter> or EXPECTED_SOURCE.
  std::string reason() const;
  std::string to_string() const;
};

/// Exact on lasso words (and φ_K images of lassos). Other descriptors are matched
/// structurally or scanned letter by letter up to `scan_limit` positions.
DecodeResult decode(Coding c, std::uint64_t param, const Alphabet& input, const IndexedWord& w,
                    std::size_t scan_limit = 4096);
DecodeResult decode(Coding c, const CodingParams& params, const IndexedWord& w, std::size_t scan_limit = 4096);

/// Automaton for the words over params.output(c) outside the image of params.input(c)^ω.
using Recognizer = std::variant<NBA, CounterMachine>;
Recognizer complement_recognizer(Coding c, const CodingParams& params);
/// Acceptance of a lasso word by either recognizer form.
bool recognizer_accepts(const Recognizer& r, const LassoWord& w);

class LanguageExpr {
 public:
  enum class Kind { Nba, Machine, Image, PatternComplement, Union, Complement };

  static LanguageExpr leaf(NBA a);
  static LanguageExpr leaf(CounterMachine m);
  static LanguageExpr image(Coding c, std::uint64_t param, LanguageExpr of);
  static LanguageExpr pattern_complement(Coding c, std::uint64_t param, Alphabet input);
  static LanguageExpr union_of(LanguageExpr a, LanguageExpr b);
  static LanguageExpr complement_of(LanguageExpr e);

  Kind kind() const noexcept;
  Coding coding() const;
  std::uint64_t param() const;
  const Alphabet& input() const;  // PatternComplement
  const NBA& nba() const;
  const CounterMachine& machine() const;
  /// Operands: one for Image and Complement, two for Union.
  const std::vector<LanguageExpr>& operands() const;

  std::string to_string() const;

  struct Node;

 private:
  explicit LanguageExpr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

enum class Membership { In, Out, Unknown };
std::string_view to_string(Membership m);

struct ExprBudget {
  SearchBudget search{};
  std::size_t scan_limit = 4096;
};

Membership expr_membership(const LanguageExpr& e, const IndexedWord& w, ExprBudget budget = {});

struct Pipeline {
  LanguageExpr final_expr;
  LanguageExpr final_complement_expr;
  std::vector<std::pair<std::string, LanguageExpr>> stage_exprs;
};

/// θ_S, then h_K, then φ_K, each stage united with the complement of its pattern.
/// Throws WrongArity unless m has two counters, AlphabetMismatch unless it reads params.sigma.
Pipeline pipeline(const CounterMachine& m, const CodingParams& params);

/// φ_K(h_K(θ_S(x))) with the descriptors of `params`.
IndexedWord encode_chain(const CodingParams& params, const IndexedWord& x);

}  // namespace omega
