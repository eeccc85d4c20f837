#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cqg/group.hpp"
#include "cqg/scalar.hpp"

namespace cqg {

/// A generator u_ij (or its adjoint). `factor` is the 1-based free-product
/// factor, 0 for ordinary groups. `self_adjoint` records whether the
/// owning family has self-adjoint entries, which pins `starred` to false.
struct Letter {
  std::uint8_t factor = 0;
  std::uint8_t row = 1;
  std::uint8_t col = 1;
  bool starred = false;
  bool self_adjoint = false;

  auto operator<=>(const Letter&) const = default;
};

/// Monomial in the free *-algebra on the generators. Relations are never
/// used for rewriting; consumers are linear functionals and linear maps.
class Word {
 public:
  Word() = default;
  explicit Word(std::vector<Letter> letters) : letters_(std::move(letters)) {}

  const std::vector<Letter>& letters() const { return letters_; }
  std::size_t degree() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }
  const Letter& operator[](std::size_t i) const { return letters_[i]; }

  friend Word operator*(const Word& a, const Word& b);
  auto operator<=>(const Word&) const = default;

  std::string to_string() const;

 private:
  std::vector<Letter> letters_;
};

struct WordHash {
  std::size_t operator()(const Word& w) const noexcept;
};

/// Validates indices against the group and normalises star flags.
Letter make_letter(const GroupSpec& group, std::uint32_t factor, std::uint32_t row,
                   std::uint32_t col, bool starred = false);
Word make_word(const GroupSpec& group, std::vector<Letter> letters);

/// `word := letter (';' letter)*`, `letter := [factor ':'] int ',' int '*'?`.
/// The factor prefix is required for free products and rejected otherwise.
/// The empty string (after whitespace removal) is the unit word.
Word parse_word(std::string_view text, const GroupSpec& group);

Word adjoint(const Word& w);
Word antipode(const Word& w);
int counit(const Word& w);

/// All n^d (left, right) pairs of the multiplicative coproduct, in
/// mixed-radix order of the summation tuple (first letter most significant).
std::vector<std::pair<Word, Word>> coproduct_expand(const Word& w, const GroupSpec& group);

/// Visitor form of coproduct_expand, same order and caps.
void for_each_coproduct_term(const Word& w, const GroupSpec& group,
                             const std::function<void(const Word&, const Word&)>& fn);

/// Number of coproduct terms, or throws ResourceError above the caps.
std::uint64_t coproduct_size(const Word& w, const GroupSpec& group);

/// Finite linear combination of words; zero coefficients are never stored.
class WordSum {
 public:
  WordSum() = default;
  WordSum(const Word& w, Scalar c = Scalar(1));  // NOLINT(implicit)
  static WordSum constant(Scalar c) { return WordSum(Word{}, std::move(c)); }

  const std::map<Word, Scalar>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  Scalar coefficient(const Word& w) const;
  bool is_exact() const;

  void add(const Word& w, const Scalar& c);
  WordSum& operator+=(const WordSum& o);
  WordSum& operator-=(const WordSum& o);
  WordSum& operator*=(const Scalar& s);

  friend WordSum operator+(WordSum a, const WordSum& b) { return a += b; }
  friend WordSum operator-(WordSum a, const WordSum& b) { return a -= b; }
  friend WordSum operator*(const Scalar& s, WordSum a) { return a *= s; }
  /// Product in the free algebra; throws ResourceError past caps.
  friend WordSum operator*(const WordSum& a, const WordSum& b);
  friend bool operator==(const WordSum& a, const WordSum& b) { return a.terms_ == b.terms_; }

  std::string to_string() const;

 private:
  std::map<Word, Scalar> terms_;
};

/// Conjugate-linear involution on sums: coefficients are real here, so it
/// acts by adjoint on each word.
WordSum adjoint(const WordSum& s);

}  // namespace cqg
