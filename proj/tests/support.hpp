#pragma once

#include <random>
#include <vector>

#include "cqg/catalog.hpp"
#include "cqg/group.hpp"
#include "cqg/haar.hpp"
#include "cqg/states.hpp"
#include "cqg/word.hpp"

namespace cqg::test {

/// Uniform random word of the given degree; stars only where the family
/// has non-self-adjoint entries. Free products pick a factor per letter.
inline Word random_word(const GroupSpec& g, std::size_t degree, std::mt19937_64& rng) {
  std::vector<Letter> letters;
  for (std::size_t i = 0; i < degree; ++i) {
    std::uint32_t f = 0;
    if (g.is_free_product()) f = 1 + static_cast<std::uint32_t>(rng() % g.factor_count());
    const GroupSpec& h = g.factor(f);
    const auto r = 1 + static_cast<std::uint32_t>(rng() % h.n());
    const auto c = 1 + static_cast<std::uint32_t>(rng() % h.n());
    const bool star = !h.self_adjoint_entries() && (rng() & 1u);
    letters.push_back(make_letter(g, f, r, c, star));
  }
  return Word(std::move(letters));
}

/// Every word of the given degree over a non-free-product group.
inline std::vector<Word> all_words(const GroupSpec& g, std::size_t degree) {
  std::vector<Letter> alphabet;
  for (std::uint32_t i = 1; i <= g.n(); ++i)
    for (std::uint32_t j = 1; j <= g.n(); ++j) {
      alphabet.push_back(make_letter(g, 0, i, j, false));
      if (!g.self_adjoint_entries()) alphabet.push_back(make_letter(g, 0, i, j, true));
    }
  std::vector<Word> out{Word{}};
  for (std::size_t d = 0; d < degree; ++d) {
    std::vector<Word> next;
    for (const auto& w : out)
      for (const auto& l : alphabet) next.push_back(w * Word({l}));
    out = std::move(next);
  }
  return out;
}

inline mpq_class q(long a, long b) {
  mpq_class v(a, b);
  v.canonicalize();
  return v;
}

// Random exact state on O_n^+: a rational mixture of characters at exact
// orthogonal matrices (Cayley rotations and signed permutations) and the
// Haar state.
inline StateOracle random_rational_state(std::uint32_t n, std::mt19937_64& rng) {
  auto g = make_group(Family::OPlus, n);
  std::vector<StateOracle> parts;
  std::vector<Scalar> weights;
  const int count = 1 + static_cast<int>(rng() % 3);
  long total = 0;
  std::vector<long> raw;
  for (int c = 0; c < count; ++c) {
    std::vector<mpq_class> upper;
    for (std::uint32_t t = 0; t < n * (n - 1) / 2; ++t)
      upper.push_back(q(static_cast<long>(rng() % 5) - 2, 1 + static_cast<long>(rng() % 3)));
    RationalMatrix r = cayley_rotation(n, upper);
    if (rng() & 1u) r = r * quarter_turn(n, 1 + static_cast<std::uint32_t>(rng() % (n - 1 + (n == 1))));
    parts.push_back(character_state(g, r));
    raw.push_back(1 + static_cast<long>(rng() % 4));
    total += raw.back();
  }
  if (rng() % 3 == 0) {
    parts.push_back(haar_state(g));
    raw.push_back(1);
    total += 1;
  }
  for (long w : raw) weights.push_back(Scalar::rational(w, total));
  return mixture(parts, weights);
}

}  // namespace cqg::test
