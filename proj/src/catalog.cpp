#include "cqg/catalog.hpp"

#include <algorithm>
#include <cmath>

#include "cqg/errors.hpp"
#include "cqg/haar.hpp"

namespace cqg {

StateOracle haar_state(const GroupSpec& group) {
  if (group.is_free_product()) {
    std::vector<StateOracle> factors;
    for (const auto& f : group.factors()) factors.push_back(haar_state(f));
    return free_product_state(factors);
  }
  auto oracle = haar_oracle(group);
  return StateOracle("h_" + group.name(), group,
                     [oracle](const Word& w) { return Scalar(oracle->value(w)); });
}

namespace {

Word letter_word(const GroupSpec& g, std::uint32_t factor, std::uint32_t i, std::uint32_t j) {
  return Word({make_letter(g, factor, i, j)});
}

std::vector<WordSum> same_symbol_images(const GroupSpec& target, std::uint32_t n) {
  std::vector<WordSum> images;
  for (std::uint32_t i = 1; i <= n; ++i)
    for (std::uint32_t j = 1; j <= n; ++j) images.emplace_back(letter_word(target, 0, i, j));
  return images;
}

template <class Entry>
std::vector<WordSum> fix_vector_images(std::uint32_t n, const GroupSpec& target, Entry r) {
  // (R^T D R)_ij = sum_ab R_ai D_ab R_bj with D = v (+) 1.
  std::vector<WordSum> images;
  for (std::uint32_t i = 1; i <= n; ++i) {
    for (std::uint32_t j = 1; j <= n; ++j) {
      WordSum img;
      for (std::uint32_t a = 1; a < n; ++a)
        for (std::uint32_t b = 1; b < n; ++b) {
          Scalar c = r(a, i) * r(b, j);
          if (!c.is_zero()) img.add(letter_word(target, 0, a, b), c);
        }
      img.add(Word{}, r(n, i) * r(n, j));
      images.push_back(std::move(img));
    }
  }
  return images;
}

}  // namespace

Morphism morphism_abelianize(std::uint32_t n) {
  const GroupSpec target = make_group(Family::OClassical, n);
  return Morphism("abelianize", make_group(Family::OPlus, n), target,
                  same_symbol_images(target, n));
}

bool is_orthogonal(const RationalMatrix& r) {
  return r.rows() == r.cols() && r.transposed() * r == RationalMatrix::identity(r.rows());
}

double orthogonality_defect(const std::vector<double>& r, std::uint32_t n) {
  if (r.size() != std::size_t{n} * n) return INFINITY;
  double worst = 0.0;
  for (std::uint32_t i = 0; i < n; ++i)
    for (std::uint32_t j = 0; j < n; ++j) {
      double s = 0.0;
      for (std::uint32_t k = 0; k < n; ++k) s += r[k * n + i] * r[k * n + j];
      worst = std::max(worst, std::abs(s - (i == j ? 1.0 : 0.0)));
    }
  return worst;
}

Morphism morphism_fix_vector(std::uint32_t n, const RationalMatrix& rotation) {
  if (n < 2) throw ArgumentError("morphism_fix_vector: n must be at least 2");
  if (rotation.rows() != n || !is_orthogonal(rotation))
    throw ArgumentError("morphism_fix_vector: rotation is not an orthogonal n x n matrix");
  const GroupSpec target = make_group(Family::OPlus, n - 1);
  auto r = [&](std::uint32_t a, std::uint32_t b) { return Scalar(rotation(a - 1, b - 1)); };
  return Morphism("fixvec", make_group(Family::OPlus, n), target,
                  fix_vector_images(n, target, r));
}

Morphism morphism_fix_vector(std::uint32_t n, const std::vector<double>& rotation) {
  if (n < 2) throw ArgumentError("morphism_fix_vector: n must be at least 2");
  if (orthogonality_defect(rotation, n) > 1e-12)
    throw ArgumentError("morphism_fix_vector: rotation is not orthogonal within 1e-12");
  const GroupSpec target = make_group(Family::OPlus, n - 1);
  auto r = [&](std::uint32_t a, std::uint32_t b) {
    return Scalar::real(rotation[(a - 1) * n + (b - 1)]);
  };
  return Morphism("fixvec", make_group(Family::OPlus, n), target,
                  fix_vector_images(n, target, r));
}

Morphism morphism_fix_last(std::uint32_t n) {
  if (n < 2) throw ArgumentError("morphism_fix_last: n must be at least 2");
  const GroupSpec target = make_group(Family::OPlus, n - 1);
  auto r = [](std::uint32_t a, std::uint32_t b) { return Scalar(a == b ? 1 : 0); };
  return Morphism("fixlast", make_group(Family::OPlus, n), target,
                  fix_vector_images(n, target, r));
}

Morphism morphism_block_split(std::uint32_t n) {
  const GroupSpec half = make_group(Family::OPlus, n);
  const GroupSpec target = make_free_product({half, half});
  std::vector<WordSum> images;
  for (std::uint32_t i = 1; i <= 2 * n; ++i)
    for (std::uint32_t j = 1; j <= 2 * n; ++j) {
      if (i <= n && j <= n) images.emplace_back(letter_word(target, 1, i, j));
      else if (i > n && j > n) images.emplace_back(letter_word(target, 2, i - n, j - n));
      else images.emplace_back();
    }
  return Morphism("blocksplit", make_group(Family::OPlus, 2 * n), target, std::move(images));
}

Morphism morphism_to_perm(std::uint32_t m) {
  const GroupSpec target = make_group(Family::SClassical, m);
  return Morphism("perm", make_group(Family::OPlus, m), target, same_symbol_images(target, m));
}

Morphism morphism_unitary_split(std::uint32_t n) {
  const GroupSpec target =
      make_free_product({make_group(Family::Torus, 1), make_group(Family::OPlus, n)});
  std::vector<WordSum> images;
  const Letter z = make_letter(target, 1, 1, 1);
  for (std::uint32_t i = 1; i <= n; ++i)
    for (std::uint32_t j = 1; j <= n; ++j)
      images.emplace_back(Word({z, make_letter(target, 2, i, j)}));
  return Morphism("usplit", make_group(Family::UPlus, n), target, std::move(images));
}

RationalMatrix cayley_rotation(std::uint32_t n, const std::vector<mpq_class>& upper) {
  if (upper.size() != std::size_t{n} * (n - 1) / 2)
    throw ArgumentError("cayley_rotation: need n(n-1)/2 skew entries");
  RationalMatrix s(n, n);
  std::size_t idx = 0;
  for (std::uint32_t i = 0; i < n; ++i)
    for (std::uint32_t j = i + 1; j < n; ++j) {
      s(i, j) = upper[idx++];
      s(j, i) = -s(i, j);
    }
  const RationalMatrix id = RationalMatrix::identity(n);
  return (id - s) * inverse(id + s);
}

RationalMatrix quarter_turn(std::uint32_t n, std::uint32_t col) {
  if (col < 1 || col >= n) throw ArgumentError("quarter_turn: column must be in [1, n)");
  RationalMatrix r = RationalMatrix::identity(n);
  r(col - 1, col - 1) = 0;
  r(n - 1, n - 1) = 0;
  r(col - 1, n - 1) = 1;
  r(n - 1, col - 1) = -1;
  return r;
}

}  // namespace cqg
