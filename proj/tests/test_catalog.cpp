#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "cqg/catalog.hpp"
#include "cqg/errors.hpp"
#include "cqg/haar.hpp"
#include "cqg/ucp.hpp"
#include "support.hpp"

using namespace cqg;

namespace {

mpq_class Q(long a, long b) {
  mpq_class q(a, b);
  q.canonicalize();
  return q;
}

Word L(const GroupSpec& g, std::uint32_t f, std::uint32_t i, std::uint32_t j, bool s = false) {
  return Word({make_letter(g, f, i, j, s)});
}

// u -> R^T u R on O_n^+.
Morphism conjugation(std::uint32_t n, const RationalMatrix& r) {
  auto g = make_group(Family::OPlus, n);
  std::vector<WordSum> images;
  for (std::uint32_t i = 1; i <= n; ++i)
    for (std::uint32_t j = 1; j <= n; ++j) {
      WordSum img;
      for (std::uint32_t a = 1; a <= n; ++a)
        for (std::uint32_t b = 1; b <= n; ++b)
          if (r(a - 1, i - 1) * r(b - 1, j - 1) != 0)
            img.add(L(g, 0, a, b), Scalar(mpq_class(r(a - 1, i - 1) * r(b - 1, j - 1))));
      images.push_back(img);
    }
  return Morphism("conj", g, g, images);
}

}  // namespace

TEST_CASE("fix-last images") {
  auto m = morphism_fix_last(4);
  auto t = m.target();
  CHECK(m.image(4, 4) == WordSum::constant(Scalar(1)));
  CHECK(m.image(1, 3) == WordSum(L(t, 0, 1, 3)));
  CHECK(m.image(1, 4).is_zero());
  CHECK(m.image(4, 2).is_zero());
  CHECK(m.is_exact());
}

TEST_CASE("rotations") {
  auto r = cayley_rotation(3, {Q(1, 2), Q(-1, 3), Q(2, 1)});
  CHECK(is_orthogonal(r));
  CHECK(orthogonality_defect(r.to_doubles(), 3) < 1e-15);
  auto q = quarter_turn(4, 2);
  CHECK(is_orthogonal(q));
  CHECK(q(1, 3) == 1);
  CHECK(q(3, 1) == -1);
  CHECK_FALSE(is_orthogonal(RationalMatrix(2, 2, {1, 1, 0, 1})));
  CHECK_THROWS_AS(morphism_fix_vector(3, RationalMatrix(3, 3, {1, 1, 0, 0, 1, 0, 0, 0, 1})),
                  ArgumentError);
  CHECK_THROWS_AS(quarter_turn(3, 3), ArgumentError);
}

TEST_CASE("fix_vector is fix_last after conjugation") {
  auto r = cayley_rotation(3, {Q(1, 3), Q(1, 2), Q(-2, 5)});
  auto direct = morphism_fix_vector(3, r);
  auto composed = compose(conjugation(3, r), morphism_fix_last(3));
  for (std::uint32_t i = 1; i <= 3; ++i)
    for (std::uint32_t j = 1; j <= 3; ++j) CHECK(direct.image(i, j) == composed.image(i, j));
  // The pulled-back Haar states are exactly R-covariant.
  auto h2 = haar_state(make_group(Family::OPlus, 2));
  auto s_r = pullback(h2, direct);
  auto s_i = pullback(h2, morphism_fix_last(3));
  auto conj = conjugation(3, r);
  auto g = make_group(Family::OPlus, 3);
  std::mt19937_64 rng(3);
  for (int t = 0; t < 12; ++t) {
    auto w = test::random_word(g, 1 + t % 3, rng);
    CHECK(s_r(w) == s_i(conj.apply(w)));
  }
  // The fixed vector is R^T e_n: it is an eigenvector of pi(u) with
  // eigenvalue 1, i.e. sum_j pi(u_ij) xi_j = xi_i.
  for (std::uint32_t i = 1; i <= 3; ++i) {
    WordSum row;
    for (std::uint32_t j = 1; j <= 3; ++j)
      row += Scalar(r(2, j - 1)) * direct.image(i, j);
    CHECK(row == WordSum::constant(Scalar(r(2, i - 1))));
  }
}

TEST_CASE("float fix_vector matches the exact one") {
  auto r = cayley_rotation(3, {Q(1, 3), Q(1, 2), Q(-2, 5)});
  auto exact = morphism_fix_vector(3, r);
  auto approx = morphism_fix_vector(3, r.to_doubles());
  CHECK_FALSE(approx.is_exact());
  auto h2 = haar_state(make_group(Family::OPlus, 2));
  auto g = make_group(Family::OPlus, 3);
  std::mt19937_64 rng(4);
  for (int t = 0; t < 8; ++t) {
    auto w = test::random_word(g, 2 + t % 3, rng);
    CHECK(pullback(h2, approx)(w).to_double() ==
          doctest::Approx(pullback(h2, exact)(w).to_double()).epsilon(1e-10));
  }
}

TEST_CASE("block split and permutation quotient") {
  auto bs = morphism_block_split(2);
  auto t = bs.target();
  CHECK(bs.image(1, 1) == WordSum(L(t, 1, 1, 1)));
  CHECK(bs.image(4, 3) == WordSum(L(t, 2, 2, 1)));
  CHECK(bs.image(1, 3).is_zero());
  auto g4 = make_group(Family::OPlus, 4);
  auto hb = pullback(haar_state(t), bs);
  CHECK(hb(parse_word("1,1;1,1", g4)) == Scalar::rational(1, 2));
  CHECK(hb(parse_word("3,4;3,4", g4)) == Scalar::rational(1, 2));
  CHECK(hb(parse_word("1,3;1,3", g4)) == Scalar(0));

  auto hp = pullback(haar_state(make_group(Family::SClassical, 4)), morphism_to_perm(4));
  CHECK(hp(parse_word("1,1", g4)) == Scalar::rational(1, 4));
  CHECK(hp(parse_word("1,1;1,2", g4)) == Scalar(0));
  CHECK(hp(parse_word("1,1;2,2", g4)) == Scalar::rational(1, 12));
  CHECK(haar_state(make_group(Family::SClassical, 4))(
            parse_word("1,1", make_group(Family::SClassical, 4))) == Scalar::rational(1, 4));
}

TEST_CASE("unitary split") {
  for (std::uint32_t n = 2; n <= 3; ++n) {
    auto us = morphism_unitary_split(n);
    auto g = us.source();
    auto s = pullback(haar_state(us.target()), us);
    CHECK(s(parse_word("1,1;1,1*", g)) == Scalar(mpq_class(Q(1, n))));
    CHECK(s(parse_word("1,1;1,1", g)) == Scalar(0));
    CHECK(s(parse_word("1,2;2,1*;1,1", g)) == Scalar(0));
    // u_ij^* -> a_ij z^*.
    auto img = us.image(make_letter(g, 0, 1, 2, true));
    auto t = us.target();
    CHECK(img == WordSum(Word({make_letter(t, 2, 1, 2), make_letter(t, 1, 1, 1, true)})));
  }
}

TEST_CASE("every catalog morphism intertwines the coproducts exactly") {
  auto r = cayley_rotation(3, {Q(1, 2), Q(0, 1), Q(1, 3)});
  for (const auto& m :
       {morphism_abelianize(3), morphism_fix_last(4), morphism_fix_vector(3, r),
        morphism_block_split(2), morphism_to_perm(3), morphism_unitary_split(2),
        compose(morphism_fix_last(4), morphism_abelianize(3))}) {
    auto res = coproduct_intertwining_residual(m);
    CHECK(res.is_exact());
    CHECK(res.is_zero());
  }
  auto approx = morphism_fix_vector(3, r.to_doubles());
  CHECK(coproduct_intertwining_residual(approx).to_double() < 1e-12);
}

TEST_CASE("source relations map to relations of the target") {
  // Push every source relation through the morphism and evaluate it in a
  // concrete representation of the target.
  std::mt19937_64 rng(21);
  auto o3 = make_group(Family::OClassical, 3);
  auto op3 = make_group(Family::OPlus, 3);
  auto op2 = make_group(Family::OPlus, 2);
  auto s3 = make_group(Family::SClassical, 3);
  auto check = [](const Morphism& m, const UcpMap& rep) {
    double worst = 0.0;
    for (const auto& rel : relation_expressions(m.source())) {
      const CMatrix v = rep.evaluate(m.apply(rel));
      worst = std::max(worst, v.cwiseAbs().maxCoeff());
    }
    CHECK(worst < 1e-10);
  };
  check(morphism_abelianize(3), rep_ucp(o3, character_images(o3, haar_orthogonal(3, 5))));
  check(morphism_fix_last(4), rep_ucp(op3, character_images(op3, haar_orthogonal(3, 6))));
  check(morphism_fix_last(3), rep_ucp(op2, flip_family_images(random_self_adjoint_unitary(4, 7))));
  check(morphism_to_perm(3), rep_ucp(s3, character_images(s3, {0, 1, 0, 0, 0, 1, 1, 0, 0})));

  auto fp = parse_group("free(o+:2,o+:2)");
  GeneratorImages both;
  for (std::uint8_t f = 1; f <= 2; ++f)
    for (auto& [k, v] : flip_family_images(random_self_adjoint_unitary(3, 10 + f)))
      both[{f, k.row, k.col}] = v;
  check(morphism_block_split(2), rep_ucp(fp, both));

  auto tf = parse_group("free(t,o+:2)");
  GeneratorImages zt;
  zt[{1, 1, 1}] = CMatrix::Identity(3, 3) * std::polar(1.0, 0.7);
  for (auto& [k, v] : flip_family_images(random_self_adjoint_unitary(3, 12)))
    zt[{2, k.row, k.col}] = v;
  check(morphism_unitary_split(2), rep_ucp(tf, zt));
}

TEST_CASE("morphism validation and caps") {
  auto g = make_group(Family::OPlus, 2);
  CHECK_THROWS_AS(Morphism("bad", g, g, {WordSum()}), ArgumentError);
  auto other = make_group(Family::OPlus, 3);
  std::vector<WordSum> wrong(4, WordSum(L(other, 0, 3, 3)));
  CHECK_THROWS_AS(Morphism("bad", g, g, wrong), ArgumentError);
  CHECK_THROWS_AS(compose(morphism_fix_last(4), morphism_fix_last(4)), ArgumentError);
}
