#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "cqg/caps.hpp"
#include "cqg/catalog.hpp"
#include "cqg/errors.hpp"
#include "cqg/haar.hpp"
#include "cqg/ucp.hpp"
#include "support.hpp"

using namespace cqg;

namespace {

const GroupSpec O2p = make_group(Family::OPlus, 2);

UcpMap flip(std::size_t k, std::uint64_t seed) {
  return rep_ucp(O2p, flip_family_images(random_self_adjoint_unitary(k, seed)));
}

UcpMap character(const GroupSpec& g, std::uint64_t seed) {
  return rep_ucp(g, character_images(g, haar_orthogonal(g.n(), seed)));
}

std::vector<WordSum> random_sums(const GroupSpec& g, std::size_t count, std::mt19937_64& rng) {
  std::vector<WordSum> out;
  std::uniform_int_distribution<int> coef(-3, 3);
  for (std::size_t i = 0; i < count; ++i) {
    WordSum s;
    for (int t = 0; t < 2; ++t) s.add(test::random_word(g, 1 + rng() % 2, rng), Scalar(coef(rng) | 1));
    out.push_back(s);
  }
  return out;
}

}  // namespace

TEST_CASE("flip family and characters are representations") {
  for (std::size_t k : {1u, 2u, 5u}) {
    auto v = random_self_adjoint_unitary(k, 100 + k);
    CHECK((v * v - CMatrix::Identity(k, k)).cwiseAbs().maxCoeff() < 1e-12);
    CHECK(validate_relations(O2p, flip_family_images(v)) < 1e-12);
  }
  auto g = make_group(Family::OPlus, 3);
  CHECK(validate_relations(g, character_images(g, haar_orthogonal(3, 1))) < 1e-12);
  GeneratorImages id;
  for (std::uint8_t i = 1; i <= 3; ++i)
    for (std::uint8_t j = 1; j <= 3; ++j)
      id[{0, i, j}] = (i == j ? 1.0 : 0.0) * CMatrix::Identity(2, 2);
  CHECK(validate_relations(g, id) == 0.0);
  auto rep = rep_ucp(g, id);
  CHECK(rep.evaluate(Word{}) == CMatrix::Identity(2, 2));
}

TEST_CASE("relation violations are measured and rejected") {
  auto imgs = flip_family_images(random_self_adjoint_unitary(3, 4));
  imgs[{0, 1, 1}](0, 0) += 1e-3;
  const double r = validate_relations(O2p, imgs);
  CHECK(r >= 1e-4);
  CHECK(r <= 1e-1);
  CHECK_THROWS_AS(rep_ucp(O2p, imgs), ArgumentError);
  auto bad = character_images(O2p, {1, 1, 0, 1});
  CHECK_THROWS_AS(rep_ucp(O2p, bad), ArgumentError);
  auto missing = flip_family_images(CMatrix::Identity(2, 2));
  missing.erase({0, 2, 2});
  CHECK_THROWS_AS(validate_relations(O2p, missing), ArgumentError);
  // A non-Hermitian image breaks self-adjointness of O entries.
  CMatrix skew(2, 2);
  skew << 0, 1, -1, 0;
  CHECK(validate_relations(O2p, flip_family_images(skew)) > 0.5);
}

TEST_CASE("torus sampling at roots of unity") {
  auto t = make_group(Family::Torus, 1);
  auto th = classical_sampling_ucp(t, 8, 0);
  CHECK(th.is_diagonal());
  for (int a = 0; a <= 17; ++a) {
    std::string text;
    for (int i = 0; i < a; ++i) text += std::string(i ? ";" : "") + "1,1";
    const Complex tr = th.trace(parse_word(text, t));
    CHECK(std::abs(tr - Complex(a % 8 == 0 ? 1.0 : 0.0)) < 1e-12);
  }
  CHECK(std::abs(th.trace(parse_word("1,1;1,1*", t)) - 1.0) < 1e-12);
}

TEST_CASE("full S_4 average reproduces the Haar state") {
  auto s4 = make_group(Family::SClassical, 4);
  auto th = classical_sampling_ucp(s4, 48, 0);
  for (std::size_t d = 0; d <= 3; ++d)
    for (const auto& w : test::all_words(s4, d))
      CHECK(std::abs(th.trace(w) - haar_value(s4, w).get_d()) < 1e-12);
}

TEST_CASE("O_4 sampling approximates the second moment") {
  auto o4 = make_group(Family::OClassical, 4);
  auto th = classical_sampling_ucp(o4, 2000, 42);
  CHECK(std::abs(th.trace(parse_word("1,1;1,1", o4)).real() - 0.25) <= 0.05);
  auto again = classical_sampling_ucp(o4, 2000, 42);
  auto w = parse_word("1,2;3,4;2,2", o4);
  CHECK((th.evaluate_diagonal(w).array() == again.evaluate_diagonal(w).array()).all());
  auto other = classical_sampling_ucp(o4, 2000, 43);
  CHECK_FALSE((th.evaluate_diagonal(w).array() == other.evaluate_diagonal(w).array()).all());
  // Every sample is orthogonal.
  for (std::uint64_t s = 0; s < 5; ++s) CHECK(orthogonality_defect(haar_orthogonal(4, s), 4) < 1e-14);
  CHECK_THROWS_AS(classical_sampling_ucp(make_group(Family::OPlus, 2), 10, 0), ArgumentError);
  CHECK_THROWS_AS(classical_sampling_ucp(o4, 0, 0), ArgumentError);
}

TEST_CASE("convolution of maps") {
  auto id = character_images(O2p, {1, 0, 0, 1});
  auto e = rep_ucp(O2p, id);
  auto ee = convolve_ucp(e, e);
  for (std::size_t d = 0; d <= 3; ++d)
    for (const auto& w : test::all_words(O2p, d))
      CHECK(std::abs(ee.trace(w) - Complex(counit(w))) < 1e-15);

  // Trace identity on every word of degree <= 3.
  auto a = flip(3, 1);
  auto b = flip(2, 2);
  auto ab = convolve_ucp(a, b);
  CHECK(ab.dim() == 6);
  auto rhs = convolve(trace_state(a), trace_state(b));
  for (std::size_t d = 0; d <= 3; ++d)
    for (const auto& w : test::all_words(O2p, d))
      CHECK(std::abs(ab.materialized_trace(w) - rhs(w).to_double()) < 1e-12);
}

TEST_CASE("factorised traces agree with materialised ones") {
  auto o3 = make_group(Family::OClassical, 3);
  auto a = classical_sampling_ucp(o3, 12, 1);
  auto b = convolve_ucp(classical_sampling_ucp(o3, 5, 2), classical_sampling_ucp(o3, 3, 3));
  auto ab = convolve_ucp(a, b);
  auto o2 = flip(3, 4);
  auto dense = convolve_ucp(o2, convolve_ucp(flip(2, 5), o2));
  std::mt19937_64 rng(6);
  auto words3 = random_sums(o3, 6, rng);
  auto words2 = random_sums(O2p, 6, rng);
  std::vector<Complex> full, pairs, full2, pairs2;
  for (std::size_t i = 0; i < words3.size(); ++i) {
    full.push_back(ab.trace(words3[i]));
    pairs.push_back(ab.pair_trace(words3[i], words3[(i + 1) % words3.size()]));
    full2.push_back(dense.trace(words2[i]));
    pairs2.push_back(dense.pair_trace(words2[i], words2[(i + 2) % words2.size()]));
  }
  Caps c = caps();
  c.max_ucp_dimension = 15;
  ScopedCaps scoped(c);
  for (std::size_t i = 0; i < words3.size(); ++i) {
    CHECK(std::abs(ab.trace(words3[i]) - full[i]) < 1e-12);
    CHECK(std::abs(ab.pair_trace(words3[i], words3[(i + 1) % words3.size()]) - pairs[i]) < 1e-12);
    CHECK(std::abs(dense.trace(words2[i]) - full2[i]) < 1e-12);
    CHECK(std::abs(dense.pair_trace(words2[i], words2[(i + 2) % words2.size()]) - pairs2[i]) <
          1e-12);
  }
  CHECK_THROWS_AS(ab.evaluate(words3[0]), ResourceError);
  CHECK_THROWS_AS(ab.materialized_trace(words3[0]), ResourceError);
}

TEST_CASE("defects") {
  auto b = WordSum(parse_word("1,1", O2p)) + WordSum(parse_word("1,2", O2p));
  auto rep = flip(4, 9);
  CHECK(std::abs(defect(rep, b)) < 1e-12);
  auto o2 = make_group(Family::OClassical, 2);
  auto samp = classical_sampling_ucp(o2, 50, 1);
  auto bc = WordSum(parse_word("1,1", o2)) + WordSum(parse_word("1,2;2,1", o2));
  CHECK(std::abs(defect(samp, bc)) < 1e-12);
  CHECK(std::abs(defect(rep, WordSum(Word{}))) < 1e-15);

  CMatrix e1 = CMatrix::Zero(4, 1);
  e1(0, 0) = 1.0;
  auto comp = compress_ucp(rep, e1);
  const double d = defect(comp, WordSum(parse_word("1,2", O2p)));
  auto v = random_self_adjoint_unitary(4, 9);
  CHECK(d == doctest::Approx(1.0 - std::norm(v(0, 0))).epsilon(1e-10));
  CHECK(d > 1e-3);
  CHECK_THROWS_AS(compress_ucp(rep, CMatrix::Ones(4, 1)), ArgumentError);

  // Convolving *-homomorphisms gives a *-homomorphism, so the defect vanishes.
  auto conv = convolve_ucp(flip(3, 10), flip(2, 11));
  CHECK(std::abs(defect(conv, b)) < 1e-12);
  auto pulled = pullback_ucp(classical_sampling_ucp(make_group(Family::OClassical, 3), 30, 2),
                             compose(morphism_fix_last(4), morphism_abelianize(3)));
  auto g4 = make_group(Family::OPlus, 4);
  std::mt19937_64 rng(12);
  for (const auto& s : random_sums(g4, 5, rng)) CHECK(std::abs(defect(pulled, s)) < 1e-12);
  auto sum = direct_sum_ucp({flip(2, 13), flip(3, 14), rep_ucp(O2p, character_images(O2p, {0, 1, 1, 0}))});
  CHECK(sum.dim() == 6);
  CHECK(std::abs(defect(sum, b)) < 1e-12);
}

TEST_CASE("defect Gram matrices are PSD and satisfy Cauchy-Schwarz") {
  std::mt19937_64 rng(31);
  for (int t = 0; t < 5; ++t) {
    auto base = flip(6, 40 + t);
    auto comp = compress_ucp(base, random_isometry(6, 2 + t % 3, 50 + t));
    auto words = random_sums(O2p, 5, rng);
    auto g = defect_gram(comp, words);
    CHECK(g.min_eigenvalue >= -1e-9);
    CHECK(g.cauchy_schwarz_ok);
    CHECK((g.gram - g.gram.adjoint()).cwiseAbs().maxCoeff() < 1e-12);
    for (std::size_t i = 0; i < words.size(); ++i)
      CHECK(g.gram(i, i).real() == doctest::Approx(defect(comp, words[i])).epsilon(1e-9));
  }
  auto hom = defect_gram(flip(3, 60), random_sums(O2p, 4, rng));
  CHECK(hom.gram.cwiseAbs().maxCoeff() < 1e-12);
  auto single = defect_gram(flip(3, 61), {WordSum(parse_word("1,1", O2p))});
  CHECK(single.gram.rows() == 1);
}

TEST_CASE("pullback traces are pulled-back traces") {
  auto pi = compose(morphism_fix_last(4), morphism_abelianize(3));
  auto inner = classical_sampling_ucp(make_group(Family::OClassical, 3), 40, 3);
  auto pulled = pullback_ucp(inner, pi);
  auto lhs = trace_state(pulled);
  auto rhs = pullback(trace_state(inner), pi);
  auto g4 = make_group(Family::OPlus, 4);
  std::mt19937_64 rng(2);
  for (int t = 0; t < 20; ++t) {
    auto w = test::random_word(g4, rng() % 4, rng);
    CHECK(lhs(w).to_double() == doctest::Approx(rhs(w).to_double()).epsilon(1e-12));
  }
  CHECK_THROWS_AS(pullback_ucp(inner, morphism_fix_last(4)), ArgumentError);
}

TEST_CASE("factorization report") {
  auto s4 = make_group(Family::SClassical, 4);
  std::vector<UcpMap> net{classical_sampling_ucp(s4, 24, 0), classical_sampling_ucp(s4, 48, 0)};
  std::mt19937_64 rng(3);
  auto words = random_sums(s4, 6, rng);
  auto r = factorization_report(net, haar_state(s4), words);
  for (double e : r.trace_errors) CHECK(e < 1e-12);
  for (double d : r.defects) CHECK(std::abs(d) < 1e-12);
  CHECK(r.witnesses);

  auto o3 = make_group(Family::OClassical, 3);
  std::vector<UcpMap> mc;
  for (std::size_t k : {10u, 1000u}) mc.push_back(classical_sampling_ucp(o3, k, 5));
  std::vector<WordSum> w2{WordSum(parse_word("1,1;1,1", o3)), WordSum(parse_word("1,2;1,2;3,3;3,3", o3))};
  auto mr = factorization_report(mc, haar_state(o3), w2);
  CHECK(mr.trace_errors[1] < mr.trace_errors[0]);
  CHECK(mr.defects_decreasing);
}
