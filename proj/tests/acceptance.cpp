// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on failure.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "cqg/catalog.hpp"
#include "cqg/cli.hpp"
#include "cqg/haar.hpp"
#include "cqg/rng.hpp"
#include "cqg/states.hpp"
#include "cqg/ucp.hpp"
#include "support.hpp"

using namespace cqg;

namespace {

struct Outcome {
  bool ok = true;
  std::ostringstream detail;

  void require(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      detail << " [failed: " << what << "]";
    }
  }
};

int failures = 0;

void criterion(const char* id, double limit_s, const std::function<void(Outcome&)>& body) {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    body(o);
  } catch (const std::exception& e) {
    o.ok = false;
    o.detail << " [exception: " << e.what() << "]";
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  o.require(secs < limit_s, "runtime limit " + std::to_string(limit_s) + " s");
  if (!o.ok) ++failures;
  std::printf("%s %s (%.2f s)%s\n", id, o.ok ? "PASS" : "FAIL", secs, o.detail.str().c_str());
  std::fflush(stdout);
}

Word power(const GroupSpec& g, const char* letter, int k) {
  std::string text;
  for (int i = 0; i < k; ++i) text += std::string(i ? ";" : "") + letter;
  return parse_word(text, g);
}

long catalan(long k) {
  long c = 1;
  for (long i = 0; i < k; ++i) c = c * 2 * (2 * i + 1) / (i + 2);
  return c;
}

using Triple = std::tuple<Word, Word, Word>;

std::map<Triple, int> coproduct_left(const Word& w, const GroupSpec& g) {
  std::map<Triple, int> out;
  for (const auto& [a, b] : coproduct_expand(w, g))
    for (const auto& [a1, a2] : coproduct_expand(a, g)) ++out[{a1, a2, b}];
  return out;
}

std::map<Triple, int> coproduct_right(const Word& w, const GroupSpec& g) {
  std::map<Triple, int> out;
  for (const auto& [a, b] : coproduct_expand(w, g))
    for (const auto& [b1, b2] : coproduct_expand(b, g)) ++out[{a, b1, b2}];
  return out;
}

Word retag(const Word& w, std::uint8_t factor) {
  std::vector<Letter> ls = w.letters();
  for (auto& l : ls) l.factor = factor;
  return Word(ls);
}

const GroupSpec O2p = make_group(Family::OPlus, 2);

UcpMap flip(std::size_t k, std::uint64_t seed) {
  return rep_ucp(O2p, flip_family_images(random_self_adjoint_unitary(k, seed)));
}

UcpMap character(std::uint64_t seed) {
  return rep_ucp(O2p, character_images(O2p, haar_orthogonal(2, seed)));
}

UcpMap sampling(std::size_t count, std::uint64_t seed) {
  return pullback_ucp(classical_sampling_ucp(make_group(Family::OClassical, 2), count, seed),
                      morphism_abelianize(2));
}

std::vector<WordSum> random_sums(const GroupSpec& g, std::size_t count, std::mt19937_64& rng) {
  std::vector<WordSum> out;
  std::uniform_int_distribution<int> coef(-3, 3);
  for (std::size_t i = 0; i < count; ++i) {
    WordSum s;
    for (int t = 0; t < 2; ++t)
      s.add(test::random_word(g, 1 + rng() % 2, rng), Scalar(coef(rng) | 1));
    out.push_back(s);
  }
  return out;
}

void convergence_criterion(Outcome& o, const char* pair) {
  auto g = make_group(Family::OPlus, 4);
  auto p = cli::convergence_pair(pair, g);
  ConvergenceOptions opt;
  opt.degree = 4;
  opt.tolerance = 1e-6;
  opt.max_iter = 500;
  auto r = converge_to_haar(p.tau1, p.tau2, p.haar, opt);
  o.detail << " iterations=" << r.iterations << " residual=" << r.residuals.back()
           << " subleading=" << (r.subleading_modulus ? *r.subleading_modulus : -1.0);
  o.require(r.converged && r.iterations <= 500 && r.residuals.back() <= 1e-6, "residual");
  o.require(r.subleading_modulus && *r.subleading_modulus < 1.0 - 1e-3, "subleading modulus");
}

}  // namespace

int main() {
  criterion("AC1", 1.0, [](Outcome& o) {
    for (std::uint32_t n = 2; n <= 5; ++n) {
      auto g = make_group(Family::OPlus, n);
      o.require(haar_value(g, power(g, "1,1", 2)) == test::q(1, n), "u11^2 at n=" + std::to_string(n));
      if (n <= 4)
        o.require(haar_value(g, power(g, "1,1", 4)) == test::q(2, n * (n + 1)),
                  "u11^4 at n=" + std::to_string(n));
    }
    o.detail << " n=2..5 second moments, n=2..4 fourth moments";
  });

  criterion("AC2", 10.0, [](Outcome& o) {
    for (std::uint32_t n = 2; n <= 5; ++n) {
      auto g = make_group(Family::OPlus, n);
      for (long k = 0; k <= 4; ++k)
        o.require(char_moment(g, 2 * k) == mpq_class(catalan(k)),
                  "Catalan at n=" + std::to_string(n) + " k=" + std::to_string(k));
    }
    auto o2 = make_group(Family::OClassical, 2);
    o.require(haar_value(o2, power(o2, "1,1", 4)) == test::q(3, 8), "exact O2 fourth moment");
    const std::size_t samples = 100000;
    double acc = 0.0;
    for (std::size_t i = 0; i < samples; ++i) {
      const double x = haar_orthogonal(2, stream_seed(1, i))[0];
      acc += x * x * x * x;
    }
    const double mc = acc / samples;
    o.detail << " monte_carlo=" << mc << " exact=0.375";
    o.require(std::abs(mc - 0.375) <= 1e-2, "Monte Carlo within 1e-2");
  });

  criterion("AC3", 30.0, [](Outcome& o) {
    std::mt19937_64 rng(2024);
    for (std::uint32_t n = 1; n <= 3; ++n) {
      auto g = make_group(Family::OPlus, n);
      auto h = haar_state(g);
      auto eps = counit_state(g);
      for (std::uint32_t i = 1; i <= n; ++i)
        for (std::uint32_t j = 1; j <= n; ++j) {
          Word u({make_letter(g, 0, i, j)});
          o.require(coproduct_left(u, g) == coproduct_right(u, g), "coassociativity");
        }
      for (int t = 0; t < 10; ++t) {
        Word w = test::random_word(g, rng() % 5, rng);
        o.require(antipode(antipode(w)) == w, "antipode involutive");
      }
      if (n == 1) continue;
      auto phi = test::random_rational_state(n, rng);
      for (std::size_t d = 0; d <= 2; ++d)
        for (const auto& w : test::all_words(g, d)) {
          o.require(convolve(eps, phi)(w) == phi(w) && convolve(phi, eps)(w) == phi(w),
                    "counit is the convolution unit");
        }
      for (std::size_t d = 1; d <= 3; ++d)
        o.require(check_invariance(h, phi, d, std::vector<bool>(d, false)) == Scalar(0),
                  "Haar invariance residual");
    }
    auto uplus = make_group(Family::UPlus, 2);
    o.require(check_invariance(haar_state(uplus), counit_state(uplus), 2, {false, true}) == Scalar(0),
              "U+ invariance with a starred pattern");
    int checked = 0;
    for (int t = 0; t < 20; ++t) {
      const std::uint32_t n = 2 + t % 2;
      const std::size_t d = 1 + t % 3;
      auto phi = test::random_rational_state(n, rng);
      auto psi = test::random_rational_state(n, rng);
      auto lhs = transfer_matrix(convolve(phi, psi), d);
      auto rhs = transfer_matrix(phi, d) * transfer_matrix(psi, d);
      o.require(lhs.is_exact() && rhs.is_exact() && lhs.exact() == rhs.exact(),
                "transfer homomorphism");
      ++checked;
    }
    o.detail << " transfer_pairs=" << checked;
  });

  criterion("AC4", 300.0, [](Outcome& o) { convergence_criterion(o, "classical+fixlast"); });
  criterion("AC5", 600.0, [](Outcome& o) { convergence_criterion(o, "perm+blocksplit"); });

  criterion("AC6", 300.0, [](Outcome& o) {
    for (std::uint32_t n = 2; n <= 4; ++n) {
      auto r = cli::usplit_check(n, 4, 500, 1);
      const bool exact_zero = r.max_discrepancy.is_exact() && r.max_discrepancy.is_zero();
      const bool within = exact_zero || (!r.max_discrepancy.is_exact() &&
                                         std::abs(r.max_discrepancy.to_double()) <= 1e-12);
      o.detail << " n=" << n << ":" << r.words_checked << (r.full_index_set ? "(full)" : "(sample)")
               << " max=" << r.max_discrepancy.to_string();
      o.require(within && r.passed, "discrepancy at n=" + std::to_string(n));
      if (n == 2) o.require(r.full_index_set, "full index set at n=2");
      if (n > 2) o.require(r.words_checked >= 500, "500-word sample at n=" + std::to_string(n));
    }
  });

  criterion("AC7", 30.0, [](Outcome& o) {
    std::mt19937_64 rng(77);
    int instances = 0;
    for (const char* spec : {"free(o+:2,o+:2)", "free(t,o+:2)"}) {
      auto fp = parse_group(spec);
      auto h = haar_state(fp);
      std::vector<GroupSpec> factors{fp.factor(1), fp.factor(2)};
      std::vector<StateOracle> hs{haar_state(factors[0]), haar_state(factors[1])};
      auto centered = [&](std::size_t f) {
        for (;;) {
          Word w = test::random_word(factors[f], 1 + rng() % 3, rng);
          WordSum s(retag(w, static_cast<std::uint8_t>(f + 1)));
          s -= WordSum::constant(hs[f](w));
          if (s.size() > 0) return s;
        }
      };
      for (int t = 0; t < 25; ++t) {
        const std::size_t start = rng() % 2;
        const int len = 2 + t % 3;
        WordSum prod = WordSum::constant(Scalar(1));
        for (int i = 0; i < len; ++i) prod = prod * centered((start + i) % 2);
        o.require(h(prod) == Scalar(0), std::string("alternating centered word on ") + spec);
        ++instances;
      }
      for (std::size_t f = 0; f < 2; ++f)
        for (int t = 0; t < 10; ++t) {
          Word w = test::random_word(factors[f], rng() % 5, rng);
          o.require(h(retag(w, static_cast<std::uint8_t>(f + 1))) == hs[f](w),
                    std::string("single-factor restriction on ") + spec);
        }
    }
    o.detail << " alternating_instances=" << instances;
  });

  criterion("AC8", 60.0, [](Outcome& o) {
    std::vector<UcpMap> pool{character(1), character(2), flip(2, 3), flip(3, 4),
                             sampling(5, 5), sampling(8, 6), flip(4, 7)};
    std::mt19937_64 rng(88);
    double worst = 0.0;
    for (int t = 0; t < 30; ++t) {
      const auto& a = pool[rng() % pool.size()];
      const auto& b = pool[rng() % pool.size()];
      Word w = test::random_word(O2p, rng() % 4, rng);
      auto conv = convolve_ucp(a, b);
      const Complex lhs = conv.materialized_trace(WordSum(w));
      const Scalar rhs = convolve(trace_state(a), trace_state(b))(w);
      worst = std::max(worst, std::abs(lhs - rhs.to_double()));
    }
    o.detail << " max_error=" << worst;
    o.require(worst <= 1e-12, "trace identity within 1e-12");
  });

  criterion("AC9", 60.0, [](Outcome& o) {
    std::vector<UcpMap> maps{
        compress_ucp(flip(6, 10), random_isometry(6, 2, 11)),
        compress_ucp(flip(5, 12), random_isometry(5, 3, 13)),
        compress_ucp(sampling(7, 14), random_isometry(7, 3, 15)),
        compress_ucp(convolve_ucp(flip(3, 16), flip(2, 17)), random_isometry(6, 4, 18)),
        direct_sum_ucp({compress_ucp(flip(4, 19), random_isometry(4, 2, 20)), character(21)}),
        convolve_ucp(compress_ucp(flip(4, 22), random_isometry(4, 2, 23)), flip(2, 24)),
        flip(4, 25),
        character(26),
        sampling(9, 27),
        convolve_ucp(flip(3, 28), sampling(4, 29))};
    const std::vector<bool> multiplicative{false, false, false, false, false,
                                           false, true,  true,  true,  true};
    std::mt19937_64 rng(99);
    double min_eig = 0.0;
    double worst_hom = 0.0;
    for (std::size_t i = 0; i < maps.size(); ++i) {
      auto words = random_sums(O2p, 5, rng);
      auto g = defect_gram(maps[i], words);
      min_eig = std::min(min_eig, g.min_eigenvalue);
      o.require(g.min_eigenvalue >= -1e-9, "Gram PSD for map " + std::to_string(i));
      o.require(g.cauchy_schwarz_ok, "Cauchy-Schwarz for map " + std::to_string(i));
      if (multiplicative[i])
        for (const auto& w : words) worst_hom = std::max(worst_hom, std::abs(defect(maps[i], w)));
    }
    o.detail << " min_eigenvalue=" << min_eig << " max_hom_defect=" << worst_hom;
    o.require(worst_hom <= 1e-12, "multiplicative defect");
  });

  criterion("AC10", 600.0, [](Outcome& o) {
    auto g4 = make_group(Family::OPlus, 4);
    const std::string net_spec = "sample:o:4@abelianize:4 x sample:o:3@fixlast:4+abelianize:3";
    const std::string target_spec = "haar:o:4@abelianize:4 x haar:o:3@fixlast:4+abelianize:3";
    std::vector<UcpMap> net;
    for (std::size_t size : {100u, 400u, 1600u}) net.push_back(cli::parse_net_element(net_spec, size, 1));
    std::vector<WordSum> words;
    for (const auto& w : cli::read_words_file(std::string(CQG_DATA_DIR) + "/o4_corpus.txt", g4))
      words.emplace_back(w);
    o.require(words.size() == 20, "20-word corpus");
    auto r = factorization_report(net, cli::parse_trace_spec(target_spec), words);
    o.detail << " trace_errors=";
    for (double e : r.trace_errors) o.detail << e << ",";
    double worst = 0.0;
    for (double d : r.defects) worst = std::max(worst, std::abs(d));
    o.detail << " max_defect=" << worst;
    bool strictly = true;
    for (std::size_t i = 1; i < r.trace_errors.size(); ++i)
      strictly = strictly && r.trace_errors[i] < r.trace_errors[i - 1];
    o.require(strictly, "trace error decreasing");
    o.require(worst <= 1e-10, "defects of homomorphic components");
  });

  std::printf("%s: %d criteria failed\n", failures ? "FAIL" : "PASS", failures);
  return failures ? 1 : 0;
}
