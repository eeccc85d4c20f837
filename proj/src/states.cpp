#include "cqg/states.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <limits>
#include <mutex>
#include <shared_mutex>
#include <unordered_map>

#include "cqg/caps.hpp"
#include "cqg/errors.hpp"
#include "cqg/kernels.hpp"

namespace cqg {

StateOracle::StateOracle(std::string label, GroupSpec group, Eval eval)
    : label_(std::move(label)),
      group_(std::move(group)),
      eval_(std::make_shared<const Eval>(std::move(eval))) {}

Scalar StateOracle::operator()(const WordSum& s) const {
  Scalar acc(0);
  for (const auto& [w, c] : s.terms()) acc += c * (*eval_)(w);
  return acc;
}

StateOracle memoize(const StateOracle& s) {
  struct Cache {
    std::shared_mutex mutex;
    std::unordered_map<Word, Scalar, WordHash> values;
  };
  auto cache = std::make_shared<Cache>();
  return StateOracle(s.label(), s.group(), [s, cache](const Word& w) {
    {
      std::shared_lock lock(cache->mutex);
      if (auto it = cache->values.find(w); it != cache->values.end()) return it->second;
    }
    Scalar v = s(w);
    std::unique_lock lock(cache->mutex);
    cache->values.try_emplace(w, v);
    return v;
  });
}

StateOracle counit_state(const GroupSpec& group) {
  return StateOracle("counit", group, [](const Word& w) { return Scalar(counit(w)); });
}

namespace {

void check_square(const GroupSpec& group, std::size_t rows, std::size_t cols) {
  if (group.is_free_product() || rows != group.n() || cols != group.n())
    throw ArgumentError("character_state: matrix shape does not match " + group.name());
}

}  // namespace

StateOracle character_state(const GroupSpec& group, const RationalMatrix& g) {
  check_square(group, g.rows(), g.cols());
  return StateOracle("character", group, [g](const Word& w) {
    mpq_class v = 1;
    for (const auto& l : w.letters()) v *= g(l.row - 1, l.col - 1);
    return Scalar(v);
  });
}

StateOracle character_state(const GroupSpec& group, const std::vector<double>& g) {
  const std::size_t n = group.n();
  if (g.size() != n * n) check_square(group, 0, 0);
  check_square(group, n, n);
  return StateOracle("character", group, [g, n](const Word& w) {
    double v = 1.0;
    for (const auto& l : w.letters()) v *= g[(l.row - 1) * n + (l.col - 1)];
    return Scalar::real(v);
  });
}

StateOracle mixture(const std::vector<StateOracle>& states, const std::vector<Scalar>& weights) {
  if (states.empty() || states.size() != weights.size())
    throw ArgumentError("mixture: need one weight per state");
  Scalar total(0);
  for (std::size_t i = 0; i < states.size(); ++i) {
    if (!(states[i].group() == states[0].group()))
      throw ArgumentError("mixture: states live on different groups");
    total += weights[i];
  }
  if (total.is_exact() ? !(total == Scalar(1)) : std::abs(total.to_double() - 1.0) > 1e-12)
    throw ArgumentError("mixture: weights must sum to 1");
  return StateOracle("mixture", states[0].group(), [states, weights](const Word& w) {
    Scalar acc(0);
    for (std::size_t i = 0; i < states.size(); ++i) acc += weights[i] * states[i](w);
    return acc;
  });
}

StateOracle convolve(const StateOracle& phi, const StateOracle& psi) {
  if (!(phi.group() == psi.group()))
    throw ArgumentError("convolve: states live on different groups");
  const GroupSpec g = phi.group();
  return StateOracle("(" + phi.label() + "*" + psi.label() + ")", g,
                     [phi, psi, g](const Word& w) {
                       Scalar acc(0);
                       for_each_coproduct_term(w, g, [&](const Word& l, const Word& r) {
                         Scalar a = phi(l);
                         if (a.is_zero()) return;
                         acc += a * psi(r);
                       });
                       return acc;
                     });
}

StateOracle pullback(const StateOracle& psi, const Morphism& pi) {
  if (!(psi.group() == pi.target()))
    throw ArgumentError("pullback: state lives on " + psi.group().name() + ", morphism " +
                        pi.name() + " targets " + pi.target().name());
  return StateOracle(psi.label() + "." + pi.name(), pi.source(),
                     [psi, pi](const Word& w) { return psi(pi.apply(w)); });
}

namespace {

struct Syllable {
  std::uint32_t factor;
  WordSum element;  // words over the factor group (factor tags stripped)
};

class FreeProductEvaluator {
 public:
  explicit FreeProductEvaluator(std::vector<StateOracle> factors)
      : factors_(std::move(factors)) {}

  Scalar evaluate(const Word& w) const {
    std::vector<Syllable> syl;
    for (const auto& l : w.letters()) {
      if (l.factor == 0 || l.factor > factors_.size())
        throw ArgumentError("free product word " + w.to_string() + " has a bad factor tag");
      Letter stripped = l;
      stripped.factor = 0;
      if (syl.empty() || syl.back().factor != l.factor) {
        syl.push_back({l.factor, WordSum(Word({stripped}))});
      } else {
        syl.back().element = syl.back().element * WordSum(Word({stripped}));
      }
    }
    if (syl.size() > caps().max_syllables)
      throw ResourceError("free product word has " + std::to_string(syl.size()) +
                          " syllables (cap " + std::to_string(caps().max_syllables) + ")");
    return recurse(std::move(syl), 0);
  }

 private:
  Scalar factor_value(const Syllable& s) const { return factors_[s.factor - 1](s.element); }

  // Elements [0, centered) are known to have zero factor-state value.
  Scalar recurse(std::vector<Syllable> e, std::size_t centered) const {
    if (e.empty()) return Scalar(1);
    if (e.size() == 1) return centered == 1 ? Scalar(0) : factor_value(e[0]);
    if (centered == e.size()) return Scalar(0);
    const Scalar alpha = factor_value(e[centered]);
    if (alpha.is_zero()) return recurse(std::move(e), centered + 1);

    // e_c = (e_c - alpha) + alpha: the first part extends the centered
    // prefix, the second drops e_c and may merge its neighbours.
    std::vector<Syllable> removed = e;
    removed.erase(removed.begin() + static_cast<std::ptrdiff_t>(centered));
    std::size_t next = centered;
    if (centered > 0 && centered < removed.size() &&
        removed[centered - 1].factor == removed[centered].factor) {
      removed[centered - 1].element = removed[centered - 1].element * removed[centered].element;
      removed.erase(removed.begin() + static_cast<std::ptrdiff_t>(centered));
      next = centered - 1;
    }
    e[centered].element -= WordSum::constant(alpha);
    Scalar with_centered = recurse(std::move(e), centered + 1);
    return with_centered + alpha * recurse(std::move(removed), next);
  }

  std::vector<StateOracle> factors_;
};

}  // namespace

StateOracle free_product_state(const std::vector<StateOracle>& factors) {
  std::vector<GroupSpec> groups;
  std::string label = "free(";
  for (std::size_t i = 0; i < factors.size(); ++i) {
    if (factors[i].group().is_free_product())
      throw ArgumentError("free_product_state: factors must not be free products");
    groups.push_back(factors[i].group());
    label += (i ? "," : "") + factors[i].label();
  }
  GroupSpec g = make_free_product(groups);
  auto eval = std::make_shared<FreeProductEvaluator>(factors);
  return memoize(StateOracle(label + ")", g, [eval](const Word& w) { return eval->evaluate(w); }));
}

TransferMatrix::TransferMatrix(GroupSpec group, std::vector<bool> pattern, RationalMatrix exact)
    : group_(std::move(group)), pattern_(std::move(pattern)), dim_(exact.rows()) {
  if (exact.rows() != exact.cols()) throw ArgumentError("TransferMatrix: not square");
  values_ = exact.to_doubles();
  exact_ = std::move(exact);
}

TransferMatrix::TransferMatrix(GroupSpec group, std::vector<bool> pattern,
                               std::vector<double> values)
    : group_(std::move(group)), pattern_(std::move(pattern)), values_(std::move(values)) {
  dim_ = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(values_.size()))));
  if (dim_ * dim_ != values_.size()) throw ArgumentError("TransferMatrix: not square");
}

const RationalMatrix& TransferMatrix::exact() const {
  if (!exact_) throw ArgumentError("TransferMatrix: no exact entries");
  return *exact_;
}

TransferMatrix TransferMatrix::to_float() const { return TransferMatrix(group_, pattern_, values_); }

TransferMatrix operator*(const TransferMatrix& a, const TransferMatrix& b) {
  if (a.dim_ != b.dim_) throw ArgumentError("TransferMatrix: dimension mismatch");
  if (a.exact_ && b.exact_) return TransferMatrix(a.group_, a.pattern_, *a.exact_ * *b.exact_);
  std::vector<double> c(a.dim_ * a.dim_);
  kernels::gemm(a.values_, b.values_, c, a.dim_, a.dim_, a.dim_);
  return TransferMatrix(a.group_, a.pattern_, std::move(c));
}

Word transfer_word(const GroupSpec& group, const std::vector<bool>& pattern, std::size_t row,
                   std::size_t col) {
  const std::size_t d = pattern.size();
  const std::size_t n = group.n();
  std::vector<Letter> letters(d);
  for (std::size_t t = d; t-- > 0;) {
    letters[t] = make_letter(group, 0, static_cast<std::uint32_t>(row % n + 1),
                             static_cast<std::uint32_t>(col % n + 1), pattern[t]);
    row /= n;
    col /= n;
  }
  return Word(std::move(letters));
}

TransferMatrix transfer_matrix(const StateOracle& phi, std::size_t degree,
                               std::vector<bool> pattern) {
  const GroupSpec& g = phi.group();
  if (g.is_free_product()) throw UnsupportedError("transfer matrices need a single-matrix group");
  if (pattern.size() != degree) throw ArgumentError("transfer_matrix: pattern length != degree");
  std::uint64_t dim = 1;
  for (std::size_t t = 0; t < degree; ++t) {
    dim *= g.n();
    if (dim * dim > caps().max_transfer_entries) {
      throw ResourceError("transfer matrix of degree " + std::to_string(degree) + " on " +
                          g.name() + " exceeds " + std::to_string(caps().max_transfer_entries) +
                          " entries");
    }
  }
  std::vector<Scalar> entries;
  entries.reserve(dim * dim);
  bool exact = true;
  for (std::size_t r = 0; r < dim; ++r)
    for (std::size_t c = 0; c < dim; ++c) {
      entries.push_back(phi(transfer_word(g, pattern, r, c)));
      exact = exact && entries.back().is_exact();
    }
  if (exact) {
    std::vector<mpq_class> q;
    q.reserve(entries.size());
    for (auto& e : entries) q.push_back(e.exact());
    return TransferMatrix(g, std::move(pattern), RationalMatrix(dim, dim, std::move(q)));
  }
  std::vector<double> f;
  f.reserve(entries.size());
  for (auto& e : entries) f.push_back(e.to_double());
  return TransferMatrix(g, std::move(pattern), std::move(f));
}

TransferMatrix transfer_matrix(const StateOracle& phi, std::size_t degree) {
  return transfer_matrix(phi, degree, std::vector<bool>(degree, false));
}

TransferMatrix convolution_power(const StateOracle& phi, std::size_t k, std::size_t degree,
                                 std::vector<bool> pattern) {
  if (k == 0) throw ArgumentError("convolution_power: k must be positive");
  TransferMatrix base = transfer_matrix(phi, degree, std::move(pattern));
  std::optional<TransferMatrix> result;
  while (true) {
    if (k & 1) result = result ? *result * base : base;
    k >>= 1;
    if (!k) break;
    base = base * base;
  }
  return *result;
}

Scalar max_abs_difference(const TransferMatrix& a, const TransferMatrix& b) {
  if (a.dim() != b.dim()) throw ArgumentError("max_abs_difference: dimension mismatch");
  if (a.is_exact() && b.is_exact()) {
    mpq_class worst = 0;
    const auto& x = a.exact().data();
    const auto& y = b.exact().data();
    for (std::size_t i = 0; i < x.size(); ++i) {
      mpq_class d = abs(x[i] - y[i]);
      if (d > worst) worst = d;
    }
    return Scalar(worst);
  }
  return Scalar::real(kernels::max_abs_diff(a.values(), b.values()));
}

Scalar check_invariance(const StateOracle& h, const StateOracle& phi, std::size_t degree,
                        std::vector<bool> pattern) {
  const TransferMatrix th = transfer_matrix(h, degree, pattern);
  const TransferMatrix tp = transfer_matrix(phi, degree, std::move(pattern));
  Scalar left = max_abs_difference(th * tp, th);
  Scalar right = max_abs_difference(tp * th, th);
  if (left.is_exact() && right.is_exact()) return left.exact() >= right.exact() ? left : right;
  return Scalar::real(std::max(left.to_double(), right.to_double()));
}

ConvergenceReport converge_to_haar(const StateOracle& tau1, const StateOracle& tau2,
                                   const StateOracle& haar, const ConvergenceOptions& options) {
  if (!(tau1.group() == tau2.group()) || !(tau1.group() == haar.group()))
    throw ArgumentError("converge_to_haar: states live on different groups");
  if (options.degree == 0) throw ArgumentError("converge_to_haar: degree must be positive");
  if (options.max_iter == 0) throw ArgumentError("converge_to_haar: max_iter must be positive");
  std::vector<bool> pattern = options.pattern;
  if (pattern.empty()) pattern.assign(options.degree, false);

  ConvergenceReport report;
  report.degree = options.degree;
  report.pattern = pattern;
  report.tolerance = options.tolerance;

  const TransferMatrix t1 = transfer_matrix(tau1, options.degree, pattern);
  const TransferMatrix t2 = transfer_matrix(tau2, options.degree, pattern);
  const TransferMatrix h = transfer_matrix(haar, options.degree, pattern);
  const std::size_t dim = h.dim();

  TransferMatrix step = (t1.is_exact() && t2.is_exact() && dim <= caps().exact_power_dimension)
                            ? t1 * t2
                            : t1.to_float() * t2.to_float();
  report.first_step_exact = step.is_exact() && h.is_exact();
  report.residuals.push_back(max_abs_difference(step, h).to_double());

  const std::vector<double>& p = step.values();
  const std::vector<double>& hf = h.values();
  std::vector<double> power = p;
  std::vector<double> scratch(power.size());
  constexpr double eps = std::numeric_limits<double>::epsilon();
  while (report.residuals.back() > options.tolerance &&
         report.residuals.size() < options.max_iter) {
    kernels::gemm(power, p, scratch, dim, dim, dim);
    power.swap(scratch);
    report.residuals.push_back(kernels::max_abs_diff(power, hf));
  }
  report.iterations = report.residuals.size();
  report.converged = report.residuals.back() <= options.tolerance;
  report.float_error_bound = report.iterations > 1 || !report.first_step_exact
                                 ? 10.0 * static_cast<double>(report.iterations) * eps *
                                       static_cast<double>(dim)
                                 : 0.0;
  for (std::size_t i = 2; i < report.residuals.size(); ++i) {
    if (report.residuals[i] > report.residuals[i - 1] * (1 + 1e-9) + 1e-15) {
      report.monotone_tail = false;
      break;
    }
  }

  if (options.spectrum) {
    Eigen::MatrixXd off(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    for (std::size_t r = 0; r < dim; ++r)
      for (std::size_t c = 0; c < dim; ++c)
        off(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
            p[r * dim + c] - hf[r * dim + c];
    Eigen::EigenSolver<Eigen::MatrixXd> solver(off, false);
    double rho = 0.0;
    if (solver.info() == Eigen::Success) {
      for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i)
        rho = std::max(rho, std::abs(solver.eigenvalues()[i]));
      report.subleading_modulus = rho;
    }
  }
  return report;
}

}  // namespace cqg
