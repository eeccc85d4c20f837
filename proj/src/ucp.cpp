#include "cqg/ucp.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <random>
#include <stdexcept>
#include <unordered_map>

#include "cqg/caps.hpp"
#include "cqg/errors.hpp"
#include "cqg/rng.hpp"

namespace cqg {
namespace detail {

struct UcpImpl {
  UcpImpl(UcpKind k, GroupSpec g, std::size_t d, bool diag)
      : kind(k), group(std::move(g)), dim(d), diagonal(diag) {}
  virtual ~UcpImpl() = default;

  virtual CMatrix dense(const Word& w) const {
    return diag(w).asDiagonal();
  }
  virtual CVector diag(const Word&) const {
    throw ArgumentError("map is not diagonal");
  }
  virtual Complex trace(const WordSum& s) const;
  virtual Complex pair_trace(const WordSum& x, const WordSum& y) const;

  void require_materializable() const {
    if (dim > caps().max_ucp_dimension) {
      throw ResourceError("UCP output size " + std::to_string(dim) + " exceeds cap " +
                          std::to_string(caps().max_ucp_dimension));
    }
  }
  CMatrix dense_sum(const WordSum& s) const {
    require_materializable();
    CMatrix out = CMatrix::Zero(dim, dim);
    for (const auto& [w, c] : s.terms()) out += c.to_double() * dense(w);
    return out;
  }
  CVector diag_sum(const WordSum& s) const {
    require_materializable();
    CVector out = CVector::Zero(dim);
    for (const auto& [w, c] : s.terms()) out += c.to_double() * diag(w);
    return out;
  }
  // Flattened image whose plain inner product over dim gives the
  // normalised trace of X^* Y: the diagonal for diagonal maps, all entries
  // otherwise.
  CVector flat(const WordSum& s) const {
    if (diagonal) return diag_sum(s);
    CMatrix m = dense_sum(s);
    return Eigen::Map<CVector>(m.data(), m.size());
  }

  UcpKind kind;
  GroupSpec group;
  std::size_t dim;
  bool diagonal;
};

Complex UcpImpl::trace(const WordSum& s) const {
  if (diagonal) return diag_sum(s).mean();
  return dense_sum(s).trace() / static_cast<double>(dim);
}

Complex UcpImpl::pair_trace(const WordSum& x, const WordSum& y) const {
  return flat(x).dot(flat(y)) / static_cast<double>(dim);
}

namespace {

GeneratorKey key_of(const Letter& l) { return {l.factor, l.row, l.col}; }

struct RepImpl final : UcpImpl {
  RepImpl(GroupSpec g, std::size_t k, GeneratorImages imgs)
      : UcpImpl(UcpKind::Rep, std::move(g), k, false), images(std::move(imgs)) {
    for (const auto& [key, m] : images) adjoints.emplace(key, m.adjoint());
  }
  CMatrix dense(const Word& w) const override {
    CMatrix out = CMatrix::Identity(dim, dim);
    for (const Letter& l : w.letters()) {
      const auto& table = l.starred ? adjoints : images;
      auto it = table.find(key_of(l));
      if (it == table.end()) throw ArgumentError("no image for letter in " + w.to_string());
      out = out * it->second;
    }
    return out;
  }
  GeneratorImages images;
  GeneratorImages adjoints;
};

struct SampleImpl final : UcpImpl {
  // values[s * n*n + (i-1)*n + (j-1)] = u_ij at sample s.
  SampleImpl(GroupSpec g, std::size_t count, std::vector<Complex> vals)
      : UcpImpl(UcpKind::ClassicalSample, std::move(g), count, true), values(std::move(vals)) {}
  CVector diag(const Word& w) const override {
    const std::size_t n = group.n();
    CVector out = CVector::Ones(dim);
    for (std::size_t s = 0; s < dim; ++s) {
      const Complex* g = values.data() + s * n * n;
      Complex acc = 1.0;
      for (const Letter& l : w.letters()) {
        Complex v = g[(l.row - 1) * n + (l.col - 1)];
        acc *= l.starred ? std::conj(v) : v;
      }
      out[s] = acc;
    }
    return out;
  }
  std::vector<Complex> values;
};

struct CompressedImpl final : UcpImpl {
  CompressedImpl(UcpMap in, CMatrix v)
      : UcpImpl(UcpKind::Compressed, in.group(), static_cast<std::size_t>(v.cols()), false),
        inner(std::move(in)),
        isometry(std::move(v)) {}
  CMatrix dense(const Word& w) const override {
    return isometry.adjoint() * inner.evaluate(w) * isometry;
  }
  UcpMap inner;
  CMatrix isometry;
};

struct ConvolvedImpl final : UcpImpl {
  ConvolvedImpl(UcpMap a, UcpMap b)
      : UcpImpl(UcpKind::Convolved, a.group(), a.dim() * b.dim(),
                a.is_diagonal() && b.is_diagonal()),
        first(std::move(a)),
        second(std::move(b)) {}

  CMatrix dense(const Word& w) const override {
    if (diagonal) return diag(w).asDiagonal();
    require_materializable();
    const auto k1 = static_cast<Eigen::Index>(first.dim());
    const auto k2 = static_cast<Eigen::Index>(second.dim());
    CMatrix out = CMatrix::Zero(k1 * k2, k1 * k2);
    for_each_coproduct_term(w, group, [&](const Word& l, const Word& r) {
      CMatrix a = first.evaluate(l);
      CMatrix b = second.evaluate(r);
      for (Eigen::Index i = 0; i < k1; ++i)
        for (Eigen::Index j = 0; j < k1; ++j)
          if (a(i, j) != Complex(0.0)) out.block(i * k2, j * k2, k2, k2) += a(i, j) * b;
    });
    return out;
  }
  CVector diag(const Word& w) const override {
    require_materializable();
    const auto k1 = static_cast<Eigen::Index>(first.dim());
    const auto k2 = static_cast<Eigen::Index>(second.dim());
    CVector out = CVector::Zero(k1 * k2);
    for_each_coproduct_term(w, group, [&](const Word& l, const Word& r) {
      CVector a = first.evaluate_diagonal(l);
      CVector b = second.evaluate_diagonal(r);
      for (Eigen::Index i = 0; i < k1; ++i) out.segment(i * k2, k2) += a[i] * b;
    });
    return out;
  }

  bool factorize() const { return dim > caps().max_ucp_dimension; }

  // tr(A (x) B) = tr A tr B, term by term over the coproduct.
  Complex trace(const WordSum& s) const override {
    if (!factorize()) return UcpImpl::trace(s);
    std::unordered_map<Word, Complex, WordHash> left;
    std::unordered_map<Word, Complex, WordHash> right;
    Complex total = 0.0;
    for (const auto& [w, c] : s.terms()) {
      Complex acc = 0.0;
      for_each_coproduct_term(w, group, [&](const Word& l, const Word& r) {
        auto li = left.find(l);
        if (li == left.end()) li = left.emplace(l, first.trace(l)).first;
        if (li->second == Complex(0.0)) return;
        auto ri = right.find(r);
        if (ri == right.end()) ri = right.emplace(r, second.trace(r)).first;
        acc += li->second * ri->second;
      });
      total += c.to_double() * acc;
    }
    return total;
  }

  // tr((A_i (x) B_i)^* (A_j (x) B_j)) = tr(A_i^* A_j) tr(B_i^* B_j): two
  // small Gram matrices instead of one huge product.
  Complex pair_trace(const WordSum& x, const WordSum& y) const override {
    if (!factorize()) return UcpImpl::pair_trace(x, y);
    struct Terms {
      std::vector<Word> lefts, rights;
      std::vector<double> coef;
    };
    auto expand = [&](const WordSum& s) {
      std::map<std::pair<Word, Word>, double> merged;
      for (const auto& [w, c] : s.terms()) {
        const double cd = c.to_double();
        for_each_coproduct_term(w, group, [&](const Word& l, const Word& r) {
          merged[{l, r}] += cd;
        });
      }
      Terms t;
      for (const auto& [lr, c] : merged) {
        if (c == 0.0) continue;
        t.lefts.push_back(lr.first);
        t.rights.push_back(lr.second);
        t.coef.push_back(c);
      }
      return t;
    };
    auto columns = [](const UcpMap& m, const std::vector<Word>& words) {
      std::map<Word, Eigen::Index> slot;
      for (const Word& w : words) slot.emplace(w, 0);
      Eigen::Index next = 0;
      for (auto& [w, idx] : slot) idx = next++;
      const auto& impl = m.impl();
      const Eigen::Index rows =
          static_cast<Eigen::Index>(impl.diagonal ? impl.dim : impl.dim * impl.dim);
      CMatrix cols(rows, next);
      for (const auto& [w, idx] : slot) cols.col(idx) = impl.flat(WordSum(w));
      std::vector<Eigen::Index> where;
      where.reserve(words.size());
      for (const Word& w : words) where.push_back(slot.at(w));
      return std::pair{cols, where};
    };
    const Terms tx = expand(x);
    const Terms ty = expand(y);
    if (tx.coef.empty() || ty.coef.empty()) return 0.0;
    auto [ax, wax] = columns(first, tx.lefts);
    auto [ay, way] = columns(first, ty.lefts);
    auto [bx, wbx] = columns(second, tx.rights);
    auto [by, wby] = columns(second, ty.rights);
    const CMatrix g1 = ax.adjoint() * ay / static_cast<double>(first.dim());
    const CMatrix g2 = bx.adjoint() * by / static_cast<double>(second.dim());
    Complex total = 0.0;
    for (std::size_t i = 0; i < tx.coef.size(); ++i)
      for (std::size_t j = 0; j < ty.coef.size(); ++j)
        total += tx.coef[i] * ty.coef[j] * g1(wax[i], way[j]) * g2(wbx[i], wby[j]);
    return total;
  }

  UcpMap first;
  UcpMap second;
};

struct PullbackImpl final : UcpImpl {
  PullbackImpl(UcpMap in, Morphism p)
      : UcpImpl(UcpKind::Pullback, p.source(), in.dim(), in.is_diagonal()),
        inner(std::move(in)),
        pi(std::move(p)) {}
  CMatrix dense(const Word& w) const override { return inner.evaluate(pi.apply(w)); }
  CVector diag(const Word& w) const override { return inner.evaluate_diagonal(pi.apply(w)); }
  Complex trace(const WordSum& s) const override { return inner.trace(pi.apply(s)); }
  Complex pair_trace(const WordSum& x, const WordSum& y) const override {
    return inner.pair_trace(pi.apply(x), pi.apply(y));
  }
  UcpMap inner;
  Morphism pi;
};

struct DirectSumImpl final : UcpImpl {
  DirectSumImpl(std::vector<UcpMap> bs, std::size_t total, bool diag)
      : UcpImpl(UcpKind::DirectSum, bs.front().group(), total, diag), blocks(std::move(bs)) {}
  CMatrix dense(const Word& w) const override {
    require_materializable();
    CMatrix out = CMatrix::Zero(dim, dim);
    Eigen::Index at = 0;
    for (const auto& b : blocks) {
      const auto k = static_cast<Eigen::Index>(b.dim());
      out.block(at, at, k, k) = b.evaluate(w);
      at += k;
    }
    return out;
  }
  CVector diag(const Word& w) const override {
    CVector out(dim);
    Eigen::Index at = 0;
    for (const auto& b : blocks) {
      const auto k = static_cast<Eigen::Index>(b.dim());
      out.segment(at, k) = b.evaluate_diagonal(w);
      at += k;
    }
    return out;
  }
  Complex trace(const WordSum& s) const override {
    Complex total = 0.0;
    for (const auto& b : blocks) total += static_cast<double>(b.dim()) * b.trace(s);
    return total / static_cast<double>(dim);
  }
  Complex pair_trace(const WordSum& x, const WordSum& y) const override {
    Complex total = 0.0;
    for (const auto& b : blocks) total += static_cast<double>(b.dim()) * b.pair_trace(x, y);
    return total / static_cast<double>(dim);
  }
  std::vector<UcpMap> blocks;
};

double operator_norm(const CMatrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<CMatrix> svd(m);
  return svd.singularValues()(0);
}

std::vector<GeneratorKey> generator_keys(const GroupSpec& group) {
  std::vector<GeneratorKey> keys;
  auto add = [&](std::uint8_t f, const GroupSpec& g) {
    for (std::uint32_t i = 1; i <= g.n(); ++i)
      for (std::uint32_t j = 1; j <= g.n(); ++j)
        keys.push_back({f, static_cast<std::uint8_t>(i), static_cast<std::uint8_t>(j)});
  };
  if (group.is_free_product()) {
    for (std::uint32_t f = 1; f <= group.factor_count(); ++f)
      add(static_cast<std::uint8_t>(f), group.factor(f));
  } else {
    add(0, group);
  }
  return keys;
}

std::size_t check_images(const GroupSpec& group, const GeneratorImages& images) {
  const auto keys = generator_keys(group);
  if (images.size() != keys.size()) {
    throw ArgumentError("expected " + std::to_string(keys.size()) + " generator images, got " +
                        std::to_string(images.size()));
  }
  std::size_t k = 0;
  for (const auto& key : keys) {
    auto it = images.find(key);
    if (it == images.end()) throw ArgumentError("missing generator image");
    const auto& m = it->second;
    if (m.rows() != m.cols() || m.rows() == 0) throw ArgumentError("images must be square");
    if (k == 0) k = static_cast<std::size_t>(m.rows());
    if (static_cast<std::size_t>(m.rows()) != k) throw ArgumentError("image sizes differ");
  }
  if (k > caps().max_ucp_dimension) throw ResourceError("representation size exceeds cap");
  return k;
}

}  // namespace
}  // namespace detail

UcpMap::UcpMap(std::shared_ptr<const detail::UcpImpl> impl) : impl_(std::move(impl)) {}

UcpKind UcpMap::kind() const { return impl_->kind; }
const GroupSpec& UcpMap::group() const { return impl_->group; }
std::size_t UcpMap::dim() const { return impl_->dim; }
bool UcpMap::is_diagonal() const { return impl_->diagonal; }

CMatrix UcpMap::evaluate(const Word& w) const {
  impl_->require_materializable();
  return impl_->dense(w);
}
CMatrix UcpMap::evaluate(const WordSum& s) const { return impl_->dense_sum(s); }
CVector UcpMap::evaluate_diagonal(const Word& w) const {
  if (!impl_->diagonal) throw ArgumentError("map is not diagonal");
  impl_->require_materializable();
  return impl_->diag(w);
}
CVector UcpMap::evaluate_diagonal(const WordSum& s) const {
  if (!impl_->diagonal) throw ArgumentError("map is not diagonal");
  return impl_->diag_sum(s);
}
Complex UcpMap::trace(const Word& w) const { return impl_->trace(WordSum(w)); }
Complex UcpMap::trace(const WordSum& s) const { return impl_->trace(s); }
Complex UcpMap::pair_trace(const WordSum& x, const WordSum& y) const {
  return impl_->pair_trace(x, y);
}
Complex UcpMap::materialized_trace(const WordSum& s) const {
  return impl_->detail::UcpImpl::trace(s);
}

double validate_relations(const GroupSpec& group, const GeneratorImages& images) {
  const std::size_t k = detail::check_images(group, images);
  const detail::RepImpl rep(group, k, images);
  double worst = 0.0;
  for (const WordSum& rel : relation_expressions(group)) {
    worst = std::max(worst, detail::operator_norm(rep.dense_sum(rel)));
  }
  for (const auto& [key, m] : images) {
    if (group.factor(key.factor).self_adjoint_entries()) {
      worst = std::max(worst, detail::operator_norm(m - m.adjoint()));
    }
  }
  return worst;
}

UcpMap rep_ucp(const GroupSpec& group, GeneratorImages images, double tolerance) {
  const double residual = validate_relations(group, images);
  if (!(residual <= tolerance)) {
    throw ArgumentError("relation residual " + std::to_string(residual) + " above tolerance");
  }
  const std::size_t k = detail::check_images(group, images);
  return UcpMap(std::make_shared<detail::RepImpl>(group, k, std::move(images)));
}

GeneratorImages flip_family_images(const CMatrix& v) {
  if (v.rows() != v.cols() || v.rows() == 0) throw ArgumentError("V must be square");
  const CMatrix zero = CMatrix::Zero(v.rows(), v.cols());
  return {{{0, 1, 1}, zero}, {{0, 1, 2}, v}, {{0, 2, 1}, v}, {{0, 2, 2}, zero}};
}

GeneratorImages character_images(const GroupSpec& group, const std::vector<double>& g) {
  if (group.is_free_product()) throw ArgumentError("characters need a single group");
  const std::uint32_t n = group.n();
  if (g.size() != static_cast<std::size_t>(n) * n) throw ArgumentError("matrix size mismatch");
  GeneratorImages out;
  for (std::uint32_t i = 1; i <= n; ++i)
    for (std::uint32_t j = 1; j <= n; ++j)
      out[{0, static_cast<std::uint8_t>(i), static_cast<std::uint8_t>(j)}] =
          CMatrix::Constant(1, 1, g[(i - 1) * n + (j - 1)]);
  return out;
}

std::vector<double> haar_orthogonal(std::uint32_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  Eigen::MatrixXd a(n, n);
  for (std::uint32_t i = 0; i < n; ++i)
    for (std::uint32_t j = 0; j < n; ++j) a(i, j) = normal(rng);
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(a);
  Eigen::MatrixXd q = qr.householderQ();
  const Eigen::MatrixXd& r = qr.matrixQR();
  // Sign fix so the distribution is Haar rather than QR-biased.
  for (std::uint32_t j = 0; j < n; ++j)
    if (r(j, j) < 0) q.col(j) = -q.col(j);
  std::vector<double> out(static_cast<std::size_t>(n) * n);
  for (std::uint32_t i = 0; i < n; ++i)
    for (std::uint32_t j = 0; j < n; ++j) out[i * n + j] = q(i, j);
  return out;
}

UcpMap classical_sampling_ucp(const GroupSpec& group, std::size_t sample_count,
                              std::uint64_t seed) {
  if (sample_count == 0) throw ArgumentError("sample_count must be positive");
  if (sample_count > caps().max_ucp_dimension * caps().max_ucp_dimension) {
    throw ResourceError("sample_count exceeds cap");
  }
  const std::uint32_t n = group.n();
  const std::size_t nn = static_cast<std::size_t>(n) * n;
  std::vector<Complex> values(sample_count * nn, 0.0);
  switch (group.family()) {
    case Family::OClassical:
      for (std::size_t s = 0; s < sample_count; ++s) {
        const auto g = haar_orthogonal(n, stream_seed(seed, s));
        std::copy(g.begin(), g.end(), values.begin() + static_cast<std::ptrdiff_t>(s * nn));
      }
      break;
    case Family::SClassical: {
      std::uint64_t order = 1;
      for (std::uint32_t i = 2; i <= n && order <= caps().max_direct_average; ++i) order *= i;
      const bool enumerate = order <= caps().max_direct_average && sample_count % order == 0;
      std::vector<std::uint32_t> sigma(n);
      std::iota(sigma.begin(), sigma.end(), 0u);
      for (std::size_t s = 0; s < sample_count; ++s) {
        if (enumerate) {
          if (s > 0 && !std::next_permutation(sigma.begin(), sigma.end())) {
            std::iota(sigma.begin(), sigma.end(), 0u);
          }
        } else {
          std::mt19937_64 rng(stream_seed(seed, s));
          std::iota(sigma.begin(), sigma.end(), 0u);
          for (std::uint32_t i = n; i > 1; --i) {
            std::uniform_int_distribution<std::uint32_t> pick(0, i - 1);
            std::swap(sigma[i - 1], sigma[pick(rng)]);
          }
        }
        for (std::uint32_t j = 0; j < n; ++j) values[s * nn + sigma[j] * n + j] = 1.0;
      }
      break;
    }
    case Family::Torus:
      for (std::size_t s = 0; s < sample_count; ++s) {
        const double angle =
            2.0 * std::numbers::pi * static_cast<double>(s) / static_cast<double>(sample_count);
        values[s] = std::polar(1.0, angle);
      }
      break;
    default:
      throw ArgumentError("classical sampling needs o:<n>, s:<m> or t, not " + group.name());
  }
  return UcpMap(std::make_shared<detail::SampleImpl>(group, sample_count, std::move(values)));
}

UcpMap compress_ucp(const UcpMap& inner, const CMatrix& isometry) {
  if (static_cast<std::size_t>(isometry.rows()) != inner.dim() || isometry.cols() == 0 ||
      isometry.cols() > isometry.rows()) {
    throw ArgumentError("isometry shape must be dim x m with 1 <= m <= dim");
  }
  const CMatrix gram = isometry.adjoint() * isometry;
  const double err = (gram - CMatrix::Identity(gram.rows(), gram.cols())).cwiseAbs().maxCoeff();
  if (err > 1e-10) throw ArgumentError("compression matrix is not an isometry");
  return UcpMap(std::make_shared<detail::CompressedImpl>(inner, isometry));
}

UcpMap convolve_ucp(const UcpMap& first, const UcpMap& second) {
  if (!(first.group() == second.group())) throw ArgumentError("convolve_ucp needs one group");
  return UcpMap(std::make_shared<detail::ConvolvedImpl>(first, second));
}

UcpMap pullback_ucp(const UcpMap& inner, const Morphism& pi) {
  if (!(pi.target() == inner.group())) {
    throw ArgumentError("morphism target " + pi.target().name() + " does not match map group " +
                        inner.group().name());
  }
  return UcpMap(std::make_shared<detail::PullbackImpl>(inner, pi));
}

UcpMap direct_sum_ucp(const std::vector<UcpMap>& blocks) {
  if (blocks.empty()) throw ArgumentError("direct sum needs at least one block");
  std::size_t total = 0;
  bool diag = true;
  for (const auto& b : blocks) {
    if (!(b.group() == blocks.front().group())) throw ArgumentError("blocks on different groups");
    total += b.dim();
    diag = diag && b.is_diagonal();
  }
  return UcpMap(std::make_shared<detail::DirectSumImpl>(blocks, total, diag));
}

namespace {

double real_part(Complex z, const char* what) {
  if (std::abs(z.imag()) > 1e-12 * (1.0 + std::abs(z.real()))) {
    throw std::logic_error(std::string(what) + " has imaginary part " + std::to_string(z.imag()));
  }
  return z.real();
}

}  // namespace

StateOracle trace_state(const UcpMap& theta) {
  return StateOracle("tr", theta.group(), [theta](const Word& w) {
    return Scalar::real(real_part(theta.trace(w), "trace"));
  });
}

double defect(const UcpMap& theta, const WordSum& b) {
  const Complex d = theta.trace(adjoint(b) * b) - theta.pair_trace(b, b);
  return real_part(d, "defect");
}

DefectGram defect_gram(const UcpMap& theta, const std::vector<WordSum>& words) {
  const auto m = static_cast<Eigen::Index>(words.size());
  DefectGram out;
  out.gram = CMatrix::Zero(m, m);
  for (Eigen::Index a = 0; a < m; ++a) {
    const WordSum xa = adjoint(words[a]);
    for (Eigen::Index b = a; b < m; ++b) {
      const Complex v = theta.trace(xa * words[b]) - theta.pair_trace(words[a], words[b]);
      out.gram(a, b) = v;
      out.gram(b, a) = std::conj(v);
    }
    out.gram(a, a) = out.gram(a, a).real();
  }
  if (m > 0) {
    Eigen::SelfAdjointEigenSolver<CMatrix> eig(out.gram, Eigen::EigenvaluesOnly);
    out.min_eigenvalue = eig.eigenvalues().minCoeff();
  }
  out.worst_cauchy_schwarz = -std::numeric_limits<double>::infinity();
  for (Eigen::Index a = 0; a < m; ++a) {
    for (Eigen::Index b = 0; b < m; ++b) {
      const double bound = std::sqrt(std::max(0.0, out.gram(a, a).real())) *
                           std::sqrt(std::max(0.0, out.gram(b, b).real()));
      const double gap = std::abs(out.gram(a, b)) - bound;
      out.worst_cauchy_schwarz = std::max(out.worst_cauchy_schwarz, gap);
      if (gap > 1e-9) out.cauchy_schwarz_ok = false;
    }
  }
  if (m == 0) out.worst_cauchy_schwarz = 0.0;
  return out;
}

DefectReport defect_report(const UcpMap& theta, const std::vector<WordSum>& words) {
  DefectReport r;
  r.words = words;
  for (const auto& w : words) {
    r.defects.push_back(defect(theta, w));
    r.trace_values.push_back(theta.trace(w));
  }
  r.gram_min_eigenvalue = defect_gram(theta, words).min_eigenvalue;
  return r;
}

FactorizationReport factorization_report(const std::vector<UcpMap>& net,
                                         const StateOracle& target_trace,
                                         const std::vector<WordSum>& words,
                                         double trace_threshold, double defect_threshold) {
  FactorizationReport r;
  for (const auto& theta : net) {
    if (!(theta.group() == target_trace.group())) {
      throw ArgumentError("net element and target trace live on different groups");
    }
    double terr = 0.0;
    double dmax = 0.0;
    for (const auto& w : words) {
      terr = std::max(terr, std::abs(theta.trace(w) - target_trace(w).to_double()));
      dmax = std::max(dmax, defect(theta, w));
    }
    r.dims.push_back(theta.dim());
    r.trace_errors.push_back(terr);
    r.defects.push_back(dmax);
  }
  // Non-increasing with a rounding allowance, so an identically zero
  // sequence counts as decreasing.
  auto decreasing = [](const std::vector<double>& v) {
    for (std::size_t i = 1; i < v.size(); ++i)
      if (v[i] > v[i - 1] + 1e-12) return false;
    return true;
  };
  r.trace_errors_decreasing = decreasing(r.trace_errors);
  r.defects_decreasing = decreasing(r.defects);
  r.witnesses = !net.empty() && r.trace_errors_decreasing && r.defects_decreasing &&
                r.trace_errors.back() <= trace_threshold && r.defects.back() <= defect_threshold;
  return r;
}

CMatrix random_isometry(std::size_t k, std::size_t m, std::uint64_t seed) {
  if (m == 0 || m > k) throw ArgumentError("isometry needs 1 <= m <= k");
  std::mt19937_64 rng(stream_seed(seed, 0));
  std::normal_distribution<double> normal;
  Eigen::MatrixXd a(k, m);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < m; ++j) a(i, j) = normal(rng);
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(a);
  Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(k, m);
  return q.cast<Complex>();
}

CMatrix random_self_adjoint_unitary(std::size_t k, std::uint64_t seed) {
  const auto g = haar_orthogonal(static_cast<std::uint32_t>(k), stream_seed(seed, 1));
  Eigen::MatrixXd q(k, k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) q(i, j) = g[i * k + j];
  std::mt19937_64 rng(stream_seed(seed, 2));
  Eigen::VectorXd signs(k);
  for (std::size_t i = 0; i < k; ++i) signs[i] = (rng() & 1u) ? 1.0 : -1.0;
  Eigen::MatrixXd v = q * signs.asDiagonal() * q.transpose();
  v = 0.5 * (v + v.transpose()).eval();
  return v.cast<Complex>();
}

}  // namespace cqg
