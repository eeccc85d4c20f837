#include "cqg/haar.hpp"

#include <algorithm>
#include <mutex>
#include <numeric>

#include "cqg/caps.hpp"
#include "cqg/errors.hpp"

namespace cqg {

PartitionFamily category_for(const GroupSpec& group, const std::vector<bool>& pattern) {
  switch (group.family()) {
    case Family::OClassical:
      return PartitionFamily(PartitionKind::Pairings);
    case Family::OPlus:
      return PartitionFamily(PartitionKind::NoncrossingPairings);
    case Family::SClassical:
      return PartitionFamily(PartitionKind::All);
    case Family::SPlus:
      return PartitionFamily(PartitionKind::Noncrossing);
    case Family::UClassical:
      return PartitionFamily(PartitionKind::ColoredPairings, pattern);
    case Family::UPlus:
      return PartitionFamily(PartitionKind::NoncrossingColoredPairings, pattern);
    default:
      throw UnsupportedError("no partition category for " + group.name());
  }
}

namespace {

std::uint64_t factorial_capped(std::uint32_t m, std::uint64_t cap) {
  std::uint64_t f = 1;
  for (std::uint32_t i = 2; i <= m; ++i) {
    f *= i;
    if (f > cap) return cap + 1;
  }
  return f;
}

HaarMethod default_method(const GroupSpec& g) {
  switch (g.family()) {
    case Family::Torus:
      return HaarMethod::Circle;
    case Family::SClassical:
      return factorial_capped(g.n(), caps().max_direct_average) <= caps().max_direct_average
                 ? HaarMethod::DirectAverage
                 : HaarMethod::Weingarten;
    case Family::FreeProduct:
      throw UnsupportedError("free products have no single Haar oracle; use haar_state");
    default:
      return HaarMethod::Weingarten;
  }
}

}  // namespace

HaarOracle::HaarOracle(GroupSpec group) : HaarOracle(group, default_method(group)) {}

HaarOracle::HaarOracle(GroupSpec group, HaarMethod method)
    : group_(std::move(group)), method_(method) {
  if (group_.is_free_product())
    throw UnsupportedError("HaarOracle: free products are evaluated by free_product_state");
  const bool ok = [&] {
    switch (method_) {
      case HaarMethod::Circle:
        return group_.family() == Family::Torus;
      case HaarMethod::DirectAverage:
        return group_.family() == Family::SClassical &&
               factorial_capped(group_.n(), caps().max_direct_average) <=
                   caps().max_direct_average;
      case HaarMethod::Weingarten:
        return group_.family() != Family::Torus;
    }
    return false;
  }();
  if (!ok) throw ArgumentError("HaarOracle: method incompatible with " + group_.name());
}

mpq_class HaarOracle::value(const Word& w) const {
  {
    std::shared_lock lock(word_mutex_);
    if (auto it = word_cache_.find(w); it != word_cache_.end()) return it->second;
  }
  mpq_class v = value_uncached(w);
  std::unique_lock lock(word_mutex_);
  word_cache_.try_emplace(w, v);
  return v;
}

mpq_class HaarOracle::value_uncached(const Word& w) const {
  for (const auto& l : w.letters()) {
    if (l.factor != 0 || l.row < 1 || l.row > group_.n() || l.col < 1 || l.col > group_.n())
      throw ArgumentError("word " + w.to_string() + " does not belong to " + group_.name());
  }
  switch (method_) {
    case HaarMethod::Circle:
      return circle_value(w);
    case HaarMethod::DirectAverage:
      return direct_average_value(w);
    case HaarMethod::Weingarten:
      return weingarten_value(w);
  }
  return 0;
}

std::size_t HaarOracle::cached_words() const {
  std::shared_lock lock(word_mutex_);
  return word_cache_.size();
}

const HaarOracle::WeingartenData& HaarOracle::weingarten_data(
    const std::vector<bool>& pattern) const {
  {
    std::shared_lock lock(wg_mutex_);
    if (auto it = wg_cache_.find(pattern); it != wg_cache_.end()) return *it->second;
  }
  auto data = std::make_unique<WeingartenData>();
  data->parts = enumerate_partitions(pattern.size(), category_for(group_, pattern));
  data->gram = gram_matrix(data->parts, group_.n());
  data->weingarten = pseudo_inverse_psd(data->gram);
  std::unique_lock lock(wg_mutex_);
  auto [it, inserted] = wg_cache_.try_emplace(pattern, std::move(data));
  return *it->second;
}

mpq_class HaarOracle::weingarten_value(const Word& w) const {
  const std::size_t m = w.degree();
  if (m > caps().max_ground_size)
    throw ResourceError("Haar evaluation of degree " + std::to_string(m) + " exceeds cap");
  if (m == 0) return 1;
  const bool colored =
      group_.family() == Family::UClassical || group_.family() == Family::UPlus;
  std::vector<bool> pattern(m, false);
  if (colored) {
    std::size_t stars = 0;
    for (std::size_t t = 0; t < m; ++t) stars += pattern[t] = w[t].starred;
    if (2 * stars != m) return 0;
  } else if (m % 2 && group_.family() != Family::SClassical &&
             group_.family() != Family::SPlus) {
    return 0;
  }
  const auto& data = weingarten_data(pattern);
  std::vector<int> rows(m), cols(m);
  for (std::size_t t = 0; t < m; ++t) {
    rows[t] = w[t].row;
    cols[t] = w[t].col;
  }
  std::vector<std::size_t> ps, qs;
  for (std::size_t a = 0; a < data.parts.size(); ++a) {
    if (delta(data.parts[a], rows)) ps.push_back(a);
    if (delta(data.parts[a], cols)) qs.push_back(a);
  }
  mpq_class sum = 0;
  for (auto p : ps)
    for (auto q : qs) sum += data.weingarten(p, q);
  return sum;
}

mpq_class HaarOracle::direct_average_value(const Word& w) const {
  const std::uint32_t m = group_.n();
  std::vector<int> sigma(m);
  std::iota(sigma.begin(), sigma.end(), 1);
  std::uint64_t hits = 0, total = 0;
  do {
    ++total;
    bool all = true;
    for (const auto& l : w.letters()) {
      if (sigma[l.col - 1] != l.row) {
        all = false;
        break;
      }
    }
    hits += all;
  } while (std::next_permutation(sigma.begin(), sigma.end()));
  mpq_class v(mpz_class(static_cast<unsigned long>(hits)),
              mpz_class(static_cast<unsigned long>(total)));
  v.canonicalize();
  return v;
}

mpq_class HaarOracle::circle_value(const Word& w) {
  std::ptrdiff_t balance = 0;
  for (const auto& l : w.letters()) balance += l.starred ? -1 : 1;
  return balance == 0 ? 1 : 0;
}

mpq_class HaarOracle::char_moment(std::size_t k) const {
  if (k == 0) return 1;
  switch (method_) {
    case HaarMethod::Circle:
      return 0;
    case HaarMethod::DirectAverage: {
      const std::uint32_t m = group_.n();
      std::vector<int> sigma(m);
      std::iota(sigma.begin(), sigma.end(), 1);
      mpz_class sum = 0, total = 0;
      do {
        unsigned long fix = 0;
        for (std::uint32_t j = 0; j < m; ++j) fix += sigma[j] == static_cast<int>(j + 1);
        mpz_class p;
        mpz_ui_pow_ui(p.get_mpz_t(), fix, k);
        sum += p;
        total += 1;
      } while (std::next_permutation(sigma.begin(), sigma.end()));
      mpq_class v(sum, total);
      v.canonicalize();
      return v;
    }
    case HaarMethod::Weingarten: {
      if (k > caps().max_ground_size)
        throw ResourceError("character moment degree exceeds cap");
      // sum over diagonal tuples of delta_p(i) delta_q(i) is n^{|p v q|},
      // so the moment is trace(W G).
      const auto& data = weingarten_data(std::vector<bool>(k, false));
      mpq_class tr = 0;
      for (std::size_t p = 0; p < data.parts.size(); ++p)
        for (std::size_t q = 0; q < data.parts.size(); ++q)
          tr += data.weingarten(p, q) * data.gram(q, p);
      return tr;
    }
  }
  return 0;
}

std::shared_ptr<const HaarOracle> haar_oracle(const GroupSpec& group) {
  static std::mutex mutex;
  static std::map<std::string, std::shared_ptr<const HaarOracle>> registry;
  std::lock_guard lock(mutex);
  auto& slot = registry[group.name()];
  if (!slot) slot = std::make_shared<const HaarOracle>(group);
  return slot;
}

mpq_class haar_value(const GroupSpec& group, const Word& w) {
  return haar_oracle(group)->value(w);
}

mpq_class char_moment(const GroupSpec& group, std::size_t k) {
  if (group.is_free_product())
    throw UnsupportedError("character moments are not defined for free products");
  return haar_oracle(group)->char_moment(k);
}

}  // namespace cqg
