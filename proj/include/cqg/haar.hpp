#pragma once

#include <gmpxx.h>

#include <map>
#include <memory>
#include <shared_mutex>
#include <unordered_map>
#include <vector>

#include "cqg/group.hpp"
#include "cqg/partition.hpp"
#include "cqg/word.hpp"

namespace cqg {

enum class HaarMethod { Weingarten, DirectAverage, Circle };

/// Partition category of a family at a degree, with star pattern for the
/// unitary families.
PartitionFamily category_for(const GroupSpec& group, const std::vector<bool>& pattern);

/// Exact Haar state of one non-free-product group. Evaluations are memoised;
/// the caches are safe for concurrent readers and idempotent writers.
class HaarOracle {
 public:
  explicit HaarOracle(GroupSpec group);
  HaarOracle(GroupSpec group, HaarMethod method);

  const GroupSpec& group() const { return group_; }
  HaarMethod method() const { return method_; }

  mpq_class value(const Word& w) const;
  /// Bypasses the word cache (the Weingarten matrix cache is still used).
  mpq_class value_uncached(const Word& w) const;
  /// Moment of the fundamental character sum_i u_ii.
  mpq_class char_moment(std::size_t k) const;

  struct WeingartenData {
    std::vector<Partition> parts;
    RationalMatrix gram;
    RationalMatrix weingarten;
  };
  const WeingartenData& weingarten_data(const std::vector<bool>& pattern) const;

  std::size_t cached_words() const;

 private:
  mpq_class weingarten_value(const Word& w) const;
  mpq_class direct_average_value(const Word& w) const;
  static mpq_class circle_value(const Word& w);

  GroupSpec group_;
  HaarMethod method_;
  mutable std::shared_mutex word_mutex_;
  mutable std::unordered_map<Word, mpq_class, WordHash> word_cache_;
  mutable std::shared_mutex wg_mutex_;
  mutable std::map<std::vector<bool>, std::unique_ptr<WeingartenData>> wg_cache_;
};

/// Shared oracle per group (default method), created on first use.
std::shared_ptr<const HaarOracle> haar_oracle(const GroupSpec& group);

mpq_class haar_value(const GroupSpec& group, const Word& w);
mpq_class char_moment(const GroupSpec& group, std::size_t k);

}  // namespace cqg
