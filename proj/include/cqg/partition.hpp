#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cqg/rational_matrix.hpp"

namespace cqg {

/// A set partition of {1..m}. Blocks are sorted ascending and ordered by
/// their minimum element, so structural equality is partition equality.
class Partition {
 public:
  Partition() = default;
  /// Builds from arbitrary disjoint blocks covering {1..m}; canonicalises.
  Partition(std::size_t ground_size, std::vector<std::vector<int>> blocks);
  /// Builds from a block label per position (0-based positions).
  static Partition from_labels(std::span<const int> labels);
  static Partition singletons(std::size_t m);

  std::size_t ground_size() const { return labels_.size(); }
  std::size_t block_count() const { return blocks_.size(); }
  const std::vector<std::vector<int>>& blocks() const { return blocks_; }
  /// Restricted growth string: label of the block holding position i.
  const std::vector<int>& labels() const { return labels_; }

  bool is_pairing() const;
  bool is_noncrossing() const;

  friend bool operator==(const Partition& a, const Partition& b) {
    return a.labels_ == b.labels_;
  }
  friend bool operator<(const Partition& a, const Partition& b) {
    return a.blocks_ < b.blocks_;
  }

  std::string to_string() const;

 private:
  std::vector<std::vector<int>> blocks_;  // 1-based elements
  std::vector<int> labels_;
};

enum class PartitionKind {
  All,
  Pairings,
  Noncrossing,
  NoncrossingPairings,
  ColoredPairings,
  NoncrossingColoredPairings,
};

/// Partition category selector. Colour `true` means a starred position.
class PartitionFamily {
 public:
  explicit PartitionFamily(PartitionKind kind,
                           std::optional<std::vector<bool>> colors = std::nullopt);

  PartitionKind kind() const { return kind_; }
  const std::optional<std::vector<bool>>& colors() const { return colors_; }
  bool colored() const {
    return kind_ == PartitionKind::ColoredPairings ||
           kind_ == PartitionKind::NoncrossingColoredPairings;
  }
  bool contains(const Partition& p) const;

 private:
  PartitionKind kind_;
  std::optional<std::vector<bool>> colors_;
};

/// All partitions of {1..m} in the family, sorted by block lists.
std::vector<Partition> enumerate_partitions(std::size_t m, const PartitionFamily& family);

/// Finest partition coarser than both.
Partition join(const Partition& p, const Partition& q);

/// 1 iff idx is constant on every block of p.
int delta(const Partition& p, std::span<const int> idx);

/// G(p,q) = n^{|p v q|}.
RationalMatrix gram_matrix(std::span<const Partition> parts, std::uint32_t n);

/// Exact Moore-Penrose pseudo-inverse of the Gram matrix.
RationalMatrix weingarten_matrix(std::span<const Partition> parts, std::uint32_t n);

}  // namespace cqg
