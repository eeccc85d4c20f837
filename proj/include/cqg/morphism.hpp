#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "cqg/group.hpp"
#include "cqg/word.hpp"

namespace cqg {

/// A unital *-homomorphism given on generators: u_ij of `source` maps to a
/// WordSum over `target`. Starred letters map to the adjoint image.
class Morphism {
 public:
  Morphism(std::string name, GroupSpec source, GroupSpec target, std::vector<WordSum> images);

  const std::string& name() const { return name_; }
  const GroupSpec& source() const { return source_; }
  const GroupSpec& target() const { return target_; }
  /// Image of the unstarred generator u_ij (1-based).
  const WordSum& image(std::uint32_t i, std::uint32_t j) const;
  WordSum image(const Letter& l) const;

  /// Multiplicative, linear extension; throws ResourceError past caps.
  WordSum apply(const Word& w) const;
  WordSum apply(const WordSum& s) const;

  /// True when every image coefficient is an exact rational.
  bool is_exact() const;

 private:
  std::string name_;
  GroupSpec source_;
  GroupSpec target_;
  std::vector<WordSum> images_;  // row-major n x n
};

/// second o first (apply `first`, then `second`).
Morphism compose(const Morphism& first, const Morphism& second);

using TensorSum = std::map<std::pair<Word, Word>, Scalar>;

/// Max |(pi (x) pi) Delta(u_ij) - Delta(pi(u_ij))| over generators; exactly
/// zero (and exact) for morphisms with rational images that intertwine.
Scalar coproduct_intertwining_residual(const Morphism& pi);

/// Defining relations of the group as WordSums that vanish in C(G)
/// (self-adjointness of O/S entries is carried by the letters and is not
/// listed). For free products, the relations of each factor with tags.
std::vector<WordSum> relation_expressions(const GroupSpec& group);

}  // namespace cqg
