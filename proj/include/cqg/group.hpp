#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace cqg {

enum class Family {
  OClassical,
  OPlus,
  UClassical,
  UPlus,
  SClassical,
  SPlus,
  Torus,
  FreeProduct,
};

/// Descriptor of a supported compact quantum group. Free products are
/// n-ary with ordered factors; nesting is flattened on construction.
class GroupSpec {
 public:
  Family family() const { return family_; }
  /// Matrix size of the fundamental representation (0 for free products).
  std::uint32_t n() const { return n_; }
  const std::vector<GroupSpec>& factors() const { return factors_; }
  /// Factor `f` (1-based) of a free product, or *this for f == 0.
  const GroupSpec& factor(std::uint32_t f) const;
  std::uint32_t factor_count() const {
    return family_ == Family::FreeProduct ? static_cast<std::uint32_t>(factors_.size()) : 0;
  }

  bool self_adjoint_entries() const;
  bool is_free_product() const { return family_ == Family::FreeProduct; }
  bool is_classical() const {
    return family_ == Family::OClassical || family_ == Family::UClassical ||
           family_ == Family::SClassical || family_ == Family::Torus;
  }

  /// CLI name: o:<n>, o+:<n>, u:<n>, u+:<n>, s:<m>, s+:<m>, t, free(a,b,...).
  std::string name() const;

  friend bool operator==(const GroupSpec& a, const GroupSpec& b) {
    return a.family_ == b.family_ && a.n_ == b.n_ && a.factors_ == b.factors_;
  }

 private:
  friend GroupSpec make_group(Family family, std::uint32_t n);
  friend GroupSpec make_free_product(const std::vector<GroupSpec>& factors);

  Family family_ = Family::Torus;
  std::uint32_t n_ = 1;
  std::vector<GroupSpec> factors_;
};

/// Throws ArgumentError on n == 0, TORUS with n != 1, FREE_PRODUCT family
/// (use make_free_product), or n above 255.
GroupSpec make_group(Family family, std::uint32_t n);

/// At least two factors; nested free products are flattened.
GroupSpec make_free_product(const std::vector<GroupSpec>& factors);

/// Parses the CLI group grammar; throws ParseError.
GroupSpec parse_group(std::string_view text);

}  // namespace cqg
