#pragma once

#include <cstddef>
#include <cstdint>

namespace cqg {

/// Desk-scale resource budgets. Every enumeration or expansion that can
/// explode checks against these before allocating.
struct Caps {
  std::size_t max_ground_size = 16;        // partitions of {1..m}
  std::size_t max_word_degree = 8;         // letters in a coproduct expansion
  std::uint64_t max_coproduct_pairs = 1'000'000;
  std::uint64_t max_transfer_entries = 1'000'000;  // n^(2d)
  std::size_t max_syllables = 12;          // free-product centering recursion
  std::size_t max_terms_per_generator = 32;
  std::uint64_t max_expansion_terms = 1'000'000;   // morphism image of a word
  std::uint64_t max_direct_average = 100'000;      // m! for S_m averaging
  std::size_t max_ucp_dimension = 4096;    // dense UCP map output size
  std::size_t exact_power_dimension = 64;  // exact convergence step up to this size
};

const Caps& caps();
void set_caps(const Caps& c);

/// Restores the previous caps on scope exit.
class ScopedCaps {
 public:
  explicit ScopedCaps(const Caps& c) : saved_(caps()) { set_caps(c); }
  ~ScopedCaps() { set_caps(saved_); }
  ScopedCaps(const ScopedCaps&) = delete;
  ScopedCaps& operator=(const ScopedCaps&) = delete;

 private:
  Caps saved_;
};

}  // namespace cqg
