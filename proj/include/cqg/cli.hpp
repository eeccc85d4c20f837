#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "cqg/group.hpp"
#include "cqg/morphism.hpp"
#include "cqg/scalar.hpp"
#include "cqg/states.hpp"
#include "cqg/ucp.hpp"
#include "cqg/word.hpp"

namespace cqg::cli {

/// The two states driven by converge, plus the Haar state they should reach.
struct ConvergencePair {
  std::string name;
  StateOracle tau1;
  StateOracle tau2;
  StateOracle haar;
};

/// classical+fixlast, fixlast2 (o+:n, n >= 3); perm+blocksplit (o+:2m);
/// haar (any single group).
ConvergencePair convergence_pair(std::string_view name, const GroupSpec& group);

/// `name:arg ('+' name:arg)*`, applied left to right. Names: abelianize,
/// fixlast, perm, blocksplit, usplit.
Morphism parse_morphism(std::string_view text);

/// Convolution (" x ") of `haar:<group>[@morph]` or `counit:<group>[@morph]`.
StateOracle parse_trace_spec(std::string_view text);

/// Convolution (" x ") of atoms `sample:<group>`, `flip` or `char:<group>`,
/// each optionally pulled back with `@morph`. `size` is the sample count
/// (sample) or matrix size (flip); atom i draws from stream (seed, i).
UcpMap parse_net_element(std::string_view text, std::size_t size, std::uint64_t seed);

/// One word per line, `#` starts a comment, blank lines ignored.
std::vector<Word> read_words_file(const std::string& path, const GroupSpec& group);

struct UsplitReport {
  std::uint32_t n = 0;
  std::size_t max_degree = 0;
  bool full_index_set = false;
  std::size_t words_checked = 0;
  Scalar max_discrepancy;  // exact when both sides are
  std::string worst_word;
  bool passed = false;
};

/// Compares h_{U_n^+}(w) with (h_T * h_{O_n^+})(pi(w)) on every word up to
/// max_degree when there are at most `full_limit` of them, otherwise on a
/// deterministic `sample`-word draw.
UsplitReport usplit_check(std::uint32_t n, std::size_t max_degree, std::size_t sample,
                          std::uint64_t seed, std::size_t full_limit = 10000);

/// Entry point of cqgtool; returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace cqg::cli
