#pragma once

#include <cstdint>
#include <vector>

#include "cqg/group.hpp"
#include "cqg/morphism.hpp"
#include "cqg/rational_matrix.hpp"
#include "cqg/states.hpp"

namespace cqg {

/// Haar state: the exact Weingarten/averaging oracle, or the free product
/// of the factor Haar states.
StateOracle haar_state(const GroupSpec& group);

/// O_n^+ -> O_n, u_ij -> u_ij.
Morphism morphism_abelianize(std::uint32_t n);

/// O_n^+ -> O_{n-1}^+, u -> R^T (v (+) 1) R. The fixed vector is R^T e_n.
/// R must be orthogonal: exactly for the rational overload, within 1e-12
/// for the float one.
Morphism morphism_fix_vector(std::uint32_t n, const RationalMatrix& rotation);
Morphism morphism_fix_vector(std::uint32_t n, const std::vector<double>& rotation);
/// R = I: u_ij -> v_ij for i, j < n; u_nn -> 1; rest of last row/col -> 0.
Morphism morphism_fix_last(std::uint32_t n);

/// O_{2n}^+ -> free(O_n^+, O_n^+), u -> diag(v, w).
Morphism morphism_block_split(std::uint32_t n);

/// O_m^+ -> S_m, u_ij -> p_ij (sigma -> delta_{i, sigma(j)}).
Morphism morphism_to_perm(std::uint32_t m);

/// U_n^+ -> free(T, O_n^+), u_ij -> z a_ij.
Morphism morphism_unitary_split(std::uint32_t n);

/// Exact orthogonal matrix (I - S)(I + S)^{-1} from a skew-symmetric S
/// given by its strict upper triangle, row by row.
RationalMatrix cayley_rotation(std::uint32_t n, const std::vector<mpq_class>& upper);

/// Signed permutation taking e_n to e_col and e_col to -e_n (a quarter
/// turn in the (col, n) plane); col < n.
RationalMatrix quarter_turn(std::uint32_t n, std::uint32_t col);

bool is_orthogonal(const RationalMatrix& r);
double orthogonality_defect(const std::vector<double>& r, std::uint32_t n);

}  // namespace cqg
