#pragma once

// Dense linear algebra over the prime field F_p on Eigen integer matrices.
// Entries are kept reduced to [0, p); every routine returns reduced matrices.

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <vector>

namespace aszeta {

using FpMatrix = Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic>;
using FpVector = Eigen::Matrix<std::int64_t, Eigen::Dynamic, 1>;

struct RowEchelon {
  FpMatrix rref;
  std::vector<Eigen::Index> pivots;  // pivot column of each nonzero row
};

template <typename Derived>
FpMatrix fp_reduce(const Eigen::MatrixBase<Derived>& m, std::uint32_t p) {
  const auto mod = static_cast<std::int64_t>(p);
  return m.template cast<std::int64_t>().unaryExpr(
      [mod](std::int64_t v) { return ((v % mod) + mod) % mod; });
}

RowEchelon fp_row_reduce(const FpMatrix& m, std::uint32_t p);

template <typename Derived>
RowEchelon fp_row_reduce(const Eigen::MatrixBase<Derived>& m, std::uint32_t p) {
  return fp_row_reduce(FpMatrix(m.template cast<std::int64_t>()), p);
}

Eigen::Index fp_rank(const FpMatrix& m, std::uint32_t p);

/// Kernel basis as matrix columns, one per free column of the reduced row
/// echelon form, in increasing free-column order. Deterministic.
FpMatrix fp_linear_kernel(const FpMatrix& m, std::uint32_t p);

/// Some solution of m x = b (free variables set to zero), if consistent.
std::optional<FpVector> fp_solve(const FpMatrix& m, const FpVector& b, std::uint32_t p);

/// Standard basis vectors e_j (returned as their indices j, ascending) that
/// extend the column span of `cols` to the whole space, chosen greedily.
std::vector<Eigen::Index> fp_complete_basis(const FpMatrix& cols, std::uint32_t p);

/// Diagonal entries of a diagonal matrix congruent to the symmetric matrix
/// `gram` (symmetric row/column elimination; zero rows pass through).
std::vector<std::int64_t> diagonalize_form(const FpMatrix& gram, std::uint32_t p);

}  // namespace aszeta
