#include "aszeta/fp_linalg.hpp"

#include <utility>

#include "aszeta/error.hpp"
#include "aszeta/gf.hpp"

namespace aszeta {

namespace {

std::int64_t inv_mod(std::int64_t a, std::uint32_t p) {
  return inv_mod_p(static_cast<Residue>(a), p);
}

}  // namespace

RowEchelon fp_row_reduce(const FpMatrix& input, std::uint32_t p) {
  const std::int64_t mod = p;
  RowEchelon out{fp_reduce(input, p), {}};
  FpMatrix& a = out.rref;
  Eigen::Index row = 0;
  for (Eigen::Index col = 0; col < a.cols() && row < a.rows(); ++col) {
    Eigen::Index pivot = -1;
    for (Eigen::Index r = row; r < a.rows(); ++r) {
      if (a(r, col) != 0) {
        pivot = r;
        break;
      }
    }
    if (pivot < 0) continue;
    a.row(row).swap(a.row(pivot));
    const std::int64_t scale = inv_mod(a(row, col), p);
    a.row(row) = a.row(row).unaryExpr([&](std::int64_t v) { return v * scale % mod; });
    for (Eigen::Index r = 0; r < a.rows(); ++r) {
      if (r == row || a(r, col) == 0) continue;
      const std::int64_t factor = mod - a(r, col);
      for (Eigen::Index c = col; c < a.cols(); ++c) {
        a(r, c) = (a(r, c) + factor * a(row, c)) % mod;
      }
    }
    out.pivots.push_back(col);
    ++row;
  }
  return out;
}

Eigen::Index fp_rank(const FpMatrix& m, std::uint32_t p) {
  return static_cast<Eigen::Index>(fp_row_reduce(m, p).pivots.size());
}

FpMatrix fp_linear_kernel(const FpMatrix& m, std::uint32_t p) {
  const RowEchelon re = fp_row_reduce(m, p);
  const Eigen::Index n = m.cols();
  std::vector<bool> is_pivot(static_cast<std::size_t>(n), false);
  for (auto c : re.pivots) is_pivot[static_cast<std::size_t>(c)] = true;

  std::vector<Eigen::Index> free_cols;
  for (Eigen::Index c = 0; c < n; ++c) {
    if (!is_pivot[static_cast<std::size_t>(c)]) free_cols.push_back(c);
  }
  FpMatrix basis = FpMatrix::Zero(n, static_cast<Eigen::Index>(free_cols.size()));
  for (std::size_t k = 0; k < free_cols.size(); ++k) {
    const Eigen::Index fc = free_cols[k];
    const auto col = static_cast<Eigen::Index>(k);
    basis(fc, col) = 1;
    for (std::size_t r = 0; r < re.pivots.size(); ++r) {
      const std::int64_t v = re.rref(static_cast<Eigen::Index>(r), fc);
      basis(re.pivots[r], col) = (p - v) % p;
    }
  }
  return basis;
}

std::optional<FpVector> fp_solve(const FpMatrix& m, const FpVector& b, std::uint32_t p) {
  FpMatrix aug(m.rows(), m.cols() + 1);
  aug << m, b;
  const RowEchelon re = fp_row_reduce(aug, p);
  FpVector x = FpVector::Zero(m.cols());
  for (std::size_t r = 0; r < re.pivots.size(); ++r) {
    const Eigen::Index pc = re.pivots[r];
    if (pc == m.cols()) return std::nullopt;  // 0 = nonzero
    x(pc) = re.rref(static_cast<Eigen::Index>(r), m.cols());
  }
  return x;
}

std::vector<Eigen::Index> fp_complete_basis(const FpMatrix& cols, std::uint32_t p) {
  const Eigen::Index n = cols.rows();
  FpMatrix current = cols;
  Eigen::Index rank = fp_rank(current, p);
  std::vector<Eigen::Index> added;
  for (Eigen::Index j = 0; j < n && rank < n; ++j) {
    FpMatrix trial(n, current.cols() + 1);
    trial << current, FpVector::Unit(n, j);
    const Eigen::Index r = fp_rank(trial, p);
    if (r > rank) {
      current = std::move(trial);
      rank = r;
      added.push_back(j);
    }
  }
  return added;
}

std::vector<std::int64_t> diagonalize_form(const FpMatrix& gram, std::uint32_t p) {
  const std::int64_t mod = p;
  FpMatrix a = fp_reduce(gram, p);
  const Eigen::Index n = a.rows();
  if (a.cols() != n) throw DomainError("diagonalize_form: matrix is not square");
  if (a != a.transpose()) throw DomainError("diagonalize_form: matrix is not symmetric");

  auto add_multiple = [&](Eigen::Index dst, Eigen::Index src, std::int64_t factor) {
    // row_dst += factor * row_src, then the same on columns: a congruence.
    for (Eigen::Index c = 0; c < n; ++c) a(dst, c) = (a(dst, c) + factor * a(src, c)) % mod;
    for (Eigen::Index r = 0; r < n; ++r) a(r, dst) = (a(r, dst) + factor * a(r, src)) % mod;
  };

  for (Eigen::Index k = 0; k < n; ++k) {
    if (a(k, k) == 0) {
      Eigen::Index j = k + 1;
      while (j < n && a(j, j) == 0) ++j;
      if (j < n) {
        a.row(k).swap(a.row(j));
        a.col(k).swap(a.col(j));
      } else {
        j = k + 1;
        while (j < n && a(k, j) == 0) ++j;
        if (j == n) continue;  // row k already zero off the diagonal
        add_multiple(k, j, 1);  // new a(k,k) = 2 a(k,j) != 0 since p is odd
      }
    }
    const std::int64_t pivot_inv = inv_mod(a(k, k), p);
    for (Eigen::Index i = k + 1; i < n; ++i) {
      if (a(i, k) == 0) continue;
      const std::int64_t factor = (mod - a(i, k) * pivot_inv % mod) % mod;
      add_multiple(i, k, factor);
    }
  }
  std::vector<std::int64_t> diag(static_cast<std::size_t>(n));
  for (Eigen::Index k = 0; k < n; ++k) diag[static_cast<std::size_t>(k)] = a(k, k);
  return diag;
}

}  // namespace aszeta
