#pragma once

// Small dense complex matrices: singular values by one-sided Jacobi and a
// determinant by LU with partial pivoting.  Sylvester matrices in this
// project stay tiny (tens of rows), so simplicity beats blocking.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace tropfactor {

class CMatrix {
 public:
  CMatrix() = default;
  CMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), a_(rows * cols) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  std::complex<double>& operator()(std::size_t r, std::size_t c) {
    return a_[r * cols_ + c];
  }
  const std::complex<double>& operator()(std::size_t r, std::size_t c) const {
    return a_[r * cols_ + c];
  }

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<std::complex<double>> a_;
};

/// Singular values in descending order, by one-sided Jacobi on the columns
/// (Demmel-Veselic).  Accurate to ~1e-13 relative for the sizes used here.
inline std::vector<double> singular_values(const CMatrix& A) {
  if (A.rows() == 0 || A.cols() == 0) return {};
  // Work on the tall orientation; singular values are shared with A^H.
  const bool tall = A.rows() >= A.cols();
  const std::size_t m = tall ? A.rows() : A.cols();
  const std::size_t n = tall ? A.cols() : A.rows();
  std::vector<std::complex<double>> B(m * n);
  for (std::size_t r = 0; r < m; ++r)
    for (std::size_t c = 0; c < n; ++c)
      B[r * n + c] = tall ? A(r, c) : std::conj(A(c, r));

  constexpr double kTol = 1e-13;
  constexpr int kMaxSweeps = 60;
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    bool rotated = false;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        double app = 0.0, aqq = 0.0;
        std::complex<double> apq(0.0, 0.0);
        for (std::size_t r = 0; r < m; ++r) {
          const auto bp = B[r * n + p], bq = B[r * n + q];
          app += std::norm(bp);
          aqq += std::norm(bq);
          apq += std::conj(bp) * bq;
        }
        const double mag = std::abs(apq);
        if (mag <= kTol * std::sqrt(app * aqq) || app == 0.0 || aqq == 0.0) continue;
        rotated = true;
        const std::complex<double> phase = apq / mag;
        const double zeta = (aqq - app) / (2.0 * mag);
        const double t = (zeta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = c * t;
        for (std::size_t r = 0; r < m; ++r) {
          const auto bp = B[r * n + p];
          const auto bq = B[r * n + q] * std::conj(phase);
          B[r * n + p] = c * bp - s * bq;
          B[r * n + q] = s * bp + c * bq;
        }
      }
    }
    if (!rotated) break;
  }

  std::vector<double> sigma(n, 0.0);
  for (std::size_t c = 0; c < n; ++c) {
    double acc = 0.0;
    for (std::size_t r = 0; r < m; ++r) acc += std::norm(B[r * n + c]);
    sigma[c] = std::sqrt(acc);
  }
  std::sort(sigma.begin(), sigma.end(), std::greater<double>());
  return sigma;
}

/// Determinant by LU with partial pivoting; exact zeros short-circuit.
inline std::complex<double> lu_determinant(CMatrix A) {
  if (A.rows() != A.cols()) throw std::invalid_argument("determinant of non-square matrix");
  const std::size_t n = A.rows();
  std::complex<double> det(1.0, 0.0);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    double best = std::abs(A(col, col));
    for (std::size_t r = col + 1; r < n; ++r) {
      const double mag = std::abs(A(r, col));
      if (mag > best) {
        best = mag;
        piv = r;
      }
    }
    if (best == 0.0) return {0.0, 0.0};
    if (piv != col) {
      for (std::size_t c = col; c < n; ++c) std::swap(A(piv, c), A(col, c));
      det = -det;
    }
    det *= A(col, col);
    for (std::size_t r = col + 1; r < n; ++r) {
      const auto factor = A(r, col) / A(col, col);
      for (std::size_t c = col; c < n; ++c) A(r, c) -= factor * A(col, c);
    }
  }
  return det;
}

}  // namespace tropfactor
