#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace beamtrain {

using Cx = std::complex<double>;
using CxVector = std::vector<Cx>;

// Dense row-major complex matrix. Sizes in this project stay small (tens of
// antennas), so a flat std::vector is all that is needed.
class CxMatrix {
  public:
    CxMatrix() = default;
    CxMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), entries_(rows * cols, Cx{0.0, 0.0}) {
        if (rows == 0 || cols == 0)
            throw std::invalid_argument("CxMatrix: dimensions must be positive");
    }

    static CxMatrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Cx& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
    const Cx& operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }

    const CxVector& entries() const { return entries_; }

    bool operator==(const CxMatrix&) const = default;

  private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    CxVector entries_;
};

// Principal singular triple: a * v1 = sigma1 * u1 with unit-norm u1, v1.
struct SvdTriple {
    double sigma1 = 0.0;
    CxVector u1;
    CxVector v1;
};

// Thrown when the power iteration exhausts its budget; carries the last
// iterate for diagnostics.
class NonConvergenceError : public std::runtime_error {
  public:
    NonConvergenceError(const std::string& what, SvdTriple last)
        : std::runtime_error(what), last_iterate(std::move(last)) {}
    SvdTriple last_iterate;
};

double norm(const CxVector& x);
// Conjugate-linear in the first argument: dot(a, b) = a^H b.
Cx dot(const CxVector& a, const CxVector& b);

CxVector matvec(const CxMatrix& a, const CxVector& x);
// Returns a^H x without materializing the adjoint.
CxVector hermitian_matvec(const CxMatrix& a, const CxVector& x);
CxMatrix adjoint(const CxMatrix& a);

// Unitary DFT matrix, entry (k, l) = exp(-j 2 pi k l / n) / sqrt(n) with
// zero-based indices. Every entry has magnitude 1/sqrt(n).
CxMatrix dft_matrix(std::size_t n);

// Principal singular triple of a nonzero matrix via power iteration on
// a^H a. Two deterministic passes are run, one from the all-ones vector and
// one from a fixed seeded Gaussian start; the pass with the larger Rayleigh
// quotient wins. The second pass guards against starts that are (nearly)
// orthogonal to the principal right singular vector, which would otherwise
// converge cleanly to a smaller singular value.
//
// Convergence: ||a^H a v - theta v|| <= tol * theta with theta the Rayleigh
// quotient. The returned triple satisfies a v1 = sigma1 u1 by construction.
SvdTriple principal_svd(const CxMatrix& a, double tol = 1e-10, int max_iter = 10000);

}  // namespace beamtrain
