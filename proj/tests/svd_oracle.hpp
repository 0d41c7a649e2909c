#pragma once

// Brute-force singular value oracle for tests: eigen-solve of a^H a through
// Eigen's self-adjoint solver. Entirely independent of the library's power
// iteration, which it is used to cross-check.

#include <Eigen/Dense>
#include <utility>

#include "beamtrain/linalg.hpp"
#include "beamtrain/rng.hpp"

namespace beamtrain::testutil {

inline Eigen::MatrixXcd to_eigen(const CxMatrix& a) {
    Eigen::MatrixXcd out(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = a(i, j);
    return out;
}

inline std::pair<double, double> oracle_top_two_sigmas(const CxMatrix& a) {
    const Eigen::MatrixXcd A = to_eigen(a);
    const Eigen::MatrixXcd B = A.adjoint() * A;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(B);
    const auto& ev = es.eigenvalues();  // ascending, real
    const Eigen::Index n = ev.size();
    const double l1 = std::max(0.0, ev(n - 1));
    const double l2 = n >= 2 ? std::max(0.0, ev(n - 2)) : 0.0;
    return {std::sqrt(l1), std::sqrt(l2)};
}

inline double oracle_sigma1(const CxMatrix& a) { return oracle_top_two_sigmas(a).first; }

// Random complex Gaussian matrix conditioned (via the oracle) on a spectral
// ratio (sigma2/sigma1)^2 <= max_ratio_sq, so a fixed iteration budget
// provably suffices for power-iteration-style convergence checks.
inline CxMatrix conditioned_gaussian_matrix(std::size_t rows, std::size_t cols,
                                            std::uint64_t seed, double max_ratio_sq = 0.8) {
    for (int attempt = 0; attempt < 1000; ++attempt) {
        Rng rng(mix_seed(seed, static_cast<std::uint64_t>(attempt)));
        CxMatrix a(rows, cols);
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t j = 0; j < cols; ++j) a(i, j) = rng.complex_gaussian(1.0);
        const auto [s1, s2] = oracle_top_two_sigmas(a);
        if (s1 > 0.0 && (s2 * s2) / (s1 * s1) <= max_ratio_sq) return a;
    }
    throw std::runtime_error("conditioned_gaussian_matrix: no admissible draw in 1000 attempts");
}

}  // namespace beamtrain::testutil
