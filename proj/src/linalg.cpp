#include "beamtrain/linalg.hpp"

#include <cmath>
#include <utility>

#include "beamtrain/rng.hpp"

namespace beamtrain {

namespace {

constexpr std::uint64_t kSvdRestartSeed = 0x5fd7a7a4b3c2e901ULL;

void check_positive(std::size_t n, const char* who) {
    if (n == 0) throw std::invalid_argument(std::string(who) + ": dimension must be >= 1");
}

struct PowerPass {
    bool converged = false;
    bool dead = false;  // iteration produced an exact zero vector
    double theta = 0.0; // Rayleigh quotient v^H (a^H a) v at v
    CxVector v;
};

PowerPass run_power_pass(const CxMatrix& b, CxVector v, double tol, int max_iter) {
    PowerPass out;
    const double nv = norm(v);
    if (nv == 0.0) {
        out.dead = true;
        out.v = std::move(v);
        return out;
    }
    for (Cx& e : v) e /= nv;

    for (int it = 0; it < max_iter; ++it) {
        CxVector w = matvec(b, v);
        const double nw = norm(w);
        if (nw == 0.0) {
            out.dead = true;
            out.v = std::move(v);
            return out;
        }
        const double theta = dot(v, w).real();
        double resid_sq = 0.0;
        for (std::size_t i = 0; i < w.size(); ++i) resid_sq += std::norm(w[i] - theta * v[i]);
        out.theta = theta;
        if (std::sqrt(resid_sq) <= tol * theta) {
            out.converged = true;
            out.v = std::move(v);
            return out;
        }
        for (std::size_t i = 0; i < w.size(); ++i) w[i] /= nw;
        v = std::move(w);
    }
    out.v = std::move(v);
    return out;
}

SvdTriple triple_from_v(const CxMatrix& a, CxVector v) {
    CxVector av = matvec(a, v);
    const double rho = norm(av);
    for (Cx& e : av) e /= rho;
    return SvdTriple{rho, std::move(av), std::move(v)};
}

}  // namespace

CxMatrix CxMatrix::identity(std::size_t n) {
    CxMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = Cx{1.0, 0.0};
    return m;
}

double norm(const CxVector& x) {
    double s = 0.0;
    for (const Cx& e : x) s += std::norm(e);
    return std::sqrt(s);
}

Cx dot(const CxVector& a, const CxVector& b) {
    if (a.size() != b.size()) throw std::invalid_argument("dot: dimension mismatch");
    Cx s{0.0, 0.0};
    for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
    return s;
}

CxVector matvec(const CxMatrix& a, const CxVector& x) {
    if (a.cols() != x.size()) throw std::invalid_argument("matvec: dimension mismatch");
    CxVector out(a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        Cx s{0.0, 0.0};
        for (std::size_t j = 0; j < a.cols(); ++j) s += a(i, j) * x[j];
        out[i] = s;
    }
    return out;
}

CxVector hermitian_matvec(const CxMatrix& a, const CxVector& x) {
    if (a.rows() != x.size()) throw std::invalid_argument("hermitian_matvec: dimension mismatch");
    // Accumulation order matches matvec(adjoint(a), x) exactly.
    CxVector out(a.cols());
    for (std::size_t j = 0; j < a.cols(); ++j) {
        Cx s{0.0, 0.0};
        for (std::size_t i = 0; i < a.rows(); ++i) s += std::conj(a(i, j)) * x[i];
        out[j] = s;
    }
    return out;
}

CxMatrix adjoint(const CxMatrix& a) {
    CxMatrix out(a.cols(), a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) out(j, i) = std::conj(a(i, j));
    return out;
}

CxMatrix dft_matrix(std::size_t n) {
    check_positive(n, "dft_matrix");
    CxMatrix f(n, n);
    const double scale = 1.0 / std::sqrt(static_cast<double>(n));
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t l = 0; l < n; ++l) {
            // k*l reduced mod n keeps the phase argument small and exact.
            const double phase = -2.0 * M_PI * static_cast<double>((k * l) % n) / static_cast<double>(n);
            f(k, l) = std::polar(scale, phase);
        }
    }
    return f;
}

SvdTriple principal_svd(const CxMatrix& a, double tol, int max_iter) {
    if (a.rows() == 0 || a.cols() == 0) throw std::invalid_argument("principal_svd: empty matrix");
    if (!(tol > 0.0)) throw std::invalid_argument("principal_svd: tol must be positive");
    if (max_iter < 1) throw std::invalid_argument("principal_svd: max_iter must be >= 1");
    bool nonzero = false;
    for (const Cx& e : a.entries())
        if (e != Cx{0.0, 0.0}) {
            nonzero = true;
            break;
        }
    if (!nonzero) throw std::invalid_argument("principal_svd: matrix is zero");

    const std::size_t m = a.cols();
    CxMatrix b(m, m);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = i; j < m; ++j) {
            Cx s{0.0, 0.0};
            for (std::size_t k = 0; k < a.rows(); ++k) s += std::conj(a(k, i)) * a(k, j);
            b(i, j) = s;
            if (j != i) b(j, i) = std::conj(s);
        }
    }

    PowerPass best;
    {
        CxVector ones(m, Cx{1.0, 0.0});
        best = run_power_pass(b, std::move(ones), tol, max_iter);
    }
    {
        Rng rng(kSvdRestartSeed);
        CxVector start(m);
        for (Cx& e : start) e = rng.complex_gaussian(1.0);
        PowerPass second = run_power_pass(b, std::move(start), tol, max_iter);
        if (!second.dead && (best.dead || second.theta > best.theta)) best = std::move(second);
    }

    if (best.dead)
        throw NonConvergenceError("principal_svd: iteration vector annihilated",
                                  SvdTriple{0.0, CxVector(a.rows()), best.v});
    if (!best.converged)
        throw NonConvergenceError("principal_svd: no convergence within max_iter",
                                  triple_from_v(a, best.v));

    return triple_from_v(a, std::move(best.v));
}

}  // namespace beamtrain
