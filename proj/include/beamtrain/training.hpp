#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

#include "beamtrain/linalg.hpp"
#include "beamtrain/rng.hpp"

namespace beamtrain {

// Antenna weight vector. Unit norm by construction of the factory functions;
// ca_constrained marks vectors whose entries all have magnitude 1/sqrt(dim),
// the phase-only constraint of constant-amplitude phased arrays.
struct Awv {
    CxVector weights;
    bool ca_constrained = false;
};

enum class Scheme { Sgv, Stv };

const char* scheme_name(Scheme s);
Scheme scheme_from_name(const std::string& name);

struct TrainConfig {
    Scheme scheme = Scheme::Sgv;
    int epsilon = 3;        // iteration count
    double sigma2 = 0.0;    // noise power, linear
    std::uint64_t seed = 0; // noise stream seed
};

struct TrainResult {
    Awv t;                       // transmit AWV, dim m_tx
    Awv r;                       // receive AWV, dim n_rx
    std::size_t slots_used = 0;  // epsilon * (m_tx + n_rx)
};

// Thrown when a measurement that must be normalized is exactly zero.
class DegenerateInputError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// One forward training measurement: the source keeps transmitting with t for
// one slot per column of w while the destination sweeps w's columns as
// receive AWVs. Returns w^H (h t + n) with n fresh circularly symmetric
// Gaussian noise of per-entry variance sigma2; one entry per training slot.
CxVector measure_rx(const CxMatrix& h, const Awv& t, const CxMatrix& w, double sigma2, Rng& rng);

// Reverse-link measurement using channel reciprocity: as measure_rx with the
// channel replaced by h^H, so the destination transmits with r and the source
// sweeps w's columns. Output dimension is m_tx.
CxVector measure_tx_side(const CxMatrix& h, const Awv& r, const CxMatrix& w, double sigma2,
                         Rng& rng);

// x / ||x||. Throws DegenerateInputError on the zero vector.
Awv normalize(const CxVector& x);

// Entry-wise phase extraction exp(j arg(x_k)) / sqrt(dim), giving a
// constant-amplitude vector. Exactly-zero entries map to 1/sqrt(dim)
// (phase taken as 0), keeping the map total.
Awv signature_estimate(const CxVector& x);

// Unit-norm Zadoff-Chu sequence with root 1: entry k (zero-based) is
// exp(-j pi k^2 / m) / sqrt(m) for even m and exp(-j pi k (k+1) / m) / sqrt(m)
// for odd m. Constant amplitude with zero periodic autocorrelation at all
// nonzero lags.
Awv cazac_init(std::size_t m);

// Singular-vector scheme: t starts as all-ones/sqrt(M); each iteration
// measures with identity receive-training matrices and renormalizes, i.e.
// noisy power iteration toward the principal singular pair of h. Outputs are
// generally not constant-amplitude.
TrainResult sgv_train(const CxMatrix& h, const TrainConfig& cfg);

// Steering-vector scheme: t starts as a Zadoff-Chu sequence; each iteration
// measures through DFT receive-training matrices (constant-envelope columns),
// re-spreads with the DFT and extracts the signature, converging to the
// steering vectors of the strongest multipath component. Outputs are always
// constant-amplitude.
TrainResult stv_train(const CxMatrix& h, const TrainConfig& cfg);

// stv_train with caller-chosen training matrices in place of the DFTs. Any
// unitary matrices with constant-envelope entries are feasible.
TrainResult stv_train(const CxMatrix& h, const TrainConfig& cfg, const CxMatrix& rx_basis,
                      const CxMatrix& tx_basis);

// Dispatches on cfg.scheme.
TrainResult train(const CxMatrix& h, const TrainConfig& cfg);

}  // namespace beamtrain
