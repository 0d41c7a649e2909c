#include "beamtrain/training.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <utility>

namespace beamtrain {

namespace {

const CxMatrix& cached_dft(std::size_t n) {
    static std::mutex mutex;
    static std::map<std::size_t, CxMatrix> cache;
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, dft_matrix(n)).first;
    return it->second;
}

void check_train_config(const TrainConfig& cfg, Scheme expected) {
    if (cfg.scheme != expected) throw std::invalid_argument("train: wrong scheme for this trainer");
    if (cfg.epsilon < 1) throw std::invalid_argument("train: epsilon must be >= 1");
    if (!(cfg.sigma2 >= 0.0)) throw std::invalid_argument("train: sigma2 must be >= 0");
}

CxVector noisy(CxVector y, double sigma2, Rng& rng) {
    if (sigma2 > 0.0)
        for (Cx& e : y) e += rng.complex_gaussian(sigma2);
    return y;
}

}  // namespace

const char* scheme_name(Scheme s) { return s == Scheme::Sgv ? "sgv" : "stv"; }

Scheme scheme_from_name(const std::string& name) {
    if (name == "sgv" || name == "SGV") return Scheme::Sgv;
    if (name == "stv" || name == "STV") return Scheme::Stv;
    throw std::invalid_argument("unknown scheme '" + name + "' (expected sgv or stv)");
}

CxVector measure_rx(const CxMatrix& h, const Awv& t, const CxMatrix& w, double sigma2, Rng& rng) {
    if (h.cols() != t.weights.size()) throw std::invalid_argument("measure_rx: t does not match h");
    if (w.rows() != h.rows() || w.cols() != h.rows())
        throw std::invalid_argument("measure_rx: training matrix must be n_rx x n_rx");
    return hermitian_matvec(w, noisy(matvec(h, t.weights), sigma2, rng));
}

CxVector measure_tx_side(const CxMatrix& h, const Awv& r, const CxMatrix& w, double sigma2,
                         Rng& rng) {
    if (h.rows() != r.weights.size())
        throw std::invalid_argument("measure_tx_side: r does not match h");
    if (w.rows() != h.cols() || w.cols() != h.cols())
        throw std::invalid_argument("measure_tx_side: training matrix must be m_tx x m_tx");
    return hermitian_matvec(w, noisy(hermitian_matvec(h, r.weights), sigma2, rng));
}

Awv normalize(const CxVector& x) {
    const double n = norm(x);
    if (n == 0.0) throw DegenerateInputError("normalize: zero vector");
    Awv out{x, false};
    for (Cx& e : out.weights) e /= n;
    return out;
}

Awv signature_estimate(const CxVector& x) {
    if (x.empty()) throw std::invalid_argument("signature_estimate: empty vector");
    const double scale = 1.0 / std::sqrt(static_cast<double>(x.size()));
    Awv out{CxVector(x.size()), true};
    for (std::size_t k = 0; k < x.size(); ++k) {
        const double mag = std::abs(x[k]);
        out.weights[k] = mag == 0.0 ? Cx{scale, 0.0} : x[k] * (scale / mag);
    }
    return out;
}

Awv cazac_init(std::size_t m) {
    if (m == 0) throw std::invalid_argument("cazac_init: m must be >= 1");
    const double scale = 1.0 / std::sqrt(static_cast<double>(m));
    Awv out{CxVector(m), true};
    for (std::size_t k = 0; k < m; ++k) {
        // exp(-j pi q / m) has period 2m in q, so reduce mod 2m for exact phases.
        const std::size_t q = (m % 2 == 0 ? k * k : k * (k + 1)) % (2 * m);
        out.weights[k] = std::polar(scale, -M_PI * static_cast<double>(q) / static_cast<double>(m));
    }
    return out;
}

TrainResult sgv_train(const CxMatrix& h, const TrainConfig& cfg) {
    check_train_config(cfg, Scheme::Sgv);
    const std::size_t m = h.cols();
    const std::size_t n = h.rows();
    Rng rng(cfg.seed);
    const CxMatrix eye_n = CxMatrix::identity(n);
    const CxMatrix eye_m = CxMatrix::identity(m);

    // Power evenly projected on the basis vectors of I_M.
    Awv t = normalize(CxVector(m, Cx{1.0, 0.0}));
    Awv r;
    for (int e = 0; e < cfg.epsilon; ++e) {
        r = normalize(measure_rx(h, t, eye_n, cfg.sigma2, rng));
        t = normalize(measure_tx_side(h, r, eye_m, cfg.sigma2, rng));
    }
    return TrainResult{std::move(t), std::move(r), static_cast<std::size_t>(cfg.epsilon) * (m + n)};
}

TrainResult stv_train(const CxMatrix& h, const TrainConfig& cfg, const CxMatrix& rx_basis,
                      const CxMatrix& tx_basis) {
    check_train_config(cfg, Scheme::Stv);
    const std::size_t m = h.cols();
    const std::size_t n = h.rows();
    if (rx_basis.rows() != n || rx_basis.cols() != n)
        throw std::invalid_argument("stv_train: rx basis must be n_rx x n_rx");
    if (tx_basis.rows() != m || tx_basis.cols() != m)
        throw std::invalid_argument("stv_train: tx basis must be m_tx x m_tx");
    Rng rng(cfg.seed);

    Awv t = cazac_init(m);
    Awv r;
    for (int e = 0; e < cfg.epsilon; ++e) {
        // The measurement lives in basis coordinates; re-spread before the
        // entry-wise phase extraction.
        CxVector y = measure_rx(h, t, rx_basis, cfg.sigma2, rng);
        r = signature_estimate(matvec(rx_basis, y));
        CxVector z = measure_tx_side(h, r, tx_basis, cfg.sigma2, rng);
        t = signature_estimate(matvec(tx_basis, z));
    }
    return TrainResult{std::move(t), std::move(r), static_cast<std::size_t>(cfg.epsilon) * (m + n)};
}

TrainResult stv_train(const CxMatrix& h, const TrainConfig& cfg) {
    return stv_train(h, cfg, cached_dft(h.rows()), cached_dft(h.cols()));
}

TrainResult train(const CxMatrix& h, const TrainConfig& cfg) {
    return cfg.scheme == Scheme::Sgv ? sgv_train(h, cfg) : stv_train(h, cfg);
}

}  // namespace beamtrain
