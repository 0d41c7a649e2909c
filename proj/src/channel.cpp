#include "beamtrain/channel.hpp"

#include <cmath>

namespace beamtrain {

namespace {
constexpr double kTwoPi = 2.0 * M_PI;
constexpr double kProfileSumTolerance = 1e-3;
}  // namespace

ChannelProfile los_profile() {
    return ChannelProfile{ProfileKind::Los, {0.7692, 0.0769, 0.0769, 0.0769}};
}

ChannelProfile nlos_profile() {
    return ChannelProfile{ProfileKind::Nlos, {0.25, 0.25, 0.25, 0.25}};
}

void validate_profile(const ChannelProfile& profile) {
    if (profile.powers.empty())
        throw std::invalid_argument("ChannelProfile: powers must be nonempty");
    double sum = 0.0;
    for (double p : profile.powers) {
        if (!(p >= 0.0)) throw std::invalid_argument("ChannelProfile: powers must be nonnegative");
        sum += p;
    }
    if (std::abs(sum - 1.0) > kProfileSumTolerance)
        throw std::invalid_argument("ChannelProfile: powers must sum to 1");
}

CxVector steering_vector(double omega, std::size_t n) {
    if (n == 0) throw std::invalid_argument("steering_vector: n must be >= 1");
    CxVector g(n);
    const double scale = 1.0 / std::sqrt(static_cast<double>(n));
    for (std::size_t k = 0; k < n; ++k)
        g[k] = std::polar(scale, M_PI * static_cast<double>(k) * omega);
    return g;
}

CxMatrix render_channel(const MultipathChannel& ch) {
    if (ch.mpcs.empty()) throw std::invalid_argument("render_channel: channel has no MPCs");
    const std::size_t n = ch.n_rx;
    const std::size_t m = ch.m_tx;
    CxMatrix h(n, m);
    const double prefactor = std::sqrt(static_cast<double>(n * m));
    for (const Mpc& mpc : ch.mpcs) {
        const CxVector g = steering_vector(mpc.omega_r, n);
        const CxVector t = steering_vector(mpc.omega_t, m);
        const Cx c = prefactor * mpc.lambda;
        for (std::size_t i = 0; i < n; ++i) {
            const Cx cg = c * g[i];
            for (std::size_t j = 0; j < m; ++j) h(i, j) += cg * std::conj(t[j]);
        }
    }
    return h;
}

std::pair<double, double> sample_angles(Rng& rng) {
    const double phi_t = kTwoPi * rng.uniform();
    const double phi_r = kTwoPi * rng.uniform();
    return {std::cos(phi_t), std::cos(phi_r)};
}

MultipathChannel sample_channel(const ChannelProfile& profile, std::size_t m_tx, std::size_t n_rx,
                                Rng& rng) {
    validate_profile(profile);
    if (m_tx == 0 || n_rx == 0)
        throw std::invalid_argument("sample_channel: array sizes must be >= 1");

    MultipathChannel ch;
    ch.m_tx = m_tx;
    ch.n_rx = n_rx;
    ch.mpcs.reserve(profile.powers.size());
    for (std::size_t l = 0; l < profile.powers.size(); ++l) {
        Mpc mpc;
        if (profile.kind == ProfileKind::Los && l == 0) {
            // Rician dominant path: fixed magnitude, random phase.
            mpc.lambda = std::polar(std::sqrt(profile.powers[0]), kTwoPi * rng.uniform());
        } else {
            mpc.lambda = rng.complex_gaussian(profile.powers[l]);
        }
        const auto [omega_t, omega_r] = sample_angles(rng);
        mpc.omega_t = omega_t;
        mpc.omega_r = omega_r;
        ch.mpcs.push_back(mpc);
    }
    return ch;
}

}  // namespace beamtrain
