#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "beamtrain/linalg.hpp"
#include "beamtrain/rng.hpp"

namespace beamtrain {

// One multipath component: complex gain plus transmit/receive cosine angles.
struct Mpc {
    Cx lambda{0.0, 0.0};
    double omega_t = 0.0;
    double omega_r = 0.0;
};

struct MultipathChannel {
    std::vector<Mpc> mpcs;
    std::size_t m_tx = 0;  // antennas at the source
    std::size_t n_rx = 0;  // antennas at the destination
};

enum class ProfileKind { Los, Nlos };

// Per-MPC average powers E|lambda_l|^2. The ensemble is normalized so the
// powers sum to 1; the stock LOS profile uses four-decimal rounded values
// whose sum is 0.9999, hence the loose tolerance in validate_profile.
struct ChannelProfile {
    ProfileKind kind = ProfileKind::Nlos;
    std::vector<double> powers;
};

// Dominant path holds 0.7692 of the power, three weak paths 0.0769 each.
ChannelProfile los_profile();
// Four equal-power Rayleigh paths.
ChannelProfile nlos_profile();

// Throws std::invalid_argument if powers are empty, negative, or their sum
// is off 1 by more than 1e-3.
void validate_profile(const ChannelProfile& profile);

// Half-wavelength ULA steering vector: entry k (zero-based) is
// exp(j pi k omega) / sqrt(n). Unit norm, constant-amplitude entries.
CxVector steering_vector(double omega, std::size_t n);

// Dense n_rx x m_tx matrix: sqrt(N M) * sum_l lambda_l g_l h_l^H.
CxMatrix render_channel(const MultipathChannel& ch);

// Draws physical angles phi_t, phi_r independently uniform on [0, 2 pi) and
// returns their cosines, so each cosine angle follows the arcsine law.
std::pair<double, double> sample_angles(Rng& rng);

// Draws one channel realization. LOS: |lambda_1| is fixed at sqrt(powers[0])
// with a uniformly random phase, remaining gains are circularly symmetric
// Gaussian with variance equal to their profile power. NLOS: all gains
// Gaussian. Angles are drawn per MPC via sample_angles. Only the ensemble
// expectation is normalized; per-realization power is random.
MultipathChannel sample_channel(const ChannelProfile& profile, std::size_t m_tx, std::size_t n_rx,
                                Rng& rng);

}  // namespace beamtrain
