#pragma once

#include <cmath>
#include <complex>
#include <sstream>

#include "qwall/numerics/error.hpp"
#include "qwall/spectral/spectral_state.hpp"

namespace qwall {

/// Relative node floor: |psi| at or below this fraction of the global
/// max |psi| counts as a node.
inline constexpr double node_floor_ratio = 1e-12;

/// Polar decomposition psi = R exp(i S / hbar). Only the gradient of S is
/// exposed; S itself is never unwrapped.
struct PolarFields {
    double R = 0.0;
    double dR = 0.0;
    double d2R = 0.0;
    double dS = 0.0;
};

/// R, R', R'', S' from psi, psi', psi'' through the identities of R^2 = psi psi*:
///   R R' = Re(psi* psi'),  R R'' = |psi'|^2 + Re(psi* psi'') - R'^2,
///   R^2 S' = hbar Im(psi* psi').
inline PolarFields polar_fields(const WaveSample& s, double hbar, double node_floor) {
    const double r = std::abs(s.psi);
    if (!(r > node_floor)) {
        std::ostringstream msg;
        msg.precision(17);
        msg << "polar_fields: node at x=" << s.x << ", t=" << s.t << " (|psi|=" << r << ", floor=" << node_floor
            << ")";
        throw NodeSingularity(s.x, s.t, msg.str());
    }
    const Complex cross = std::conj(s.psi) * s.dpsi;
    PolarFields p;
    p.R = r;
    p.dR = cross.real() / r;
    p.dS = hbar * cross.imag() / (r * r);
    p.d2R = (std::norm(s.dpsi) + (std::conj(s.psi) * s.d2psi).real() - p.dR * p.dR) / r;
    return p;
}

} // namespace qwall
