// Three Bohmian paths of the truncated Gaussian packet, started at the centre
// and two widths either side, with the right wall moving at u = 100 pi.

#include <cstdio>

#include "qwall/bohm/trajectory.hpp"
#include "qwall/spectral/spectral_state.hpp"

int main() {
    using namespace qwall;
    const PhysicsConfig cfg;
    const SpectralState spec = build_spectrum(StateKind::tgp, cfg, CoefficientMethod::closed_form);

    const EnsembleSpec es{{cfg.xc() - 2.0 * cfg.sigma0, cfg.xc(), cfg.xc() + 2.0 * cfg.sigma0}, 0.003};
    const auto paths = ensemble(spec, es);

    std::printf("       t");
    for (const auto& p : paths) {
        std::printf("   x0=%-8.4g", p.x0);
    }
    std::printf("    wall\n");
    for (int i = 0; i <= 10; ++i) {
        const double t = 0.0003 * i;
        std::printf("%8.5f", t);
        for (const auto& p : paths) {
            std::printf(" %13.8f", p.position_at(t));
        }
        std::printf(" %8.4f\n", cfg.width(t));
    }
}
