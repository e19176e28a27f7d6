#include "covosc/oscillator.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace covosc {

namespace {
constexpr double kInvSqrtPi = 0.56418958354775628695;  // pi^{-1/2}
constexpr double kPiQuarterInv = 0.75112554446494248286;  // pi^{-1/4}
constexpr int kMaxHermiteOrder = 200;

void require_state(int n_u, int n_t) {
    if (n_u < 0 || n_t < 0) {
        throw std::invalid_argument("oscillator: quantum numbers must be non-negative, got (" +
                                    std::to_string(n_u) + ", " + std::to_string(n_t) + ")");
    }
    if (n_u > kMaxHermiteOrder || n_t > kMaxHermiteOrder) {
        throw std::invalid_argument("oscillator: quantum numbers limited to " +
                                    std::to_string(kMaxHermiteOrder));
    }
}
}  // namespace

double hermite_fn(int n, double x) {
    if (n < 0 || n > kMaxHermiteOrder) {
        throw std::invalid_argument("hermite_fn: order out of range [0, 200]: " +
                                    std::to_string(n));
    }
    double h0 = kPiQuarterInv * std::exp(-0.5 * x * x);
    if (n == 0) return h0;
    double h1 = std::sqrt(2.0) * x * h0;
    for (int k = 2; k <= n; ++k) {
        const double h2 = std::sqrt(2.0 / k) * x * h1 - std::sqrt((k - 1.0) / k) * h0;
        h0 = h1;
        h1 = h2;
    }
    return h1;
}

double eval_ground(SpaceTimePoint p) {
    return kInvSqrtPi * std::exp(-0.5 * (p.z * p.z + p.t * p.t));
}

double eval_boosted(SpaceTimePoint p, Rapidity eta) {
    const LightConePoint lc = to_light_cone(p);
    const double a = std::exp(-2.0 * eta.eta);
    const double b = std::exp(2.0 * eta.eta);
    return kInvSqrtPi * std::exp(-0.5 * (a * lc.u * lc.u + b * lc.v * lc.v));
}

double eval_excited(const OscillatorState& s, SpaceTimePoint p) {
    require_state(s.n_u, s.n_t);
    // Undo the boost: the rest-frame coordinates are the inverse squeeze of
    // the light-cone pair.
    const LightConePoint rest = squeeze(to_light_cone(p), Rapidity{-s.eta.eta});
    const SpaceTimePoint rp = from_light_cone(rest);
    return hermite_fn(s.n_u, rp.z) * hermite_fn(s.n_t, rp.t);
}

double eval_momentum(const MomentumState& s, MomentumPoint q) {
    require_state(s.n_u, s.n_t);
    // The momentum light-cone pair squeezes with the opposite sense, so the
    // rest coordinates are recovered with the same -eta scaling on q_u.
    const LightConeMomentum lc = momentum_to_light_cone(q);
    const LightConeMomentum rest{std::exp(-s.eta.eta) * lc.q_u,
                                 std::exp(s.eta.eta) * lc.q_v};
    const MomentumPoint rq = momentum_from_light_cone(rest);
    return hermite_fn(s.n_u, rq.q_z) * hermite_fn(s.n_t, rq.q_0);
}

double eval_invariant(SpaceTimePoint p) {
    return std::exp(-0.5 * (p.z * p.z - p.t * p.t));
}

}  // namespace covosc
