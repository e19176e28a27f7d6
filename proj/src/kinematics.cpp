#include "covosc/kinematics.hpp"

#include <cmath>

namespace covosc {

namespace {
constexpr double kInvSqrt2 = 0.70710678118654752440;
}

LightConePoint to_light_cone(SpaceTimePoint p) {
    return {(p.z + p.t) * kInvSqrt2, (p.z - p.t) * kInvSqrt2};
}

SpaceTimePoint from_light_cone(LightConePoint p) {
    return {(p.u + p.v) * kInvSqrt2, (p.u - p.v) * kInvSqrt2};
}

LightConeMomentum momentum_to_light_cone(MomentumPoint q) {
    return {(q.q_0 - q.q_z) * kInvSqrt2, (q.q_0 + q.q_z) * kInvSqrt2};
}

MomentumPoint momentum_from_light_cone(LightConeMomentum q) {
    return {(q.q_v - q.q_u) * kInvSqrt2, (q.q_u + q.q_v) * kInvSqrt2};
}

Mat2 boost_matrix(Rapidity r) {
    const double ch = std::cosh(r.eta);
    const double sh = std::sinh(r.eta);
    return {ch, sh, sh, ch};
}

SpaceTimePoint boost_point(SpaceTimePoint p, Rapidity r) {
    const Mat2 m = boost_matrix(r);
    return {m.zz * p.z + m.zt * p.t, m.tz * p.z + m.tt * p.t};
}

LightConePoint squeeze(LightConePoint p, Rapidity r) {
    return {std::exp(r.eta) * p.u, std::exp(-r.eta) * p.v};
}

MomentumPoint boost_momentum(MomentumPoint q, Rapidity r) {
    const Mat2 m = boost_matrix(r);
    return {m.zz * q.q_z + m.zt * q.q_0, m.tz * q.q_z + m.tt * q.q_0};
}

double interval(SpaceTimePoint p) {
    return p.z * p.z - p.t * p.t;
}

}  // namespace covosc
