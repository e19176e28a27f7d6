#pragma once

// Light-front kinematics for one space dimension plus time, natural units.
// Conventions: u = (z + t)/sqrt(2), v = (z - t)/sqrt(2);
// for momenta q_u = (q_0 - q_z)/sqrt(2), q_v = (q_0 + q_z)/sqrt(2).
// A boost of rapidity eta acts on (z, t) as [[cosh, sinh], [sinh, cosh]]
// and on the light-cone axes as the unit-Jacobian squeeze u -> e^{eta} u,
// v -> e^{-eta} v.

namespace covosc {

struct SpaceTimePoint {
    double z = 0.0;
    double t = 0.0;
};

struct LightConePoint {
    double u = 0.0;
    double v = 0.0;
};

struct MomentumPoint {
    double q_z = 0.0;
    double q_0 = 0.0;
};

struct LightConeMomentum {
    double q_u = 0.0;
    double q_v = 0.0;
};

// Boost parameter; composition of boosts is addition of rapidities.
struct Rapidity {
    double eta = 0.0;
};

// 2x2 real matrix acting on column vectors (z, t).
struct Mat2 {
    double zz = 1.0, zt = 0.0;
    double tz = 0.0, tt = 1.0;

    double det() const { return zz * tt - zt * tz; }
};

LightConePoint to_light_cone(SpaceTimePoint p);
SpaceTimePoint from_light_cone(LightConePoint p);

LightConeMomentum momentum_to_light_cone(MomentumPoint q);
MomentumPoint momentum_from_light_cone(LightConeMomentum q);

// [[cosh eta, sinh eta], [sinh eta, cosh eta]]; unit determinant.
Mat2 boost_matrix(Rapidity r);

SpaceTimePoint boost_point(SpaceTimePoint p, Rapidity r);

// Boost realised on the light-cone axes: u scales by e^{eta}, v by e^{-eta}.
LightConePoint squeeze(LightConePoint p, Rapidity r);

// Boost action on momentum coordinates (q_z, q_0); the light-cone momentum
// axes transform oppositely to the coordinate ones: q_u contracts by e^{-eta}
// while u expands by e^{eta}.
MomentumPoint boost_momentum(MomentumPoint q, Rapidity r);

// z^2 - t^2 = 2 u v, invariant under boosts.
double interval(SpaceTimePoint p);

}  // namespace covosc
