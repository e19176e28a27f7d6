#pragma once

// Normalizable oscillator wave functions in (z, t) and their momentum-space
// partners. A boost of rapidity eta squeezes the ground state along the
// light-cone axes while preserving the L2 norm:
//
//   psi_eta(z, t) = pi^{-1/2} exp(-(e^{-2 eta} u^2 + e^{2 eta} v^2) / 2).
//
// Excited states attach quantum numbers to the rest-frame Cartesian modes and
// are boosted by squeezing the argument, which keeps the family orthonormal.
// The momentum-space functions carry the same squeeze on (q_u, q_v).

#include "covosc/kinematics.hpp"

namespace covosc {

// Excitation (n_u, n_t) of the rest-frame modes z and t, carried to rapidity
// eta. n_u = n_t = 0 is the squeezed ground state.
struct OscillatorState {
    int n_u = 0;
    int n_t = 0;
    Rapidity eta{0.0};
};

// Momentum-space counterpart; quantum numbers attach to (q_z, q_0) at rest.
struct MomentumState {
    int n_u = 0;
    int n_t = 0;
    Rapidity eta{0.0};
};

// Orthonormal Hermite function h_n(x) = H_n(x) e^{-x^2/2} / sqrt(2^n n! sqrt(pi)),
// evaluated by the normalized upward recurrence. Valid for 0 <= n <= 200;
// throws std::invalid_argument outside that range.
double hermite_fn(int n, double x);

// Rest-frame ground state pi^{-1/2} exp(-(z^2 + t^2)/2). Peak value at the
// origin is pi^{-1/2}; the L2 norm is 1.
double eval_ground(SpaceTimePoint p);

// Squeezed (boosted) ground state at rapidity eta. Reduces to eval_ground
// when eta = 0 and stays bounded by pi^{-1/2} for every eta.
double eval_boosted(SpaceTimePoint p, Rapidity eta);

// General boosted excited state: Hermite modes evaluated in the rest coords
// recovered by undoing the light-cone squeeze. Throws std::invalid_argument
// for negative quantum numbers.
double eval_excited(const OscillatorState& s, SpaceTimePoint p);

// Momentum-space wave function; same functional family with the squeeze
// acting on (q_u, q_v). Throws std::invalid_argument for negative quantum
// numbers.
double eval_momentum(const MomentumState& s, MomentumPoint q);

// The boost-invariant solution exp(-(z^2 - t^2)/2) kept for contrast: it
// solves the same oscillator equation but grows without bound along the
// time-like directions and is not normalizable.
double eval_invariant(SpaceTimePoint p);

}  // namespace covosc
