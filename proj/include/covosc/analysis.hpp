#pragma once

// Higher-level diagnostics built on the oscillator states and the numerics
// layer: differential-equation residuals, marginal distributions, width
// laws, level-set geometry, the rest-frame mode decomposition and the
// longitudinal momentum curve.

#include <optional>
#include <string>
#include <vector>

#include "covosc/numerics.hpp"
#include "covosc/oscillator.hpp"

namespace covosc {

// Reading of the oscillator operator 1/2 {x_mu^2 - d^2/dx_mu^2}:
//   Minkowski   D = 1/2 [(z^2 - d_z^2) - (t^2 - d_t^2)], eigenvalue n_u - n_t
//   PlusPlus    D = 1/2 [(z^2 - d_z^2) + (t^2 - d_t^2)], eigenvalue n_u + n_t + 1
// Boosted states stay eigenstates only under the Minkowski reading.
enum class Metric { Minkowski, PlusPlus };

struct PdeResidualReport {
    double lambda_best = 0.0;  // Rayleigh quotient <psi, D psi> / <psi, psi>
    double residual_l2 = 0.0;  // L2 norm of (D - lambda_best) psi on the interior
    double norm_l2 = 0.0;      // interior <psi, psi>
    GridSpec grid;
    Metric metric = Metric::Minkowski;
};

// Applies the operator with fourth-order finite differences on an interior
// window (two-cell stencil band excluded) and reports the best eigenvalue
// and the residual at that eigenvalue. The grid is chosen automatically
// from the state unless one is supplied; rows are streamed, so memory stays
// O(n) even for the finest grids. Throws NumericsError for unresolved or
// undecayed grids and std::invalid_argument when |eta| is too large for the
// finite-difference budget (about 2.1).
PdeResidualReport pde_residual(const OscillatorState& s, Metric metric = Metric::Minkowski,
                               const std::optional<GridSpec>& grid = std::nullopt);

// 1-D density with its first two moments; density integrates to one.
struct Distribution1D {
    std::string axis;
    std::vector<double> nodes;
    std::vector<double> density;
    double mean = 0.0;
    double variance = 0.0;
};

enum class MarginalAxis { Z, T, Qz, Q0 };

// Marginal of |psi|^2 (coordinate axes) or |phi|^2 (momentum axes) along one
// axis, integrating over the other. Auto-resolved grid unless one is given.
Distribution1D marginal(const OscillatorState& s, MarginalAxis axis,
                        const std::optional<GridSpec>& grid = std::nullopt);

// Quadrature-measured widths of the squeezed ground state at one rapidity.
struct WidthScanRow {
    double eta = 0.0;
    double sigma_z = 0.0;
    double sigma_q_z = 0.0;
    double sigma_u = 0.0;
    double sigma_v = 0.0;
    double quadrant_mass = 0.0;  // momentum mass in the wedge |q_u| > |q_v|
};

std::vector<WidthScanRow> width_scan(const std::vector<double>& etas);

// Level set of the ground-state density |psi_eta|^2 at a fixed level: an
// ellipse with axes along the light-cone directions. Semi-axes are located
// by bisection on the density itself. tilt is the major-axis angle in the
// (z, t) plane: +pi/4 when u is the long axis, -pi/4 when v is, 0 for the
// rest-frame circle.
struct EllipseGeometry {
    double semi_u = 0.0;
    double semi_v = 0.0;
    double tilt = 0.0;
    double level = 0.0;
};

// Defined for the squeezed ground state only; level must lie strictly
// between 0 and the peak density 1/pi.
EllipseGeometry ellipse(const OscillatorState& s, double level);

// Expansion of the squeezed ground state over the rest-frame diagonal modes
// h_n(z) h_n(t); only the diagonal enters by symmetry. Coefficients are
// computed by dilated Gauss-Hermite quadrature, exact at every order kept.
struct DecompositionReport {
    double eta = 0.0;
    int order = 0;                     // highest mode kept
    std::vector<double> coefficients;  // c_0 .. c_order
    double completeness = 0.0;         // sum of c_n^2
    double defect = 0.0;               // 1 - completeness
    bool defect_warning = false;       // defect above 1e-6 at this order
};

DecompositionReport decompose(Rapidity eta, int order);

// Longitudinal momentum curve: the q_z marginal of the boosted ground state
// expressed in the scaled variable x = q_z / (8 sigma_qz), emitted on
// x_nodes equispaced points of [-1, 1]. The window covers the support down
// to ~1e-14 of the peak. Rejects eta = 0 (no boost direction) and needs at
// least 9 nodes.
Distribution1D parton_curve(Rapidity eta, int x_nodes);

// Momentum-space mass in the double wedge |q_u| > |q_v|: 1/2 at rest,
// approaching 1 as eta grows (the distribution collapses onto the q_u axis).
double quadrant_concentration(Rapidity eta);

// Excess kurtosis of a 1-D distribution (0 for a Gaussian), by trapezoid
// moments over the tabulated nodes.
double excess_kurtosis(const Distribution1D& d);

// Guard shared by the quadrature-based analyses; boosts beyond |eta| = 5
// push the dynamic range of the squeeze past what the fixed rules resolve.
void require_rapidity_in_range(Rapidity eta, double limit = 5.0);

}  // namespace covosc
