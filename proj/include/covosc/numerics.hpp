#pragma once

// Grid sampling, quadrature, finite differences and the symmetric discrete
// Fourier transform used to cross-check the analytic wave functions. All
// grids are uniform, centered on the origin and even-sized, so that the
// origin is itself a node and the transform of a grid lands on the dual grid
// of the same size.

#include <complex>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace covosc {

// Raised when a grid cannot support the requested computation (function not
// decayed at the boundary, spacing too coarse for the narrowest feature,
// aliasing in the transform). Distinct from std::invalid_argument, which
// flags malformed inputs.
struct NumericsError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Coordinate frame a grid lives in. Axis 0 / axis 1 are:
//   SpaceTime          z, t
//   LightCone          u, v
//   Momentum           q_z, q_0
//   MomentumLightCone  q_u, q_v
enum class Frame { SpaceTime, LightCone, Momentum, MomentumLightCone };

const char* frame_name(Frame f);

struct GridSpec {
    int n_z = 256;
    int n_t = 256;
    double extent_z = 6.0;
    double extent_t = 6.0;
    Frame frame = Frame::SpaceTime;
};

// Uniform centered grid with row-major samples: values[i * n_t + j] holds the
// sample at (coord_z(i), coord_t(j)). Nodes are x_i = (i - n/2) * h with
// h = 2 * extent / n, so node n/2 sits exactly at the origin and the spacing
// is uniform per axis.
struct Grid2D {
    int n_z = 0;
    int n_t = 0;
    double extent_z = 0.0;
    double extent_t = 0.0;
    Frame frame = Frame::SpaceTime;
    std::vector<double> values;

    // Validates n >= 8 and even, extents > 0; allocates zeroed storage.
    static Grid2D make(const GridSpec& spec);

    GridSpec spec() const { return {n_z, n_t, extent_z, extent_t, frame}; }

    double spacing_z() const { return 2.0 * extent_z / n_z; }
    double spacing_t() const { return 2.0 * extent_t / n_t; }
    double coord_z(int i) const { return (i - n_z / 2) * spacing_z(); }
    double coord_t(int j) const { return (j - n_t / 2) * spacing_t(); }

    double& at(int i, int j) { return values[static_cast<size_t>(i) * n_t + j]; }
    double at(int i, int j) const { return values[static_cast<size_t>(i) * n_t + j]; }
};

// Fills a grid with f evaluated at the nodes, in the grid's own frame.
// Throws NumericsError if f produces a non-finite value.
Grid2D sample(const std::function<double(double, double)>& f, const GridSpec& spec);

// Gauss-Hermite nodes and weights, 1 <= n <= 200. weights() are total
// weights: sum_i w_i f(x_i) approximates the integral of f over the real
// line, exactly when f(x) = p(x) e^{-x^2} with deg p <= 2n - 1. Nodes and
// weights are found by Newton iteration on the normalized Hermite functions,
// which keeps every intermediate quantity of order one.
class GaussHermite {
  public:
    explicit GaussHermite(int n);

    int size() const { return static_cast<int>(x_.size()); }
    const std::vector<double>& nodes() const { return x_; }
    const std::vector<double>& weights() const { return w_; }

  private:
    std::vector<double> x_;
    std::vector<double> w_;
};

enum class QuadScheme { GaussHermite, Trapezoid };

// Tensor-product rule for integrate2d. Gauss-Hermite rules may be dilated
// per axis (node x -> scale * x, weights carry the Jacobian), which makes
// them exact for polynomial-times-Gaussian integrands whose Gaussian core
// matches the dilation. The trapezoid variant uses nodes+1 equispaced points
// per axis on [-extent, extent].
struct QuadratureRule {
    QuadScheme scheme = QuadScheme::GaussHermite;
    int nodes = 64;
    double scale_z = 1.0;
    double scale_t = 1.0;
    double extent_z = 8.0;
    double extent_t = 8.0;
};

// Total mass of a sampled grid: sum of values times the cell area. Throws
// NumericsError when the samples have not decayed at the boundary (largest
// boundary magnitude above 1e-12 of the grid peak).
double integrate2d(const Grid2D& g);

// Integral of f over the plane by the given tensor rule.
double integrate2d(const std::function<double(double, double)>& f, const QuadratureRule& rule);

enum class GridAxis { Z, T };

// Fourth-order centered second derivative along one axis:
//   (-f[k-2] + 16 f[k-1] - 30 f[k] + 16 f[k+1] - f[k+2]) / (12 h^2).
// The two-cell band at each edge of that axis is marked NaN.
Grid2D second_derivative(const Grid2D& g, GridAxis axis);

// Kernel signs for the two axes of fourier2d: kernel exp(i (s_z q_z z + s_t q_0 t)).
// The defaults map the coordinate-space wave functions onto their
// momentum-space partners.
struct FourierSigns {
    int s_z = +1;
    int s_t = +1;
};

struct ComplexGrid2D {
    Grid2D re;
    Grid2D im;
    FourierSigns signs;  // signs used to produce this grid
};

// Symmetric-kernel transform F(q) = (2 pi)^{-1} integral f(x) e^{i s.q.x} dx
// discretized on the centered grid. Output nodes are q_m = (m - n/2) dq with
// dq = pi / extent, i.e. the dual centered grid (extent pi/h). SpaceTime
// grids map to Momentum and vice versa; light-cone frames are rejected.
// Throws NumericsError when the input has not decayed at the boundary
// (aliasing guard at 1e-10 of the peak).
ComplexGrid2D fourier2d(const Grid2D& g, FourierSigns signs = {});
ComplexGrid2D fourier2d(const ComplexGrid2D& g, FourierSigns signs);

}  // namespace covosc
