#include "covosc/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace covosc {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kPiQuarterInv = 0.75112554446494248286;  // pi^{-1/4}

// Compensated accumulator; keeps long grid sums at O(eps) relative error
// independent of the term count.
struct KahanSum {
    double sum = 0.0;
    double carry = 0.0;

    void add(double x) {
        const double y = x - carry;
        const double t = sum + y;
        carry = (t - sum) - y;
        sum = t;
    }
};

void validate_spec(const GridSpec& spec) {
    if (spec.n_z < 8 || spec.n_t < 8) {
        throw std::invalid_argument("Grid2D: need at least 8 nodes per axis");
    }
    if (spec.n_z % 2 != 0 || spec.n_t % 2 != 0) {
        throw std::invalid_argument("Grid2D: node counts must be even");
    }
    if (!(spec.extent_z > 0.0) || !(spec.extent_t > 0.0)) {
        throw std::invalid_argument("Grid2D: extents must be positive");
    }
}

// Largest |value| over the outermost ring of nodes.
double boundary_peak(const Grid2D& g) {
    double peak = 0.0;
    for (int j = 0; j < g.n_t; ++j) {
        peak = std::max(peak, std::abs(g.at(0, j)));
        peak = std::max(peak, std::abs(g.at(g.n_z - 1, j)));
    }
    for (int i = 0; i < g.n_z; ++i) {
        peak = std::max(peak, std::abs(g.at(i, 0)));
        peak = std::max(peak, std::abs(g.at(i, g.n_t - 1)));
    }
    return peak;
}

double grid_peak(const Grid2D& g) {
    double peak = 0.0;
    for (double v : g.values) peak = std::max(peak, std::abs(v));
    return peak;
}

}  // namespace

const char* frame_name(Frame f) {
    switch (f) {
        case Frame::SpaceTime: return "spacetime";
        case Frame::LightCone: return "light_cone";
        case Frame::Momentum: return "momentum";
        case Frame::MomentumLightCone: return "momentum_light_cone";
    }
    return "unknown";
}

Grid2D Grid2D::make(const GridSpec& spec) {
    validate_spec(spec);
    Grid2D g;
    g.n_z = spec.n_z;
    g.n_t = spec.n_t;
    g.extent_z = spec.extent_z;
    g.extent_t = spec.extent_t;
    g.frame = spec.frame;
    g.values.assign(static_cast<size_t>(spec.n_z) * spec.n_t, 0.0);
    return g;
}

Grid2D sample(const std::function<double(double, double)>& f, const GridSpec& spec) {
    Grid2D g = Grid2D::make(spec);
    for (int i = 0; i < g.n_z; ++i) {
        const double x = g.coord_z(i);
        for (int j = 0; j < g.n_t; ++j) {
            const double val = f(x, g.coord_t(j));
            if (!std::isfinite(val)) {
                throw NumericsError("sample: non-finite value at (" + std::to_string(x) + ", " +
                                    std::to_string(g.coord_t(j)) + ")");
            }
            g.at(i, j) = val;
        }
    }
    return g;
}

GaussHermite::GaussHermite(int n) {
    if (n < 1 || n > 200) {
        throw std::invalid_argument("GaussHermite: order out of range [1, 200]: " +
                                    std::to_string(n));
    }
    x_.assign(n, 0.0);
    w_.assign(n, 0.0);

    // Work with the normalized Hermite functions h_k(x); every intermediate
    // stays of order one, so no scaling tricks are needed even at n = 200.
    auto eval = [n](double z, double& hn, double& hnm1) {
        double h0 = kPiQuarterInv * std::exp(-0.5 * z * z);
        if (n == 1) {
            hnm1 = h0;
            hn = std::sqrt(2.0) * z * h0;
            return;
        }
        double h1 = std::sqrt(2.0) * z * h0;
        for (int k = 2; k <= n; ++k) {
            const double h2 = std::sqrt(2.0 / k) * z * h1 - std::sqrt((k - 1.0) / k) * h0;
            h0 = h1;
            h1 = h2;
        }
        hn = h1;
        hnm1 = h0;
    };

    const int m = (n + 1) / 2;
    std::vector<double> roots(m, 0.0);  // positive roots, descending
    double z = 0.0;
    for (int i = 0; i < m; ++i) {
        // Classical asymptotic first guesses, then march inward from the
        // previously found roots.
        if (i == 0) {
            z = std::sqrt(2.0 * n + 1.0) - 1.85575 * std::pow(2.0 * n + 1.0, -1.0 / 6.0);
        } else if (i == 1) {
            z -= 1.14 * std::pow(static_cast<double>(n), 0.426) / z;
        } else if (i == 2) {
            z = 1.86 * z - 0.86 * roots[0];
        } else if (i == 3) {
            z = 1.91 * z - 0.91 * roots[1];
        } else {
            z = 2.0 * z - roots[i - 2];
        }
        double hn = 0.0, hnm1 = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            eval(z, hn, hnm1);
            const double deriv = std::sqrt(2.0 * n) * hnm1 - z * hn;
            const double dz = hn / deriv;
            z -= dz;
            if (std::abs(dz) <= 1e-15 * std::max(1.0, std::abs(z))) break;
        }
        eval(z, hn, hnm1);
        roots[i] = z;
        // Total weight w * e^{x^2} expressed through the function values,
        // so it never under- or overflows.
        const double pp = std::sqrt(2.0 * n) * hnm1;
        const double weight = 2.0 / (pp * pp);
        x_[n - 1 - i] = z;
        w_[n - 1 - i] = weight;
        x_[i] = -z;
        w_[i] = weight;
    }
    if (n % 2 == 1) x_[m - 1] = 0.0;  // center node is exact
}

double integrate2d(const Grid2D& g) {
    const double peak = grid_peak(g);
    if (peak > 0.0 && boundary_peak(g) > 1e-12 * peak) {
        throw NumericsError(
            "integrate2d: samples have not decayed at the grid boundary; "
            "enlarge the extents");
    }
    KahanSum s;
    for (double v : g.values) s.add(v);
    return s.sum * g.spacing_z() * g.spacing_t();
}

double integrate2d(const std::function<double(double, double)>& f, const QuadratureRule& rule) {
    if (rule.nodes < 1) {
        throw std::invalid_argument("integrate2d: rule needs at least one node");
    }
    KahanSum s;
    if (rule.scheme == QuadScheme::GaussHermite) {
        if (!(rule.scale_z > 0.0) || !(rule.scale_t > 0.0)) {
            throw std::invalid_argument("integrate2d: Gauss-Hermite scales must be positive");
        }
        const GaussHermite gh(rule.nodes);
        const auto& x = gh.nodes();
        const auto& w = gh.weights();
        for (int i = 0; i < gh.size(); ++i) {
            for (int j = 0; j < gh.size(); ++j) {
                s.add(w[i] * w[j] * f(rule.scale_z * x[i], rule.scale_t * x[j]));
            }
        }
        return s.sum * rule.scale_z * rule.scale_t;
    }
    // Trapezoid on [-extent, extent]^2 with nodes+1 points per axis.
    if (!(rule.extent_z > 0.0) || !(rule.extent_t > 0.0)) {
        throw std::invalid_argument("integrate2d: trapezoid extents must be positive");
    }
    const int n = rule.nodes;
    const double hz = 2.0 * rule.extent_z / n;
    const double ht = 2.0 * rule.extent_t / n;
    for (int i = 0; i <= n; ++i) {
        const double wz = (i == 0 || i == n) ? 0.5 : 1.0;
        const double z = -rule.extent_z + i * hz;
        for (int j = 0; j <= n; ++j) {
            const double wt = (j == 0 || j == n) ? 0.5 : 1.0;
            s.add(wz * wt * f(z, -rule.extent_t + j * ht));
        }
    }
    return s.sum * hz * ht;
}

Grid2D second_derivative(const Grid2D& g, GridAxis axis) {
    validate_spec(g.spec());
    Grid2D out = Grid2D::make(g.spec());
    const double nan = std::numeric_limits<double>::quiet_NaN();
    const double h = (axis == GridAxis::Z) ? g.spacing_z() : g.spacing_t();
    const double inv12h2 = 1.0 / (12.0 * h * h);
    for (int i = 0; i < g.n_z; ++i) {
        for (int j = 0; j < g.n_t; ++j) {
            const int k = (axis == GridAxis::Z) ? i : j;
            const int nk = (axis == GridAxis::Z) ? g.n_z : g.n_t;
            if (k < 2 || k > nk - 3) {
                out.at(i, j) = nan;
                continue;
            }
            auto f = [&](int off) {
                return (axis == GridAxis::Z) ? g.at(i + off, j) : g.at(i, j + off);
            };
            out.at(i, j) =
                (-f(-2) + 16.0 * f(-1) - 30.0 * f(0) + 16.0 * f(1) - f(2)) * inv12h2;
        }
    }
    return out;
}

namespace {

using cplx = std::complex<double>;

bool is_pow2(int n) { return n > 0 && (n & (n - 1)) == 0; }

// Twiddle table w[k] = exp(+2 pi i k / n), k < n/2, computed directly so the
// transform carries no accumulated phase drift.
std::vector<cplx> twiddles(int n) {
    std::vector<cplx> w(static_cast<size_t>(n) / 2);
    for (int k = 0; k < n / 2; ++k) {
        const double ang = 2.0 * kPi * k / n;
        w[static_cast<size_t>(k)] = {std::cos(ang), std::sin(ang)};
    }
    return w;
}

// In-place radix-2 transform, kernel exp(sign * 2 pi i m j / n).
void fft_pow2(cplx* a, int n, int sign, const std::vector<cplx>& w) {
    for (int i = 1, j = 0; i < n; ++i) {
        int bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (int len = 2; len <= n; len <<= 1) {
        const int stride = n / len;
        for (int i = 0; i < n; i += len) {
            for (int k = 0; k < len / 2; ++k) {
                cplx tw = w[static_cast<size_t>(k) * stride];
                if (sign < 0) tw = std::conj(tw);
                const cplx even = a[i + k];
                const cplx odd = a[i + k + len / 2] * tw;
                a[i + k] = even + odd;
                a[i + k + len / 2] = even - odd;
            }
        }
    }
}

// O(n^2) fallback for even non-power-of-two sizes.
void dft_direct(cplx* a, int n, int sign) {
    std::vector<cplx> table(static_cast<size_t>(n));
    for (int k = 0; k < n; ++k) {
        const double ang = sign * 2.0 * kPi * k / n;
        table[static_cast<size_t>(k)] = {std::cos(ang), std::sin(ang)};
    }
    std::vector<cplx> out(static_cast<size_t>(n));
    for (int m = 0; m < n; ++m) {
        cplx acc{0.0, 0.0};
        long long idx = 0;
        for (int j = 0; j < n; ++j) {
            acc += a[j] * table[static_cast<size_t>(idx)];
            idx += m;
            if (idx >= n) idx -= n;
        }
        out[static_cast<size_t>(m)] = acc;
    }
    std::copy(out.begin(), out.end(), a);
}

// Centered transform of one line: F_m = scale * sum_j f_j exp(i s q_m x_j)
// with x_j = (j - n/2) h, q_m = (m - n/2) dq, dq h = 2 pi / n. Reduces to a
// plain DFT after conjugating every other sample; the (-1)^m and parity
// factors restore the centered phases exactly.
void centered_line(cplx* a, int n, int sign, double scale, const std::vector<cplx>& w) {
    const double parity = (n % 4 == 0) ? 1.0 : -1.0;
    for (int j = 1; j < n; j += 2) a[j] = -a[j];
    if (is_pow2(n)) {
        fft_pow2(a, n, sign, w);
    } else {
        dft_direct(a, n, sign);
    }
    for (int m = 0; m < n; ++m) {
        const double s = (m % 2 == 0) ? 1.0 : -1.0;
        a[m] *= parity * s * scale;
    }
}

Frame transformed_frame(Frame f) {
    switch (f) {
        case Frame::SpaceTime: return Frame::Momentum;
        case Frame::Momentum: return Frame::SpaceTime;
        default:
            throw std::invalid_argument(
                "fourier2d: only spacetime and momentum frames transform; got "
                + std::string(frame_name(f)));
    }
}

ComplexGrid2D fourier2d_core(std::vector<cplx> data, const GridSpec& in, FourierSigns signs) {
    if (std::abs(signs.s_z) != 1 || std::abs(signs.s_t) != 1) {
        throw std::invalid_argument("fourier2d: kernel signs must be +1 or -1");
    }
    validate_spec(in);

    // Aliasing guard: the line transforms are periodic, so the input must be
    // negligible at the grid edge.
    double peak = 0.0, edge = 0.0;
    for (int i = 0; i < in.n_z; ++i) {
        for (int j = 0; j < in.n_t; ++j) {
            const double mag = std::abs(data[static_cast<size_t>(i) * in.n_t + j]);
            peak = std::max(peak, mag);
            if (i == 0 || j == 0 || i == in.n_z - 1 || j == in.n_t - 1) {
                edge = std::max(edge, mag);
            }
        }
    }
    if (peak > 0.0 && edge > 1e-10 * peak) {
        throw NumericsError(
            "fourier2d: input has not decayed at the grid boundary (aliasing); "
            "enlarge the extents");
    }

    const double hz = 2.0 * in.extent_z / in.n_z;
    const double ht = 2.0 * in.extent_t / in.n_t;
    const double inv_sqrt_2pi = 1.0 / std::sqrt(2.0 * kPi);

    const auto wt = is_pow2(in.n_t) ? twiddles(in.n_t) : std::vector<cplx>{};
    for (int i = 0; i < in.n_z; ++i) {
        centered_line(&data[static_cast<size_t>(i) * in.n_t], in.n_t, signs.s_t,
                      ht * inv_sqrt_2pi, wt);
    }
    const auto wz = is_pow2(in.n_z) ? twiddles(in.n_z) : std::vector<cplx>{};
    std::vector<cplx> col(static_cast<size_t>(in.n_z));
    for (int j = 0; j < in.n_t; ++j) {
        for (int i = 0; i < in.n_z; ++i) col[static_cast<size_t>(i)] = data[static_cast<size_t>(i) * in.n_t + j];
        centered_line(col.data(), in.n_z, signs.s_z, hz * inv_sqrt_2pi, wz);
        for (int i = 0; i < in.n_z; ++i) data[static_cast<size_t>(i) * in.n_t + j] = col[static_cast<size_t>(i)];
    }

    GridSpec out = in;
    out.extent_z = kPi / hz;
    out.extent_t = kPi / ht;
    out.frame = transformed_frame(in.frame);

    ComplexGrid2D result{Grid2D::make(out), Grid2D::make(out), signs};
    for (size_t k = 0; k < data.size(); ++k) {
        result.re.values[k] = data[k].real();
        result.im.values[k] = data[k].imag();
    }
    return result;
}

}  // namespace

ComplexGrid2D fourier2d(const Grid2D& g, FourierSigns signs) {
    std::vector<cplx> data(g.values.size());
    for (size_t k = 0; k < g.values.size(); ++k) data[k] = {g.values[k], 0.0};
    return fourier2d_core(std::move(data), g.spec(), signs);
}

ComplexGrid2D fourier2d(const ComplexGrid2D& g, FourierSigns signs) {
    if (g.re.spec().n_z != g.im.spec().n_z || g.re.spec().n_t != g.im.spec().n_t) {
        throw std::invalid_argument("fourier2d: mismatched real/imaginary grids");
    }
    std::vector<cplx> data(g.re.values.size());
    for (size_t k = 0; k < data.size(); ++k) data[k] = {g.re.values[k], g.im.values[k]};
    return fourier2d_core(std::move(data), g.re.spec(), signs);
}

}  // namespace covosc
