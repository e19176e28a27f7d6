#include <cmath>
#include <stdexcept>
#include <string>

#include <doctest.h>

#include "covosc/analysis.hpp"

using namespace covosc;

namespace {

constexpr double kPi = 3.141592653589793;

double residual_at_zero(const PdeResidualReport& r) {
    return std::sqrt(r.residual_l2 * r.residual_l2 +
                     r.lambda_best * r.lambda_best * r.norm_l2);
}

}  // namespace

TEST_CASE("minkowski operator annihilates the rest ground state") {
    const PdeResidualReport rep = pde_residual({0, 0, Rapidity{0.0}});
    CHECK(std::abs(rep.lambda_best) < 1e-5);
    CHECK(rep.residual_l2 < 1e-5);
    CHECK(rep.norm_l2 == doctest::Approx(1.0).epsilon(1e-4));
}

TEST_CASE("minkowski eigenvalues are the mode differences") {
    const struct {
        int nu, nt, target;
    } cases[] = {{1, 0, 1}, {2, 0, 2}, {1, 1, 0}, {0, 2, -2}};
    for (const auto& c : cases) {
        const PdeResidualReport rep = pde_residual({c.nu, c.nt, Rapidity{0.0}});
        CHECK(rep.lambda_best == doctest::Approx(c.target).epsilon(1e-4));
        CHECK(residual_at_zero(rep) > std::abs(rep.lambda_best) / 2.0);  // lambda is real signal
        CHECK(rep.residual_l2 < 1e-4);
    }
}

TEST_CASE("boosted ground state stays annihilated") {
    for (double eta : {0.5, 1.0, -0.75}) {
        const PdeResidualReport rep = pde_residual({0, 0, Rapidity{eta}});
        CHECK(residual_at_zero(rep) < 1e-4);
    }
}

TEST_CASE("plus-plus reading shifts the ground eigenvalue to one") {
    const PdeResidualReport rep = pde_residual({0, 0, Rapidity{0.0}}, Metric::PlusPlus);
    CHECK(rep.lambda_best == doctest::Approx(1.0).epsilon(1e-4));
    CHECK(rep.residual_l2 < 1e-4);

    const PdeResidualReport e10 = pde_residual({1, 0, Rapidity{0.0}}, Metric::PlusPlus);
    CHECK(e10.lambda_best == doctest::Approx(2.0).epsilon(1e-4));
    const PdeResidualReport e11 = pde_residual({1, 1, Rapidity{0.0}}, Metric::PlusPlus);
    CHECK(e11.lambda_best == doctest::Approx(3.0).epsilon(1e-4));
}

TEST_CASE("plus-plus reading breaks under a boost") {
    // The boosted ground state is not an eigenstate: the Rayleigh quotient
    // lands on cosh(2 eta) and the residual is order one.
    const PdeResidualReport rep = pde_residual({0, 0, Rapidity{1.0}}, Metric::PlusPlus);
    CHECK(rep.lambda_best == doctest::Approx(std::cosh(2.0)).epsilon(1e-3));
    CHECK(rep.residual_l2 > 0.5);
}

TEST_CASE("pde residual rejects unresolved grids") {
    try {
        pde_residual({0, 0, Rapidity{2.0}}, Metric::Minkowski,
                     GridSpec{32, 32, 6.0, 6.0, Frame::SpaceTime});
        FAIL("expected NumericsError");
    } catch (const NumericsError& e) {
        CHECK(std::string(e.what()).find("unresolved") != std::string::npos);
    }
}

TEST_CASE("pde residual rejects rapidities beyond the stencil budget") {
    CHECK_THROWS_AS(pde_residual({0, 0, Rapidity{3.0}}), std::invalid_argument);
}

TEST_CASE("marginals reproduce the closed-form widths") {
    const double eta = 0.8;
    const double var = std::cosh(2.0 * eta) / 2.0;
    const OscillatorState s{0, 0, Rapidity{eta}};
    for (MarginalAxis axis :
         {MarginalAxis::Z, MarginalAxis::T, MarginalAxis::Qz, MarginalAxis::Q0}) {
        const Distribution1D d = marginal(s, axis);
        CHECK(std::abs(d.mean) < 1e-9);
        CHECK(d.variance == doctest::Approx(var).epsilon(1e-6));
        // Density is normalized on its own nodes.
        double mass = 0.0;
        for (size_t k = 1; k < d.nodes.size(); ++k) {
            mass += 0.5 * (d.density[k] + d.density[k - 1]) * (d.nodes[k] - d.nodes[k - 1]);
        }
        CHECK(mass == doctest::Approx(1.0).epsilon(1e-8));
    }
}

TEST_CASE("coordinate and momentum marginals share one width") {
    const OscillatorState s{0, 0, Rapidity{1.2}};
    const Distribution1D dz = marginal(s, MarginalAxis::Z);
    const Distribution1D dq = marginal(s, MarginalAxis::Qz);
    CHECK(std::sqrt(dz.variance) == doctest::Approx(std::sqrt(dq.variance)).epsilon(1e-8));
}

TEST_CASE("marginal frame validation") {
    const OscillatorState s{0, 0, Rapidity{0.4}};
    CHECK_THROWS_AS(marginal(s, MarginalAxis::Z,
                             GridSpec{256, 256, 8.0, 8.0, Frame::Momentum}),
                    std::invalid_argument);
    CHECK_THROWS_AS(marginal(s, MarginalAxis::Qz,
                             GridSpec{256, 256, 8.0, 8.0, Frame::SpaceTime}),
                    std::invalid_argument);
}

TEST_CASE("width scan matches the squeeze laws") {
    const auto rows = width_scan({0.0, 1.0});
    REQUIRE(rows.size() == 2);

    CHECK(rows[0].sigma_z == doctest::Approx(0.7071067811865475).epsilon(1e-8));
    CHECK(rows[0].sigma_u == doctest::Approx(0.7071067811865475).epsilon(1e-8));
    CHECK(rows[0].sigma_v == doctest::Approx(0.7071067811865475).epsilon(1e-8));
    CHECK(rows[0].quadrant_mass == doctest::Approx(0.5).epsilon(1e-9));

    // cosh(2)/2 = 1.8810978455418157, e/sqrt(2), 1/(e sqrt(2))
    CHECK(rows[1].sigma_z * rows[1].sigma_z ==
          doctest::Approx(1.8810978455418157).epsilon(1e-6));
    CHECK(rows[1].sigma_q_z == doctest::Approx(rows[1].sigma_z).epsilon(1e-8));
    CHECK(rows[1].sigma_u == doctest::Approx(1.9221155140795583).epsilon(1e-6));
    CHECK(rows[1].sigma_v == doctest::Approx(0.2601300475114444).epsilon(1e-6));
    CHECK(rows[1].sigma_u * rows[1].sigma_v == doctest::Approx(0.5).epsilon(1e-6));
    CHECK(rows[1].quadrant_mass == doctest::Approx(0.9143631844053802).epsilon(1e-9));
}

TEST_CASE("widths grow monotonically with |eta|") {
    const auto rows = width_scan({0.0, 0.4, 0.8, 1.2, 1.6});
    for (size_t k = 1; k < rows.size(); ++k) {
        CHECK(rows[k].sigma_z > rows[k - 1].sigma_z);
        CHECK(rows[k].quadrant_mass > rows[k - 1].quadrant_mass);
    }
}

TEST_CASE("level-set ellipse of the squeezed ground state") {
    // Density (1/pi) exp(-(e^{-2 eta} u^2 + e^{2 eta} v^2)); at level
    // 1/(pi e) the semi-axes are exactly e^{+eta} and e^{-eta}.
    const double level = 1.0 / (kPi * std::exp(1.0));
    const EllipseGeometry g = ellipse({0, 0, Rapidity{0.7}}, level);
    CHECK(g.semi_u == doctest::Approx(std::exp(0.7)).epsilon(1e-9));
    CHECK(g.semi_v == doctest::Approx(std::exp(-0.7)).epsilon(1e-9));
    CHECK(g.semi_u / g.semi_v == doctest::Approx(std::exp(1.4)).epsilon(1e-8));
    CHECK(kPi * g.semi_u * g.semi_v == doctest::Approx(kPi).epsilon(1e-9));
    CHECK(g.tilt == doctest::Approx(kPi / 4.0).epsilon(1e-12));
    CHECK(g.level == level);

    const EllipseGeometry back = ellipse({0, 0, Rapidity{-0.4}}, level);
    CHECK(back.tilt == doctest::Approx(-kPi / 4.0).epsilon(1e-12));

    const EllipseGeometry rest = ellipse({0, 0, Rapidity{0.0}}, level);
    CHECK(rest.tilt == 0.0);
    CHECK(rest.semi_u == doctest::Approx(rest.semi_v).epsilon(1e-10));

    // General level: semi axes scale with sqrt(log(peak/level)).
    const double lvl2 = 0.1;
    const double ell = std::sqrt(std::log(1.0 / (kPi * lvl2)));
    const EllipseGeometry g2 = ellipse({0, 0, Rapidity{0.7}}, lvl2);
    CHECK(g2.semi_u == doctest::Approx(std::exp(0.7) * ell).epsilon(1e-9));
    CHECK(g2.semi_v == doctest::Approx(std::exp(-0.7) * ell).epsilon(1e-9));
}

TEST_CASE("ellipse validation") {
    CHECK_THROWS_AS(ellipse({0, 0, Rapidity{0.5}}, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(ellipse({0, 0, Rapidity{0.5}}, 1.0 / kPi), std::invalid_argument);
    CHECK_THROWS_AS(ellipse({1, 0, Rapidity{0.5}}, 0.1), std::invalid_argument);
}

TEST_CASE("decomposition matches the closed-form coefficients") {
    const DecompositionReport rep = decompose(Rapidity{1.0}, 40);
    REQUIRE(rep.coefficients.size() == 41);
    const double sech = 1.0 / std::cosh(1.0);
    const double tanh = std::tanh(1.0);
    double cn = sech;
    for (int n = 0; n <= 10; ++n) {
        CHECK(rep.coefficients[n] == doctest::Approx(cn).epsilon(1e-10));
        cn *= tanh;
    }
    // sech(1) tanh(1)^10, frozen.
    CHECK(rep.coefficients[10] == doctest::Approx(0.04254489023741427).epsilon(1e-10));
    // Completeness defect = tanh(1)^82, frozen.
    CHECK(rep.completeness == doctest::Approx(0.9999999997998593).epsilon(1e-12));
    CHECK(std::abs(rep.defect - 2.0014070919655534e-10) < 1e-12);
    CHECK_FALSE(rep.defect_warning);
}

TEST_CASE("decomposition coefficients against direct quadrature") {
    // Independent oracle: trapezoid integral of psi_eta h_n(z) h_n(t) on a
    // wide fine grid.
    const double eta = 1.0;
    const DecompositionReport rep = decompose(Rapidity{eta}, 8);
    const int nn = 1400;
    const double ext = 14.0;
    const double h = 2.0 * ext / nn;
    for (int n = 0; n <= 3; ++n) {
        double acc = 0.0;
        for (int i = 0; i <= nn; ++i) {
            const double z = -ext + i * h;
            const double wz = (i == 0 || i == nn) ? 0.5 : 1.0;
            const double hz = hermite_fn(n, z);
            double line = 0.0;
            for (int j = 0; j <= nn; ++j) {
                const double t = -ext + j * h;
                const double wt = (j == 0 || j == nn) ? 0.5 : 1.0;
                line += wt * eval_boosted({z, t}, Rapidity{eta}) * hermite_fn(n, t);
            }
            acc += wz * hz * line;
        }
        acc *= h * h;
        CHECK(rep.coefficients[n] == doctest::Approx(acc).epsilon(1e-9));
    }
}

TEST_CASE("decomposition edge cases") {
    const DecompositionReport rest = decompose(Rapidity{0.0}, 12);
    CHECK(rest.coefficients[0] == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(std::abs(rest.coefficients[3]) < 1e-14);
    CHECK(std::abs(rest.defect) < 1e-14);

    // Reflection sends c_n -> (-1)^n c_n.
    const DecompositionReport plus = decompose(Rapidity{0.5}, 10);
    const DecompositionReport minus = decompose(Rapidity{-0.5}, 10);
    for (int n = 0; n <= 10; ++n) {
        const double sign = (n % 2 == 0) ? 1.0 : -1.0;
        CHECK(minus.coefficients[n] ==
              doctest::Approx(sign * plus.coefficients[n]).epsilon(1e-12));
    }
    // N = 40 keeps the tail below 1e-10 at this squeeze (tanh(0.5)^82).
    CHECK(decompose(Rapidity{0.5}, 40).completeness >= 1.0 - 1e-10);

    // Strong squeeze at low order leaves visible mass behind.
    const DecompositionReport rough = decompose(Rapidity{2.0}, 40);
    CHECK(rough.defect > 1e-6);
    CHECK(rough.defect_warning);

    CHECK_THROWS_AS(decompose(Rapidity{0.5}, -1), std::invalid_argument);
    CHECK_THROWS_AS(decompose(Rapidity{0.5}, 129), std::invalid_argument);
}

TEST_CASE("parton curve is a clean gaussian in the scaled variable") {
    const Distribution1D d = parton_curve(Rapidity{1.5}, 801);
    CHECK(d.axis == "x");
    REQUIRE(d.nodes.size() == 801);
    CHECK(d.nodes.front() == doctest::Approx(-1.0).epsilon(1e-15));
    CHECK(d.nodes.back() == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(std::abs(d.mean) < 1e-12);
    // x = q_z / (8 sigma) makes the variance exactly 1/64.
    CHECK(d.variance == doctest::Approx(1.0 / 64.0).epsilon(1e-8));
    CHECK(std::abs(excess_kurtosis(d)) < 1e-6);
    // Mirror symmetry of the construction.
    for (size_t k = 0; k < d.nodes.size(); ++k) {
        CHECK(d.density[k] ==
              doctest::Approx(d.density[d.nodes.size() - 1 - k]).epsilon(1e-12));
    }
}

TEST_CASE("parton validation") {
    CHECK_THROWS_AS(parton_curve(Rapidity{0.0}, 801), std::invalid_argument);
    CHECK_THROWS_AS(parton_curve(Rapidity{1.0}, 5), std::invalid_argument);
}

TEST_CASE("quadrant concentration") {
    CHECK(quadrant_concentration(Rapidity{0.0}) == doctest::Approx(0.5).epsilon(1e-12));
    // (2/pi) atan(e^{2 eta}), frozen at eta = 1 and 3.
    CHECK(quadrant_concentration(Rapidity{1.0}) ==
          doctest::Approx(0.9143631844053802).epsilon(1e-9));
    CHECK(quadrant_concentration(Rapidity{3.0}) ==
          doctest::Approx(0.9984219805854252).epsilon(1e-9));
    CHECK(quadrant_concentration(Rapidity{3.0}) >= 0.99);
    // Reflection identity, exact by construction.
    CHECK(quadrant_concentration(Rapidity{-1.2}) + quadrant_concentration(Rapidity{1.2}) ==
          1.0);
}

TEST_CASE("excess kurtosis of a tabulated gaussian vanishes") {
    Distribution1D d;
    d.axis = "x";
    const int n = 1600;
    for (int k = 0; k <= n; ++k) {
        const double x = -8.0 + 16.0 * k / n;
        d.nodes.push_back(x);
        d.density.push_back(std::exp(-0.5 * x * x));
    }
    CHECK(std::abs(excess_kurtosis(d)) < 1e-9);
}

TEST_CASE("rapidity range guard") {
    CHECK_THROWS_AS(require_rapidity_in_range(Rapidity{5.1}), std::invalid_argument);
    CHECK_NOTHROW(require_rapidity_in_range(Rapidity{4.9}));
    CHECK_THROWS_AS(require_rapidity_in_range(Rapidity{-6.0}), std::invalid_argument);
}
