#include <cmath>
#include <random>

#include <doctest.h>

#include "covosc/kinematics.hpp"

using namespace covosc;

namespace {

// Deterministic point cloud on [-4, 4]^2; fixed seed keeps failures
// reproducible.
std::vector<SpaceTimePoint> point_cloud(int count) {
    std::mt19937 rng(0x5eed01);
    std::uniform_real_distribution<double> dist(-4.0, 4.0);
    std::vector<SpaceTimePoint> pts;
    pts.reserve(count);
    for (int i = 0; i < count; ++i) pts.push_back({dist(rng), dist(rng)});
    return pts;
}

std::vector<double> rapidity_cloud(int count) {
    std::mt19937 rng(0x5eed02);
    std::uniform_real_distribution<double> dist(-2.5, 2.5);
    std::vector<double> etas;
    etas.reserve(count);
    for (int i = 0; i < count; ++i) etas.push_back(dist(rng));
    return etas;
}

}  // namespace

TEST_CASE("light-cone map at canonical points") {
    const double inv_sqrt2 = 0.7071067811865475;
    LightConePoint lc = to_light_cone({1.0, 0.0});
    CHECK(lc.u == doctest::Approx(inv_sqrt2).epsilon(1e-15));
    CHECK(lc.v == doctest::Approx(inv_sqrt2).epsilon(1e-15));

    lc = to_light_cone({0.0, 1.0});
    CHECK(lc.u == doctest::Approx(inv_sqrt2).epsilon(1e-15));
    CHECK(lc.v == doctest::Approx(-inv_sqrt2).epsilon(1e-15));

    const SpaceTimePoint back = from_light_cone(to_light_cone({0.3, -1.7}));
    CHECK(back.z == doctest::Approx(0.3).epsilon(1e-15));
    CHECK(back.t == doctest::Approx(-1.7).epsilon(1e-15));
}

TEST_CASE("boost matrix basics") {
    const Mat2 id = boost_matrix(Rapidity{0.0});
    CHECK(id.zz == 1.0);
    CHECK(id.zt == 0.0);
    CHECK(id.tz == 0.0);
    CHECK(id.tt == 1.0);

    // cosh(0.5), sinh(0.5)
    const SpaceTimePoint p = boost_point({1.0, 0.0}, Rapidity{0.5});
    CHECK(p.z == doctest::Approx(1.1276259652063807).epsilon(1e-15));
    CHECK(p.t == doctest::Approx(0.5210953054937474).epsilon(1e-15));
}

TEST_CASE("boost determinant is one") {
    for (double eta : rapidity_cloud(64)) {
        CHECK(boost_matrix(Rapidity{eta}).det() == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("boost acts as a light-cone squeeze") {
    const auto pts = point_cloud(48);
    for (double eta : rapidity_cloud(16)) {
        for (const auto& p : pts) {
            const SpaceTimePoint direct = boost_point(p, Rapidity{eta});
            const LightConePoint squeezed = squeeze(to_light_cone(p), Rapidity{eta});
            const SpaceTimePoint via_lc = from_light_cone(squeezed);
            CHECK(direct.z == doctest::Approx(via_lc.z).epsilon(1e-12));
            CHECK(direct.t == doctest::Approx(via_lc.t).epsilon(1e-12));
        }
    }
}

TEST_CASE("boosts compose additively in rapidity") {
    const auto pts = point_cloud(16);
    for (const auto& p : pts) {
        const SpaceTimePoint two_step = boost_point(boost_point(p, Rapidity{0.7}), Rapidity{0.4});
        const SpaceTimePoint one_step = boost_point(p, Rapidity{1.1});
        CHECK(two_step.z == doctest::Approx(one_step.z).epsilon(1e-12));
        CHECK(two_step.t == doctest::Approx(one_step.t).epsilon(1e-12));
    }
}

TEST_CASE("interval is boost invariant and equals 2uv") {
    const auto pts = point_cloud(48);
    for (const auto& p : pts) {
        const double s = interval(p);
        const LightConePoint lc = to_light_cone(p);
        CHECK(s == doctest::Approx(2.0 * lc.u * lc.v).epsilon(1e-12));
        for (double eta : {-1.3, 0.25, 2.0}) {
            CHECK(interval(boost_point(p, Rapidity{eta})) == doctest::Approx(s).epsilon(5e-12));
        }
    }
}

TEST_CASE("momentum light-cone map round-trips") {
    std::mt19937 rng(0x5eed03);
    std::uniform_real_distribution<double> dist(-5.0, 5.0);
    for (int i = 0; i < 64; ++i) {
        const MomentumPoint q{dist(rng), dist(rng)};
        const MomentumPoint back = momentum_from_light_cone(momentum_to_light_cone(q));
        CHECK(back.q_z == doctest::Approx(q.q_z).epsilon(1e-15));
        CHECK(back.q_0 == doctest::Approx(q.q_0).epsilon(1e-15));
    }
}

TEST_CASE("momentum light-cone convention") {
    // q_u = (q_0 - q_z)/sqrt(2), q_v = (q_0 + q_z)/sqrt(2)
    const LightConeMomentum lq = momentum_to_light_cone({1.0, 0.0});
    CHECK(lq.q_u == doctest::Approx(-0.7071067811865475).epsilon(1e-15));
    CHECK(lq.q_v == doctest::Approx(0.7071067811865475).epsilon(1e-15));
}

TEST_CASE("coordinate q_u contracts under a positive boost") {
    // Boosting the momentum point itself scales q_u by e^{-eta}: the
    // variable conjugate to the stretched u axis contracts.
    std::mt19937 rng(0x5eed04);
    std::uniform_real_distribution<double> dist(-3.0, 3.0);
    for (int i = 0; i < 32; ++i) {
        const MomentumPoint q{dist(rng), dist(rng)};
        const double eta = 0.8;
        const LightConeMomentum before = momentum_to_light_cone(q);
        const LightConeMomentum after = momentum_to_light_cone(boost_momentum(q, Rapidity{eta}));
        CHECK(after.q_u ==
              doctest::Approx(std::exp(-eta) * before.q_u).epsilon(1e-12));
        CHECK(after.q_v == doctest::Approx(std::exp(eta) * before.q_v).epsilon(1e-12));
    }
}
