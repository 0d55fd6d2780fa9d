#include <cmath>
#include <random>

#include "doctest.h"
#include "lhyp/errors.hpp"
#include "lhyp/hyp3.hpp"

using namespace lhyp;

namespace {

HalfSpacePoint random_point(std::mt19937_64& rng)
{
    std::normal_distribution<double> n;
    std::uniform_real_distribution<double> u(-1.5, 1.5);
    return {cplx(n(rng), n(rng)), std::exp(u(rng))};
}

TangentH3 random_unit(std::mt19937_64& rng, const HalfSpacePoint& p)
{
    std::normal_distribution<double> n;
    double a = n(rng);
    cplx b(n(rng), n(rng));
    const double s = std::sqrt(a * a + std::norm(b));
    return {p, a / s * p.t, b / s * p.t};
}

// Velocity and acceleration along the curve by fourth-order central differences.
void curve_derivatives(const GeodesicArc& g, double r, double h, GeodesicState& s, double& dda, cplx& ddb)
{
    const HalfSpacePoint p0 = g.point(r), p1 = g.point(r + h), m1 = g.point(r - h);
    const HalfSpacePoint p2 = g.point(r + 2 * h), m2 = g.point(r - 2 * h);
    s.p = p0;
    s.a = (-p2.t + 8 * p1.t - 8 * m1.t + m2.t) / (12 * h);
    s.beta = (-p2.z + 8.0 * p1.z - 8.0 * m1.z + m2.z) / (12 * h);
    dda = (-p2.t + 16 * p1.t - 30 * p0.t + 16 * m1.t - m2.t) / (12 * h * h);
    ddb = (-p2.z + 16.0 * p1.z - 30.0 * p0.z + 16.0 * m1.z - m2.z) / (12 * h * h);
}

}  // namespace

TEST_CASE("ball and half-space coordinates")
{
    auto y = ball_from_halfspace({0.0, 1.0}).y;
    CHECK(y[0] == 0.0);
    CHECK(y[1] == 0.0);
    CHECK(y[2] == 0.0);
    y = ball_from_halfspace({0.0, 3.0}).y;
    CHECK(y[2] == doctest::Approx(0.5).epsilon(1e-15));
    const HalfSpacePoint p = halfspace_from_ball(BallPoint{{0.0, 0.0, 0.5}});
    CHECK(std::abs(p.z) < 1e-15);
    CHECK(p.t == doctest::Approx(3.0).epsilon(1e-15));
    CHECK(halfspace_from_ball(BallPoint{{0, 0, 0}}).t == doctest::Approx(1.0));
    CHECK_THROWS_AS(halfspace_from_ball(BallPoint{{0.0, 0.6, 0.8}}), ModelDomainError);
    CHECK_THROWS_AS(BallPoint::make({1.0, 0.0, 0.0}), ModelDomainError);
    CHECK_THROWS_AS(HalfSpacePoint::make(0.0, 0.0), ModelDomainError);

    std::mt19937_64 rng(11);
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const HalfSpacePoint q = random_point(rng);
        const BallPoint b = ball_from_halfspace(q);
        CHECK(b.norm() < 1.0);
        const HalfSpacePoint back = halfspace_from_ball(b);
        worst = std::max(worst, std::abs(back.z - q.z) + std::abs(back.t - q.t));
    }
    CHECK(worst < 1e-12);
}

TEST_CASE("hyperbolic distance")
{
    CHECK(hyp_distance({0.0, 1.0}, {0.0, std::exp(1.0)}) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(hyp_distance({0.3, 0.7}, {0.3, 0.7}) == 0.0);
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> th(0.0, 6.28);
    for (int i = 0; i < 200; ++i) {
        const HalfSpacePoint p = random_point(rng), q = random_point(rng);
        const double d = hyp_distance(p, q);
        CHECK(std::abs(d - hyp_distance(q, p)) < 1e-14);
        // isometries: rotation about the vertical axis and dilation
        const cplx rot = std::polar(1.0, th(rng));
        CHECK(std::abs(hyp_distance({rot * p.z, p.t}, {rot * q.z, q.t}) - d) < 1e-12);
        const double k = std::exp(th(rng) - 3.0);
        CHECK(std::abs(hyp_distance({k * p.z, k * p.t}, {k * q.z, k * q.t}) - d) < 1e-12);
        // acosh form as an independent oracle
        const double c = 1.0 + (std::norm(p.z - q.z) + (p.t - q.t) * (p.t - q.t)) / (2.0 * p.t * q.t);
        CHECK(std::abs(std::acosh(c) - d) < 1e-9 * std::max(1.0, d));
    }
}

TEST_CASE("closed-form geodesics")
{
    const GeodesicArc g = geodesic_from_initial({0.0, 1.0}, {{0.0, 1.0}, 0.0, 1.0});
    for (double r : {-2.0, -0.5, 0.0, 0.7, 3.0}) {
        const HalfSpacePoint p = g.point(r);
        CHECK(std::abs(p.z - std::tanh(r)) < 1e-15);
        CHECK(std::abs(p.t - 1.0 / std::cosh(r)) < 1e-15);
    }
    const GeodesicArc v = geodesic_from_initial({0.0, 1.0}, {{0.0, 1.0}, 1.0, 0.0});
    CHECK(v.is_vertical());
    CHECK(v.point(1.3).t == doctest::Approx(std::exp(1.3)));
    CHECK(v.point(1.3).z == cplx(0.0));
    CHECK(v.end().is_infinite());
    CHECK_THROWS_AS(geodesic_from_initial({0.0, 1.0}, {{0.0, 1.0}, 0.5, 0.5}), NormalizationError);

    std::mt19937_64 rng(7);
    double speed_err = 0.0, ode_res = 0.0, init_err = 0.0;
    for (int i = 0; i < 50; ++i) {
        const HalfSpacePoint p = random_point(rng);
        const TangentH3 u = random_unit(rng, p);
        const GeodesicArc a = geodesic_from_initial(p, u);
        const TangentH3 v0 = a.velocity(0.0);
        init_err = std::max(init_err, std::abs(a.point(0.0).z - p.z) + std::abs(a.point(0.0).t - p.t));
        init_err = std::max(init_err, std::abs(v0.a - u.a) + std::abs(v0.beta - u.beta));
        for (double r = -3.0; r <= 3.0; r += 0.25) {
            speed_err = std::max(speed_err, std::abs(a.velocity(r).hyp_norm() - 1.0));
            GeodesicState s;
            double dda;
            cplx ddb;
            curve_derivatives(a, r, 1e-3, s, dda, ddb);
            ode_res = std::max(ode_res, geodesic_ode_residual(s, dda, ddb));
        }
    }
    CHECK(init_err < 1e-12);
    CHECK(speed_err < 1e-10);
    CHECK(ode_res < 1e-6);
}

TEST_CASE("RK4 integration against the closed form")
{
    const HalfSpacePoint p{0.2, 0.9};
    const TangentH3 u{p, 0.3, cplx(0.5, std::sqrt(0.81 - 0.09 - 0.25))};
    const HalfSpacePoint q = integrate_geodesic_ode(p, u, 0.0, 1e-3);
    CHECK(q.z == p.z);
    CHECK(q.t == p.t);
    CHECK_THROWS_AS(integrate_geodesic_ode(p, u, 1.0, 0.0), PreconditionError);

    std::mt19937_64 rng(13);
    double worst = 0.0, fi = 0.0;
    for (int i = 0; i < 10; ++i) {
        const HalfSpacePoint s = random_point(rng);
        const TangentH3 v = random_unit(rng, s);
        const GeodesicArc a = geodesic_from_initial(s, v);
        const auto I0 = geodesic_first_integrals({s, v.a, v.beta});
        for (double r : {-3.0, -1.2, 2.0, 3.0}) {
            const GeodesicState st = integrate_geodesic_state(s, v, r, 1e-3);
            const HalfSpacePoint c = a.point(r);
            worst = std::max(worst, (std::abs(st.p.z - c.z) + std::abs(st.p.t - c.t)) / c.t);
            const auto I = geodesic_first_integrals(st);
            fi = std::max(fi, std::abs(I.first - I0.first) + std::abs(I.second - I0.second));
        }
    }
    CHECK(worst < 1e-8);
    CHECK(fi < 1e-8);
}

TEST_CASE("distance to a geodesic")
{
    const GeodesicArc axis = GeodesicArc::vertical(0.0, 1.0, 1);
    const double t = 0.8;
    const HalfSpacePoint p{std::polar(std::sinh(1.0) * t, 0.4), t};
    const FootPoint f = distance_point_to_geodesic(p, axis);
    CHECK(f.distance == doctest::Approx(1.0).epsilon(1e-14));
    // foot at height sqrt(|z|^2 + t^2) = t cosh 1
    CHECK(f.r_foot == doctest::Approx(std::log(t * std::cosh(1.0))).epsilon(1e-14));

    std::mt19937_64 rng(17);
    for (int i = 0; i < 50; ++i) {
        const HalfSpacePoint s = random_point(rng);
        const GeodesicArc g = geodesic_from_initial(s, random_unit(rng, s));
        const GeodesicArc rev = GeodesicArc::from_endpoints(g.end(), g.begin());
        const HalfSpacePoint q = random_point(rng);
        const FootPoint a = distance_point_to_geodesic(q, g);
        CHECK(std::abs(a.distance - distance_point_to_geodesic(q, rev).distance) < 1e-9);
        CHECK(distance_point_to_geodesic(g.point(0.4), g).distance < 1e-7);
        CHECK(distance_point_to_geodesic(g.point(0.4), g).r_foot == doctest::Approx(0.4).epsilon(1e-7));
        // the foot point realizes the distance
        CHECK(std::abs(hyp_distance(q, g.point(a.r_foot)) - a.distance) < 1e-9);
        const FootPoint b = distance_point_to_geodesic_search(q, g, a.r_foot - 10.0, a.r_foot + 7.0);
        CHECK(std::abs(b.distance - a.distance) < 1e-9);
    }
    CHECK_THROWS_AS(distance_point_to_geodesic_search(p, axis, 5.0, 9.0), SearchDomainError);
}

TEST_CASE("Mobius isometries preserve distance")
{
    std::mt19937_64 rng(19);
    std::normal_distribution<double> n;
    for (int i = 0; i < 50; ++i) {
        const Mobius m = Mobius::normalized({n(rng), n(rng)}, {n(rng), n(rng)}, {n(rng), n(rng)}, {n(rng), n(rng)});
        const HalfSpacePoint p = random_point(rng), q = random_point(rng);
        CHECK(std::abs(hyp_distance(m(p), m(q)) - hyp_distance(p, q)) < 1e-9);
        const HalfSpacePoint back = m.inverse()(m(p));
        CHECK(std::abs(back.z - p.z) + std::abs(back.t - p.t) < 1e-10);
    }
}
