#include <cmath>
#include <random>
#include <sstream>

#include "doctest.h"
#include "lhyp/errors.hpp"
#include "lhyp/reconstruction.hpp"

using namespace lhyp;

namespace {

MaximalFamily random_family(std::mt19937_64& rng)
{
    std::normal_distribution<double> n;
    for (;;) {
        const MaximalFamily f = MaximalFamily::from_lambdas({n(rng), n(rng)}, {n(rng), n(rng)}, 0.3 + 0.3 * std::abs(n(rng)));
        const double k = std::exp(2.0 * f.r0) * std::abs(f.det());
        if (std::abs(f.det()) > 0.1 && std::abs(k - 1.0) > 0.2) return f;
    }
}

// a grid around a point well away from the family's singular points
ParamGrid safe_grid(const MaximalFamily& f, std::mt19937_64& rng, int n, double extent)
{
    std::normal_distribution<double> d;
    for (;;) {
        const cplx c(0.5 * d(rng), 0.5 * d(rng));
        if (f.singular_distance(c) > 2.0 * extent + 0.2 && std::abs(1.0 + f.lam1() * c) > 2.0 * extent + 0.2)
            return {c, extent, n};
    }
}

SampledSurface family_surface(const MaximalFamily& f, const ParamGrid& grid)
{
    const Congruence c = maximal_family_graph(f).congruence();
    const double rb = r_closed_form_family(f, grid.at((grid.n - 1) / 2, (grid.n - 1) / 2));
    return orthogonal_surface(c, solve_r_pde(c, grid, rb));
}

double max_abs_diff(const std::vector<double>& a, double v)
{
    double w = 0.0;
    for (double x : a) w = std::max(w, std::abs(x - v));
    return w;
}

}  // namespace

TEST_CASE("closed-form family r")
{
    CHECK(r_closed_form_family(MaximalFamily::from_lambdas(0.0, 2.0, 0.7), cplx(0.3, 0.4)) == 0.7);
    CHECK(r_closed_form_family(MaximalFamily::from_lambdas(1.0, 4.0, 0.7), 0.0) == 0.7);
    CHECK_THROWS_AS(r_closed_form_family(MaximalFamily::from_lambdas(1.0, 4.0), -1.0), ModelDomainError);

    std::mt19937_64 rng(137);
    std::normal_distribution<double> n;
    double grad = 0.0, rhs = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const MaximalFamily f = random_family(rng);
        const cplx mu(n(rng), n(rng));
        if (f.singular_distance(mu) < 0.1 || std::abs(1.0 + f.lam1() * mu) < 0.1) continue;
        const double h = 2e-4;
        auto r = [&](cplx w) { return r_closed_form_family(f, w); };
        auto d = [&](cplx dir) {
            return (-r(mu + 2.0 * h * dir) + 8.0 * r(mu + h * dir) - 8.0 * r(mu - h * dir) + r(mu - 2.0 * h * dir)) /
                   (12.0 * h);
        };
        const cplx two_d = d(1.0) - kI * d(kI);
        const cplx expect = f.lam1() / (1.0 + f.lam1() * mu);
        grad = std::max(grad, std::abs(two_d - expect) / (1.0 + std::abs(expect)));
        // the general r equation on the family graph gives the same gradient
        const LocalJet j = maximal_family_graph(f).congruence().jet(mu);
        rhs = std::max(rhs, std::abs(r_equation_rhs(j) - expect) / (1.0 + std::abs(expect)));
    }
    CHECK(grad < 1e-10);
    CHECK(rhs < 1e-12);
}

TEST_CASE("r equation on grids")
{
    const MaximalFamily f = MaximalFamily::from_lambdas(1.0, 4.0, 0.4);
    const ParamGrid grid{cplx(0.3, 0.1), 0.4, 11};
    const Congruence c = maximal_family_graph(f).congruence();
    const double rb = r_closed_form_family(f, grid.at(5, 5));
    const RField r = solve_r_pde(c, grid, rb);
    CHECK(r.at(5, 5) == rb);
    double worst = 0.0;
    for (int j = 0; j < grid.n; ++j)
        for (int i = 0; i < grid.n; ++i)
            worst = std::max(worst, std::abs(r.at(i, j) - r_closed_form_family(f, grid.at(i, j))));
    CHECK(worst < 1e-8);
    CHECK(r.max_defect < 1e-10);

    // finite-difference derivatives are good enough too
    const Rank2Graph g = maximal_family_graph(f);
    const Congruence fd = Congruence::sampled([&](cplx nu) {
        return std::array<cplx, 2>{nu, g.mu2_jet(nu).v};
    });
    const RField rf = solve_r_pde(fd, grid, rb, 1e-7, 0, 0);
    double worst_fd = 0.0;
    for (int j = 0; j < grid.n; ++j)
        for (int i = 0; i < grid.n; ++i)
            worst_fd = std::max(worst_fd, std::abs(rf.at(i, j) - r.at(i, j) - (rb - r.at(0, 0))));
    CHECK(worst_fd < 1e-8);

    // mu2 = i mu1 is not Lagrangian
    const Congruence hol = Rank2Graph{[](const Jet2& m) { return kI * m; }}.congruence();
    try {
        solve_r_pde(hol, {cplx(0.5, 0.5), 0.3, 7}, 0.0);
        FAIL("expected an integrability failure");
    } catch (const IntegrabilityError& e) {
        CHECK(e.max_defect() > 1e-3);
    }
    // the grid crosses mu2 = 0
    try {
        solve_r_pde(hol, {0.0, 0.3, 5}, 0.0);
        FAIL("expected singular nodes");
    } catch (const SingularPointsError& e) {
        REQUIRE(e.points().size() == 1);
        CHECK(e.points()[0] == cplx(0.0));
    }
}

TEST_CASE("integrability defect tracks the Lagrangian defect")
{
    std::mt19937_64 rng(139);
    std::normal_distribution<double> n;
    for (int i = 0; i < 10; ++i) {
        const MaximalFamily f = random_family(rng);
        const ParamGrid grid = safe_grid(f, rng, 7, 0.15);
        const Congruence lag = maximal_family_graph(f).congruence();
        CHECK(solve_r_pde(lag, grid, 0.0).max_defect < 1e-10);

        const cplx e(0.2 * n(rng), 0.2 * n(rng));
        const Congruence non = Rank2Graph{[=](const Jet2& m) {
            return conj((f.a * m + f.b) / (f.b * m + f.c)) + e * m;
        }}.congruence();
        double ld = 0.0;
        for (int k = 0; k < grid.size(); ++k) ld = std::max(ld, lagrangian_defect(non, grid.at(k % 7, k / 7)));
        const RField r = solve_r_pde(non, grid, 0.0, 1e300);
        CHECK(ld > 1e-6);
        CHECK(r.max_defect > 1e-6);
    }
}

TEST_CASE("tube cone and parallel surfaces")
{
    const double r0 = 0.8;
    const MaximalFamily f = MaximalFamily::from_lambdas(0.0, 0.0, r0);
    const ParamGrid grid{cplx(1.0, 0.5), 0.3, 9};
    const SampledSurface s = family_surface(f, grid);
    for (int k = 0; k < grid.size(); ++k) {
        const cplx mu = grid.at(k % 9, k / 9);
        CHECK(std::abs(s.points[k].z - mu * std::tanh(r0)) < 1e-14);
        CHECK(std::abs(s.points[k].t - std::abs(mu) / std::cosh(r0)) < 1e-14);
    }
    CHECK(orthogonality_defect(s) < 1e-7);

    const SampledSurface p = family_surface(MaximalFamily::from_lambdas(0.0, 0.0, r0 + 0.3), grid);
    for (int k = 0; k < grid.size(); ++k) CHECK(std::abs(hyp_distance(s.points[k], p.points[k]) - 0.3) < 1e-12);
}

TEST_CASE("orthogonality on random families")
{
    std::mt19937_64 rng(149);
    for (int i = 0; i < 20; ++i) {
        const MaximalFamily f = random_family(rng);
        CHECK(orthogonality_defect(family_surface(f, safe_grid(f, rng, 9, 0.2))) < 1e-7);
    }
}

TEST_CASE("principal curvatures from optical scalars")
{
    auto [a, b] = principal_curvatures_from_scalars(-1.25, 0.75);
    CHECK(a == 2.0);
    CHECK(b == 0.5);
    std::tie(a, b) = principal_curvatures_from_scalars(-0.3, 0.0);
    CHECK(a == 0.3);
    CHECK(b == 0.3);
    CHECK((1.25 * 1.25 - 0.75 * 0.75) == 1.0);
    CHECK_THROWS_AS(principal_curvatures_from_scalars(cplx(-1.0, 0.1), 0.5), PreconditionError);
}

TEST_CASE("family scalars")
{
    const FamilyScalars t = family_scalars(MaximalFamily::from_lambdas(0.0, 0.0, 0.5 * std::log(3.0)), 0.7);
    CHECK(std::abs(t.sigma - 0.75) < 1e-14);
    CHECK(std::abs(t.rho + 1.25) < 1e-14);
    CHECK(t.h == doctest::Approx(1.25).epsilon(1e-14));
    CHECK(t.m1 == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(t.m2 == doctest::Approx(0.5).epsilon(1e-14));
    CHECK_THROWS_AS(family_scalars(MaximalFamily::from_lambdas(0.0, 0.0, 0.0), 0.7), CausticError);
    CHECK_THROWS_AS(family_scalars(MaximalFamily::from_lambdas(2.0, 0.5), 0.7), DegenerateFamilyError);

    std::mt19937_64 rng(151);
    std::normal_distribution<double> n;
    double ident = 0.0, optics = 0.0;
    for (int i = 0; i < 200; ++i) {
        const MaximalFamily f = random_family(rng);
        const cplx mu(0.5 * n(rng), 0.5 * n(rng));
        if (f.singular_distance(mu) < 0.1 || std::abs(1.0 + f.lam1() * mu) < 0.1) continue;
        const FamilyScalars s = family_scalars(f, mu);
        const double k2 = std::exp(4.0 * f.r0) * std::norm(f.det());
        ident = std::max({ident, std::abs(s.m1 * s.m2 - 1.0), std::abs(s.h + s.rho.real()),
                          std::abs(s.h - (1.0 + 2.0 / (k2 - 1.0))) / (1.0 + std::abs(s.h)),
                          std::abs(std::abs(s.sigma) - 0.5 * std::abs(s.m1 - s.m2)) / (1.0 + std::abs(s.sigma)),
                          std::abs(s.h - 0.5 * (s.m1 + s.m2)) / (1.0 + std::abs(s.h))});
        // the general optical scalars at the family r
        const OpticalData o = optical_scalars(maximal_family_graph(f).congruence(), mu, r_closed_form_family(f, mu));
        const double scale = 1.0 + std::abs(s.rho) + std::abs(s.sigma);
        optics = std::max({optics, std::abs(o.rho - s.rho) / scale,
                           std::abs(std::abs(o.sigma) - std::abs(s.sigma)) / scale,
                           std::abs(o.delta - s.delta) / (1.0 + std::abs(s.delta))});
    }
    CHECK(ident < 1e-12);
    CHECK(optics < 1e-10);
}

TEST_CASE("tube congruences")
{
    std::mt19937_64 rng(157);
    std::normal_distribution<double> n;
    double ident = 0.0, relation = 0.0;
    for (int i = 0; i < 100; ++i) {
        const XiEtaChart axis{cplx(n(rng), n(rng)), cplx(n(rng), n(rng))};
        const MaximalFamily f = tube_family(axis);
        CHECK(std::abs(f.lam1() - 1.0 / axis.eta) < 1e-14 * std::abs(1.0 / axis.eta));
        const cplx xib = std::conj(axis.xi);
        CHECK(std::abs(f.lam2() - (axis.eta - 1.0 / (axis.eta * xib * xib))) < 1e-12 * (1.0 + std::abs(f.lam2())));
        for (int k = 0; k < 5; ++k) {
            const cplx nu(n(rng), n(rng));
            const OrientedGeodesic g = tube_congruence(axis, nu);
            // xi = xi' sinh nu, eta = eta' + 1 / (conj(xi') tanh conj(nu))
            const OrientedGeodesic h =
                from_xi_eta({axis.xi * std::sinh(nu), axis.eta + 1.0 / (xib * std::tanh(std::conj(nu)))});
            ident = std::max({ident, chordal_distance(g.mu1, h.mu1), chordal_distance(g.mu2, h.mu2)});
            const cplx m1 = g.mu1.value();
            relation = std::max(relation, chordal_distance(std::conj(g.mu2.value()), f.mu2bar(m1).value()));
        }
    }
    CHECK(ident < 1e-12);
    CHECK(relation < 1e-10);

    // xi' = eta' = 1 gives conj(mu2) = (mu1 + 1) / mu1
    for (cplx nu : {cplx(0.3, 0.4), cplx(-1.0, 0.2)}) {
        const OrientedGeodesic g = tube_congruence({1.0, 1.0}, nu);
        const cplx m1 = g.mu1.value();
        CHECK(std::abs(std::conj(g.mu2.value()) - (m1 + 1.0) / m1) < 1e-12);
        const OrientedGeodesic z = tube_congruence({1.0, 0.0}, nu);
        CHECK(std::abs(std::conj(z.mu2.value()) + z.mu1.value()) < 1e-12);
    }
    CHECK_THROWS_AS(tube_congruence({1.0, 1.0}, 0.0), ModelDomainError);
}

TEST_CASE("osculating family of a family graph is the family")
{
    std::mt19937_64 rng(163);
    std::normal_distribution<double> n;
    for (int i = 0; i < 50; ++i) {
        const MaximalFamily f = random_family(rng);
        const cplx mu(0.5 * n(rng), 0.5 * n(rng));
        if (f.singular_distance(mu) < 0.1) continue;
        const MaximalFamily o = osculating_family(maximal_family_graph(f), mu);
        CHECK(std::abs(o.lam1() - f.lam1()) < 1e-10 * (1.0 + std::abs(f.lam1())));
        CHECK(std::abs(o.lam2() - f.lam2()) < 1e-10 * (1.0 + std::abs(f.lam2())));
    }
}

TEST_CASE("numerical shape operator")
{
    // cone around the vertical axis
    const SampledSurface cone = family_surface(MaximalFamily::from_lambdas(0.0, 0.0, 1.0), {cplx(1.0, 0.3), 0.02, 9});
    for (const ShapeSample& m : shape_operator_numeric(cone)) {
        CHECK(std::abs(m.m1 - 1.0 / std::tanh(1.0)) < 1e-5);
        CHECK(std::abs(m.m2 - std::tanh(1.0)) < 1e-5);
    }

    // module-crossing check at the tube benchmark
    const MaximalFamily tube = MaximalFamily::from_lambdas(0.0, 0.0, 0.5 * std::log(3.0));
    const ParamGrid g{cplx(0.6, -0.4), 0.02, 9};
    const SampledSurface s = family_surface(tube, g);
    const Congruence c = maximal_family_graph(tube).congruence();
    for (const ShapeSample& m : shape_operator_numeric(s)) {
        const int k = g.index(m.i, m.j);
        const OpticalData o = optical_scalars(c, g.at(m.i, m.j), s.r[k]);
        const auto [a, b] = principal_curvatures_from_scalars(o.rho, o.sigma);
        CHECK(std::abs(m.m1 - a) < 1e-5);
        CHECK(std::abs(m.m2 - b) < 1e-5);
        CHECK(std::abs(m.m1 - 2.0) < 1e-5);
        CHECK(std::abs(m.m2 - 0.5) < 1e-5);
    }

    // geodesic sphere of radius R about (0, 1): geodesics mu1 = mu2 through it
    const double R = 0.9;
    const ParamGrid sg{cplx(0.7, 0.5), 0.02, 9};
    const Congruence sphere = Rank2Graph{[](const Jet2& m) { return m; }}.congruence();
    const SampledSurface sp =
        orthogonal_surface(sphere, solve_r_pde(sphere, sg, std::log(std::abs(sg.center)) + R));
    for (const HalfSpacePoint& p : sp.points) CHECK(std::abs(hyp_distance(p, {0.0, 1.0}) - R) < 1e-12);
    for (const ShapeSample& m : shape_operator_numeric(sp)) {
        CHECK(std::abs(m.m1 - 1.0 / std::tanh(R)) < 1e-5);
        CHECK(std::abs(m.m2 - 1.0 / std::tanh(R)) < 1e-5);
    }
    CHECK_THROWS_AS(shape_operator_numeric(family_surface(tube, {cplx(0.6, 0.4), 0.02, 4})), PreconditionError);
}

TEST_CASE("reconstructed family surfaces are flat tubes")
{
    std::mt19937_64 rng(167);
    for (int i = 0; i < 10; ++i) {
        const MaximalFamily f = random_family(rng);
        const ParamGrid g = safe_grid(f, rng, 9, 0.02);
        const SampledSurface s = family_surface(f, g);
        std::vector<double> prod;
        for (const ShapeSample& m : shape_operator_numeric(s)) prod.push_back(m.m1 * m.m2);
        CHECK(max_abs_diff(prod, 1.0) < 1e-4);
        CHECK(max_abs_diff(gauss_curvature_numeric(s), 0.0) < 1e-4);
        const auto axes = axis_geodesics(f);
        CHECK(verify_equidistant(s, axes.first).defect < 1e-6);
        CHECK(verify_equidistant(s, axes.second).defect < 1e-6);
    }
}

TEST_CASE("equidistance")
{
    const SampledSurface cone = family_surface(MaximalFamily::from_lambdas(0.0, 0.0, 1.0), {cplx(1.0, 0.3), 0.4, 9});
    const EquidistantResult e = verify_equidistant(cone, GeodesicArc::vertical(0.0, 1.0, 1));
    CHECK(e.defect < 1e-9);
    CHECK(e.median == doctest::Approx(1.0).epsilon(1e-12));

    const MaximalFamily f = MaximalFamily::from_lambdas(1.0, 4.0, 1.0);
    const SampledSurface s = family_surface(f, {cplx(0.3, 0.1), 0.4, 15});
    CHECK(verify_equidistant(s, axis_geodesics(f).first).defect < 1e-6);

    // conj(mu2) = mu1^2: no osculating axis makes the surface a tube; the
    // defect of any patch shrinks with its size, so the patch is fixed
    const Rank2Graph sq = Rank2Graph::from_mu2bar([](const Jet2& m) { return m * m; });
    const ParamGrid g{cplx(0.5, 0.2), 0.3, 9};
    const SampledSurface ns = orthogonal_surface(sq.congruence(), solve_r_pde(sq.congruence(), g, 0.5));
    double best = 1e300;
    for (int k = 0; k < g.size(); ++k) {
        const MaximalFamily o = osculating_family(sq, g.at(k % 9, k / 9));
        best = std::min(best, verify_equidistant(ns, axis_geodesics(o).first).defect);
    }
    CHECK(best > 1e-2);
}

TEST_CASE("mesh export")
{
    const MaximalFamily f = MaximalFamily::from_lambdas(1.0, 4.0, 1.0);
    const SampledSurface s = family_surface(f, {cplx(0.3, 0.1), 0.4, 20});
    std::stringstream obj;
    write_mesh(s, obj, MeshFormat::obj);
    const ObjMesh m = read_obj(obj);
    CHECK(m.vertices.size() == 400);
    CHECK(m.faces.size() == 361);
    double round = 0.0;
    for (std::size_t k = 0; k < m.vertices.size(); ++k) {
        const BallPoint b = ball_from_halfspace(s.points[k]);
        double norm2 = 0.0;
        for (int c = 0; c < 3; ++c) {
            round = std::max(round, std::abs(m.vertices[k][c] - b.y[c]));
            norm2 += m.vertices[k][c] * m.vertices[k][c];
        }
        CHECK(norm2 < 1.0);
    }
    CHECK(round < 1e-9);
    for (const auto& face : m.faces) {
        CHECK(face.size() == 4);
        for (int v : face) CHECK((v >= 1 && v <= 400));
    }

    const SampledSurface tiny = family_surface(f, {cplx(0.3, 0.1), 0.4, 2});
    std::stringstream t;
    write_mesh(tiny, t, MeshFormat::obj);
    const ObjMesh tm = read_obj(t);
    CHECK(tm.vertices.size() == 4);
    CHECK(tm.faces.size() == 1);

    std::stringstream csv;
    write_mesh(tiny, csv, MeshFormat::csv);
    std::string header;
    std::getline(csv, header);
    CHECK(header == "nu_re,nu_im,r,z_re,z_im,t,x,y,z");
    CHECK_THROWS_AS(export_mesh(s, "/nonexistent-dir/out.obj", MeshFormat::obj), IoError);
}
