#include "lhyp/charts.hpp"

#include <cmath>

#include "lhyp/errors.hpp"

namespace lhyp {

bool on_reflected_diagonal(const ExtComplex& mu1, const ExtComplex& mu2)
{
    if (mu1.is_infinite()) return mu2.is_zero();
    if (mu2.is_infinite()) return mu1.is_zero();
    const cplx m1 = mu1.value();
    const cplx m2 = mu2.value();
    return std::abs(1.0 + m1 * std::conj(m2)) <= 1e-14 * (1.0 + std::abs(m1) * std::abs(m2));
}

OrientedGeodesic OrientedGeodesic::make(const ExtComplex& mu1, const ExtComplex& mu2)
{
    if (on_reflected_diagonal(mu1, mu2))
        throw InvalidGeodesicError("(mu1, mu2) lies on the reflected diagonal");
    return {mu1, mu2};
}

bool OrientedGeodesic::in_chart() const
{
    return mu1.is_finite() && mu2.is_finite() && !mu2.is_zero();
}

namespace {

void require_chart(const OrientedGeodesic& g)
{
    if (!g.in_chart()) throw ChartError("Phi is singular for mu2 in {0, inf} or mu1 = inf");
    if (on_reflected_diagonal(g.mu1, g.mu2)) throw InvalidGeodesicError("reflected diagonal");
}

}  // namespace

HalfSpacePoint point_at(const OrientedGeodesic& g, double r)
{
    require_chart(g);
    const cplx m1 = g.mu1.value();
    const cplx m2b = std::conj(g.mu2.value());
    const cplx p = m1 * m2b;
    const cplx z = (1.0 - p) / (2.0 * m2b) + (1.0 + p) / (2.0 * m2b) * std::tanh(r);
    const double t = std::abs(1.0 + p) / (2.0 * std::abs(m2b) * std::cosh(r));
    return {z, t};
}

TangentH3 tangent_at(const OrientedGeodesic& g, double r)
{
    const HalfSpacePoint q = point_at(g, r);
    const cplx m1 = g.mu1.value();
    const cplx m2b = std::conj(g.mu2.value());
    const double sech = 1.0 / std::cosh(r);
    return {q, -q.t * std::tanh(r), (1.0 + m1 * m2b) / (2.0 * m2b) * sech * sech};
}

GeodesicArc arc_of(const OrientedGeodesic& g)
{
    if (!g.in_chart()) {
        const BoundaryEndpoints e = endpoints(g);
        return GeodesicArc::from_endpoints(e.begin, e.end);
    }
    require_chart(g);
    const cplx m1 = g.mu1.value();
    const cplx m2b = std::conj(g.mu2.value());
    const cplx w = (1.0 + m1 * m2b) / (2.0 * m2b);
    return GeodesicArc::semicircle((1.0 - m1 * m2b) / (2.0 * m2b), std::abs(w), w, 0.0);
}

double parameter_at(const OrientedGeodesic& g, const HalfSpacePoint& p)
{
    return distance_point_to_geodesic(p, arc_of(g)).r_foot;
}

BoundaryEndpoints endpoints(const OrientedGeodesic& g)
{
    if (on_reflected_diagonal(g.mu1, g.mu2)) throw InvalidGeodesicError("reflected diagonal");
    return {-g.mu1, reciprocal(conj(g.mu2))};
}

OrientedGeodesic from_endpoints(const ExtComplex& begin, const ExtComplex& end)
{
    if (begin == end) throw InvalidGeodesicError("coincident endpoints");
    return OrientedGeodesic::make(-begin, reciprocal(conj(end)));
}

OrientedGeodesic reverse_orientation(const OrientedGeodesic& g)
{
    return OrientedGeodesic::make(antipode(g.mu2), antipode(g.mu1));
}

OrientedGeodesic geodesic_from_point_direction(const HalfSpacePoint& p, const TangentH3& v)
{
    const GeodesicArc arc = geodesic_from_initial(p, v);
    return from_endpoints(arc.begin(), arc.end());
}

XiEtaChart xi_eta_from_initial(const HalfSpacePoint& p, const TangentH3& v)
{
    if (v.beta == cplx(0.0)) throw ChartError("vertical geodesics lie outside the (xi, eta) chart");
    const double t0 = p.t;
    return {v.beta / (t0 * t0), p.z + t0 * v.a / std::conj(v.beta)};
}

OrientedGeodesic from_xi_eta(const XiEtaChart& c)
{
    if (c.xi == cplx(0.0)) throw ChartError("xi must be nonzero");
    const cplx half = 1.0 / std::conj(c.xi);
    return from_endpoints(c.eta - half, c.eta + half);
}

XiEtaChart xi_eta_of(const OrientedGeodesic& g)
{
    const BoundaryEndpoints e = endpoints(g);
    if (e.begin.is_infinite() || e.end.is_infinite())
        throw ChartError("vertical geodesics lie outside the (xi, eta) chart");
    const cplx b = e.begin.value();
    const cplx f = e.end.value();
    return {std::conj(2.0 / (f - b)), 0.5 * (b + f)};
}

OrientedGeodesic apply_isometry(const Mobius& m, const OrientedGeodesic& g)
{
    const BoundaryEndpoints e = endpoints(g);
    return from_endpoints(m(e.begin), m(e.end));
}

ChartShift shift_into_chart(const OrientedGeodesic& g)
{
    if (g.in_chart()) return {g, Mobius{}};
    const Mobius candidates[] = {
        Mobius::translation(1.0),
        Mobius::translation(-1.0),
        Mobius::normalized(1.0, 0.0, 1.0, 1.0),
        Mobius::normalized(1.0, 0.0, -1.0, 1.0),
        Mobius::normalized(0.0, -1.0, 1.0, 0.0),
    };
    for (const Mobius& m : candidates) {
        const OrientedGeodesic s = apply_isometry(m, g);
        if (s.in_chart()) return {s, m};
    }
    throw ChartError("no chart shift found");
}

}  // namespace lhyp
