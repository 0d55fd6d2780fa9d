#pragma once

// Oriented geodesics of H^3 as points (mu1, mu2) of P^1 x P^1 off the reflected
// diagonal mu1 conj(mu2) = -1, and the map Phi(mu1, mu2, r) into the half-space.

#include "lhyp/hyp3.hpp"

namespace lhyp {

struct BoundaryEndpoints {
    ExtComplex begin;
    ExtComplex end;
};

struct OrientedGeodesic {
    ExtComplex mu1;
    ExtComplex mu2;

    // Throws InvalidGeodesicError on the reflected diagonal.
    static OrientedGeodesic make(const ExtComplex& mu1, const ExtComplex& mu2);

    // True when Phi is defined: mu1 finite, mu2 finite and nonzero.
    bool in_chart() const;
};

bool on_reflected_diagonal(const ExtComplex& mu1, const ExtComplex& mu2);

struct XiEtaChart {
    cplx xi{1.0};
    cplx eta{};
};

HalfSpacePoint point_at(const OrientedGeodesic& g, double r);
// Unit tangent d/dr of point_at.
TangentH3 tangent_at(const OrientedGeodesic& g, double r);
// Arclength parameter at which g passes closest to p (exact when p lies on g).
double parameter_at(const OrientedGeodesic& g, const HalfSpacePoint& p);
// The curve r -> point_at(g, r); outside the chart the parametrization
// falls back to GeodesicArc::from_endpoints.
GeodesicArc arc_of(const OrientedGeodesic& g);

BoundaryEndpoints endpoints(const OrientedGeodesic& g);
OrientedGeodesic from_endpoints(const ExtComplex& begin, const ExtComplex& end);
OrientedGeodesic reverse_orientation(const OrientedGeodesic& g);

OrientedGeodesic geodesic_from_point_direction(const HalfSpacePoint& p, const TangentH3& v);

XiEtaChart xi_eta_from_initial(const HalfSpacePoint& p, const TangentH3& v);
OrientedGeodesic from_xi_eta(const XiEtaChart& c);
XiEtaChart xi_eta_of(const OrientedGeodesic& g);

// Moves a chart-singular geodesic into the chart by a boundary isometry.
// Points computed for shifted can be mapped back with isometry.inverse().
struct ChartShift {
    OrientedGeodesic shifted;
    Mobius isometry;
};
ChartShift shift_into_chart(const OrientedGeodesic& g);

OrientedGeodesic apply_isometry(const Mobius& m, const OrientedGeodesic& g);

}  // namespace lhyp
