#pragma once

// Hyperbolic 3-space in the upper half-space model ds^2 = (dt^2 + |dz|^2) / t^2
// and the Poincare ball, with geodesics in closed form and by ODE integration.

#include <array>
#include <utility>

#include "lhyp/ext_complex.hpp"

namespace lhyp {

struct HalfSpacePoint {
    cplx z{};
    double t = 1.0;

    // Throws ModelDomainError unless t > 0 and both coordinates are finite.
    static HalfSpacePoint make(cplx z, double t);
};

struct BallPoint {
    std::array<double, 3> y{};

    static BallPoint make(const std::array<double, 3>& y);
    double norm() const;
};

// Tangent vector a d/dt + beta d/dz + conj(beta) d/dzbar at base.
struct TangentH3 {
    HalfSpacePoint base;
    double a = 0.0;
    cplx beta{};

    double hyp_norm() const;
};

// Isometry of H^3 induced by a boundary Mobius map, stored with ad - bc = 1.
struct Mobius {
    cplx a{1.0}, b{}, c{}, d{1.0};

    static Mobius normalized(cplx a, cplx b, cplx c, cplx d);
    // Orientation-preserving map sending p -> 0 and q -> inf.
    static Mobius to_axis(const ExtComplex& p, const ExtComplex& q);
    static Mobius translation(cplx w) { return {1.0, w, 0.0, 1.0}; }

    Mobius inverse() const { return {d, -b, -c, a}; }
    ExtComplex operator()(const ExtComplex& w) const { return mobius(a, b, c, d, w); }
    HalfSpacePoint operator()(const HalfSpacePoint& p) const;
};

// Unit-speed geodesic. A semicircle is z = c + R e tanh(r + r0), t = R sech(r + r0)
// with |e| = 1; a vertical line is z = z0, t = t0 exp(sign r).
class GeodesicArc {
public:
    enum class Kind { semicircle, vertical };

    static GeodesicArc semicircle(cplx center, double radius, cplx direction, double r0);
    static GeodesicArc vertical(cplx z0, double t0, int sign);
    // Geodesic from begin to end with r = 0 at the top of the semicircle, or at
    // height 1 for vertical lines.
    static GeodesicArc from_endpoints(const ExtComplex& begin, const ExtComplex& end);

    Kind kind() const { return kind_; }
    bool is_vertical() const { return kind_ == Kind::vertical; }

    HalfSpacePoint point(double r) const;
    TangentH3 velocity(double r) const;

    ExtComplex begin() const;
    ExtComplex end() const;

    cplx center() const { return center_; }
    double radius() const { return radius_; }
    cplx direction() const { return direction_; }
    double offset() const { return r0_; }
    int sign() const { return sign_; }

private:
    Kind kind_ = Kind::semicircle;
    cplx center_{};
    double radius_ = 1.0;
    cplx direction_{1.0};
    double r0_ = 0.0;
    int sign_ = 1;
};

BallPoint ball_from_halfspace(const HalfSpacePoint& p);
HalfSpacePoint halfspace_from_ball(const BallPoint& q);

double hyp_distance(const HalfSpacePoint& p, const HalfSpacePoint& q);
double hyp_inner(const TangentH3& u, const TangentH3& v);

// Closed-form geodesic with gamma(0) = p, gamma'(0) = v. v must be unit to a
// relative tolerance of 1e-9.
GeodesicArc geodesic_from_initial(const HalfSpacePoint& p, const TangentH3& v);

struct GeodesicState {
    HalfSpacePoint p;
    double a = 0.0;  // dt/dr
    cplx beta{};     // dz/dr
};

// Classical RK4 on the geodesic equations, from r = 0 to r with steps of size
// at most step.
GeodesicState integrate_geodesic_state(const HalfSpacePoint& p, const TangentH3& v, double r, double step);
HalfSpacePoint integrate_geodesic_ode(const HalfSpacePoint& p, const TangentH3& v, double r, double step);

// Residual of the three geodesic equations given position, velocity and
// acceleration (max abs component).
double geodesic_ode_residual(const GeodesicState& s, double dda, cplx ddbeta);

// Conserved quantities (dz/dr) / t^2 and the squared hyperbolic speed.
std::pair<cplx, double> geodesic_first_integrals(const GeodesicState& s);

struct FootPoint {
    double distance = 0.0;
    double r_foot = 0.0;
};

// Closed form via the isometry taking g to the vertical axis.
FootPoint distance_point_to_geodesic(const HalfSpacePoint& p, const GeodesicArc& g);

// Brent minimization of r -> d(p, g(r)) over [r_lo, r_hi]; throws
// SearchDomainError when the minimum sits on the bracket boundary.
FootPoint distance_point_to_geodesic_search(const HalfSpacePoint& p, const GeodesicArc& g,
                                            double r_lo, double r_hi);

}  // namespace lhyp
