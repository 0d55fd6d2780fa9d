#include "lhyp/hyp3.hpp"

#include <boost/math/tools/minima.hpp>
#include <cmath>
#include <limits>

#include "lhyp/errors.hpp"

namespace lhyp {

HalfSpacePoint HalfSpacePoint::make(cplx z, double t)
{
    if (!(t > 0.0) || !std::isfinite(t) || !std::isfinite(z.real()) || !std::isfinite(z.imag()))
        throw ModelDomainError("half-space point needs finite z and t > 0");
    return {z, t};
}

BallPoint BallPoint::make(const std::array<double, 3>& y)
{
    BallPoint q{y};
    if (!(q.norm() < 1.0)) throw ModelDomainError("ball point needs |y| < 1");
    return q;
}

double BallPoint::norm() const { return std::sqrt(y[0] * y[0] + y[1] * y[1] + y[2] * y[2]); }

double TangentH3::hyp_norm() const { return std::sqrt(a * a + std::norm(beta)) / base.t; }

Mobius Mobius::normalized(cplx a, cplx b, cplx c, cplx d)
{
    const cplx det = a * d - b * c;
    if (det == cplx(0.0)) throw ChartError("singular Mobius transformation");
    const cplx s = 1.0 / std::sqrt(det);
    return {a * s, b * s, c * s, d * s};
}

Mobius Mobius::to_axis(const ExtComplex& p, const ExtComplex& q)
{
    if (p == q) throw InvalidGeodesicError("coincident endpoints");
    if (p.is_infinite()) return normalized(0.0, 1.0, -1.0, q.value());
    if (q.is_infinite()) return normalized(1.0, -p.value(), 0.0, 1.0);
    return normalized(1.0, -p.value(), 1.0, -q.value());
}

HalfSpacePoint Mobius::operator()(const HalfSpacePoint& p) const
{
    const cplx num = a * p.z + b;
    const cplx den = c * p.z + d;
    const double t2 = p.t * p.t;
    const double scale = std::norm(den) + std::norm(c) * t2;
    return {(num * std::conj(den) + a * std::conj(c) * t2) / scale, p.t / scale};
}

GeodesicArc GeodesicArc::semicircle(cplx center, double radius, cplx direction, double r0)
{
    if (!(radius > 0.0)) throw InvalidGeodesicError("semicircle radius must be positive");
    GeodesicArc g;
    g.kind_ = Kind::semicircle;
    g.center_ = center;
    g.radius_ = radius;
    g.direction_ = direction / std::abs(direction);
    g.r0_ = r0;
    return g;
}

GeodesicArc GeodesicArc::vertical(cplx z0, double t0, int sign)
{
    if (!(t0 > 0.0)) throw ModelDomainError("vertical geodesic needs t0 > 0");
    GeodesicArc g;
    g.kind_ = Kind::vertical;
    g.center_ = z0;
    g.radius_ = t0;
    g.sign_ = sign >= 0 ? 1 : -1;
    return g;
}

GeodesicArc GeodesicArc::from_endpoints(const ExtComplex& begin, const ExtComplex& end)
{
    if (begin == end) throw InvalidGeodesicError("geodesic endpoints coincide");
    if (end.is_infinite()) return vertical(begin.value(), 1.0, 1);
    if (begin.is_infinite()) return vertical(end.value(), 1.0, -1);
    const cplx b = begin.value();
    const cplx e = end.value();
    return semicircle(0.5 * (b + e), 0.5 * std::abs(e - b), e - b, 0.0);
}

HalfSpacePoint GeodesicArc::point(double r) const
{
    if (kind_ == Kind::vertical) return {center_, radius_ * std::exp(sign_ * r)};
    const double s = r + r0_;
    return {center_ + radius_ * direction_ * std::tanh(s), radius_ / std::cosh(s)};
}

TangentH3 GeodesicArc::velocity(double r) const
{
    const HalfSpacePoint p = point(r);
    if (kind_ == Kind::vertical) return {p, sign_ * p.t, 0.0};
    const double s = r + r0_;
    const double sech = 1.0 / std::cosh(s);
    return {p, -p.t * std::tanh(s), radius_ * direction_ * sech * sech};
}

ExtComplex GeodesicArc::begin() const
{
    if (kind_ == Kind::vertical) return sign_ > 0 ? ExtComplex(center_) : ExtComplex::infinity();
    return center_ - radius_ * direction_;
}

ExtComplex GeodesicArc::end() const
{
    if (kind_ == Kind::vertical) return sign_ > 0 ? ExtComplex::infinity() : ExtComplex(center_);
    return center_ + radius_ * direction_;
}

BallPoint ball_from_halfspace(const HalfSpacePoint& p)
{
    const double x0 = p.t;
    const double x1 = p.z.real();
    const double x2 = p.z.imag();
    const double den = (x0 + 1.0) * (x0 + 1.0) + x1 * x1 + x2 * x2;
    return {{2.0 * x1 / den, 2.0 * x2 / den, (x0 * x0 + x1 * x1 + x2 * x2 - 1.0) / den}};
}

HalfSpacePoint halfspace_from_ball(const BallPoint& q)
{
    const double n2 = q.y[0] * q.y[0] + q.y[1] * q.y[1] + q.y[2] * q.y[2];
    if (!(n2 < 1.0)) throw ModelDomainError("ball point needs |y| < 1");
    const double e = q.y[0] * q.y[0] + q.y[1] * q.y[1] + (1.0 - q.y[2]) * (1.0 - q.y[2]);
    return {cplx(2.0 * q.y[0] / e, 2.0 * q.y[1] / e), (1.0 - n2) / e};
}

double hyp_distance(const HalfSpacePoint& p, const HalfSpacePoint& q)
{
    // 2 asinh form stays accurate when p and q are close
    const double dt = p.t - q.t;
    const double chord2 = std::norm(p.z - q.z) + dt * dt;
    return 2.0 * std::asinh(std::sqrt(chord2) / (2.0 * std::sqrt(p.t * q.t)));
}

double hyp_inner(const TangentH3& u, const TangentH3& v)
{
    return (u.a * v.a + (u.beta * std::conj(v.beta)).real()) / (u.base.t * u.base.t);
}

GeodesicArc geodesic_from_initial(const HalfSpacePoint& p, const TangentH3& v)
{
    const double t0 = p.t;
    const double speed2 = v.a * v.a + std::norm(v.beta);
    if (std::abs(speed2 - t0 * t0) > 1e-9 * t0 * t0)
        throw NormalizationError("initial direction is not a unit vector");
    if (v.beta == cplx(0.0)) return GeodesicArc::vertical(p.z, t0, v.a > 0.0 ? 1 : -1);
    const double nb = std::abs(v.beta);
    const cplx eta = p.z + t0 * v.a / std::conj(v.beta);
    return GeodesicArc::semicircle(eta, t0 * t0 / nb, v.beta / nb, std::atanh(-v.a / t0));
}

namespace {

struct OdeState {
    double t, x1, x2, a, b1, b2;
};

OdeState rhs(const OdeState& s)
{
    const double inv = 1.0 / s.t;
    return {s.a,
            s.b1,
            s.b2,
            (s.a * s.a - s.b1 * s.b1 - s.b2 * s.b2) * inv,
            2.0 * s.a * s.b1 * inv,
            2.0 * s.a * s.b2 * inv};
}

OdeState axpy(const OdeState& s, double h, const OdeState& k)
{
    return {s.t + h * k.t, s.x1 + h * k.x1, s.x2 + h * k.x2, s.a + h * k.a, s.b1 + h * k.b1, s.b2 + h * k.b2};
}

}  // namespace

GeodesicState integrate_geodesic_state(const HalfSpacePoint& p, const TangentH3& v, double r, double step)
{
    if (!(step > 0.0)) throw PreconditionError("integration step must be positive");
    OdeState s{p.t, p.z.real(), p.z.imag(), v.a, v.beta.real(), v.beta.imag()};
    const long n = static_cast<long>(std::ceil(std::abs(r) / step));
    const double h = n > 0 ? r / static_cast<double>(n) : 0.0;
    for (long i = 0; i < n; ++i) {
        const OdeState k1 = rhs(s);
        const OdeState k2 = rhs(axpy(s, 0.5 * h, k1));
        const OdeState k3 = rhs(axpy(s, 0.5 * h, k2));
        const OdeState k4 = rhs(axpy(s, h, k3));
        s.t += h / 6.0 * (k1.t + 2.0 * k2.t + 2.0 * k3.t + k4.t);
        s.x1 += h / 6.0 * (k1.x1 + 2.0 * k2.x1 + 2.0 * k3.x1 + k4.x1);
        s.x2 += h / 6.0 * (k1.x2 + 2.0 * k2.x2 + 2.0 * k3.x2 + k4.x2);
        s.a += h / 6.0 * (k1.a + 2.0 * k2.a + 2.0 * k3.a + k4.a);
        s.b1 += h / 6.0 * (k1.b1 + 2.0 * k2.b1 + 2.0 * k3.b1 + k4.b1);
        s.b2 += h / 6.0 * (k1.b2 + 2.0 * k2.b2 + 2.0 * k3.b2 + k4.b2);
        if (!(s.t > 0.0) || !std::isfinite(s.t) || !std::isfinite(s.x1) || !std::isfinite(s.x2))
            throw NumericalBlowupError("geodesic integration left the half-space");
    }
    return {{cplx(s.x1, s.x2), s.t}, s.a, cplx(s.b1, s.b2)};
}

HalfSpacePoint integrate_geodesic_ode(const HalfSpacePoint& p, const TangentH3& v, double r, double step)
{
    return integrate_geodesic_state(p, v, r, step).p;
}

double geodesic_ode_residual(const GeodesicState& s, double dda, cplx ddbeta)
{
    const double e0 = dda + (-s.a * s.a + std::norm(s.beta)) / s.p.t;
    const cplx e12 = ddbeta - 2.0 * s.a * s.beta / s.p.t;
    return std::max(std::abs(e0), std::abs(e12));
}

std::pair<cplx, double> geodesic_first_integrals(const GeodesicState& s)
{
    const double t2 = s.p.t * s.p.t;
    return {s.beta / t2, (s.a * s.a + std::norm(s.beta)) / t2};
}

FootPoint distance_point_to_geodesic(const HalfSpacePoint& p, const GeodesicArc& g)
{
    const Mobius m = Mobius::to_axis(g.begin(), g.end());
    const HalfSpacePoint q = m(p);
    const HalfSpacePoint o = m(g.point(0.0));
    const double rho = std::abs(q.z);
    return {std::asinh(rho / q.t), 0.5 * std::log((rho * rho + q.t * q.t) / (o.t * o.t))};
}

FootPoint distance_point_to_geodesic_search(const HalfSpacePoint& p, const GeodesicArc& g,
                                            double r_lo, double r_hi)
{
    if (!(r_hi > r_lo)) throw PreconditionError("empty search bracket");
    auto f = [&](double r) { return hyp_distance(p, g.point(r)); };
    const int bits = std::numeric_limits<double>::digits / 2;
    const auto [r, d] = boost::math::tools::brent_find_minima(f, r_lo, r_hi, bits);
    const double margin = 1e-6 * (r_hi - r_lo);
    if (r - r_lo < margin || r_hi - r < margin)
        throw SearchDomainError("distance minimum not bracketed");
    return {d, r};
}

}  // namespace lhyp
