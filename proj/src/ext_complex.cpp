#include "lhyp/ext_complex.hpp"

#include <cmath>
#include <ostream>

#include "lhyp/errors.hpp"

namespace lhyp {

cplx ExtComplex::value() const
{
    if (infinite_) throw ChartError("extended complex value is infinite");
    return value_;
}

ExtComplex operator+(const ExtComplex& a, const ExtComplex& b)
{
    if (a.is_infinite() && b.is_infinite()) throw ChartError("inf + inf is indeterminate");
    if (a.is_infinite() || b.is_infinite()) return ExtComplex::infinity();
    return a.value() + b.value();
}

ExtComplex operator-(const ExtComplex& a)
{
    if (a.is_infinite()) return a;
    return -a.value();
}

ExtComplex operator-(const ExtComplex& a, const ExtComplex& b) { return a + (-b); }

ExtComplex operator*(const ExtComplex& a, const ExtComplex& b)
{
    if (a.is_infinite() || b.is_infinite()) {
        if (a.is_zero() || b.is_zero()) throw ChartError("0 * inf is indeterminate");
        return ExtComplex::infinity();
    }
    return a.value() * b.value();
}

ExtComplex reciprocal(const ExtComplex& a)
{
    if (a.is_infinite()) return 0.0;
    if (a.is_zero()) return ExtComplex::infinity();
    return 1.0 / a.value();
}

ExtComplex operator/(const ExtComplex& a, const ExtComplex& b)
{
    if (a.is_infinite() && b.is_infinite()) throw ChartError("inf / inf is indeterminate");
    if (a.is_zero() && b.is_zero()) throw ChartError("0 / 0 is indeterminate");
    return a * reciprocal(b);
}

ExtComplex conj(const ExtComplex& a)
{
    if (a.is_infinite()) return a;
    return std::conj(a.value());
}

ExtComplex antipode(const ExtComplex& a) { return -reciprocal(conj(a)); }

ExtComplex mobius(cplx a, cplx b, cplx c, cplx d, const ExtComplex& z)
{
    if (a * d - b * c == cplx(0.0)) throw ChartError("singular Mobius transformation");
    if (z.is_infinite()) {
        if (c == cplx(0.0)) return ExtComplex::infinity();
        return a / c;
    }
    const cplx w = z.value();
    const cplx den = c * w + d;
    if (den == cplx(0.0)) return ExtComplex::infinity();
    return (a * w + b) / den;
}

double chordal_distance(const ExtComplex& a, const ExtComplex& b)
{
    if (a.is_infinite() && b.is_infinite()) return 0.0;
    if (a.is_infinite()) return 2.0 / std::sqrt(1.0 + std::norm(b.value()));
    if (b.is_infinite()) return 2.0 / std::sqrt(1.0 + std::norm(a.value()));
    const cplx x = a.value();
    const cplx y = b.value();
    return 2.0 * std::abs(x - y) / std::sqrt((1.0 + std::norm(x)) * (1.0 + std::norm(y)));
}

bool approx_equal(const ExtComplex& a, const ExtComplex& b, double tol)
{
    if (a.is_infinite() || b.is_infinite()) return a.is_infinite() && b.is_infinite();
    return chordal_distance(a, b) <= tol;
}

std::ostream& operator<<(std::ostream& os, const ExtComplex& a)
{
    if (a.is_infinite()) return os << "inf";
    return os << a.value();
}

}  // namespace lhyp
