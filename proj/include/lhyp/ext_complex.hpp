#pragma once

// Points of the Riemann sphere: finite complex numbers plus a single point at
// infinity. Arithmetic follows the usual extended conventions (1/0 = inf,
// 1/inf = 0); the indeterminate forms inf - inf, 0 * inf, inf / inf and 0 / 0
// throw instead of producing NaN.

#include <complex>
#include <iosfwd>

#include "lhyp/jet.hpp"

namespace lhyp {

class ExtComplex {
public:
    constexpr ExtComplex() = default;
    constexpr ExtComplex(cplx z) : value_(z) {}  // NOLINT: finite values promote
    constexpr ExtComplex(double x) : value_(x) {}  // NOLINT

    static constexpr ExtComplex infinity()
    {
        ExtComplex e;
        e.infinite_ = true;
        return e;
    }

    constexpr bool is_infinite() const { return infinite_; }
    constexpr bool is_finite() const { return !infinite_; }
    bool is_zero() const { return !infinite_ && value_ == cplx(0.0); }

    // Finite value; throws ChartError at infinity.
    cplx value() const;

    // Exact equality: infinity equals only itself, finite values compare exactly.
    friend bool operator==(const ExtComplex& a, const ExtComplex& b)
    {
        if (a.infinite_ || b.infinite_) return a.infinite_ && b.infinite_;
        return a.value_ == b.value_;
    }

private:
    cplx value_{};
    bool infinite_ = false;
};

ExtComplex operator+(const ExtComplex& a, const ExtComplex& b);
ExtComplex operator-(const ExtComplex& a, const ExtComplex& b);
ExtComplex operator-(const ExtComplex& a);
ExtComplex operator*(const ExtComplex& a, const ExtComplex& b);
ExtComplex operator/(const ExtComplex& a, const ExtComplex& b);

ExtComplex conj(const ExtComplex& a);
ExtComplex reciprocal(const ExtComplex& a);

// Antipodal map of the boundary sphere, x -> -1 / conj(x).
ExtComplex antipode(const ExtComplex& a);

// Total Mobius evaluation (a z + b) / (c z + d), ad - bc != 0.
ExtComplex mobius(cplx a, cplx b, cplx c, cplx d, const ExtComplex& z);

// Chordal distance on the unit sphere; 0 and inf are at distance 2.
double chordal_distance(const ExtComplex& a, const ExtComplex& b);

// Tolerance-based comparison: exact at infinity, chordal elsewhere.
bool approx_equal(const ExtComplex& a, const ExtComplex& b, double tol = 1e-9);

std::ostream& operator<<(std::ostream& os, const ExtComplex& a);

}  // namespace lhyp
