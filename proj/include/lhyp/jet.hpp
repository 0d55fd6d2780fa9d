#pragma once

// Truncated Wirtinger jets.
//
// A jet carries a complex-valued function of one complex parameter nu together
// with its Wirtinger derivatives d = d/dnu and db = d/dnubar. Jet1 stops at
// first order, Jet2 keeps the three independent second derivatives
// (dd, ddb, dbdb). Conjugation is a first-class operation, so functions that
// are not holomorphic (conj(nu), |nu|^2, Re, Im) differentiate exactly.

#include <complex>

namespace lhyp {

using cplx = std::complex<double>;

inline constexpr cplx kI{0.0, 1.0};

struct Jet1 {
    cplx v{}, d{}, db{};

    Jet1() = default;
    Jet1(cplx value) : v(value) {}  // NOLINT: constants promote implicitly
    Jet1(double value) : v(value) {}  // NOLINT
    Jet1(cplx value, cplx dnu, cplx dnubar) : v(value), d(dnu), db(dnubar) {}

    static Jet1 variable(cplx nu) { return {nu, 1.0, 0.0}; }
};

struct Jet2 {
    cplx v{}, d{}, db{}, dd{}, ddb{}, dbdb{};

    Jet2() = default;
    Jet2(cplx value) : v(value) {}  // NOLINT
    Jet2(double value) : v(value) {}  // NOLINT
    Jet2(cplx value, cplx dnu, cplx dnubar, cplx dnudnu, cplx dnudnubar, cplx dnubardnubar)
        : v(value), d(dnu), db(dnubar), dd(dnudnu), ddb(dnudnubar), dbdb(dnubardnubar) {}

    static Jet2 variable(cplx nu) { return {nu, 1.0, 0.0, 0.0, 0.0, 0.0}; }

    // First-order jet of the function itself.
    Jet1 first() const { return {v, d, db}; }
    // First-order jets of the two first derivatives.
    Jet1 d_jet() const { return {d, dd, ddb}; }
    Jet1 db_jet() const { return {db, ddb, dbdb}; }

    // Real-parameter derivatives for nu = x + i y.
    cplx dx() const { return d + db; }
    cplx dy() const { return kI * (d - db); }
    cplx dxx() const { return dd + 2.0 * ddb + dbdb; }
    cplx dxy() const { return kI * (dd - dbdb); }
    cplx dyy() const { return -(dd - 2.0 * ddb + dbdb); }
};

// ---------------------------------------------------------------------------
// Jet1 arithmetic

inline Jet1 operator+(const Jet1& a, const Jet1& b) { return {a.v + b.v, a.d + b.d, a.db + b.db}; }
inline Jet1 operator-(const Jet1& a, const Jet1& b) { return {a.v - b.v, a.d - b.d, a.db - b.db}; }
inline Jet1 operator-(const Jet1& a) { return {-a.v, -a.d, -a.db}; }
inline Jet1 operator*(const Jet1& a, const Jet1& b)
{
    return {a.v * b.v, a.d * b.v + a.v * b.d, a.db * b.v + a.v * b.db};
}
inline Jet1 operator/(const Jet1& a, const Jet1& b)
{
    const cplx inv = 1.0 / b.v;
    const cplx q = a.v * inv;
    return {q, (a.d - q * b.d) * inv, (a.db - q * b.db) * inv};
}
inline Jet1 operator+(const Jet1& a, cplx s) { return {a.v + s, a.d, a.db}; }
inline Jet1 operator+(cplx s, const Jet1& a) { return a + s; }
inline Jet1 operator-(const Jet1& a, cplx s) { return {a.v - s, a.d, a.db}; }
inline Jet1 operator-(cplx s, const Jet1& a) { return {s - a.v, -a.d, -a.db}; }
inline Jet1 operator*(const Jet1& a, cplx s) { return {a.v * s, a.d * s, a.db * s}; }
inline Jet1 operator*(cplx s, const Jet1& a) { return a * s; }
inline Jet1 operator/(const Jet1& a, cplx s) { return {a.v / s, a.d / s, a.db / s}; }
inline Jet1 operator/(cplx s, const Jet1& a) { return Jet1(s) / a; }
inline Jet1 operator*(const Jet1& a, double s) { return a * cplx(s); }
inline Jet1 operator*(double s, const Jet1& a) { return a * cplx(s); }
inline Jet1 operator/(const Jet1& a, double s) { return a / cplx(s); }
inline Jet1 operator/(double s, const Jet1& a) { return cplx(s) / a; }
inline Jet1 operator+(const Jet1& a, double s) { return a + cplx(s); }
inline Jet1 operator+(double s, const Jet1& a) { return a + cplx(s); }
inline Jet1 operator-(const Jet1& a, double s) { return a - cplx(s); }
inline Jet1 operator-(double s, const Jet1& a) { return cplx(s) - a; }

inline Jet1 conj(const Jet1& a) { return {std::conj(a.v), std::conj(a.db), std::conj(a.d)}; }
inline Jet1 re(const Jet1& a) { return (a + conj(a)) * 0.5; }
inline Jet1 im(const Jet1& a) { return (a - conj(a)) * cplx(0.0, -0.5); }
inline Jet1 abs2(const Jet1& a) { return a * conj(a); }

// Apply a holomorphic function with value f and derivative fp at a.v.
inline Jet1 chain(const Jet1& a, cplx f, cplx fp) { return {f, fp * a.d, fp * a.db}; }

inline Jet1 exp(const Jet1& a)
{
    const cplx e = std::exp(a.v);
    return chain(a, e, e);
}
inline Jet1 log(const Jet1& a) { return chain(a, std::log(a.v), 1.0 / a.v); }
inline Jet1 sqrt(const Jet1& a)
{
    const cplx s = std::sqrt(a.v);
    return chain(a, s, 0.5 / s);
}

// ---------------------------------------------------------------------------
// Jet2 arithmetic

inline Jet2 operator+(const Jet2& a, const Jet2& b)
{
    return {a.v + b.v, a.d + b.d, a.db + b.db, a.dd + b.dd, a.ddb + b.ddb, a.dbdb + b.dbdb};
}
inline Jet2 operator-(const Jet2& a, const Jet2& b)
{
    return {a.v - b.v, a.d - b.d, a.db - b.db, a.dd - b.dd, a.ddb - b.ddb, a.dbdb - b.dbdb};
}
inline Jet2 operator-(const Jet2& a) { return {-a.v, -a.d, -a.db, -a.dd, -a.ddb, -a.dbdb}; }
inline Jet2 operator*(const Jet2& a, const Jet2& b)
{
    return {a.v * b.v,
            a.d * b.v + a.v * b.d,
            a.db * b.v + a.v * b.db,
            a.dd * b.v + 2.0 * a.d * b.d + a.v * b.dd,
            a.ddb * b.v + a.d * b.db + a.db * b.d + a.v * b.ddb,
            a.dbdb * b.v + 2.0 * a.db * b.db + a.v * b.dbdb};
}

// Apply a holomorphic function given its value and first two derivatives at a.v.
inline Jet2 chain(const Jet2& a, cplx f, cplx fp, cplx fpp)
{
    return {f,
            fp * a.d,
            fp * a.db,
            fpp * a.d * a.d + fp * a.dd,
            fpp * a.d * a.db + fp * a.ddb,
            fpp * a.db * a.db + fp * a.dbdb};
}

inline Jet2 reciprocal(const Jet2& a)
{
    const cplx inv = 1.0 / a.v;
    return chain(a, inv, -inv * inv, 2.0 * inv * inv * inv);
}
inline Jet2 operator/(const Jet2& a, const Jet2& b) { return a * reciprocal(b); }

inline Jet2 scale(const Jet2& a, cplx s) { return {a.v * s, a.d * s, a.db * s, a.dd * s, a.ddb * s, a.dbdb * s}; }
inline Jet2 operator*(const Jet2& a, cplx s) { return scale(a, s); }
inline Jet2 operator*(cplx s, const Jet2& a) { return scale(a, s); }
inline Jet2 operator*(const Jet2& a, double s) { return scale(a, s); }
inline Jet2 operator*(double s, const Jet2& a) { return scale(a, s); }
inline Jet2 operator/(const Jet2& a, cplx s) { return scale(a, 1.0 / s); }
inline Jet2 operator/(const Jet2& a, double s) { return scale(a, 1.0 / s); }
inline Jet2 operator/(cplx s, const Jet2& a) { return scale(reciprocal(a), s); }
inline Jet2 operator/(double s, const Jet2& a) { return scale(reciprocal(a), s); }
inline Jet2 operator+(const Jet2& a, cplx s)
{
    Jet2 r = a;
    r.v += s;
    return r;
}
inline Jet2 operator+(cplx s, const Jet2& a) { return a + s; }
inline Jet2 operator-(const Jet2& a, cplx s) { return a + (-s); }
inline Jet2 operator-(cplx s, const Jet2& a) { return (-a) + s; }
inline Jet2 operator+(const Jet2& a, double s) { return a + cplx(s); }
inline Jet2 operator+(double s, const Jet2& a) { return a + cplx(s); }
inline Jet2 operator-(const Jet2& a, double s) { return a - cplx(s); }
inline Jet2 operator-(double s, const Jet2& a) { return cplx(s) - a; }

inline Jet2 conj(const Jet2& a)
{
    return {std::conj(a.v), std::conj(a.db), std::conj(a.d),
            std::conj(a.dbdb), std::conj(a.ddb), std::conj(a.dd)};
}
inline Jet2 re(const Jet2& a) { return (a + conj(a)) * 0.5; }
inline Jet2 im(const Jet2& a) { return (a - conj(a)) * cplx(0.0, -0.5); }
inline Jet2 abs2(const Jet2& a) { return a * conj(a); }

inline Jet2 exp(const Jet2& a)
{
    const cplx e = std::exp(a.v);
    return chain(a, e, e, e);
}
inline Jet2 log(const Jet2& a)
{
    const cplx inv = 1.0 / a.v;
    return chain(a, std::log(a.v), inv, -inv * inv);
}
inline Jet2 sqrt(const Jet2& a)
{
    const cplx s = std::sqrt(a.v);
    return chain(a, s, 0.5 / s, -0.25 / (s * a.v));
}
inline Jet2 sinh(const Jet2& a) { return chain(a, std::sinh(a.v), std::cosh(a.v), std::sinh(a.v)); }
inline Jet2 cosh(const Jet2& a) { return chain(a, std::cosh(a.v), std::sinh(a.v), std::cosh(a.v)); }
inline Jet2 tanh(const Jet2& a)
{
    const cplx t = std::tanh(a.v);
    const cplx s2 = 1.0 - t * t;
    return chain(a, t, s2, -2.0 * t * s2);
}
inline Jet2 sin(const Jet2& a) { return chain(a, std::sin(a.v), std::cos(a.v), -std::sin(a.v)); }
inline Jet2 cos(const Jet2& a) { return chain(a, std::cos(a.v), -std::sin(a.v), -std::cos(a.v)); }

// Integer power by repeated multiplication; negative exponents invert.
inline Jet2 pow(const Jet2& a, int n)
{
    if (n < 0) return reciprocal(pow(a, -n));
    Jet2 result(1.0);
    Jet2 base = a;
    while (n > 0) {
        if (n & 1) result = result * base;
        base = base * base;
        n >>= 1;
    }
    return result;
}

}  // namespace lhyp
