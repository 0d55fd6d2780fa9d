#include "lhyp/kaehler.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "lhyp/errors.hpp"

namespace lhyp {

namespace {

cplx inv_p2(cplx mu1, cplx mu2)
{
    const cplx p = 1.0 + mu1 * std::conj(mu2);
    if (std::abs(p) <= 1e-14 * (1.0 + std::abs(mu1) * std::abs(mu2)))
        throw InvalidGeodesicError("base point on the reflected diagonal");
    return 1.0 / (p * p);
}

void require_finite(const OrientedGeodesic& g)
{
    if (g.mu1.is_infinite() || g.mu2.is_infinite())
        throw ChartError("Kaehler forms are evaluated in the finite (mu1, mu2) chart");
}

void require_same_base(const TangentL& u, const TangentL& v)
{
    if (!(u.base.mu1 == v.base.mu1) || !(u.base.mu2 == v.base.mu2))
        throw PreconditionError("tangent vectors have different base points");
    require_finite(u.base);
}

const std::array<std::pair<cplx, cplx>, 4> kBasis = {{
    {1.0, 0.0},
    {kI, 0.0},
    {0.0, 1.0},
    {0.0, kI},
}};

}  // namespace

TangentL complex_structure(const TangentL& u) { return {u.base, kI * u.dmu1, kI * u.dmu2}; }

double symplectic_form(cplx mu1, cplx mu2, cplx u1, cplx u2, cplx v1, cplx v2)
{
    return -((u1 * std::conj(v2) - v1 * std::conj(u2)) * inv_p2(mu1, mu2)).real();
}

double metric(cplx mu1, cplx mu2, cplx u1, cplx u2, cplx v1, cplx v2)
{
    return ((u1 * std::conj(v2) + v1 * std::conj(u2)) * inv_p2(mu1, mu2)).imag();
}

double symplectic_form(const TangentL& u, const TangentL& v)
{
    require_same_base(u, v);
    return symplectic_form(u.base.mu1.value(), u.base.mu2.value(), u.dmu1, u.dmu2, v.dmu1, v.dmu2);
}

double metric(const TangentL& u, const TangentL& v)
{
    require_same_base(u, v);
    return metric(u.base.mu1.value(), u.base.mu2.value(), u.dmu1, u.dmu2, v.dmu1, v.dmu2);
}

Eigen::Matrix4d gram_matrix(const OrientedGeodesic& base)
{
    require_finite(base);
    const cplx m1 = base.mu1.value();
    const cplx m2 = base.mu2.value();
    Eigen::Matrix4d g;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            g(i, j) = metric(m1, m2, kBasis[i].first, kBasis[i].second, kBasis[j].first, kBasis[j].second);
    return g;
}

Eigen::Matrix4d symplectic_matrix(const OrientedGeodesic& base)
{
    require_finite(base);
    const cplx m1 = base.mu1.value();
    const cplx m2 = base.mu2.value();
    Eigen::Matrix4d w;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            w(i, j) = symplectic_form(m1, m2, kBasis[i].first, kBasis[i].second, kBasis[j].first,
                                      kBasis[j].second);
    return w;
}

Signature metric_signature(const OrientedGeodesic& base, double tol)
{
    const Eigen::Matrix4d g = gram_matrix(base);
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> es(g);
    const double scale = std::max(1.0, es.eigenvalues().cwiseAbs().maxCoeff());
    Signature s;
    for (int i = 0; i < 4; ++i) {
        const double e = es.eigenvalues()(i);
        if (e > tol * scale)
            ++s.positive;
        else if (e < -tol * scale)
            ++s.negative;
        else
            ++s.zero;
    }
    return s;
}

double closedness_defect(const OrientedGeodesic& base, double h)
{
    require_finite(base);
    const std::array<double, 4> x0 = {base.mu1.value().real(), base.mu1.value().imag(),
                                      base.mu2.value().real(), base.mu2.value().imag()};
    auto omega = [](const std::array<double, 4>& x, int j, int k) {
        const cplx m1(x[0], x[1]);
        const cplx m2(x[2], x[3]);
        return symplectic_form(m1, m2, kBasis[j].first, kBasis[j].second, kBasis[k].first, kBasis[k].second);
    };
    // d_i Omega_jk by central differences
    auto deriv = [&](int i, int j, int k) {
        std::array<double, 4> xp = x0;
        std::array<double, 4> xm = x0;
        xp[i] += h;
        xm[i] -= h;
        return (omega(xp, j, k) - omega(xm, j, k)) / (2.0 * h);
    };
    double worst = 0.0;
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j)
            for (int k = j + 1; k < 4; ++k) {
                const double d = deriv(i, j, k) - deriv(j, i, k) + deriv(k, i, j);
                worst = std::max(worst, std::abs(d));
            }
    return worst;
}

}  // namespace lhyp
