#include "lhyp/congruence.hpp"

#include <algorithm>
#include <cmath>

#include "lhyp/errors.hpp"
#include "lhyp/kaehler.hpp"

namespace lhyp {

Congruence Congruence::analytic(JetMap f)
{
    Congruence c;
    c.jet_map_ = std::move(f);
    return c;
}

Congruence Congruence::sampled(ValueMap f, double h)
{
    if (!(h > 0.0)) throw DerivativeError("finite-difference step must be positive");
    Congruence c;
    c.value_map_ = std::move(f);
    c.h_ = h;
    return c;
}

std::array<cplx, 2> Congruence::value(cplx nu) const
{
    if (jet_map_) {
        const auto j = jet_map_(Jet2(nu));
        return {j[0].v, j[1].v};
    }
    return value_map_(nu);
}

namespace {

using Pair = std::array<cplx, 2>;

Pair sub(const Pair& a, const Pair& b) { return {a[0] - b[0], a[1] - b[1]}; }
Pair add(const Pair& a, const Pair& b) { return {a[0] + b[0], a[1] + b[1]}; }
Pair scale(const Pair& a, cplx s) { return {a[0] * s, a[1] * s}; }

void check_finite(const Pair& v)
{
    for (const cplx& x : v)
        if (!std::isfinite(x.real()) || !std::isfinite(x.imag()))
            throw DerivativeError("non-finite congruence value inside the difference stencil");
}

}  // namespace

LocalJet Congruence::jet(cplx nu) const
{
    if (jet_map_) {
        const auto j = jet_map_(Jet2::variable(nu));
        return {j[0], j[1]};
    }
    const double h = h_;
    if (h < 1e-12 * (1.0 + std::abs(nu))) throw DerivativeError("finite-difference step underflow");
    auto f = [&](cplx w) {
        const Pair v = value_map_(w);
        check_finite(v);
        return v;
    };
    const Pair f0 = f(nu);
    // first derivatives: central differences with one Richardson step
    auto d1 = [&](cplx dir) {
        auto central = [&](double s) { return scale(sub(f(nu + s * dir), f(nu - s * dir)), 1.0 / (2.0 * s)); };
        const Pair a = central(h);
        const Pair b = central(0.5 * h);
        return scale(sub(scale(b, 4.0), a), 1.0 / 3.0);
    };
    // second derivatives use a coarser step so roundoff stays below truncation
    const double H = std::max(1e-3, 100.0 * h);
    auto d2 = [&](cplx dir) {
        auto central = [&](double s) {
            return scale(add(sub(f(nu + s * dir), scale(f0, 2.0)), f(nu - s * dir)), 1.0 / (s * s));
        };
        const Pair a = central(H);
        const Pair b = central(0.5 * H);
        return scale(sub(scale(b, 4.0), a), 1.0 / 3.0);
    };
    const Pair fx = d1(1.0);
    const Pair fy = d1(kI);
    const Pair fxx = d2(1.0);
    const Pair fyy = d2(kI);
    // mixed derivative from the diagonal directions
    const cplx diag = cplx(1.0, 1.0);
    const Pair fpp = d2(diag);
    const cplx diag2 = cplx(1.0, -1.0);
    const Pair fpm = d2(diag2);

    LocalJet out;
    Jet2* targets[2] = {&out.mu1, &out.mu2};
    for (int k = 0; k < 2; ++k) {
        const cplx xy = 0.25 * (fpp[k] - fpm[k]);
        Jet2& t = *targets[k];
        t.v = f0[k];
        t.d = 0.5 * (fx[k] - kI * fy[k]);
        t.db = 0.5 * (fx[k] + kI * fy[k]);
        t.dd = 0.25 * (fxx[k] - fyy[k] - 2.0 * kI * xy);
        t.ddb = 0.25 * (fxx[k] + fyy[k]);
        t.dbdb = 0.25 * (fxx[k] - fyy[k] + 2.0 * kI * xy);
    }
    return out;
}

Rank2Graph Rank2Graph::from_mu2bar(std::function<Jet2(const Jet2&)> mu2bar)
{
    return {[f = std::move(mu2bar)](const Jet2& m) { return conj(f(m)); }};
}

Congruence Rank2Graph::congruence() const
{
    auto f = mu2;
    return Congruence::analytic([f](const Jet2& nu) { return std::array<Jet2, 2>{nu, f(nu)}; });
}

Jacobians jacobians(const LocalJet& j)
{
    // (d, dbar) of mu1, mu2, conj(mu1), conj(mu2)
    const std::array<std::pair<cplx, cplx>, 4> f = {{
        {j.mu1.d, j.mu1.db},
        {j.mu2.d, j.mu2.db},
        {std::conj(j.mu1.db), std::conj(j.mu1.d)},
        {std::conj(j.mu2.db), std::conj(j.mu2.d)},
    }};
    Jacobians out;
    for (int k = 0; k < 4; ++k)
        for (int l = 0; l < 4; ++l)
            out.J[k][l] = k == l ? cplx(0.0) : f[k].first * f[l].second - f[k].second * f[l].first;
    return out;
}

Jacobians jacobians(const Congruence& c, cplx nu) { return jacobians(c.jet(nu)); }

namespace {

ScaledOptics<cplx> scaled(const LocalJet& j, double r)
{
    return scaled_optics<cplx>(j.mu1.v, j.mu2.v, j.mu1.d, j.mu1.db, j.mu2.d, j.mu2.db, r);
}

void require_chart(const LocalJet& j)
{
    if (j.mu2.v == cplx(0.0)) throw ChartError("optical scalars need mu2 != 0");
}

}  // namespace

OpticalData optical_scalars(const LocalJet& j, double r)
{
    require_chart(j);
    const ScaledOptics<cplx> s = scaled(j, r);
    const double delta = s.delta.real();
    const double scale = std::abs(s.delta_rho) + std::abs(s.delta_sigma) + std::abs(s.delta);
    if (!std::isfinite(delta) || std::abs(delta) <= 1e-13 * scale)
        throw CausticError("Delta vanishes: the optical scalars blow up");
    OpticalData out;
    out.delta = delta;
    out.sigma = s.delta_sigma / delta;
    out.rho = s.delta_rho / delta;
    out.theta = out.rho.real();
    out.lambda = out.rho.imag();
    out.r = r;
    return out;
}

OpticalData optical_scalars(const Congruence& c, cplx nu, double r) { return optical_scalars(c.jet(nu), r); }

double lagrangian_defect(const LocalJet& j)
{
    return std::abs(symplectic_form(j.mu1.v, j.mu2.v, j.mu1.dx(), j.mu2.dx(), j.mu1.dy(), j.mu2.dy()));
}

double lagrangian_defect(const Congruence& c, cplx nu) { return lagrangian_defect(c.jet(nu)); }

RankResult rank(const LocalJet& j)
{
    const cplx fx = j.mu1.dx();
    const cplx fy = j.mu1.dy();
    Eigen::Matrix2d m;
    m << fx.real(), fy.real(), fx.imag(), fy.imag();
    Eigen::JacobiSVD<Eigen::Matrix2d> svd(m);
    RankResult out;
    out.singular_values = {svd.singularValues()(0), svd.singularValues()(1)};
    for (double s : out.singular_values) {
        if (s > 1e-6)
            ++out.rank;
        else if (s >= 1e-8)
            out.indeterminate = true;
    }
    return out;
}

RankResult rank(const Congruence& c, cplx nu) { return rank(c.jet(nu)); }

Eigen::Matrix2d pullback_metric(const LocalJet& j)
{
    const cplx m1 = j.mu1.v;
    const cplx m2 = j.mu2.v;
    const cplx x1 = j.mu1.dx(), x2 = j.mu2.dx();
    const cplx y1 = j.mu1.dy(), y2 = j.mu2.dy();
    Eigen::Matrix2d g;
    g(0, 0) = metric(m1, m2, x1, x2, x1, x2);
    g(0, 1) = metric(m1, m2, x1, x2, y1, y2);
    g(1, 0) = g(0, 1);
    g(1, 1) = metric(m1, m2, y1, y2, y1, y2);
    return g;
}

Eigen::Matrix2d pullback_metric(const Congruence& c, cplx nu) { return pullback_metric(c.jet(nu)); }

const char* to_string(MetricClass m)
{
    switch (m) {
    case MetricClass::riemannian: return "Riemannian";
    case MetricClass::lorentz: return "Lorentz";
    case MetricClass::degenerate: return "degenerate";
    }
    return "?";
}

MetricClass classify_metric(const LocalJet& j)
{
    // Delta sigma and Delta lambda written without the mu2 = 0 chart factors
    const Jacobians J = jacobians(j);
    const cplx p = 1.0 + j.mu1.v * std::conj(j.mu2.v);
    const double shear2 = std::norm(8.0 * J(kMu2b, kMu1b) / std::norm(p));
    const double twist = -8.0 * (J(kMu2, kMu1b) / (std::conj(p) * std::conj(p))).imag();
    const double twist2 = twist * twist;
    const double d = shear2 - twist2;
    if (std::abs(d) <= 1e-10 + 1e-9 * (shear2 + twist2)) return MetricClass::degenerate;
    return d > 0.0 ? MetricClass::lorentz : MetricClass::riemannian;
}

MetricClass classify_metric(const Congruence& c, cplx nu) { return classify_metric(c.jet(nu)); }

MetricClass classify_pullback(const Eigen::Matrix2d& g, double tol)
{
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(g);
    const double a = es.eigenvalues()(0);
    const double b = es.eigenvalues()(1);
    const double scale = std::max(1.0, std::max(std::abs(a), std::abs(b)));
    if (std::abs(a) <= tol * scale || std::abs(b) <= tol * scale) return MetricClass::degenerate;
    return a * b > 0.0 ? MetricClass::riemannian : MetricClass::lorentz;
}

double complex_point_defect(const LocalJet& j)
{
    const Jacobians J = jacobians(j);
    const cplx p = 1.0 + j.mu1.v * std::conj(j.mu2.v);
    return 8.0 * std::abs(J(kMu2b, kMu1b)) / std::norm(p);
}

double complex_point_defect(const Congruence& c, cplx nu) { return complex_point_defect(c.jet(nu)); }

double flatness_defect(const Rank2Graph& g, const std::vector<cplx>& samples)
{
    double worst = 0.0;
    for (const cplx& m : samples) worst = std::max(worst, std::abs(g.mu2_jet(m).d));
    return worst;
}

}  // namespace lhyp
