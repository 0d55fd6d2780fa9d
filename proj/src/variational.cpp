#include "lhyp/variational.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <cmath>

#include "lhyp/errors.hpp"
#include "lhyp/kaehler.hpp"

namespace lhyp {

namespace {

Jet1 dsJ(const Jet2& f) { return f.d_jet() + f.db_jet(); }
Jet1 dtJ(const Jet2& f) { return kI * (f.d_jet() - f.db_jet()); }
double ds(const Jet1& f) { return (f.d + f.db).real(); }
double dt(const Jet1& f) { return (kI * (f.d - f.db)).real(); }

Jet1 metric_jet(const Jet1& p2, const Jet1& u1, const Jet1& u2, const Jet1& v1, const Jet1& v2)
{
    return im((u1 * conj(v2) + v1 * conj(u2)) / p2);
}

}  // namespace

Rank1Geometry rank1_geometry(const Rank1Chart& c, double s, double t, bool require_lagrangian,
                             double lagrangian_tol)
{
    const auto m = c.map(Jet2::variable(cplx(s, t)));
    const Jet2& m1 = m[0];
    const Jet2& m2 = m[1];
    if (std::abs(m1.dy()) > 1e-12 * (1.0 + std::abs(m1.dx())))
        throw PreconditionError("rank-1 chart needs mu1 to depend on s only");

    const Jet1 p = 1.0 + m1.first() * conj(m2.first());
    const Jet1 p2 = p * p;
    const Jet1 s1 = dsJ(m1), s2 = dsJ(m2), t1 = dtJ(m1), t2 = dtJ(m2);
    // components as jets so that their derivatives are available
    const std::array<std::array<Jet1, 2>, 2> gj = {{
        {metric_jet(p2, s1, s2, s1, s2), metric_jet(p2, s1, s2, t1, t2)},
        {metric_jet(p2, s1, s2, t1, t2), metric_jet(p2, t1, t2, t1, t2)},
    }};

    Rank1Geometry out;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) out.g(i, j) = gj[i][j].v.real();
    out.lagrangian_defect =
        std::abs(symplectic_form(m1.v, m2.v, m1.dx(), m2.dx(), m1.dy(), m2.dy()));
    if (out.g(0, 1) == 0.0) throw DegenerateMetricError("g_st vanishes: induced metric is degenerate");
    // g_tt = 0 makes the inverse explicit
    const double gst = out.g(0, 1);
    out.g_inv << 0.0, 1.0 / gst, 1.0 / gst, -out.g(0, 0) / (gst * gst);
    if (out.g(1, 1) != 0.0) out.g_inv = out.g.inverse();

    // dg[k](i, j) = d_k g_ij
    std::array<Eigen::Matrix2d, 2> dg;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            dg[0](i, j) = ds(gj[i][j]);
            dg[1](i, j) = dt(gj[i][j]);
        }
    for (int l = 0; l < 2; ++l)
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) {
                double acc = 0.0;
                for (int k = 0; k < 2; ++k)
                    acc += out.g_inv(l, k) * (dg[i](k, j) + dg[j](k, i) - dg[k](i, j));
                out.gamma[l](i, j) = 0.5 * acc;
            }

    if (!require_lagrangian) return out;
    const double scale = std::abs(out.g(0, 0)) + std::abs(gst);
    if (out.lagrangian_defect > lagrangian_tol * std::max(1.0, scale))
        throw PreconditionError("mean curvature requested for a non-Lagrangian rank-1 chart");

    // ambient Christoffel symbols of the Kaehler metric
    const cplx g111 = -2.0 * std::conj(m2.v) / (1.0 + m1.v * std::conj(m2.v));
    const cplx g222 = -2.0 * std::conj(m1.v) / (1.0 + std::conj(m1.v) * m2.v);
    const std::array<const Jet2*, 2> mu = {&m1, &m2};
    const std::array<cplx, 2> amb = {g111, g222};
    const std::array<std::pair<int, int>, 3> ij = {{{0, 0}, {0, 1}, {1, 1}}};
    for (int k = 0; k < 2; ++k) {
        const Jet2& f = *mu[k];
        const std::array<cplx, 2> df = {f.dx(), f.dy()};
        const std::array<cplx, 3> ddf = {f.dxx(), f.dxy(), f.dyy()};
        for (int q = 0; q < 3; ++q) {
            const auto [i, j] = ij[q];
            cplx v = ddf[q] + amb[k] * df[i] * df[j];
            for (int l = 0; l < 2; ++l) v -= out.gamma[l](i, j) * df[l];
            out.h[k][q] = v;
        }
    }
    auto trace = [&](const std::array<cplx, 3>& h) {
        return out.g_inv(0, 0) * h[0] + 2.0 * out.g_inv(0, 1) * h[1] + out.g_inv(1, 1) * h[2];
    };
    out.H_mu1 = trace(out.h[0]);
    out.H_mu2 = trace(out.h[1]);
    out.H_norm = std::sqrt(std::norm(out.H_mu1) + std::norm(out.H_mu2));
    out.has_mean_curvature = true;
    return out;
}

GraphDensities graph_densities(const Rank2Graph& g, cplx mu1)
{
    const Jet2 m2 = g.mu2_jet(mu1);
    const cplx pb = 1.0 + std::conj(mu1) * m2.v;
    const cplx p = 1.0 + mu1 * std::conj(m2.v);
    GraphDensities d;
    d.Q = m2.d / (pb * pb);
    d.sigma0 = std::conj(m2.db) / (p * p);
    d.twist_scaled = -8.0 * d.Q.imag();
    const cplx phase = m2.v == cplx(0.0) ? cplx(1.0) : m2.v / std::conj(m2.v);
    d.shear_scaled = 8.0 * phase * std::conj(m2.db) / std::norm(p);
    return d;
}

double rank2_area_density(const Rank2Graph& g, cplx mu1)
{
    const GraphDensities d = graph_densities(g, mu1);
    return d.Q.imag() * d.Q.imag() - std::norm(d.sigma0);
}

namespace {

// The three-term residual from jets of Lambda = Delta lambda and of
// S = conj(mu2) Sigma / mu2, Sigma = Delta sigma.
cplx residual_from(const Jet1& m1, const Jet1& m2, const Jet1& Lambda, const Jet1& S)
{
    const Jet1 pb = 1.0 + conj(m1) * m2;
    const Jet1 absp2 = pb * conj(pb);
    const Jet1 shear2 = S * conj(S);
    const Jet1 w2 = Lambda * Lambda - shear2;
    const double scale = std::norm(Lambda.v) + std::abs(shear2.v);
    if (!(w2.v.real() > 1e-14 * scale)) throw BranchError("lambda^2 <= |sigma|^2: use the Lagrangian residual");
    const Jet1 W = sqrt(w2);
    const Jet1 ratio = Lambda / W;
    const Jet1 second = S / (absp2 * W);
    return -kI / (pb.v * pb.v) * ratio.d + second.db + std::conj(m1.v) * shear2.v / (4.0 * pb.v * W.v);
}

}  // namespace

cplx maximality_residual(const Rank2Graph& g, cplx mu1)
{
    const Jet2 m2 = g.mu2_jet(mu1);
    const Jet1 z = Jet1::variable(mu1);
    const Jet1 w = m2.first();
    const Jet1 pb = 1.0 + conj(z) * w;
    const Jet1 Q = m2.d_jet() / (pb * pb);
    const Jet1 Lambda = -8.0 * im(Q);
    const Jet1 S = 8.0 * conj(m2.db_jet()) / (pb * conj(pb));
    return residual_from(z, w, Lambda, S);
}

cplx maximality_residual(const Rank2Graph& g, cplx mu1, double r)
{
    const Jet2 m1 = Jet2::variable(mu1);
    const Jet2 m2 = g.mu2(m1);
    if (m2.v == cplx(0.0)) throw ChartError("full optical scalars need mu2 != 0");
    const ScaledOptics<Jet1> o = scaled_optics<Jet1>(m1.first(), m2.first(), m1.d_jet(), m1.db_jet(), m2.d_jet(),
                                                     m2.db_jet(), r);
    const Jet1 Lambda = im(o.delta_rho);
    const Jet1 S = conj(m2.first()) * o.delta_sigma / m2.first();
    return residual_from(m1.first(), m2.first(), Lambda, S);
}

cplx lagrangian_maximality_residual(const Rank2Graph& g, cplx mu1, double lagrangian_tol)
{
    const Jet2 m2 = g.mu2_jet(mu1);
    const Jet1 z = Jet1::variable(mu1);
    const Jet1 w = m2.first();
    const Jet1 p = 1.0 + z * conj(w);
    const Jet1 sigma0 = conj(m2.db_jet()) / (p * p);
    const cplx Q = m2.d / std::pow(1.0 + std::conj(mu1) * m2.v, 2);
    if (std::abs(Q.imag()) > lagrangian_tol * (1.0 + std::abs(Q)))
        throw PreconditionError("graph is not Lagrangian at this point");
    if (std::abs(sigma0.v) == 0.0) throw PreconditionError("sigma0 vanishes: complex point");
    const Jet1 sb = conj(sigma0);
    return sb.d / sb.v - sigma0.d / sigma0.v - 4.0 * std::conj(w.v) / p.v;
}

SigmaAngle sigma0_and_angle(const Rank2Graph& g, cplx mu1)
{
    const GraphDensities d = graph_densities(g, mu1);
    if (d.sigma0 == cplx(0.0)) throw PreconditionError("sigma0 vanishes: the angle is undefined");
    double phi = 0.5 * std::arg(d.sigma0);
    if (phi <= -0.5 * M_PI) phi += M_PI;
    return {d.sigma0, phi};
}

void unwrap_angle_grid(std::vector<double>& phi, int n)
{
    auto fix = [](double prev, double& cur) {
        while (cur - prev > 0.5 * M_PI) cur -= M_PI;
        while (cur - prev < -0.5 * M_PI) cur += M_PI;
    };
    for (int i = 1; i < n; ++i) fix(phi[(i - 1) * n], phi[i * n]);
    for (int i = 0; i < n; ++i)
        for (int j = 1; j < n; ++j) fix(phi[i * n + j - 1], phi[i * n + j]);
}

AngleField AngleField::closed_form(cplx alpha0, cplx beta0, double c0)
{
    const cplx shift = 0.5 * kI * std::log(alpha0);
    return {[=](const Jet2& m) {
        const Jet2 u = alpha0 * m + beta0;
        const Jet2 a = 0.5 * kI * log(u * u - c0) - shift;
        return a + conj(a);
    }};
}

AngleField AngleField::from_phi(std::function<Jet2(const Jet2&)> phi) { return {std::move(phi)}; }

cplx angle_pde_residual(const AngleField& a, const Rank2Graph& g, cplx mu1)
{
    const Jet2 e = exp(-kI * a.phi(Jet2::variable(mu1)));
    return e.v * e.dd - std::abs(graph_densities(g, mu1).sigma0);
}

double harmonic_defect(const AngleField& a, cplx mu1) { return std::abs(a.phi(Jet2::variable(mu1)).ddb); }

ExtComplex mu2_from_angle(const AngleField& a, cplx mu1)
{
    const cplx dbphi = a.phi(Jet2::variable(mu1)).db;
    const cplx num = kI * dbphi;
    const cplx den = 1.0 - kI * std::conj(mu1) * dbphi;
    if (std::abs(den) <= 1e-15 * std::abs(num)) return ExtComplex::infinity();
    return num / den;
}

MaximalFamily MaximalFamily::from_lambdas(cplx lam1, cplx lam2, double r0) { return {lam1, 1.0, lam2, r0}; }

MaximalFamily MaximalFamily::from_triple(cplx a, cplx b, cplx c, double r0) { return {a, b, c, r0}; }

MaximalFamily MaximalFamily::from_angle(cplx alpha0, cplx beta0, double c0, double r0)
{
    if (alpha0 == cplx(0.0) || beta0 == cplx(0.0)) throw PreconditionError("alpha0 and beta0 must be nonzero");
    return from_lambdas(alpha0 / beta0, (beta0 * beta0 - c0) / (alpha0 * beta0), r0);
}

cplx MaximalFamily::lam1() const
{
    if (!has_lambda_chart()) throw ChartError("off-diagonal coefficient vanishes: no (lambda1, lambda2) chart");
    return a / b;
}

cplx MaximalFamily::lam2() const
{
    if (!has_lambda_chart()) throw ChartError("off-diagonal coefficient vanishes: no (lambda1, lambda2) chart");
    return c / b;
}

bool MaximalFamily::degenerate() const
{
    return std::abs(det()) <= 1e-14 * (std::abs(a) * std::abs(c) + std::norm(b));
}

ExtComplex MaximalFamily::mu2bar(const ExtComplex& mu1) const { return mobius(a, b, b, c, mu1); }

namespace {

// Roots of a x^2 + 2 b x + c with the cancellation-free pairing.
std::pair<ExtComplex, ExtComplex> quadratic_roots(cplx a, cplx b, cplx c, cplx& q)
{
    cplx s = std::sqrt(b * b - a * c);
    if ((std::conj(b) * s).real() < 0.0) s = -s;
    q = -(b + s);
    const ExtComplex r1 = q == cplx(0.0) ? ExtComplex(0.0) : ExtComplex(c / q);
    const ExtComplex r2 = a == cplx(0.0) ? ExtComplex::infinity() : ExtComplex(q / a);
    return {r1, r2};
}

}  // namespace

std::vector<ExtComplex> MaximalFamily::singular_points() const
{
    cplx q;
    const auto [r1, r2] = quadratic_roots(a, b, c, q);
    std::vector<ExtComplex> out = {r1, r2};
    out.push_back(a == cplx(0.0) ? ExtComplex::infinity() : ExtComplex(-b / a));
    out.push_back(b == cplx(0.0) ? ExtComplex::infinity() : ExtComplex(-c / b));
    return out;
}

double MaximalFamily::singular_distance(cplx mu1) const
{
    double best = std::numeric_limits<double>::infinity();
    for (const ExtComplex& p : singular_points())
        if (p.is_finite()) best = std::min(best, std::abs(mu1 - p.value()));
    return best;
}

Rank2Graph maximal_family_graph(const MaximalFamily& f)
{
    if (f.degenerate()) throw DegenerateFamilyError("ac = b^2 (lambda1 lambda2 = 1): totally null surface");
    const cplx a = f.a, b = f.b, c = f.c;
    return Rank2Graph::from_mu2bar([=](const Jet2& m) { return (a * m + b) / (b * m + c); });
}

std::pair<OrientedGeodesic, OrientedGeodesic> axis_geodesics(const MaximalFamily& f)
{
    if (f.degenerate()) throw DegenerateFamilyError("ac = b^2 (lambda1 lambda2 = 1): totally null surface");
    cplx q;
    const auto roots = quadratic_roots(f.a, f.b, f.c, q);
    // mu1' = -c / (b + S) = c / q, mu2' = conj(a / (b + S)) = -conj(a / q)
    const OrientedGeodesic g = OrientedGeodesic::make(roots.first, -std::conj(f.a / q));
    return {g, reverse_orientation(g)};
}

Jet2 Bump::operator()(const Jet2& mu1) const
{
    const Jet2 rho2 = abs2(mu1 - center) / (radius * radius);
    if (rho2.v.real() >= 1.0) return Jet2(0.0);
    return amplitude * exp(1.0 - 1.0 / (1.0 - rho2));
}

double first_variation(const Rank2Graph& g, const Bump& bump, const VariationOptions& opt)
{
    using Rule = boost::math::quadrature::gauss<double, 30>;
    std::vector<double> x, w;
    for (std::size_t i = 0; i < Rule::abscissa().size(); ++i) {
        x.push_back(Rule::abscissa()[i]);
        w.push_back(Rule::weights()[i]);
        x.push_back(-Rule::abscissa()[i]);
        w.push_back(Rule::weights()[i]);
    }
    struct Node {
        cplx mu1, m2, dm2, dbm2, eta, deta, dbeta;
        double weight;
    };
    std::vector<Node> nodes;
    const double width = 2.0 * bump.radius / opt.panels;
    const double half = 0.5 * width;
    for (int pi = 0; pi < opt.panels; ++pi)
        for (int pj = 0; pj < opt.panels; ++pj) {
            const double cx = bump.center.real() - bump.radius + (pi + 0.5) * width;
            const double cy = bump.center.imag() - bump.radius + (pj + 0.5) * width;
            for (std::size_t i = 0; i < x.size(); ++i)
                for (std::size_t j = 0; j < x.size(); ++j) {
                    const cplx mu1(cx + half * x[i], cy + half * x[j]);
                    const Jet2 e = bump(Jet2::variable(mu1));
                    if (e.v == cplx(0.0)) continue;
                    const Jet2 m2 = g.mu2_jet(mu1);
                    nodes.push_back({mu1, m2.v, m2.d, m2.db, e.v, e.d, e.db, w[i] * w[j] * half * half});
                }
        }

    auto density = [](const Node& n, double eps) {
        const cplx m2 = n.m2 + eps * n.eta;
        const cplx pb = 1.0 + std::conj(n.mu1) * m2;
        const cplx Q = (n.dm2 + eps * n.deta) / (pb * pb);
        const cplx p = std::conj(pb);
        const cplx s0 = std::conj(n.dbm2 + eps * n.dbeta) / (p * p);
        return Q.imag() * Q.imag() - std::norm(s0);
    };
    for (const Node& n : nodes)
        if (std::abs(density(n, 0.0)) < opt.degenerate_tol)
            throw DegenerateMetricError("area density vanishes on the support of the variation");

    auto central = [&](double eps) {
        double acc = 0.0;
        for (const Node& n : nodes) {
            const double up = std::sqrt(std::abs(density(n, eps)));
            const double down = std::sqrt(std::abs(density(n, -eps)));
            acc += n.weight * (up - down);
        }
        return acc / (2.0 * eps);
    };
    return (4.0 * central(0.5 * opt.eps) - central(opt.eps)) / 3.0;
}

}  // namespace lhyp
