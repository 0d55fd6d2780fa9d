#include "lhyp/reconstruction.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <type_traits>

#include "lhyp/errors.hpp"

namespace lhyp {

cplx ParamGrid::at(int i, int j) const
{
    const double h = spacing();
    return center + cplx(-extent + i * h, -extent + j * h);
}

double r_closed_form_family(const MaximalFamily& f, cplx mu1)
{
    const cplx w = 1.0 + f.lam1() * mu1;
    if (std::abs(w) == 0.0) throw ModelDomainError("r is singular where 1 + lambda1 mu1 = 0");
    return std::log(std::abs(w)) + f.r0;
}

cplx r_equation_rhs(const LocalJet& j)
{
    const cplx m1 = j.mu1.v, m2 = j.mu2.v;
    if (m2 == cplx(0.0)) throw ChartError("r equation needs mu2 != 0");
    const cplx d1 = j.mu1.d, d2 = j.mu2.d;
    const cplx d1b = std::conj(j.mu1.db), d2b = std::conj(j.mu2.db);
    const cplx m1b = std::conj(m1), m2b = std::conj(m2);
    return m2 / (m1b * m2 + 1.0) * (d1b + d2 / (m2 * m2)) + m2b / (m1 * m2b + 1.0) * (d1 + d2b / (m2b * m2b));
}

std::vector<cplx> chart_singular_nodes(const Congruence& c, const ParamGrid& grid)
{
    std::vector<cplx> bad;
    for (int j = 0; j < grid.n; ++j)
        for (int i = 0; i < grid.n; ++i) {
            const cplx nu = grid.at(i, j);
            std::array<cplx, 2> v;
            try {
                v = c.value(nu);
            } catch (const Error&) {
                bad.push_back(nu);
                continue;
            }
            const bool finite = std::isfinite(std::abs(v[0])) && std::isfinite(std::abs(v[1]));
            if (!finite || std::abs(v[1]) < 1e-12 || on_reflected_diagonal(v[0], v[1]) ||
                std::abs(1.0 + v[0] * std::conj(v[1])) < 1e-9 * (1.0 + std::abs(v[0] * v[1])))
                bad.push_back(nu);
        }
    return bad;
}

namespace {

void require_chart(const Congruence& c, const ParamGrid& grid)
{
    if (grid.n < 2 || !(grid.extent > 0.0)) throw PreconditionError("grid needs n >= 2 and extent > 0");
    auto bad = chart_singular_nodes(c, grid);
    if (!bad.empty()) throw SingularPointsError("congruence leaves the Phi chart at grid nodes", std::move(bad));
}

double edge_integral(const Congruence& c, cplx a, cplx b)
{
    using Rule = boost::math::quadrature::gauss<double, 7>;
    const cplx mid = 0.5 * (a + b), half = 0.5 * (b - a);
    auto f = [&](double x) { return (r_equation_rhs(c.jet(mid + x * half)) * half).real(); };
    double acc = Rule::weights()[0] * f(0.0);
    for (std::size_t k = 1; k < Rule::abscissa().size(); ++k) {
        const double x = Rule::abscissa()[k];
        acc += Rule::weights()[k] * (f(x) + f(-x));
    }
    return acc;
}

}  // namespace

RField solve_r_pde(const Congruence& c, const ParamGrid& grid, double r0, double defect_tol, int base_i, int base_j)
{
    require_chart(c, grid);
    const int n = grid.n;
    RField out;
    out.grid = grid;
    out.r0 = r0;
    out.base_i = base_i < 0 ? (n - 1) / 2 : base_i;
    out.base_j = base_j < 0 ? (n - 1) / 2 : base_j;
    if (out.base_i >= n || out.base_j >= n) throw PreconditionError("base node outside the grid");

    // horizontal edges (i, j) -> (i + 1, j) and vertical edges (i, j) -> (i, j + 1)
    std::vector<double> ex((n - 1) * n), ey(n * (n - 1));
    for (int j = 0; j < n; ++j)
        for (int i = 0; i + 1 < n; ++i) ex[j * (n - 1) + i] = edge_integral(c, grid.at(i, j), grid.at(i + 1, j));
    for (int j = 0; j + 1 < n; ++j)
        for (int i = 0; i < n; ++i) ey[j * n + i] = edge_integral(c, grid.at(i, j), grid.at(i, j + 1));
    auto hx = [&](int i, int j) { return ex[j * (n - 1) + i]; };
    auto vy = [&](int i, int j) { return ey[j * n + i]; };

    for (int j = 0; j + 1 < n; ++j)
        for (int i = 0; i + 1 < n; ++i) {
            const double loop = hx(i, j) + vy(i + 1, j) - hx(i, j + 1) - vy(i, j);
            out.max_defect = std::max(out.max_defect, std::abs(loop));
        }
    if (!(out.max_defect <= defect_tol)) {
        std::ostringstream msg;
        msg << "r equation is not integrable on the grid (max cell defect " << out.max_defect
            << "); the congruence is not Lagrangian";
        throw IntegrabilityError(msg.str(), out.max_defect);
    }

    out.values.assign(grid.size(), 0.0);
    auto& v = out.values;
    const int bj = out.base_j;
    v[grid.index(out.base_i, bj)] = r0;
    for (int i = out.base_i + 1; i < n; ++i) v[grid.index(i, bj)] = v[grid.index(i - 1, bj)] + hx(i - 1, bj);
    for (int i = out.base_i - 1; i >= 0; --i) v[grid.index(i, bj)] = v[grid.index(i + 1, bj)] - hx(i, bj);
    for (int i = 0; i < n; ++i) {
        for (int j = bj + 1; j < n; ++j) v[grid.index(i, j)] = v[grid.index(i, j - 1)] + vy(i, j - 1);
        for (int j = bj - 1; j >= 0; --j) v[grid.index(i, j)] = v[grid.index(i, j + 1)] - vy(i, j);
    }
    return out;
}

namespace {

Jet1 real_abs(const Jet1& x) { return sqrt(abs2(x)); }

// Phi(mu1, mu2, r) with first derivatives; r has a real value.
std::pair<Jet1, Jet1> phi_jet(const Jet1& m1, const Jet1& m2, const Jet1& r)
{
    const Jet1 m2b = conj(m2);
    const Jet1 e2 = exp(2.0 * r);
    const Jet1 th = (e2 - 1.0) / (e2 + 1.0);
    const Jet1 ch = 0.5 * (exp(r) + exp(-1.0 * r));
    const Jet1 p = m1 * m2b;
    const Jet1 z = (1.0 - p) / (2.0 * m2b) + (1.0 + p) / (2.0 * m2b) * th;
    const Jet1 t = real_abs(1.0 + conj(m1) * m2) / (2.0 * real_abs(m2) * ch);
    return {z, t};
}

}  // namespace

SampledSurface orthogonal_surface(const Congruence& c, const RField& r)
{
    require_chart(c, r.grid);
    SampledSurface s;
    s.grid = r.grid;
    s.r = r.values;
    const int n = r.grid.n;
    s.geodesics.reserve(r.grid.size());
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) {
            const cplx nu = r.grid.at(i, j);
            const LocalJet lj = c.jet(nu);
            const double rv = r.at(i, j);
            const OrientedGeodesic g = OrientedGeodesic::make(lj.mu1.v, lj.mu2.v);
            const cplx dr = 0.5 * r_equation_rhs(lj);
            const auto [z, t] = phi_jet(lj.mu1.first(), lj.mu2.first(), Jet1(rv, dr, std::conj(dr)));
            const HalfSpacePoint p{z.v, t.v.real()};
            s.geodesics.push_back(g);
            s.points.push_back(p);
            s.normals.push_back(tangent_at(g, rv));
            const TangentH3 xd{p, (t.d + t.db).real(), z.d + z.db};
            const TangentH3 yd{p, (kI * (t.d - t.db)).real(), kI * (z.d - z.db)};
            s.tangents.push_back({xd, yd});
        }
    return s;
}

double orthogonality_defect(const SampledSurface& s)
{
    double worst = 0.0;
    for (std::size_t k = 0; k < s.points.size(); ++k)
        for (const TangentH3& x : s.tangents[k]) {
            const double nx = s.normals[k].hyp_norm() * x.hyp_norm();
            if (nx == 0.0) throw DegenerateMetricError("surface tangent vanishes");
            worst = std::max(worst, std::abs(hyp_inner(s.normals[k], x)) / nx);
        }
    return worst;
}

std::pair<double, double> principal_curvatures_from_scalars(cplx rho, cplx sigma, double tol)
{
    if (std::abs(rho.imag()) > tol)
        throw PreconditionError("rho is not real: the scalars are not evaluated on an orthogonal surface");
    const double m = -rho.real(), s = std::abs(sigma);
    return {m + s, m - s};
}

FamilyScalars family_scalars(const MaximalFamily& f, cplx mu1)
{
    if (f.degenerate()) throw DegenerateFamilyError("lambda1 lambda2 = 1: totally null surface");
    const cplx l1 = f.lam1(), l2 = f.lam2();
    const cplx d = l1 * l2 - 1.0;
    const cplx q = l1 * mu1 * mu1 + 2.0 * mu1 + l2;
    const cplx w = 1.0 + l1 * mu1;
    if (std::abs(q) == 0.0 || std::abs(w) == 0.0) throw ModelDomainError("mu1 is a singular point of the family");
    const double em = std::exp(-2.0 * f.r0), ep = std::exp(2.0 * f.r0);
    const double k = ep * std::abs(d);
    const double gap = em - std::norm(d) * ep;
    if (std::abs(1.0 - k * k) < 1e-12) throw CausticError("Delta vanishes: r0 is the caustic radius");
    FamilyScalars out;
    out.delta = 4.0 * gap / std::norm(q);
    out.sigma = 2.0 * d / gap * std::conj(w) / w;
    out.rho = -1.0 + 2.0 / (1.0 - k * k);
    out.h = -out.rho.real();
    out.m1 = (k + 1.0) / (k - 1.0);
    out.m2 = (k - 1.0) / (k + 1.0);
    if (out.m1 < out.m2) std::swap(out.m1, out.m2);
    return out;
}

std::array<Jet2, 2> tube_congruence_jet(const XiEtaChart& axis, const Jet2& nu)
{
    if (axis.xi == cplx(0.0)) throw PreconditionError("axis chart needs xi' != 0");
    const Jet2 sh = sinh(nu);
    if (std::abs(sh.v) < 1e-14) throw ModelDomainError("nu = 0 lies on the axis: the tube degenerates");
    const Jet2 nub = conj(nu);
    const Jet2 shb = conj(sh), chb = cosh(nub);
    const cplx xib = std::conj(axis.xi), eta = axis.eta;
    const Jet2 mu1 = (1.0 - chb - eta * xib * shb) / (xib * shb);
    const Jet2 mu2 = axis.xi * sh / (1.0 + cosh(nu) + std::conj(eta) * axis.xi * sh);
    return {mu1, mu2};
}

OrientedGeodesic tube_congruence(const XiEtaChart& axis, cplx nu)
{
    const auto m = tube_congruence_jet(axis, Jet2(nu));
    return OrientedGeodesic::make(m[0].v, m[1].v);
}

MaximalFamily tube_family(const XiEtaChart& axis, double r0)
{
    if (axis.xi == cplx(0.0)) throw PreconditionError("axis chart needs xi' != 0");
    const cplx xib = std::conj(axis.xi);
    return MaximalFamily::from_triple(1.0, axis.eta, axis.eta * axis.eta - 1.0 / (xib * xib), r0);
}

MaximalFamily osculating_family(const Rank2Graph& g, cplx mu1)
{
    const Jet2 m2 = g.mu2_jet(mu1);
    const cplx w = std::conj(m2.v), dw = std::conj(m2.db);
    // (a, b, c) annihilates both rows: a mu + b (1 - w mu) - w c = 0 and its mu-derivative
    const std::array<cplx, 3> r1 = {mu1, 1.0 - w * mu1, -w};
    const std::array<cplx, 3> r2 = {1.0, -dw * mu1 - w, -dw};
    cplx a = r1[1] * r2[2] - r1[2] * r2[1];
    cplx b = r1[2] * r2[0] - r1[0] * r2[2];
    cplx c = r1[0] * r2[1] - r1[1] * r2[0];
    const double scale = std::max({std::abs(a), std::abs(b), std::abs(c)});
    if (scale == 0.0) throw DegenerateFamilyError("no symmetric Moebius relation osculates the graph here");
    const cplx norm = std::abs(b) > 1e-12 * scale ? b : cplx(scale);
    return MaximalFamily::from_triple(a / norm, b / norm, c / norm);
}

namespace {

using Vec3 = Eigen::Vector3d;

Vec3 euclid(const HalfSpacePoint& p) { return {p.z.real(), p.z.imag(), p.t}; }
Vec3 euclid(const TangentH3& v) { return {v.beta.real(), v.beta.imag(), v.a}; }

template <class F>
auto d1(F f, int k, double h) -> std::decay_t<decltype(f(k))>
{
    return (-f(k + 2) + 8.0 * f(k + 1) - 8.0 * f(k - 1) + f(k - 2)) / (12.0 * h);
}

template <class F>
auto d2(F f, int k, double h) -> std::decay_t<decltype(f(k))>
{
    return (-f(k + 2) + 16.0 * f(k + 1) - 30.0 * f(k) + 16.0 * f(k - 1) - f(k - 2)) / (12.0 * h * h);
}

}  // namespace

std::vector<ShapeSample> shape_operator_numeric(const SampledSurface& s)
{
    const int n = s.n();
    if (n < 5) throw PreconditionError("shape operator needs at least 5 x 5 samples");
    const double h = s.grid.spacing();
    auto P = [&](int i, int j) -> Vec3 { return euclid(s.points[s.grid.index(i, j)]); };
    std::vector<ShapeSample> out;
    for (int j = 2; j < n - 2; ++j)
        for (int i = 2; i < n - 2; ++i) {
            const Vec3 Xu = d1([&](int k) { return P(k, j); }, i, h);
            const Vec3 Xv = d1([&](int k) { return P(i, k); }, j, h);
            const Vec3 Xuu = d2([&](int k) { return P(k, j); }, i, h);
            const Vec3 Xvv = d2([&](int k) { return P(i, k); }, j, h);
            const Vec3 Xuv = d1([&](int l) { return d1([&](int k) { return P(k, l); }, i, h); }, j, h);

            const double t = P(i, j).z();
            Vec3 nrm = Xu.cross(Xv);
            if (nrm.norm() == 0.0) throw DegenerateMetricError("sampled surface is singular");
            nrm.normalize();
            if (nrm.dot(euclid(s.normals[s.grid.index(i, j)])) < 0.0) nrm = -nrm;
            const Vec3 N = t * nrm;

            // Levi-Civita connection of |dx|^2 / t^2: Gamma(X, Y) = X(f) Y + Y(f) X - <X, Y> grad f, f = -log t
            const Vec3 gradf(0.0, 0.0, -1.0 / t);
            auto gam = [&](const Vec3& X, const Vec3& Y) {
                return Vec3(-X.z() / t * Y - Y.z() / t * X - X.dot(Y) * gradf);
            };
            auto g = [&](const Vec3& X, const Vec3& Y) { return X.dot(Y) / (t * t); };
            Eigen::Matrix2d I, II;
            I << g(Xu, Xu), g(Xu, Xv), g(Xu, Xv), g(Xv, Xv);
            II << -g(N, Xuu + gam(Xu, Xu)), -g(N, Xuv + gam(Xu, Xv)), -g(N, Xuv + gam(Xu, Xv)),
                -g(N, Xvv + gam(Xv, Xv));
            if (std::abs(I.determinant()) < 1e-300) throw DegenerateMetricError("first fundamental form is singular");
            Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::Matrix2d> es(II, I);
            out.push_back({i, j, es.eigenvalues()(1), es.eigenvalues()(0)});
        }
    return out;
}

std::vector<double> gauss_curvature_numeric(const SampledSurface& s)
{
    const int n = s.n();
    if (n < 5) throw PreconditionError("Gauss curvature needs at least 5 x 5 samples");
    const double h = s.grid.spacing();
    std::vector<double> E(s.grid.size()), F(E.size()), G(E.size());
    for (std::size_t k = 0; k < E.size(); ++k) {
        const auto& [xu, xv] = s.tangents[k];
        E[k] = hyp_inner(xu, xu);
        F[k] = hyp_inner(xu, xv);
        G[k] = hyp_inner(xv, xv);
    }
    std::vector<double> out;
    for (int j = 2; j < n - 2; ++j)
        for (int i = 2; i < n - 2; ++i) {
            auto along_u = [&](const std::vector<double>& f) { return [&](int k) { return f[s.grid.index(k, j)]; }; };
            auto along_v = [&](const std::vector<double>& f) { return [&](int k) { return f[s.grid.index(i, k)]; }; };
            const int c = s.grid.index(i, j);
            const double e = E[c], f = F[c], g = G[c];
            const double Eu = d1(along_u(E), i, h), Ev = d1(along_v(E), j, h);
            const double Fu = d1(along_u(F), i, h), Fv = d1(along_v(F), j, h);
            const double Gu = d1(along_u(G), i, h), Gv = d1(along_v(G), j, h);
            const double Evv = d2(along_v(E), j, h), Guu = d2(along_u(G), i, h);
            const double Fuv =
                d1([&](int l) { return d1([&](int k) { return F[s.grid.index(k, l)]; }, i, h); }, j, h);
            Eigen::Matrix3d A, B;
            A << -0.5 * Evv + Fuv - 0.5 * Guu, 0.5 * Eu, Fu - 0.5 * Ev, Fv - 0.5 * Gu, e, f, 0.5 * Gv, f, g;
            B << 0.0, 0.5 * Ev, 0.5 * Gu, 0.5 * Ev, e, f, 0.5 * Gu, f, g;
            const double det = e * g - f * f;
            if (std::abs(det) < 1e-300) throw DegenerateMetricError("first fundamental form is singular");
            out.push_back((A.determinant() - B.determinant()) / (det * det));
        }
    return out;
}

EquidistantResult verify_equidistant(const SampledSurface& s, const GeodesicArc& axis)
{
    std::vector<double> d;
    d.reserve(s.points.size());
    for (const HalfSpacePoint& p : s.points) d.push_back(distance_point_to_geodesic(p, axis).distance);
    std::vector<double> sorted = d;
    std::sort(sorted.begin(), sorted.end());
    const std::size_t m = sorted.size();
    EquidistantResult out;
    out.median = m % 2 ? sorted[m / 2] : 0.5 * (sorted[m / 2 - 1] + sorted[m / 2]);
    for (double x : d) out.defect = std::max(out.defect, std::abs(x - out.median));
    return out;
}

EquidistantResult verify_equidistant(const SampledSurface& s, const OrientedGeodesic& axis)
{
    const BoundaryEndpoints e = endpoints(axis);
    return verify_equidistant(s, GeodesicArc::from_endpoints(e.begin, e.end));
}

void write_mesh(const SampledSurface& s, std::ostream& out, MeshFormat format)
{
    const int n = s.n();
    char buf[256];
    if (format == MeshFormat::csv) out << "nu_re,nu_im,r,z_re,z_im,t,x,y,z\n";
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) {
            const int k = s.grid.index(i, j);
            const HalfSpacePoint& p = s.points[k];
            const BallPoint b = ball_from_halfspace(p);
            if (format == MeshFormat::obj) {
                std::snprintf(buf, sizeof buf, "v %.17g %.17g %.17g\n", b.y[0], b.y[1], b.y[2]);
            } else {
                const cplx nu = s.grid.at(i, j);
                std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", nu.real(),
                              nu.imag(), s.r[k], p.z.real(), p.z.imag(), p.t, b.y[0], b.y[1], b.y[2]);
            }
            out << buf;
        }
    if (format == MeshFormat::csv) return;
    for (int j = 0; j + 1 < n; ++j)
        for (int i = 0; i + 1 < n; ++i) {
            const int a = s.grid.index(i, j) + 1, b = s.grid.index(i + 1, j) + 1;
            const int c = s.grid.index(i + 1, j + 1) + 1, d = s.grid.index(i, j + 1) + 1;
            out << "f " << a << ' ' << b << ' ' << c << ' ' << d << '\n';
        }
}

void export_mesh(const SampledSurface& s, const std::string& path, MeshFormat format)
{
    std::ofstream f(path);
    if (!f) throw IoError("cannot open " + path + " for writing");
    write_mesh(s, f, format);
    f.flush();
    if (!f) throw IoError("write failed for " + path);
}

ObjMesh read_obj(std::istream& in)
{
    ObjMesh m;
    std::string line;
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        std::string tag;
        ls >> tag;
        if (tag == "v") {
            std::array<double, 3> v{};
            if (!(ls >> v[0] >> v[1] >> v[2])) throw IoError("malformed vertex line: " + line);
            m.vertices.push_back(v);
        } else if (tag == "f") {
            std::vector<int> face;
            std::string tok;
            while (ls >> tok) face.push_back(std::stoi(tok.substr(0, tok.find('/'))));
            if (face.size() < 3) throw IoError("malformed face line: " + line);
            m.faces.push_back(face);
        }
    }
    return m;
}

ObjMesh read_obj(const std::string& path)
{
    std::ifstream f(path);
    if (!f) throw IoError("cannot open " + path);
    return read_obj(f);
}

}  // namespace lhyp
