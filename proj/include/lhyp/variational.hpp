#pragma once

// Area and maximality for congruences: rank-1 mean curvature, reduced rank-2
// densities, the two maximality residuals, the Lagrangian angle and the
// explicit maximal Lagrangian family.

#include <Eigen/Dense>
#include <array>
#include <functional>
#include <utility>
#include <vector>

#include "lhyp/congruence.hpp"

namespace lhyp {

// ---------------------------------------------------------------------------
// Rank 1

// mu1(s), mu2(s, t), both given as functions of the jet variable s + i t.
struct Rank1Chart {
    std::function<std::array<Jet2, 2>(const Jet2&)> map;
};

struct Rank1Geometry {
    Eigen::Matrix2d g;      // (s, t) components, g_tt = 0
    Eigen::Matrix2d g_inv;
    std::array<Eigen::Matrix2d, 2> gamma;   // gamma[l](i, j) = Gamma^l_ij of g
    std::array<std::array<cplx, 3>, 2> h;   // h[k] = (h_ss, h_st, h_tt) of mu_k
    cplx H_mu1{};
    cplx H_mu2{};
    double H_norm = 0.0;  // sqrt(|H^mu1|^2 + |H^mu2|^2)
    double lagrangian_defect = 0.0;
    bool has_mean_curvature = false;
};

// With require_lagrangian the mean curvature is computed only when the
// pulled-back symplectic form is below lagrangian_tol (else PreconditionError);
// without it the mean curvature fields are left empty.
Rank1Geometry rank1_geometry(const Rank1Chart& c, double s, double t, bool require_lagrangian = true,
                             double lagrangian_tol = 1e-8);

// ---------------------------------------------------------------------------
// Rank 2 graphs mu2 = F(mu1, conj(mu1))

struct GraphDensities {
    cplx Q{};        // d mu2 / (1 + conj(mu1) mu2)^2, Delta lambda = -8 Im Q
    cplx sigma0{};   // d conj(mu2) / (1 + mu1 conj(mu2))^2, |Delta sigma| = 8 |sigma0|
    double twist_scaled = 0.0;  // Delta lambda
    cplx shear_scaled{};        // Delta sigma (needs mu2 != 0)
};
GraphDensities graph_densities(const Rank2Graph& g, cplx mu1);

// Delta^2 (lambda^2 - |sigma|^2) / 64 = (Im Q)^2 - |sigma0|^2.
double rank2_area_density(const Rank2Graph& g, cplx mu1);

// Maximality residual on the non-Lagrangian branch lambda^2 > |sigma|^2,
// written with the r-independent products Delta lambda and Delta sigma.
cplx maximality_residual(const Rank2Graph& g, cplx mu1);
// Same residual with Delta lambda, Delta sigma assembled from the full
// r-dependent optical scalars at constant r.
cplx maximality_residual(const Rank2Graph& g, cplx mu1, double r);

// d log(conj(sigma0) / sigma0) - 4 conj(mu2) / (1 + mu1 conj(mu2)) on
// Lagrangian graphs.
cplx lagrangian_maximality_residual(const Rank2Graph& g, cplx mu1, double lagrangian_tol = 1e-8);

struct SigmaAngle {
    cplx sigma0{};
    double phi = 0.0;  // arg(sigma0) / 2 in (-pi/2, pi/2]
};
SigmaAngle sigma0_and_angle(const Rank2Graph& g, cplx mu1);

// Removes jumps of pi along column 0 and then along every row of a row-major
// n x n grid of angles.
void unwrap_angle_grid(std::vector<double>& phi, int n);

// ---------------------------------------------------------------------------
// Lagrangian angle

struct AngleField {
    std::function<Jet2(const Jet2&)> phi;

    // phi = a + conj(a), a = (i/2) log((alpha0 mu1 + beta0)^2 - c0) - (i/2) log(alpha0)
    static AngleField closed_form(cplx alpha0, cplx beta0, double c0);
    static AngleField from_phi(std::function<Jet2(const Jet2&)> phi);
};

// exp(-i phi) d^2 exp(-i phi) - |sigma0|.
cplx angle_pde_residual(const AngleField& a, const Rank2Graph& g, cplx mu1);
// |d dbar phi|.
double harmonic_defect(const AngleField& a, cplx mu1);
// i dbar(phi) / (1 - i conj(mu1) dbar(phi)); infinite when the denominator vanishes.
ExtComplex mu2_from_angle(const AngleField& a, cplx mu1);

// ---------------------------------------------------------------------------
// Maximal Lagrangian family conj(mu2) = (a mu1 + b) / (b mu1 + c), ac != b^2.
// The (lambda1, lambda2) chart is b = 1, a = lambda1, c = lambda2.

struct MaximalFamily {
    cplx a{0.0};
    cplx b{1.0};
    cplx c{0.0};
    double r0 = 0.0;

    static MaximalFamily from_lambdas(cplx lam1, cplx lam2, double r0 = 0.0);
    static MaximalFamily from_triple(cplx a, cplx b, cplx c, double r0 = 0.0);
    // Family of the closed-form angle: lambda1 = alpha0 / beta0,
    // lambda2 = (beta0^2 - c0) / (alpha0 beta0).
    static MaximalFamily from_angle(cplx alpha0, cplx beta0, double c0, double r0 = 0.0);

    bool has_lambda_chart() const { return b != cplx(0.0); }
    cplx lam1() const;
    cplx lam2() const;
    cplx det() const { return a * c - b * b; }
    bool degenerate() const;

    // conj(mu2) at mu1 (extended: infinite where b mu1 + c = 0).
    ExtComplex mu2bar(const ExtComplex& mu1) const;
    // Parameter values where the graph leaves the Phi chart or meets the
    // reflected diagonal: roots of a mu^2 + 2 b mu + c, -b/a, -c/b.
    std::vector<ExtComplex> singular_points() const;
    // Distance from mu1 to the nearest finite singular point.
    double singular_distance(cplx mu1) const;
};

Rank2Graph maximal_family_graph(const MaximalFamily& f);

// The two orientations of the tube axis; their first components are the two
// roots of a mu^2 + 2 b mu + c.
std::pair<OrientedGeodesic, OrientedGeodesic> axis_geodesics(const MaximalFamily& f);

// ---------------------------------------------------------------------------
// First variation of area

// amplitude * exp(1 - 1 / (1 - |mu1 - center|^2 / radius^2)) inside the disk.
struct Bump {
    cplx center{};
    double radius = 1.0;
    cplx amplitude{1.0};

    Jet2 operator()(const Jet2& mu1) const;
    double norm() const { return std::abs(amplitude); }
};

struct VariationOptions {
    double eps = 1e-4;
    int panels = 6;             // per direction over the bump's bounding square
    double degenerate_tol = 1e-10;
};

// d/d eps of the area of mu2 + eps * bump at eps = 0 by central differences
// with one Richardson step; the integrand is evaluated on Gauss-Legendre
// panels over the support.
double first_variation(const Rank2Graph& g, const Bump& bump, const VariationOptions& opt = {});

}  // namespace lhyp
