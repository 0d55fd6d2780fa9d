#pragma once

// Surfaces in H^3 orthogonal to Lagrangian congruences: the r-equation, the
// Phi-sampled surface, family scalars, tube congruences, a numerical shape
// operator and mesh export.

#include <array>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "lhyp/variational.hpp"

namespace lhyp {

// Square n x n grid of parameters; extent is the half-width. Node (i, j) sits
// at center + (-extent + i h) + i (-extent + j h), stored at index j * n + i.
struct ParamGrid {
    cplx center{};
    double extent = 0.5;
    int n = 10;

    double spacing() const { return 2.0 * extent / (n - 1); }
    cplx at(int i, int j) const;
    int index(int i, int j) const { return j * n + i; }
    int size() const { return n * n; }
};

// r = log|1 + lambda1 mu1| + r0.
double r_closed_form_family(const MaximalFamily& f, cplx mu1);

// 2 dr/dnu from the first-order data of the congruence.
cplx r_equation_rhs(const LocalJet& j);

// Nodes whose geodesic is outside the Phi chart (mu2 in {0, inf} or on the
// reflected diagonal).
std::vector<cplx> chart_singular_nodes(const Congruence& c, const ParamGrid& grid);

struct RField {
    ParamGrid grid;
    std::vector<double> values;
    int base_i = 0;
    int base_j = 0;
    double r0 = 0.0;
    double max_defect = 0.0;  // largest loop integral over a grid cell

    double at(int i, int j) const { return values[grid.index(i, j)]; }
};

// Integrates dr = Re(2 dr/dnu * dnu) along grid edges (7-point Gauss per
// edge) over a spanning tree from the base node: along the base row, then up
// and down every column. Any cell loop above defect_tol raises
// IntegrabilityError. Base defaults to the central node.
RField solve_r_pde(const Congruence& c, const ParamGrid& grid, double r0, double defect_tol = 1e-7, int base_i = -1,
                   int base_j = -1);

struct SampledSurface {
    ParamGrid grid;
    std::vector<double> r;
    std::vector<OrientedGeodesic> geodesics;
    std::vector<HalfSpacePoint> points;
    std::vector<TangentH3> normals;                   // unit geodesic direction
    std::vector<std::array<TangentH3, 2>> tangents;   // d/dx, d/dy of nu -> point

    int n() const { return grid.n; }
};

SampledSurface orthogonal_surface(const Congruence& c, const RField& r);

// max over nodes and both tangent directions of |<N, X>| / (|N| |X|), hyperbolic.
double orthogonality_defect(const SampledSurface& s);

// m1 >= m2 = -Re(rho) +- |sigma|; PreconditionError if |Im rho| > tol.
std::pair<double, double> principal_curvatures_from_scalars(cplx rho, cplx sigma, double tol = 1e-9);

struct FamilyScalars {
    cplx sigma{};
    cplx rho{};
    double delta = 0.0;
    double h = 0.0;
    double m1 = 0.0;
    double m2 = 0.0;
};
FamilyScalars family_scalars(const MaximalFamily& f, cplx mu1);

// Normals of the tube around the axis (xi', eta'), parameterized by nu.
std::array<Jet2, 2> tube_congruence_jet(const XiEtaChart& axis, const Jet2& nu);
OrientedGeodesic tube_congruence(const XiEtaChart& axis, cplx nu);
// The symmetric Moebius relation satisfied by the tube congruence:
// (a, b, c) = (1, eta', eta'^2 - 1 / conj(xi')^2).
MaximalFamily tube_family(const XiEtaChart& axis, double r0 = 0.0);

// Symmetric Moebius relation matching conj(mu2) and its mu1-derivative at mu1.
MaximalFamily osculating_family(const Rank2Graph& g, cplx mu1);

struct ShapeSample {
    int i = 0;
    int j = 0;
    double m1 = 0.0;
    double m2 = 0.0;
};

// Principal curvatures with respect to the geodesic direction, from fourth-order
// differences of the sampled points; nodes within two of the border are skipped.
std::vector<ShapeSample> shape_operator_numeric(const SampledSurface& s);

// Gauss curvature of the first fundamental form (Brioschi formula) at interior
// nodes, using the analytic tangents and fourth-order differences of E, F, G.
std::vector<double> gauss_curvature_numeric(const SampledSurface& s);

struct EquidistantResult {
    double defect = 0.0;  // max |d - median d|
    double median = 0.0;
};
EquidistantResult verify_equidistant(const SampledSurface& s, const GeodesicArc& axis);
EquidistantResult verify_equidistant(const SampledSurface& s, const OrientedGeodesic& axis);

enum class MeshFormat { obj, csv };

// Ball-model vertices; OBJ with one quad per grid cell, CSV with parameter columns.
void write_mesh(const SampledSurface& s, std::ostream& out, MeshFormat format);
void export_mesh(const SampledSurface& s, const std::string& path, MeshFormat format);

struct ObjMesh {
    std::vector<std::array<double, 3>> vertices;
    std::vector<std::vector<int>> faces;  // 1-based
};
ObjMesh read_obj(std::istream& in);
ObjMesh read_obj(const std::string& path);

}  // namespace lhyp
