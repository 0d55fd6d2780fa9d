#pragma once

// The neutral Kaehler structure (J, Omega, G) on the space of oriented
// geodesics, evaluated in the (mu1, mu2) chart. With P = 1 + mu1 conj(mu2):
//   G(u, v)     =  Im[(u1 conj(v2) + v1 conj(u2)) / P^2]
//   Omega(u, v) = -Re[(u1 conj(v2) - v1 conj(u2)) / P^2]
// so that G(u, v) = Omega(J u, v) with J multiplication by i.

#include <Eigen/Dense>

#include "lhyp/charts.hpp"

namespace lhyp {

struct TangentL {
    OrientedGeodesic base;
    cplx dmu1{};
    cplx dmu2{};
};

TangentL complex_structure(const TangentL& u);
double symplectic_form(const TangentL& u, const TangentL& v);
double metric(const TangentL& u, const TangentL& v);

// Same forms with the base given directly by finite chart coordinates.
double symplectic_form(cplx mu1, cplx mu2, cplx u1, cplx u2, cplx v1, cplx v2);
double metric(cplx mu1, cplx mu2, cplx u1, cplx u2, cplx v1, cplx v2);

// Gram matrices in the real basis (Re dmu1, Im dmu1, Re dmu2, Im dmu2).
Eigen::Matrix4d gram_matrix(const OrientedGeodesic& base);
Eigen::Matrix4d symplectic_matrix(const OrientedGeodesic& base);

struct Signature {
    int positive = 0;
    int negative = 0;
    int zero = 0;
};
Signature metric_signature(const OrientedGeodesic& base, double tol = 1e-12);

// Max |dOmega_ijk| over the four coordinate 3-planes, by central differences
// of step h in the real chart coordinates.
double closedness_defect(const OrientedGeodesic& base, double h);

}  // namespace lhyp
