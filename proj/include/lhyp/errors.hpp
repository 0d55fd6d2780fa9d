#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "lhyp/jet.hpp"

namespace lhyp {

// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A point lies outside the model it was handed to (|y| >= 1, t <= 0, ...).
class ModelDomainError : public Error {
public:
    using Error::Error;
};

// A tangent vector that was required to be unit length is not.
class NormalizationError : public Error {
public:
    using Error::Error;
};

// The ODE integrator left the half-space.
class NumericalBlowupError : public Error {
public:
    using Error::Error;
};

// A bracketed minimization found its optimum on the bracket boundary.
class SearchDomainError : public Error {
public:
    using Error::Error;
};

// Oriented geodesic with coincident endpoints (on the reflected diagonal).
class InvalidGeodesicError : public Error {
public:
    using Error::Error;
};

// A chart formula is singular at the given input.
class ChartError : public Error {
public:
    using Error::Error;
};

// Optical scalars blow up (Delta = 0).
class CausticError : public Error {
public:
    using Error::Error;
};

// An operation was called outside its documented precondition.
class PreconditionError : public Error {
public:
    using Error::Error;
};

// Maximality residual called on the wrong branch (Lagrangian vs not).
class BranchError : public Error {
public:
    using Error::Error;
};

// Finite-difference derivative oracle cannot resolve the derivative.
class DerivativeError : public Error {
public:
    using Error::Error;
};

// lambda1 * lambda2 = 1: the family degenerates to a totally null surface.
class DegenerateFamilyError : public Error {
public:
    using Error::Error;
};

// The induced metric or first fundamental form is singular.
class DegenerateMetricError : public Error {
public:
    using Error::Error;
};

// The r-equation is not an exact differential on the grid.
class IntegrabilityError : public Error {
public:
    IntegrabilityError(const std::string& what, double max_defect)
        : Error(what), max_defect_(max_defect) {}
    double max_defect() const { return max_defect_; }

private:
    double max_defect_;
};

// Chart-singular parameter values encountered while sampling a grid.
class SingularPointsError : public Error {
public:
    SingularPointsError(const std::string& what, std::vector<cplx> points)
        : Error(what), points_(std::move(points)) {}
    const std::vector<cplx>& points() const { return points_; }

private:
    std::vector<cplx> points_;
};

class IoError : public Error {
public:
    using Error::Error;
};

// Malformed user input: expressions, JSON documents, flag values.
class InputError : public Error {
public:
    using Error::Error;
};

}  // namespace lhyp
