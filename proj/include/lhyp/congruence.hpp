#pragma once

// Two-parameter families of oriented geodesics nu -> (mu1, mu2) and their
// first-order invariants: Jacobians J_kl, Delta, the optical scalars rho and
// sigma, the Lagrangian test, rank and the induced metric.

#include <Eigen/Dense>
#include <array>
#include <functional>
#include <vector>

#include "lhyp/charts.hpp"
#include "lhyp/jet.hpp"

namespace lhyp {

// Second-order jets of mu1 and mu2 at a parameter value.
struct LocalJet {
    Jet2 mu1;
    Jet2 mu2;
};

class Congruence {
public:
    using JetMap = std::function<std::array<Jet2, 2>(const Jet2&)>;
    using ValueMap = std::function<std::array<cplx, 2>(cplx)>;

    // Derivatives propagated exactly through Jet2 arithmetic.
    static Congruence analytic(JetMap f);
    // Central differences with Richardson extrapolation; step h for first
    // derivatives, a coarser step for second derivatives.
    static Congruence sampled(ValueMap f, double h = 1e-5);

    std::array<cplx, 2> value(cplx nu) const;
    LocalJet jet(cplx nu) const;
    bool is_analytic() const { return static_cast<bool>(jet_map_); }
    double step() const { return h_; }

private:
    JetMap jet_map_;
    ValueMap value_map_;
    double h_ = 0.0;
};

// mu2 = F(mu1, conj(mu1)) parameterized by nu = mu1.
struct Rank2Graph {
    std::function<Jet2(const Jet2&)> mu2;

    // Graph given through conj(mu2) as a function of mu1.
    static Rank2Graph from_mu2bar(std::function<Jet2(const Jet2&)> mu2bar);

    Jet2 mu2_jet(cplx mu1) const { return mu2(Jet2::variable(mu1)); }
    Congruence congruence() const;
};

// Index order of the Jacobian table: mu1, mu2, conj(mu1), conj(mu2).
enum JacIndex { kMu1 = 0, kMu2 = 1, kMu1b = 2, kMu2b = 3 };

struct Jacobians {
    std::array<std::array<cplx, 4>, 4> J{};
    cplx operator()(int k, int l) const { return J[k][l]; }
};

Jacobians jacobians(const LocalJet& j);
Jacobians jacobians(const Congruence& c, cplx nu);

struct OpticalData {
    cplx rho{};
    cplx sigma{};
    double delta = 0.0;
    double theta = 0.0;   // Re rho
    double lambda = 0.0;  // Im rho, the twist
    double r = 0.0;
};

// Delta, Delta*sigma and Delta*rho from first-order data. T is cplx or Jet1;
// with Jet1 the results carry their own first derivatives in nu.
template <class T>
struct ScaledOptics {
    T delta;
    T delta_sigma;
    T delta_rho;
};

namespace detail {
inline cplx cj(cplx a) { return std::conj(a); }
inline Jet1 cj(const Jet1& a) { return conj(a); }
}  // namespace detail

template <class T>
ScaledOptics<T> scaled_optics(const T& mu1, const T& mu2, const T& d1, const T& db1, const T& d2, const T& db2,
                              double r)
{
    using detail::cj;
    // Wirtinger derivatives of conj(mu1), conj(mu2)
    const T d1b = cj(db1), db1b = cj(d1);
    const T d2b = cj(db2), db2b = cj(d2);
    auto jac = [](const T& dk, const T& dbk, const T& dl, const T& dbl) { return dk * dbl - dbk * dl; };
    const T J22b = jac(d2, db2, d2b, db2b);
    const T J2b1 = jac(d2b, db2b, d1, db1);
    const T J1b2 = jac(d1b, db1b, d2, db2);
    const T J11b = jac(d1, db1, d1b, db1b);
    const T J2b1b = jac(d2b, db2b, d1b, db1b);
    const T J21b = jac(d2, db2, d1b, db1b);

    const T p = 1.0 + mu1 * cj(mu2);
    const T pb = cj(p);
    const T absp2 = p * pb;
    const T absmu2 = mu2 * cj(mu2);
    const double e2 = std::exp(2.0 * r);
    const double em2 = std::exp(-2.0 * r);

    const T far = absmu2 * J11b * em2 / absp2;
    const T delta =
        4.0 * (J22b * e2 / (absmu2 * absp2) + J2b1 / (p * p) + J1b2 / (pb * pb) + far);
    const T delta_sigma = 8.0 * mu2 * J2b1b / (cj(mu2) * absp2);
    const T delta_rho = -delta - 8.0 * (J21b / (pb * pb) - far);
    return {delta, delta_sigma, delta_rho};
}

OpticalData optical_scalars(const LocalJet& j, double r);
OpticalData optical_scalars(const Congruence& c, cplx nu, double r);

double lagrangian_defect(const LocalJet& j);
double lagrangian_defect(const Congruence& c, cplx nu);

struct RankResult {
    int rank = 0;
    bool indeterminate = false;
    std::array<double, 2> singular_values{};
};
// Real rank of nu -> mu1; singular values below 1e-8 count as zero, those in
// [1e-8, 1e-6] set the indeterminate flag.
RankResult rank(const LocalJet& j);
RankResult rank(const Congruence& c, cplx nu);

// g_ij = G(f_* e_i, f_* e_j) for the real coordinates nu = x + i y.
Eigen::Matrix2d pullback_metric(const LocalJet& j);
Eigen::Matrix2d pullback_metric(const Congruence& c, cplx nu);

enum class MetricClass { riemannian, lorentz, degenerate };
const char* to_string(MetricClass m);

// Sign of |Delta sigma|^2 - (Delta lambda)^2, which is r-independent; values
// within 1e-10 + 1e-9 * scale of zero are degenerate.
MetricClass classify_metric(const LocalJet& j);
MetricClass classify_metric(const Congruence& c, cplx nu);
MetricClass classify_pullback(const Eigen::Matrix2d& g, double tol = 1e-10);

// |Delta sigma|, independent of r.
double complex_point_defect(const LocalJet& j);
double complex_point_defect(const Congruence& c, cplx nu);

// sup over samples of |d mu2 / d mu1|.
double flatness_defect(const Rank2Graph& g, const std::vector<cplx>& samples);

}  // namespace lhyp
