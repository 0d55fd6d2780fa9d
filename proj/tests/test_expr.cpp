#include <cmath>

#include "doctest.h"
#include "lhyp/errors.hpp"
#include "lhyp/expr.hpp"

using namespace lhyp;

TEST_CASE("expression values")
{
    const cplx z(0.3, -0.7);
    CHECK(std::abs(Expr::parse("i*nu")(z) - kI * z) < 1e-15);
    CHECK(std::abs(Expr::parse("2 + 3*4")(z) - 14.0) == 0.0);
    CHECK(std::abs(Expr::parse("2^3^2")(z) - 512.0) < 1e-12);
    CHECK(std::abs(Expr::parse("-2^2")(z) + 4.0) < 1e-15);
    CHECK(std::abs(Expr::parse("(mu1 + 1)/(mu1 - 1)")(z) - (z + 1.0) / (z - 1.0)) < 1e-15);
    CHECK(std::abs(Expr::parse("conj(z)^2")(z) - std::conj(z) * std::conj(z)) < 1e-15);
    CHECK(std::abs(Expr::parse("exp(i*pi)")(z) + 1.0) < 1e-15);
    CHECK(std::abs(Expr::parse("abs(nu)")(z) - std::abs(z)) < 1e-15);
    CHECK(std::abs(Expr::parse("re(nu) + im(nu) + abs2(nu)")(z) - (z.real() + z.imag() + std::norm(z))) < 1e-15);
    CHECK(std::abs(Expr::parse("sqrt(nu)*sqrt(nu)")(z) - z) < 1e-15);
    CHECK(std::abs(Expr::parse("nu^0.5")(z) - std::sqrt(z)) < 1e-14);
    CHECK(std::abs(Expr::parse("1.5e-1 * e")(z) - 0.15 * M_E) < 1e-15);
    CHECK(std::abs(Expr::parse("tanh(nu) - sinh(nu)/cosh(nu)")(z)) < 1e-15);
    CHECK(std::abs(Expr::parse("sin(nu)^2 + cos(nu)^2")(z) - 1.0) < 1e-14);
    CHECK(std::abs(Expr::parse("log(exp(nu))")(z) - z) < 1e-15);
}

TEST_CASE("expression derivatives")
{
    const cplx z(0.4, 0.2);
    const Jet2 x = Jet2::variable(z);
    // mu1^2 conj(mu1): d = 2 mu1 conj(mu1), dbar = mu1^2
    const Jet2 j = Expr::parse("mu1^2*conj(mu1)")(x);
    const Jet2 ref = x * x * conj(x);
    CHECK(std::abs(j.d - 2.0 * z * std::conj(z)) < 1e-15);
    CHECK(std::abs(j.db - z * z) < 1e-15);
    CHECK(std::abs(j.dd - ref.dd) + std::abs(j.ddb - ref.ddb) + std::abs(j.dbdb - ref.dbdb) < 1e-15);
    // non-integer power goes through exp(b log a)
    const Jet2 p = Expr::parse("nu^1.5")(x);
    CHECK(std::abs(p.d - 1.5 * std::sqrt(z)) < 1e-14);
}

TEST_CASE("expression errors carry the position")
{
    for (const char* bad : {"", "nu +", "(nu", "foo(nu)", "nu $ 2", "sin nu", "2 3", "nu)"})
        CHECK_THROWS_AS(Expr::parse(bad), InputError);
    try {
        Expr::parse("nu + bar");
        FAIL("expected InputError");
    } catch (const InputError& e) {
        CHECK(std::string(e.what()).find("position 5") != std::string::npos);
    }
    CHECK(Expr::parse(" i * nu ").source() == " i * nu ");
}
