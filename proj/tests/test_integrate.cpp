#include <doctest.h>

#include <cmath>

#include "entsim/integrate.hpp"

using namespace entsim;

TEST_CASE("adaptive stepper reproduces exponential decay") {
    auto f = [](double, const CState<1>& x, CState<1>& dx) { dx[0] = -x[0]; };
    CState<1> x = {cplx(1.0)};
    StepControl ctl;
    advance(f, x, 0.0, 5.0, ctl);
    CHECK(std::abs(x[0] - std::exp(-5.0)) < 1e-9);
}

TEST_CASE("adaptive stepper holds a pure rotation on the unit circle") {
    const double w = 3.0;
    auto f = [&](double, const CState<1>& x, CState<1>& dx) { dx[0] = cplx(0.0, w) * x[0]; };
    CState<1> x = {cplx(1.0)};
    StepControl ctl;
    ctl.rel_tol = 1e-11;
    ctl.abs_tol = 1e-13;
    advance(f, x, 0.0, 20.0, ctl);
    CHECK(std::abs(std::abs(x[0]) - 1.0) < 1e-9);
    CHECK(std::abs(x[0] - std::exp(cplx(0.0, w * 20.0))) < 1e-8);
}

TEST_CASE("coupled pair matches cos/sin") {
    auto f = [](double, const CState<2>& x, CState<2>& dx) {
        dx[0] = x[1];
        dx[1] = -x[0];
    };
    CState<2> x = {cplx(1.0), cplx(0.0)};
    StepControl ctl;
    advance(f, x, 0.0, 7.0, ctl);
    CHECK(std::abs(x[0] - std::cos(7.0)) < 1e-8);
    CHECK(std::abs(x[1] + std::sin(7.0)) < 1e-8);
}

TEST_CASE("fixed-step runs converge at fifth order") {
    auto f = [](double, const CState<1>& x, CState<1>& dx) { dx[0] = cplx(-1.0, 2.0) * x[0]; };
    auto run = [&](double h) {
        CState<1> x = {cplx(1.0)};
        advance_fixed(f, x, 0.0, 2.0, h);
        return x[0];
    };
    const cplx exact = std::exp(cplx(-2.0, 4.0));
    const double e1 = std::abs(run(0.1) - exact);
    const double e2 = std::abs(run(0.05) - exact);
    const double order = std::log2(e1 / e2);
    CHECK(order > 4.0);
    CHECK(order < 6.5);
}

TEST_CASE("step-size underflow is reported, not looped on") {
    // A derivative this steep forces the controller below the representable
    // step floor almost immediately.
    auto f = [](double, const CState<1>& x, CState<1>& dx) { dx[0] = 1e300 * x[0]; };
    CState<1> x = {cplx(1.0)};
    StepControl ctl;
    CHECK_THROWS_AS(advance(f, x, 0.0, 1.0, ctl), StepSizeUnderflow);
}
