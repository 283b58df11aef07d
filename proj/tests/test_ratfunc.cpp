#include "doctest.h"

#include <stdexcept>

#include "errors.hpp"
#include "ratfunc.hpp"
#include "test_util.hpp"

using namespace kipp;

namespace {
const std::vector<std::string> XY = {"x", "y"};

Polynomial X() { return Polynomial::variable("x", XY); }
Polynomial Y() { return Polynomial::variable("y", XY); }
Polynomial C(long v) { return Polynomial::constant(Rational(v), XY); }
RationalFunction RF(const Polynomial& n, const Polynomial& d) { return RationalFunction(n, d); }
}  // namespace

TEST_CASE("canonical form") {
    // (x^2-1)/(x-1) reduces to x+1
    RationalFunction f = RF(X() * X() - C(1), X() - C(1));
    CHECK(f.num() == X() + C(1));
    CHECK(f.den() == C(1));
    // sign carried so the denominator has a positive leading coefficient
    RationalFunction g = RF(X(), -(Y() - X()));
    CHECK(g.den().leading_coefficient() > Rational(0));
    CHECK(g == RF(-X(), Y() - X()));
    // rational content ends up in the numerator
    RationalFunction h = RF(X().scaled(Rational(1, 2)), (Y() * C(2)));
    CHECK(h.den() == Y());
    CHECK(h.num() == X().scaled(Rational(1, 4)));
}

TEST_CASE("arithmetic agrees with evaluation homomorphism") {
    testutil::Rng rng(99);
    int done = 0;
    while (done < 50) {
        RationalFunction f = rng.ratfunc(XY);
        RationalFunction g = rng.ratfunc(XY);
        std::vector<Rational> pt = {rng.rational(), rng.rational()};
        Rational fv, gv;
        try {
            fv = f.evaluate(pt);
            gv = g.evaluate(pt);
        } catch (const DenominatorVanishes&) {
            continue;  // resample the point
        }
        CHECK((f + g).evaluate(pt) == fv + gv);
        CHECK((f - g).evaluate(pt) == fv - gv);
        CHECK((f * g).evaluate(pt) == fv * gv);
        if (!g.is_zero() && !gv.is_zero()) CHECK((f / g).evaluate(pt) == fv / gv);
        ++done;
    }
}

TEST_CASE("differentiation") {
    // d/dx (x^2) = 2x
    RationalFunction f = RationalFunction(X() * X());
    CHECK(f.derivative("x") == RationalFunction(C(2) * X()));
    // d/dx (1/(x-1)) = -1/(x-1)^2
    RationalFunction g = RF(C(1), X() - C(1));
    CHECK(g.derivative("x") == RF(-C(1), (X() - C(1)) * (X() - C(1))));
    // quotient rule result is canonical (gcd-free)
    RationalFunction h = RF(X() * X() - C(1), X() * X() - Y() * Y());
    RationalFunction dh = h.derivative("x");
    CHECK(Polynomial::gcd(dh.num(), dh.den()).is_constant());
}

TEST_CASE("Leibniz rule on random pairs") {
    testutil::Rng rng(31337);
    for (int i = 0; i < 25; ++i) {
        RationalFunction f = rng.ratfunc(XY);
        RationalFunction g = rng.ratfunc(XY);
        for (const char* v : {"x", "y"}) {
            RationalFunction lhs = (f * g).derivative(v);
            RationalFunction rhs = f.derivative(v) * g + f * g.derivative(v);
            CHECK(lhs == rhs);
        }
    }
}

TEST_CASE("evaluation errors on singular locus") {
    RationalFunction g = RF(C(1), X() - C(1));
    CHECK_THROWS_AS(g.evaluate({Rational(1), Rational(0)}), DenominatorVanishes);
    CHECK(g.evaluate({Rational(3), Rational(0)}) == Rational(1, 2));
}

TEST_CASE("powers") {
    RationalFunction f = RF(X() + C(1), X() - C(1));
    RationalFunction f2 = RationalFunction::pow(f, 2);
    CHECK(f2.num() == (X() + C(1)) * (X() + C(1)));
    CHECK(RationalFunction::pow(f, -2) == RF((X() - C(1)) * (X() - C(1)), (X() + C(1)) * (X() + C(1))));
    CHECK(RationalFunction::pow(f, 0).is_one());
    CHECK_THROWS(RationalFunction::pow(RationalFunction(Rational(0), XY), -1));
}
