#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <optional>
#include <random>

#include "ifcr/model.hpp"
#include "support/test_rng.hpp"

using namespace ifcr;

namespace {

template <typename F>
std::optional<errc> thrown_code(F&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    return std::nullopt;
}

}  // namespace

TEST_CASE("gaussian validation accepts the unit channel") {
    GaussianChannel ch;
    CHECK_NOTHROW(validate(ch));
}

TEST_CASE("gaussian validation rejects negative magnitudes") {
    GaussianChannel ch;
    ch.h11 = -1.0;
    CHECK(thrown_code([&] { validate(ch); }) == errc::negative_magnitude);
}

TEST_CASE("gaussian cross gains may be complex") {
    GaussianChannel ch;
    ch.h12 = cplx(3.0, 4.0);
    CHECK_NOTHROW(validate(ch));
}

TEST_CASE("gaussian validation rejects non-finite gains") {
    GaussianChannel ch;
    ch.h21 = cplx(std::numeric_limits<double>::quiet_NaN(), 0.0);
    CHECK(thrown_code([&] { validate(ch); }) == errc::nonfinite);
}

TEST_CASE("raw channel validation rejects nonpositive powers and noise") {
    RawGaussianChannel raw;
    raw.p1 = 0.0;
    CHECK(thrown_code([&] { validate(raw); }) == errc::bad_value);
    raw.p1 = 1.0;
    raw.noiseVar2 = -0.5;
    CHECK(thrown_code([&] { validate(raw); }) == errc::bad_value);
}

TEST_CASE("beta split validation enforces the unit ball") {
    BetaSplit ok{cplx(0.6), cplx(0.8)};
    CHECK_NOTHROW(validate(ok));
    BetaSplit bad{cplx(0.9), cplx(0.9)};
    CHECK(thrown_code([&] { validate(bad); }) == errc::invalid_beta);
}

TEST_CASE("gaussian swap_roles exchanges the user indices") {
    GaussianChannel ch;
    ch.h11 = 1.0;
    ch.h12 = 2.0;
    ch.h1c = 3.0;
    ch.h21 = 4.0;
    ch.h22 = 5.0;
    ch.h2c = 6.0;
    const GaussianChannel s = swap_roles(ch);
    CHECK(s.h11 == 5.0);
    CHECK(s.h12 == cplx(4.0));
    CHECK(s.h1c == 6.0);
    CHECK(s.h21 == cplx(2.0));
    CHECK(s.h22 == 1.0);
    CHECK(s.h2c == 3.0);
}

TEST_CASE("gaussian swap_roles is an involution and fixes symmetric channels") {
    std::mt19937_64 rng(11);
    for (int i = 0; i < 50; ++i) {
        const GaussianChannel ch = test_rng::random_channel(rng);
        const GaussianChannel twice = swap_roles(swap_roles(ch));
        CHECK(twice.h11 == ch.h11);
        CHECK(twice.h12 == ch.h12);
        CHECK(twice.h1c == ch.h1c);
        CHECK(twice.h21 == ch.h21);
        CHECK(twice.h22 == ch.h22);
        CHECK(twice.h2c == ch.h2c);
    }
    GaussianChannel sym;
    sym.h11 = sym.h22 = 1.5;
    sym.h12 = sym.h21 = cplx(0.25, 0.5);
    sym.h1c = sym.h2c = 0.75;
    const GaussianChannel s = swap_roles(sym);
    CHECK(s.h11 == sym.h11);
    CHECK(s.h12 == sym.h12);
    CHECK(s.h1c == sym.h1c);
}

TEST_CASE("discrete validation accepts exact conditional pmfs") {
    DiscreteChannel singleton;
    singleton.t = {1.0};
    CHECK_NOTHROW(validate(singleton));

    DiscreteChannel uniform;
    uniform.n1 = uniform.n2 = uniform.nc = uniform.m1 = uniform.m2 = 2;
    uniform.t.assign(32, 0.25);
    CHECK_NOTHROW(validate(uniform));

    std::mt19937_64 rng(7);
    for (int i = 0; i < 30; ++i) CHECK_NOTHROW(validate(test_rng::random_discrete_channel(rng)));
}

TEST_CASE("discrete validation reports the worst slice deviation") {
    DiscreteChannel ch;
    ch.n1 = ch.n2 = ch.nc = ch.m1 = ch.m2 = 2;
    ch.t.assign(32, 0.25);
    // knock one slice down to a 0.9 total
    ch.t[ch.index(0, 0, 1, 0, 1)] = 0.15;
    try {
        validate(ch);
        FAIL("expected NOT_NORMALIZED");
    } catch (const Error& e) {
        CHECK(e.code() == errc::not_normalized);
        CHECK(std::string(e.what()).find("0.1") != std::string::npos);
    }
}

TEST_CASE("discrete validation rejects negative entries and bad shapes") {
    DiscreteChannel ch;
    ch.n1 = ch.n2 = ch.nc = ch.m1 = ch.m2 = 2;
    ch.t.assign(32, 0.25);
    ch.t[3] = -0.25;
    CHECK(thrown_code([&] { validate(ch); }) == errc::negative_probability);

    DiscreteChannel shape;
    shape.n1 = 2;
    shape.t.assign(3, 0.5);
    CHECK(thrown_code([&] { validate(shape); }) == errc::shape_mismatch);
}

TEST_CASE("discrete swap_roles relabels both input and output axes") {
    std::mt19937_64 rng(23);
    const DiscreteChannel ch = test_rng::random_discrete_channel(rng);
    const DiscreteChannel s = swap_roles(ch);
    CHECK(s.n1 == ch.n2);
    CHECK(s.m2 == ch.m1);
    for (int y1 = 0; y1 < s.m1; ++y1)
        for (int y2 = 0; y2 < s.m2; ++y2)
            for (int x1 = 0; x1 < s.n1; ++x1)
                for (int x2 = 0; x2 < s.n2; ++x2)
                    for (int xc = 0; xc < s.nc; ++xc)
                        CHECK(s(y1, y2, x1, x2, xc) == ch(y2, y1, x2, x1, xc));
    const DiscreteChannel twice = swap_roles(s);
    CHECK(twice.t == ch.t);
}

TEST_CASE("product distribution validation") {
    ProductInputDistribution d;
    d.p1 = {0.5, 0.5};
    d.p2 = {1.0};
    d.pc = {0.25, 0.75, 0.9, 0.1};
    CHECK_NOTHROW(validate(d));
    d.pc[0] = 0.24;
    CHECK(thrown_code([&] { validate(d); }) == errc::not_normalized);
    d.pc = {0.25, 0.75, 1.0};  // not a multiple of |X1| * |X2|
    CHECK(thrown_code([&] { validate(d); }) == errc::shape_mismatch);
}

TEST_CASE("auxiliary distribution validation and trivial wrapper") {
    ProductInputDistribution d;
    d.p1 = {0.5, 0.5};
    d.p2 = {0.5, 0.5};
    d.pc = {1.0, 0.0, 0.0, 1.0, 0.0, 1.0, 1.0, 0.0};
    const AuxiliaryDistribution a = AuxiliaryDistribution::trivial(d);
    CHECK_NOTHROW(validate(a));
    AuxiliaryDistribution broken = a;
    broken.u[0] = 0.5;
    CHECK(thrown_code([&] { validate(broken); }) == errc::not_normalized);
}

TEST_CASE("pentagon validation requires nonnegative finite bounds") {
    Pentagon p{1.0, 1.0, 1.5, std::nullopt};
    CHECK_NOTHROW(validate(p));
    p.r2Max = -0.1;
    CHECK(thrown_code([&] { validate(p); }) == errc::bad_value);
}
