#include <doctest.h>

#include "genericlab/tracing.hpp"
#include "support/generators.hpp"

using namespace genericlab;

namespace {
const std::uint64_t H = 64;

DiscreteMeasure two_point(const Rat& w0) {
    return make_measure({{Point::constant(0), w0}, {Point::constant(1), Rat(1) - w0}}, H);
}
} // namespace

TEST_CASE("constant point-mass target builds the fixed point") {
    auto d0 = dirac(Point::constant(0), H);
    auto res = build_generic_point({d0}, make_rat(1, 8), 3, H);
    for (const auto& cert : res.certificate) {
        CHECK(cert.achieved == 0);
        CHECK(cert.pass);
        CHECK(cert.terms_pass);
    }
    CHECK(res.y.prefix(32) == Point::constant(0).prefix(32));
}

TEST_CASE("constant two-point target satisfies every stage bound") {
    auto mu = two_point(make_rat(1, 3));
    auto res = build_generic_point({mu}, make_rat(1, 4), 3, H);
    REQUIRE(res.certificate.size() == 3);
    for (const auto& cert : res.certificate) {
        CHECK(cert.pass);
        CHECK(cert.terms_pass);
        CHECK(cert.achieved <= cert.bound);
    }
    // lengths satisfy the stage constraints
    for (int n = 1; n <= 3; ++n) {
        CHECK(res.state.ell[n] * res.state.K[n] >=
              static_cast<std::uint64_t>(n) * res.state.L[n - 1]);
        CHECK(res.state.ell[n] * res.state.K[n] >=
              static_cast<std::uint64_t>(n + 1) * res.state.K[n + 1]);
        CHECK(res.state.L[n] == res.state.L[n - 1] + res.state.ell[n] * res.state.K[n]);
    }
}

TEST_CASE("interpolated swings between point masses track their stage targets") {
    auto d0 = dirac(Point::constant(0), H);
    auto d1 = dirac(Point::constant(1), H);
    auto mid = two_point(make_rat(1, 2));
    std::vector<DiscreteMeasure> mus{d0, mid, d1, mid};
    auto res = build_generic_point(mus, make_rat(1, 4), 4, H);
    for (const auto& cert : res.certificate) {
        CHECK(cert.pass);
        CHECK(cert.terms_pass);
    }
}

TEST_CASE("earlier stages are unchanged by later ones") {
    auto mu = two_point(make_rat(1, 2));
    auto short_build = build_generic_point({mu}, make_rat(1, 4), 2, H);
    auto long_build = build_generic_point({mu}, make_rat(1, 4), 4, H);
    const std::uint64_t L2 = short_build.state.L[2];
    CHECK(long_build.state.L[2] == L2);
    CHECK(short_build.y.prefix(L2) == long_build.y.prefix(L2));
}

TEST_CASE("length caps refuse oversized builds") {
    auto mu = two_point(make_rat(1, 2));
    CHECK_THROWS_AS(build_generic_point({mu}, make_rat(1, 8), 6, H, 10'000), BudgetError);
}
