#include "doctest.h"

#include <limits>

#include "scpoly/errors.hpp"
#include "scpoly/sc_types.hpp"

using namespace scpoly;

namespace {

ErrorKind kind_of(auto&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("no error thrown");
    return ErrorKind::InvalidArgument;
}

}  // namespace

TEST_CASE("exponent vectors") {
    const ExponentVector sq({0.5, 0.5, 0.5, 0.5});
    CHECK(sq.size() == 4);
    CHECK(sq.mode() == ExponentMode::standard);
    CHECK(kind_of([] { ExponentVector({0.5, 0.5, 0.5, 0.6}); }) == ErrorKind::InvalidExponent);
    CHECK(kind_of([] { ExponentVector({0.0, 1.0, 1.0}); }) == ErrorKind::InvalidExponent);
    CHECK(kind_of([] { ExponentVector({2.0, 0.5, 0.5, 0.5, 1.5}); }) == ErrorKind::InvalidExponent);
    CHECK(kind_of([] { ExponentVector({std::numeric_limits<double>::infinity(), 0.5, 0.5}); }) ==
          ErrorKind::InvalidExponent);

    // Extended mode lifts the upper bound only.
    const ExponentVector fig({0.2, 0.2, 0.2, 0.2, 2.2}, ExponentMode::extended);
    CHECK(fig.mode() == ExponentMode::extended);
    CHECK(kind_of([] { ExponentVector({0.2, 0.2, 0.2, 0.2, 2.2}); }) == ErrorKind::InvalidExponent);
    CHECK(kind_of([] { ExponentVector({-0.2, 0.2, 0.2, 0.6, 2.2}, ExponentMode::extended); }) ==
          ErrorKind::InvalidExponent);
}

TEST_CASE("prevertices") {
    const Prevertices z({-1.0, 0.0, 2.0});
    CHECK(z.polygon_size() == 4);
    CHECK(z.finite_count() == 3);
    CHECK(kind_of([] { Prevertices({-2.0, 0.0, 1.0}); }) == ErrorKind::NotNormalized);
    CHECK(kind_of([] { Prevertices({-1.0, 0.5}); }) == ErrorKind::NotNormalized);
    CHECK(kind_of([] { Prevertices({-1.0, 0.0, 3.0, 3.0}); }) == ErrorKind::NotIncreasing);
    CHECK(kind_of([] { Prevertices({-1.0, 0.0, 3.0, 2.0}); }) == ErrorKind::NotIncreasing);
    CHECK(kind_of([] { Prevertices({-1.0}); }) == ErrorKind::InvalidArgument);
}

TEST_CASE("SC maps") {
    const SCMap m(Prevertices({-1.0, 0.0, 1.0}), ExponentVector({0.5, 0.5, 0.5, 0.5}), {2.0, 1.0}, {0.0, -1.0});
    CHECK(m.size() == 4);
    CHECK(m.scale() == Complex(2.0, 1.0));
    CHECK(m.offset() == Complex(0.0, -1.0));
    CHECK(m == m);
    CHECK(kind_of([] { SCMap(Prevertices({-1.0, 0.0}), ExponentVector({0.5, 0.5, 0.5, 0.5})); }) ==
          ErrorKind::InvalidArgument);
    CHECK(kind_of([] { SCMap(Prevertices({-1.0, 0.0}), ExponentVector({1.0 / 3, 1.0 / 3, 1.0 / 3}), 0.0); }) ==
          ErrorKind::ZeroScale);
}

TEST_CASE("error classification") {
    CHECK(is_validation_error(ErrorKind::InvalidExponent));
    CHECK(is_validation_error(ErrorKind::NotImmersedInput));
    CHECK_FALSE(is_validation_error(ErrorKind::NoConvergence));
    CHECK_FALSE(is_validation_error(ErrorKind::PathThroughSingularity));
    CHECK_FALSE(is_validation_error(ErrorKind::AngleMismatch));
    CHECK(to_string(ErrorKind::OnBoundary) == "OnBoundary");
}
