#include "npspec/conformal.hpp"

#include "npspec/io.hpp"
#include "test_util.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace npspec;
using namespace npspec::testing;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("translated disk preset") {
    const auto map = make_translated_disk(cplx{1.0, 0.0}, 1.21, 16);
    CHECK(map.direction == Direction::forward);
    CHECK(map.tail.coeff(1) == cplx{1.0, 0.0});
    CHECK(map.tail.coeff(0) == cplx{1.0, 0.0});
    for (int j = 1; j <= 14; ++j) CHECK(map.tail.coeff(-j) == cplx{0.0, 0.0});

    const auto id = make_translated_disk(cplx{0.0, 0.0}, 1.0, 8);
    CHECK(id.tail.coeff(0) == cplx{0.0, 0.0});

    const auto im = make_translated_disk(cplx{0.0, 0.3}, 1.0, 8);
    CHECK(im.tail.coeff(0) == cplx{0.0, 0.3});

    CHECK_THROWS_AS(make_translated_disk(cplx{1.0, 0.0}, 0.9, 8), validation_error);
}

TEST_CASE("joukowski preset") {
    const auto circle = make_joukowski(0.0, 1.0, 8);
    CHECK(circle.tail.coeff(-1) == cplx{0.0, 0.0});

    const auto map = make_joukowski(0.5, 1.0, 8);
    CHECK(map.tail.coeff(-1) == cplx{0.5, 0.0});
    // semi-axes R + q/R and R - q/R
    CHECK(close(eval_on_circle(map.tail, 1.0, 0.0), cplx{1.5, 0.0}, 1e-15));
    CHECK(close(eval_on_circle(map.tail, 1.0, kPi / 2), cplx{0.0, 0.5}, 1e-15));

    CHECK_THROWS_AS(make_joukowski(1.0, 1.0, 8), validation_error);
    CHECK_THROWS_AS(make_joukowski(-1.3, 1.1, 8), validation_error);
}

TEST_CASE("m-star preset") {
    const auto one = make_mstar(1, 1.1, 12);
    CHECK(close(one.tail.coeff(1), 1.0, 1e-15));
    CHECK(close(one.tail.coeff(0), 2.0, 1e-15));
    CHECK(close(one.tail.coeff(-1), 1.0, 1e-15));
    for (int j = 2; j <= 8; ++j) CHECK(std::abs(one.tail.coeff(-j)) == 0.0);

    const auto two = make_mstar(2, 1.21, 12);
    CHECK(close(two.tail.coeff(1), 1.0, 1e-15));
    CHECK(close(two.tail.coeff(-1), 1.0, 1e-15));
    CHECK(two.tail.coeff(0) == cplx{0.0, 0.0});
    CHECK(std::abs(two.tail.coeff(-3)) == 0.0);
    CHECK(close(two.radius, 1.1, 1e-15));

    const auto four = make_mstar(4, 1.1, 64);
    CHECK(close(four.radius, std::pow(1.1, 0.25), 1e-15));
    CHECK(four.power.has_value());
    CHECK(four.power->alpha == Rational(1, 2));

    CHECK_THROWS_AS(make_mstar(3, 1.0, 8), validation_error);
    CHECK_THROWS_AS(make_mstar(0, 1.1, 8), validation_error);
}

TEST_CASE("lemniscate preset") {
    // Cassini oval: P(z) = z^2 - 1
    const auto cass = make_lemniscate({cplx{-1.0, 0.0}, cplx{0.0, 0.0}, cplx{1.0, 0.0}}, 1.1, 32);
    CHECK(cass.direction == Direction::inverse);
    CHECK(close(cass.tail.coeff(-1), -0.5, 1e-15));
    CHECK(cass.tail.coeff(0) == cplx{0.0, 0.0});
    CHECK(close(cass.tail.coeff(-3), -0.125, 1e-15));

    const auto line = make_lemniscate({cplx{0.0, 0.0}, cplx{1.0, 0.0}}, 1.3, 16);
    for (int j = 0; j <= 10; ++j) CHECK(line.tail.coeff(-j) == cplx{0.0, 0.0});

    const auto cubic = make_lemniscate({cplx{-1.0, 0.0}, cplx{0.0, 0.0}, cplx{0.0, 0.0}, cplx{1.0, 0.0}}, 1.2, 32);
    CHECK(close(cubic.tail.coeff(-2), -1.0 / 3.0, 1e-15));

    // below the critical level the curve splits into two ovals and no longer
    // encloses both roots
    CHECK_THROWS_AS(make_lemniscate({cplx{-1.0, 0.0}, cplx{0.0, 0.0}, cplx{1.0, 0.0}}, 0.9, 32), validation_error);
    CHECK_THROWS_AS(make_lemniscate({cplx{-1.0, 0.0}, cplx{0.0, 0.0}, cplx{2.0, 0.0}}, 1.1, 8), validation_error);
}

TEST_CASE("mth_root_transform") {
    const auto shift = make_translated_disk(cplx{1.0, 0.0}, 1.21, 24);
    const auto cass = mth_root_transform(shift, 2);
    CHECK(close(cass.radius, 1.1, 1e-15));
    CHECK(close(cass.tail.coeff(1), 1.0, 1e-15));
    CHECK(close(cass.tail.coeff(-1), 0.5, 1e-15));
    CHECK(close(cass.tail.coeff(-3), -0.125, 1e-15));
    CHECK(close(cass.tail.coeff(-5), 1.0 / 16.0, 1e-15));
    CHECK(cass.tail.coeff(0) == cplx{0.0, 0.0});
    CHECK(cass.tail.coeff(-2) == cplx{0.0, 0.0});

    const auto same = mth_root_transform(shift, 1);
    CHECK(max_coeff_distance(same.tail, shift.tail) == 0.0);

    auto inv = make_lemniscate({cplx{-1.0, 0.0}, cplx{0.0, 0.0}, cplx{1.0, 0.0}}, 1.1, 16);
    CHECK_THROWS_AS(mth_root_transform(inv, 2), validation_error);
}

TEST_CASE("transform tails live on the 1 (mod m) lattice") {
    for (int m : {2, 3, 5}) {
        const auto base = make_joukowski(0.4, 1.2, 40);
        const auto t = mth_root_transform(base, m);
        for (int e = t.tail.top_degree(); e >= t.tail.bottom_degree(); --e)
            if (((e % m) + m) % m != 1 % m) CHECK(t.tail.coeff(e) == cplx{0.0, 0.0});
    }
}

TEST_CASE("m-fold rotational symmetry of transformed maps") {
    const auto t = mth_root_transform(make_joukowski(0.5, 1.2, 64), 3);
    const cplx zeta = std::polar(1.0, 2.0 * kPi / 3.0);
    for (int i = 0; i < 7; ++i) {
        const double theta = 0.9 * i;
        const cplx lhs = eval_on_circle(t.tail, t.radius, theta + 2.0 * kPi / 3.0);
        const cplx rhs = zeta * eval_on_circle(t.tail, t.radius, theta);
        CHECK(close(lhs, rhs, 1e-12));
    }
}

TEST_CASE("root transform of a lemniscate is the strided lemniscate") {
    const std::vector<cplx> poly{cplx{-1.0, 0.0}, cplx{0.0, 0.0}, cplx{1.0, 0.0}}; // z^2 - 1
    const int m = 3;
    const auto base = make_lemniscate(poly, 1.2, 30);
    const auto transformed = mth_root_transform(base.forward_form(30), m);

    // P(z^m) pattern: z^6 - 1, level preserved through radius^{1/m}
    std::vector<cplx> strided(7, cplx{0.0, 0.0});
    strided[0] = cplx{-1.0, 0.0};
    strided[6] = cplx{1.0, 0.0};
    const auto direct = make_lemniscate(strided, std::pow(1.2, 1.0 / m), 30);
    CHECK(close(transformed.radius, direct.radius, 1e-14));
    CHECK(max_coeff_distance(transformed.tail, direct.forward_form(30).tail) < 1e-12);
}

TEST_CASE("sample_boundary: identity and joukowski") {
    const auto id = make_translated_disk(cplx{0.0, 0.0}, 1.0, 16);
    const auto curve = sample_boundary(id, 16);
    CHECK(curve.winding == 1);
    for (size_t i = 0; i < curve.points.size(); ++i) {
        CHECK(close(curve.normals[i], curve.points[i], 1e-13));
        CHECK(close(curve.speeds[i], 1.0, 1e-13));
        CHECK(close(curve.curvatures[i], 1.0, 1e-12));
        CHECK(close(std::abs(curve.normals[i]), 1.0, 1e-13));
    }

    const auto jk = make_joukowski(0.5, 1.0, 32);
    const auto jc = sample_boundary(jk, 32);
    CHECK(close(jc.points[0], cplx{1.5, 0.0}, 1e-14));
    CHECK(close(jc.normals[0], cplx{1.0, 0.0}, 1e-13));

    CHECK_THROWS_AS(sample_boundary(id, 15), validation_error);
    CHECK_THROWS_AS(sample_boundary(id, 8), validation_error);
}

TEST_CASE("sample_boundary: winding holds for the catalog") {
    const ExteriorMap maps[] = {
        make_translated_disk(cplx{0.4, 0.2}, 1.0, 64),
        make_joukowski(0.9, 1.1, 64),
        make_mstar(5, 1.1, 64),
        make_lemniscate({cplx{-1.0, 0.0}, cplx{0.0, 0.0}, cplx{1.0, 0.0}}, 1.1, 64),
    };
    for (const auto& map : maps) {
        const auto curve = sample_boundary(map, 128);
        CHECK(curve.winding == 1);
        for (double s : curve.speeds) CHECK(s > 0.0);
    }
}

TEST_CASE("closed-form and series boundary evaluation agree") {
    auto map = make_mstar(3, 1.3, 96);
    const auto closed = sample_boundary(map, 32);
    map.power.reset(); // force the series path
    const auto series = sample_boundary(map, 32);
    for (size_t i = 0; i < closed.points.size(); ++i) {
        CHECK(close(closed.points[i], series.points[i], 1e-12));
        CHECK(close(closed.normals[i], series.normals[i], 1e-11));
        CHECK(close(closed.curvatures[i], series.curvatures[i], 1e-7));
    }
}

TEST_CASE("map JSON round trip is bit-exact") {
    const auto map = make_mstar(3, 1.1, 48);
    const ordered_json j1 = map_to_json(map);
    const ExteriorMap back = map_from_json(j1);
    const ordered_json j2 = map_to_json(back);
    CHECK(j1.dump() == j2.dump());
    REQUIRE(back.tail.trunc_order() == map.tail.trunc_order());
    for (int e = map.tail.top_degree(); e >= map.tail.bottom_degree(); --e) {
        const cplx a = map.tail.coeff(e), b = back.tail.coeff(e);
        CHECK(a.real() == b.real());
        CHECK(a.imag() == b.imag());
    }
    CHECK(back.radius == map.radius);

    ordered_json bad = j1;
    bad["coeffs"][0][0] = 2.0;
    CHECK_THROWS_AS(map_from_json(bad), validation_error);
    bad = j1;
    bad["direction"] = "sideways";
    CHECK_THROWS_AS(map_from_json(bad), validation_error);
}

TEST_CASE("forward_form of closed-form lemniscates avoids reversion") {
    const auto cass = make_lemniscate({cplx{-1.0, 0.0}, cplx{0.0, 0.0}, cplx{1.0, 0.0}}, 1.1, 24);
    const auto fwd = cass.forward_form(200); // deeper than the stored window
    CHECK(fwd.direction == Direction::forward);
    CHECK(fwd.power.has_value());
    CHECK(close(fwd.tail.coeff(-1), 0.5, 1e-15));
    CHECK(close(fwd.tail.coeff(-3), -0.125, 1e-15));
    // composing with the inverse tail gives the identity
    const auto id = compose_maps(fwd.tail.truncated(24), cass.tail);
    CHECK(close(id.coeff(1), 1.0, 1e-13));
    for (int e = 0; e > -16; --e) CHECK(std::abs(id.coeff(e)) < 1e-12);
}
