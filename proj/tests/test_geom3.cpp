#include <doctest.h>

#include <random>
#include <tuple>

#include "chernlink/errors.hpp"
#include "chernlink/geom3.hpp"
#include "chernlink/model.hpp"
#include "test_support.hpp"

using namespace chernlink;
using namespace chernlink::testing;

TEST_CASE("rotate_about_axis follows the right-hand rule") {
    const Vec3 r = rotate_about_axis({0, 0, -1}, {1, 0, 0}, kPi / 2);
    CHECK(max_abs_diff(r, {0, 1, 0}) < 1e-15);

    const Vec3 v{0.3, -1.2, 2.5};
    CHECK(rotate_about_axis(v, {0, 1, 0}, 0.0) == v);
    CHECK(max_abs_diff(rotate_about_axis({0, 0, 1}, {0, 0, 1}, 1.23), {0, 0, 1}) < 1e-15);
}

TEST_CASE("rotate_about_axis rejects a non-unit axis") {
    CHECK_THROWS_AS(rotate_about_axis({1, 0, 0}, {0, 0, 2}, 0.1), ContractViolation);
    CHECK_THROWS_AS(rotate_about_axis({1, 0, 0}, {0, 0, 1 + 1e-9}, 0.1), ContractViolation);
}

TEST_CASE("rotate_about_axis preserves norm and fixes the axis") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> ang(-10, 10), len(0.1, 5);
    for (int i = 0; i < 200; ++i) {
        const Vec3 axis = random_unit(rng);
        const Vec3 v = random_unit(rng) * len(rng);
        const double a = ang(rng);
        CHECK(std::abs(norm(rotate_about_axis(v, axis, a)) - norm(v)) < 1e-12);
        CHECK(max_abs_diff(rotate_about_axis(axis, axis, a), axis) < 1e-12);
    }
}

TEST_CASE("LoopSamples needs at least three finite points") {
    CHECK_THROWS_AS(LoopSamples({{0, 0, 0}, {1, 0, 0}}), ContractViolation);
    CHECK_THROWS_AS(LoopSamples({{0, 0, 0}, {1, 0, 0}, {0, std::nan(""), 0}}), ContractViolation);
    CHECK_NOTHROW(LoopSamples({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}}));
}

TEST_CASE("min_pairwise_distance") {
    const auto a = circle({0, 0, 0}, {1, 0, 0}, {0, 1, 0}, 1.0, 400);
    const auto b = circle({10, 0, 0}, {1, 0, 0}, {0, 1, 0}, 1.0, 400);
    // Half-step sampling misses the exact nearest points by pi/400 in angle.
    CHECK(min_pairwise_distance(a, b) == doctest::Approx(8.0).epsilon(1e-4));
    CHECK(min_pairwise_distance(a, a) == 0.0);

    SUBCASE("QWZ loops touch at the mu = 1 phase boundary") {
        // r1(pi) = r2(0) = (0, 0, -2); the nearest samples sit pi/n away in k.
        const auto m = qwz_model(reference_qwz(1.0));
        const std::size_t n = 12000;
        const double d = min_pairwise_distance(sample_loop(m.chain1, n), sample_loop(m.chain2, n));
        CHECK(d < 1e-3);
        CHECK(d == doctest::Approx(std::sqrt(10.0) * kPi / n).epsilon(0.01));
    }
}

TEST_CASE("Hopf link has linking number of magnitude one") {
    const auto a = circle({0, 0, 0}, {1, 0, 0}, {0, 1, 0}, 1.0, 400);
    const auto b = circle({1, 0, 0}, {1, 0, 0}, {0, 0, 1}, 1.0, 400);
    const double lk = gauss_linking(a, b);
    CHECK(std::abs(std::abs(lk) - 1.0) < 1e-3);

    // Sign of each orientation pair from the crossing-count oracle.
    for (bool flip_a : {false, true}) {
        for (bool flip_b : {false, true}) {
            const auto aa = flip_a ? a.reversed() : a;
            const auto bb = flip_b ? b.reversed() : b;
            const int oracle = crossing_linking_number(aa, bb);
            CHECK(std::abs(oracle) == 1);
            CHECK(gauss_linking(aa, bb) == doctest::Approx(oracle).epsilon(1e-3));
        }
    }
}

TEST_CASE("crossing oracle agrees with the analytic line-through-circle value") {
    // A tall thin rectangle along +z through a counter-clockwise unit circle:
    // the analytic Gauss integral for an infinite +z line is +1.
    std::vector<Vec3> rect;
    const int m = 2000;
    for (int i = 0; i < m; ++i) rect.push_back({0.0, 0.0, -500.0 + 1000.0 * i / m});
    for (int i = 0; i < m; ++i) rect.push_back({0.0, 500.0 * i / m + 1e-3, 500.0});
    for (int i = 0; i < m; ++i) rect.push_back({0.0, 500.0, 500.0 - 1000.0 * i / m});
    for (int i = 0; i < m; ++i) rect.push_back({0.0, 500.0 - 500.0 * i / m, -500.0});
    const LoopSamples line(rect);
    const auto ring = circle({0, 0, 0}, {1, 0, 0}, {0, 1, 0}, 1.0, 200);
    CHECK(crossing_linking_number(line, ring) == 1);
    CHECK(gauss_linking(line, ring) == doctest::Approx(1.0).epsilon(0.01));
}

TEST_CASE("unlinked coplanar circles give zero") {
    const auto a = circle({0, 0, 0}, {1, 0, 0}, {0, 1, 0}, 1.0, 400);
    const auto b = circle({10, 0, 0}, {1, 0, 0}, {0, 1, 0}, 1.0, 400);
    CHECK(std::abs(gauss_linking(a, b)) < 1e-6);
}

TEST_CASE("QWZ reference loops at mu = 2 link with +1") {
    const auto m = qwz_model(reference_qwz(2.0));
    const double lk = gauss_linking(sample_loop(m.chain1, 400), sample_loop(m.chain2, 400));
    CHECK(std::abs(lk - 1.0) < 5e-2);
}

TEST_CASE("touching loops are rejected with the minimum distance") {
    const auto a = circle({0, 0, 0}, {1, 0, 0}, {0, 1, 0}, 1.0, 64);
    try {
        gauss_linking(a, a);
        FAIL("expected NearCriticalLoopsError");
    } catch (const NearCriticalLoopsError& e) {
        CHECK(e.min_distance() == 0.0);
        CHECK(std::string(e.status()) == "near_critical");
    }
    LinkingOptions strict;
    strict.touch_tolerance = 0.5;
    const auto b = circle({1.6, 0, 0}, {1, 0, 0}, {0, 0, 1}, 1.0, 64); // 0.4 from a
    CHECK_THROWS_AS(gauss_linking(a, b, strict), NearCriticalLoopsError);
    CHECK_NOTHROW(gauss_linking(a, b));
}

namespace {

struct Ellipse {
    Vec3 centre, e1, e2;
    double ra = 1.0, rb = 1.0;

    LoopSamples sample(std::size_t n) const {
        return LoopSamples::sample([&](double t) { return centre + e1 * (ra * std::cos(t)) + e2 * (rb * std::sin(t)); },
                                   n);
    }
};

// Random pair of ellipses whose samples stay at least 0.3 apart.
std::pair<Ellipse, Ellipse> random_pair(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-1.0, 1.0), rad(0.6, 1.4);
    auto basis = [](const Vec3& nrm) {
        const Vec3 t = std::abs(nrm.x) < 0.9 ? Vec3{1, 0, 0} : Vec3{0, 1, 0};
        const Vec3 e1 = cross(nrm, t) / norm(cross(nrm, t));
        return std::pair{e1, cross(nrm, e1)};
    };
    while (true) {
        Ellipse a, b;
        a.centre = {0, 0, 0};
        b.centre = {u(rng) * 1.5, u(rng) * 1.5, u(rng) * 1.5};
        std::tie(a.e1, a.e2) = basis(random_unit(rng));
        std::tie(b.e1, b.e2) = basis(random_unit(rng));
        a.ra = rad(rng);
        a.rb = rad(rng);
        b.ra = rad(rng);
        b.rb = rad(rng);
        if (min_pairwise_distance(a.sample(400), b.sample(400)) > 0.3) return {a, b};
    }
}

} // namespace

TEST_CASE("gauss_linking: symmetry, orientation, rigid motion") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 10; ++trial) {
        const auto [ea, eb] = random_pair(rng);
        const auto a = ea.sample(200);
        const auto b = eb.sample(200);
        const double lk = gauss_linking(a, b);
        CHECK(std::abs(gauss_linking(b, a) - lk) < 1e-12);
        CHECK(std::abs(gauss_linking(a.reversed(), b) + lk) < 1e-12);
        CHECK(std::abs(gauss_linking(a, b.reversed()) + lk) < 1e-12);

        const Vec3 axis = random_unit(rng);
        const Vec3 shift{3.0, -2.0, 0.5};
        const double moved = gauss_linking(a.transformed(axis, 1.1, shift), b.transformed(axis, 1.1, shift));
        CHECK(std::abs(moved - lk) < 1e-9);
    }
}

TEST_CASE("gauss_linking converges to an integer for random separated loops") {
    std::mt19937_64 rng(2024);
    int linked = 0;
    for (int trial = 0; trial < 20; ++trial) {
        const auto [ea, eb] = random_pair(rng);
        const double lk400 = gauss_linking(ea.sample(400), eb.sample(400));
        const double lk800 = gauss_linking(ea.sample(800), eb.sample(800));
        const double res400 = std::abs(lk400 - std::round(lk400));
        const double res800 = std::abs(lk800 - std::round(lk800));
        CHECK(res400 < 0.05);
        // Smooth loops converge spectrally; both may already sit at roundoff.
        CHECK((res800 < res400 || res800 < 1e-12));
        CHECK(std::lround(lk400) == crossing_linking_number(ea.sample(400), eb.sample(400)));
        linked += std::lround(lk400) != 0;
    }
    CHECK(linked >= 3);
}
