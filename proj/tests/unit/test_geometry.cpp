#include "hypercolor/geometry.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

using namespace hypercolor;

namespace {

// Textbook law of cosines, no cancellation safeguards.
double naive_distance(double r1, double r2, double dphi) {
    const double x = std::cosh(r1) * std::cosh(r2) - std::sinh(r1) * std::sinh(r2) * std::cos(dphi);
    return std::acosh(std::max(1.0, x));
}

double simpson(double a, double b, int steps, auto f) {
    const double h = (b - a) / steps;
    double sum = f(a) + f(b);
    for (int i = 1; i < steps; ++i) {
        sum += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
    }
    return sum * h / 3.0;
}

} // namespace

TEST_CASE("distance identity, collinear points and antipodes") {
    const PolarPoint p{3.7, 1.2};
    CHECK(hyperbolic_distance(p, p) == doctest::Approx(0.0));
    CHECK(hyperbolic_distance({2.0, 0.4}, {5.5, 0.4}) == doctest::Approx(3.5));
    CHECK(hyperbolic_distance({5.0, 0.0}, {5.0, std::numbers::pi}) == doctest::Approx(10.0));
}

TEST_CASE("distance is symmetric and wraps angles") {
    const PolarPoint a{4.0, 0.1};
    const PolarPoint b{6.0, kTwoPi - 0.1};
    CHECK(hyperbolic_distance(a, b) == doctest::Approx(hyperbolic_distance(b, a)));
    CHECK(hyperbolic_distance(a, b) == doctest::Approx(naive_distance(4.0, 6.0, 0.2)));
    CHECK(angular_distance(0.1, kTwoPi - 0.1) == doctest::Approx(0.2));
    CHECK(angular_distance(0.0, std::numbers::pi) == doctest::Approx(std::numbers::pi));
}

TEST_CASE("threshold angle is pi when the radii sum to at most R") {
    CHECK(theta_threshold(3.0, 7.0, 10.0) == std::numbers::pi);
    CHECK(theta_threshold(1.0, 2.0, 10.0) == std::numbers::pi);
}

TEST_CASE("threshold angle at r1 = r2 = R = 10 matches bisection") {
    const double R = 10.0;
    double lo = 0.0;
    double hi = std::numbers::pi;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        (naive_distance(R, R, mid) <= R ? lo : hi) = mid;
    }
    const double theta = theta_threshold(R, R, R);
    CHECK(theta == doctest::Approx(lo).epsilon(1e-9));
    CHECK(theta == doctest::Approx(0.0134753841769408166).epsilon(1e-12));
}

TEST_CASE("threshold angle rejects non-positive radii") {
    CHECK_THROWS_AS(theta_threshold(0.0, 5.0, 10.0), DomainError);
    CHECK_THROWS_AS(theta_threshold(5.0, -1.0, 10.0), DomainError);
}

TEST_CASE("threshold angle decreases in each radius") {
    const double R = 20.0;
    double previous = std::numbers::pi;
    for (double r = 1.0; r <= R; r += 0.25) {
        const double theta = theta_threshold(r, 15.0, R);
        CHECK(theta <= previous);
        previous = theta;
    }
}

TEST_CASE("adjacency by angle equals adjacency by distance on random triples") {
    const double R = 30.0;
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> radius(1e-6, R);
    std::uniform_real_distribution<double> angle(0.0, std::numbers::pi);
    std::size_t mismatches = 0;
    for (int i = 0; i < 100000; ++i) {
        const double r1 = radius(rng);
        const double r2 = radius(rng);
        const double dphi = angle(rng);
        const bool by_angle = dphi <= theta_threshold(r1, r2, R);
        const bool by_distance = hyperbolic_distance({r1, 0.0}, {r2, dphi}) <= R;
        mismatches += by_angle != by_distance ? 1 : 0;
    }
    CHECK(mismatches == 0);
}

TEST_CASE("ball measure boundary values and closed form") {
    const DiskSpec spec{20.0, 0.75};
    CHECK(ball_measure_origin(0.0, spec) == 0.0);
    CHECK(ball_measure_origin(20.0, spec) == doctest::Approx(1.0).epsilon(1e-15));
    const double closed = (std::cosh(0.75 * 17.0) - 1.0) / (std::cosh(0.75 * 20.0) - 1.0);
    CHECK(ball_measure_origin(17.0, spec) == doctest::Approx(closed).epsilon(1e-12));
    CHECK(ball_measure_origin(17.0, spec) == doctest::Approx(0.10539867724150118887).epsilon(1e-12));
}

TEST_CASE("ball measure agrees with quadrature of the radial density") {
    const DiskSpec spec{20.0, 0.75};
    const auto density = [&](double x) { return spec.alpha * std::sinh(spec.alpha * x); };
    const double total = simpson(0.0, spec.R, 20000, density);
    for (const double r : {0.5, 5.0, 12.0, 17.0, 19.5}) {
        const double mass = simpson(0.0, r, 20000, density) / total;
        CHECK(std::abs(ball_measure_origin(r, spec) - mass) < 1e-9);
    }
}

TEST_CASE("ball measure is increasing and rejects radii outside the disk") {
    const DiskSpec spec{15.0, 0.6};
    double previous = -1.0;
    for (double r = 0.0; r <= 15.0; r += 0.5) {
        const double m = ball_measure_origin(r, spec);
        CHECK(m > previous);
        previous = m;
    }
    CHECK_THROWS_AS(ball_measure_origin(-0.1, spec), DomainError);
    CHECK_THROWS_AS(ball_measure_origin(15.1, spec), DomainError);
}

TEST_CASE("radius sampling at the ends of the unit interval") {
    const DiskSpec spec{20.0, 0.75};
    CHECK(sample_radius(0.0, spec) == 0.0);
    const double near_one = sample_radius(std::nextafter(1.0, 0.0), spec);
    CHECK(near_one < spec.R);
    CHECK(near_one > spec.R - 1e-6);
}

TEST_CASE("radius sampling inverts the ball measure") {
    const DiskSpec spec{25.0, 0.8};
    for (const double u : {1e-12, 1e-6, 0.01, 0.3, 0.5, 0.9, 0.999999}) {
        CHECK(ball_measure_origin(sample_radius(u, spec), spec) == doctest::Approx(u).epsilon(1e-9));
    }
}

TEST_CASE("sampled radii match the exact CDF in Kolmogorov-Smirnov distance") {
    const DiskSpec spec{2.0 * std::log(65536.0), 0.7};
    std::mt19937_64 rng(77);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<double> samples(1000000);
    for (auto& r : samples) {
        r = sample_radius(unit(rng), spec);
    }
    std::sort(samples.begin(), samples.end());
    double ks = 0.0;
    const double count = static_cast<double>(samples.size());
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const double cdf = ball_measure_origin(samples[i], spec);
        ks = std::max({ks, std::abs(cdf - i / count), std::abs((i + 1) / count - cdf)});
    }
    CHECK(ks <= 0.005);
}

TEST_CASE("huge disks stay finite") {
    const DiskSpec spec{2000.0, 0.9};
    const double r = sample_radius(0.5, spec);
    CHECK(std::isfinite(r));
    CHECK(r < spec.R);
    CHECK(ball_measure_origin(r, spec) == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(theta_threshold(1500.0, 1500.0, 2000.0) >= 0.0);
}

TEST_CASE("disk radius is twice the log of n plus C") {
    CHECK(disk_radius(65536.0, 0.0) == doctest::Approx(22.1807097779182499));
    CHECK(disk_radius(100.0, -1.5) == doctest::Approx(2.0 * std::log(100.0) - 1.5));
}

TEST_CASE("distance in huge disks matches the radial sum for antipodes") {
    CHECK(hyperbolic_distance({800.0, 0.0}, {900.0, std::numbers::pi}) == doctest::Approx(1700.0));
    CHECK(hyperbolic_distance({800.0, 1.0}, {900.0, 1.0}) == doctest::Approx(100.0));
    CHECK(within_distance({1500.0, 0.0}, {1500.0, 0.5 * theta_threshold(1500.0, 1500.0, 2000.0)}, 2000.0));
    CHECK_FALSE(within_distance({1500.0, 0.0}, {1500.0, 2.0 * theta_threshold(1500.0, 1500.0, 2000.0)}, 2000.0));
}
