#include "hypercolor/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace hypercolor {

namespace {

// log(sinh(x)) for x >= 0, finite far beyond the point where sinh overflows.
double log_sinh(double x) {
    if (x <= 0.0) {
        return -std::numeric_limits<double>::infinity();
    }
    if (x < 350.0) {
        return std::log(std::sinh(x));
    }
    return x + std::log1p(-std::exp(-2.0 * x)) - std::numbers::ln2;
}

} // namespace

void DiskSpec::validate() const {
    if (!(alpha > 0.5 && alpha < 1.0)) {
        throw DomainError("alpha must lie in (0.5, 1), got " + std::to_string(alpha));
    }
    if (!(R > 0.0) || !std::isfinite(R)) {
        throw DomainError("disk radius must be positive, got " + std::to_string(R));
    }
}

double disk_radius(double n, double C) {
    return 2.0 * std::log(n) + C;
}

double normalize_angle(double phi) {
    double wrapped = std::fmod(phi, kTwoPi);
    if (wrapped < 0.0) {
        wrapped += kTwoPi;
    }
    // fmod can return exactly 2*pi after the correction for tiny negative inputs
    return wrapped >= kTwoPi ? 0.0 : wrapped;
}

double angular_distance(double phi_a, double phi_b) {
    const double diff = std::abs(phi_a - phi_b);
    const double wrapped = std::fmod(diff, kTwoPi);
    return std::min(wrapped, kTwoPi - wrapped);
}

double hyperbolic_distance(const PolarPoint& a, const PolarPoint& b) {
    const double half = 0.5 * angular_distance(a.phi, b.phi);
    const double s = std::sin(half);
    if (a.r + b.r < 600.0) {
        const double cosh_d = std::cosh(a.r - b.r) + 2.0 * std::sinh(a.r) * std::sinh(b.r) * s * s;
        return std::acosh(std::max(cosh_d, 1.0));
    }
    // log-space, acosh(x) = ln(2x) up to x^-2 once x is this large
    const double gap = std::abs(a.r - b.r);
    const double log_cosh_gap = gap + std::log1p(std::exp(-2.0 * gap)) - std::numbers::ln2;
    if (s == 0.0) {
        return gap;
    }
    const double log_term = log_sinh(a.r) + log_sinh(b.r) + 2.0 * std::log(s) + std::numbers::ln2;
    const double hi = std::max(log_cosh_gap, log_term);
    const double log_cosh_d = hi + std::log1p(std::exp(std::min(log_cosh_gap, log_term) - hi));
    if (log_cosh_d < 20.0) {
        return std::acosh(std::exp(log_cosh_d));
    }
    return log_cosh_d + std::numbers::ln2;
}

double theta_threshold(double r1, double r2, double R) {
    if (!(r1 > 0.0) || !(r2 > 0.0)) {
        throw DomainError("theta_threshold needs positive radii");
    }
    if (r1 + r2 <= R) {
        return std::numbers::pi;
    }
    const double gap = std::abs(r1 - r2);
    if (gap >= R) {
        return 0.0;
    }
    // sin^2(theta / 2) = (cosh R - cosh(r1 - r2)) / (2 sinh r1 sinh r2)
    //                  = sinh((R + gap) / 2) sinh((R - gap) / 2) / (sinh r1 sinh r2)
    const double log_ratio = log_sinh(0.5 * (R + gap)) + log_sinh(0.5 * (R - gap)) - log_sinh(r1) - log_sinh(r2);
    if (log_ratio >= 0.0) {
        return std::numbers::pi;
    }
    return 2.0 * std::asin(std::exp(0.5 * log_ratio));
}

bool within_distance(const PolarPoint& a, const PolarPoint& b, double R) {
    return hyperbolic_distance(a, b) <= R;
}

double ball_measure_origin(double r, const DiskSpec& spec) {
    if (!(r >= 0.0) || r > spec.R) {
        throw DomainError("ball radius must lie in [0, R], got " + std::to_string(r));
    }
    if (r == spec.R) {
        return 1.0;
    }
    // cosh(x) - 1 = 2 sinh^2(x / 2)
    const double log_ratio = log_sinh(0.5 * spec.alpha * r) - log_sinh(0.5 * spec.alpha * spec.R);
    return std::exp(2.0 * log_ratio);
}

double sample_radius(double u, const DiskSpec& spec) {
    if (u <= 0.0) {
        return 0.0;
    }
    // r = acosh(1 + u (cosh(aR) - 1)) / a = (2 / a) asinh(sqrt(u) sinh(aR / 2))
    const double half = 0.5 * spec.alpha * spec.R;
    double r;
    if (half < 350.0) {
        r = 2.0 / spec.alpha * std::asinh(std::sqrt(u) * std::sinh(half));
    } else {
        // asinh(z) = log(2z) + O(z^-2)
        const double log_z = 0.5 * std::log(u) + log_sinh(half);
        const double asinh_z = log_z > 20.0 ? log_z + std::numbers::ln2 : std::asinh(std::exp(log_z));
        r = 2.0 / spec.alpha * asinh_z;
    }
    return std::min(r, std::nextafter(spec.R, 0.0));
}

} // namespace hypercolor
