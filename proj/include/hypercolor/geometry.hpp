#pragma once

#include <numbers>
#include <stdexcept>
#include <string>

namespace hypercolor {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// A point of the hyperbolic plane in native polar coordinates.
struct PolarPoint {
    double r = 0.0;   ///< radial coordinate, >= 0
    double phi = 0.0; ///< angular coordinate in [0, 2*pi)

    friend bool operator==(const PolarPoint&, const PolarPoint&) = default;
};

/// Disk of radius R carrying the alpha-controlled radial density.
struct DiskSpec {
    double R = 1.0;
    double alpha = 0.75;

    /// Throws DomainError unless R > 0 and alpha lies strictly inside (1/2, 1).
    void validate() const;
};

/// Radius of the disk for expected vertex count n and offset C: 2 ln n + C.
double disk_radius(double n, double C);

/// Maps any angle onto [0, 2*pi).
double normalize_angle(double phi);

/// Angular difference wrapped to [0, pi].
double angular_distance(double phi_a, double phi_b);

/// Hyperbolic distance in the curvature -1 plane.
///
/// Evaluated as cosh d = cosh(r_a - r_b) + 2 sinh(r_a) sinh(r_b) sin^2(dphi / 2), which is
/// algebraically the law of cosines but free of cancellation for nearby points.
double hyperbolic_distance(const PolarPoint& a, const PolarPoint& b);

/// Largest angular difference at which points with radii r1, r2 lie within distance R.
///
/// Returns pi when r1 + r2 <= R (adjacent at every angle). Throws DomainError when either
/// radius is not positive.
double theta_threshold(double r1, double r2, double R);

/// True iff the two points are within hyperbolic distance R of each other.
bool within_distance(const PolarPoint& a, const PolarPoint& b, double R);

/// Probability mass of the ball of radius r around the origin:
/// (cosh(alpha r) - 1) / (cosh(alpha R) - 1). Throws DomainError for r outside [0, R].
double ball_measure_origin(double r, const DiskSpec& spec);

/// Inverse of the radial CDF: maps u in [0, 1) to a radius in [0, R).
double sample_radius(double u, const DiskSpec& spec);

} // namespace hypercolor
