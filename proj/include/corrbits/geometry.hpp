#pragma once

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "corrbits/error.hpp"

namespace corrbits {

// Inputs are rejected, never silently renormalized, beyond this deviation.
inline constexpr double kUnitNormTolerance = 1e-9;

// Unit 3-vector on the Bloch sphere.
struct BlochVector {
    double x = 0.0;
    double y = 0.0;
    double z = 1.0;

    double dot(const BlochVector& o) const { return x * o.x + y * o.y + z * o.z; }
    double norm() const { return std::sqrt(x * x + y * y + z * z); }
};

inline void require_unit(const BlochVector& v) {
    // Negated form so NaN components are rejected too.
    if (!(std::abs(v.norm() - 1.0) <= kUnitNormTolerance))
        throw InvalidDirectionError("measurement direction must be a unit vector, got |v| = " +
                                    std::to_string(v.norm()));
}

// Angle between two unit vectors, in [0, pi].
inline double angle_between(const BlochVector& a, const BlochVector& b) {
    double d = a.dot(b);
    if (d > 1.0) d = 1.0;
    if (d < -1.0) d = -1.0;
    return std::acos(d);
}

// Ladder of N measurement settings per side in the x-z plane, step
// theta = pi/(2N-1). Alice's i-th direction sits at angle i*theta from the
// z axis, Bob's j-th at (j+1/2)*theta, so that
//   alice[i] . bob[i]   = alice[i+1] . bob[i] = cos(pi/(4N-2))
//   alice[0] . bob[N-1] = 0.
// Indices here are 0-based.
struct SettingsChain {
    int n_settings = 0;
    double theta = 0.0;
    std::vector<BlochVector> alice_dirs;
    std::vector<BlochVector> bob_dirs;
};

inline SettingsChain chain_settings(int n_settings) {
    if (n_settings < 2)
        throw InvalidChainError("settings chain needs at least 2 settings per side, got " +
                                std::to_string(n_settings));
    SettingsChain chain;
    chain.n_settings = n_settings;
    chain.theta = std::numbers::pi / (2.0 * n_settings - 1.0);
    chain.alice_dirs.reserve(n_settings);
    chain.bob_dirs.reserve(n_settings);
    for (int i = 0; i < n_settings; ++i) {
        const double alice_angle = i * chain.theta;
        const double bob_angle = (i + 0.5) * chain.theta;
        chain.alice_dirs.push_back({std::sin(alice_angle), 0.0, std::cos(alice_angle)});
        chain.bob_dirs.push_back({std::sin(bob_angle), 0.0, std::cos(bob_angle)});
    }
    return chain;
}

}  // namespace corrbits
