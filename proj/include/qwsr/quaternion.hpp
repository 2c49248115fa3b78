#pragma once

#include <array>

namespace qwsr {

// q = a + b*i + c*j + d*k
struct Quaternion {
    double a = 0.0, b = 0.0, c = 0.0, d = 0.0;
};

struct QuatPhase {
    double phi = 0.0;    // [-pi, pi)
    double theta = 0.0;  // [-pi/2, pi/2]
    double psi = 0.0;    // [-pi/4, pi/4]
};

double quat_magnitude(const Quaternion& q);

// Three-angle polar factorization q = |q| * e^{i*phi} * e^{k*psi} * e^{j*theta}.
// The zero quaternion has no phase and is rejected.
QuatPhase quat_phase(const Quaternion& q);

Quaternion quat_from_polar(double magnitude, const QuatPhase& p);

}  // namespace qwsr
