#include "qwsr/quaternion.hpp"

#include <algorithm>
#include <cmath>

#include "qwsr/common.hpp"

namespace qwsr {

double quat_magnitude(const Quaternion& q) {
    return std::sqrt(q.a * q.a + q.b * q.b + q.c * q.c + q.d * q.d);
}

Quaternion quat_from_polar(double magnitude, const QuatPhase& p) {
    // Expand e^{i phi} e^{k psi} e^{j theta} (i*j = k, j*k = i, k*i = j).
    double cf = std::cos(p.phi), sf = std::sin(p.phi);
    double cp = std::cos(p.psi), sp = std::sin(p.psi);
    double ct = std::cos(p.theta), st = std::sin(p.theta);
    Quaternion q;
    q.a = magnitude * (cf * cp * ct + sf * sp * st);
    q.b = magnitude * (sf * cp * ct - cf * sp * st);
    q.c = magnitude * (cf * cp * st - sf * sp * ct);
    q.d = magnitude * (cf * sp * ct + sf * cp * st);
    return q;
}

QuatPhase quat_phase(const Quaternion& q) {
    double mag = quat_magnitude(q);
    require(mag > 0.0, "quat_phase: undefined for the zero quaternion");
    double a = q.a / mag, b = q.b / mag, c = q.c / mag, d = q.d / mag;

    QuatPhase p;
    double s = std::clamp(2.0 * (a * d - b * c), -1.0, 1.0);
    p.psi = 0.5 * std::asin(s);

    double cos2psi = std::cos(2.0 * p.psi);
    if (std::abs(cos2psi) > 1e-12) {
        p.phi = 0.5 * std::atan2(2.0 * (a * b + c * d), a * a - b * b + c * c - d * d);
        p.theta = 0.5 * std::atan2(2.0 * (a * c + b * d), a * a + b * b - c * c - d * d);
    } else {
        // |psi| = pi/4: only phi -+ theta is determined (b = -+c, a = +-d).
        // Fix theta = 0 and fold the remaining rotation into phi.
        p.theta = 0.0;
        p.phi = (s > 0.0) ? std::atan2(b - c, a + d) : std::atan2(b + c, a - d);
    }

    // The half-angle atan2 leaves phi in [-pi/2, pi/2]; the factorization is
    // then unique up to sign of the whole quaternion. Flip into [-pi, pi).
    Quaternion probe = quat_from_polar(1.0, p);
    if (probe.a * a + probe.b * b + probe.c * c + probe.d * d < 0.0) {
        p.phi += (p.phi < 0.0) ? M_PI : -M_PI;
    }
    if (p.phi >= M_PI) p.phi -= 2.0 * M_PI;
    return p;
}

}  // namespace qwsr
