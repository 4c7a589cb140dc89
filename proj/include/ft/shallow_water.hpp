#ifndef FT_SHALLOW_WATER_HPP
#define FT_SHALLOW_WATER_HPP

#include <cmath>

#include "ft/hyp.hpp"

namespace ft {

/**
 * Saint-Venant system in surface elevation and discharge u = (zeta, q) over a flat
 * bottom at depth h0: f0 = u, f = (q, q^2/h + g h^2/2) with h = h0 + zeta.
 */
inline System2x2 sw_conservative(double grav, double h0, PhaseBox box = {}) {
    System2x2 sys;
    sys.phase_box = box;
    sys.A = [grav, h0](const Vec2& u) {
        const double h = h0 + u[0], q = u[1];
        Mat2 A;
        A << 0, 1, grav * h - q * q / (h * h), 2 * q / h;
        return A;
    };
    sys.f0 = [](const Vec2& u) { return u; };
    sys.f0_inv = [](const Vec2& u) { return u; };
    sys.f = [grav, h0](const Vec2& u) {
        const double h = h0 + u[0], q = u[1];
        return Vec2(q, q * q / h + 0.5 * grav * h * h);
    };
    return sys;
}

/** Linearization of sw_conservative around the lake at rest. */
inline System2x2 sw_linear(double grav, double h0) {
    System2x2 sys;
    sys.A = [grav, h0](const Vec2&) {
        Mat2 A;
        A << 0, 1, grav * h0, 0;
        return A;
    };
    sys.f0 = [](const Vec2& u) { return u; };
    sys.f0_inv = [](const Vec2& u) { return u; };
    sys.f = [grav, h0](const Vec2& u) { return Vec2(u[1], grav * h0 * u[0]); };
    return sys;
}

/**
 * Saint-Venant system in elevation and vertically averaged velocity u = (zeta, vbar),
 * the quasilinear (non-conservative) form used by the Lagrangian piston coupling.
 */
inline System2x2 sw_velocity(double grav, double h0, PhaseBox box = {}) {
    System2x2 sys;
    sys.phase_box = box;
    sys.A = [grav, h0](const Vec2& u) {
        Mat2 A;
        A << u[1], h0 + u[0], grav, u[1];
        return A;
    };
    return sys;
}

/** Froude number |v| / sqrt(g h) of a (zeta, q) state. */
inline double sw_froude(double grav, double h0, const Vec2& u) {
    const double h = h0 + u[0];
    return std::abs(u[1] / h) / std::sqrt(grav * h);
}

} // namespace ft

#endif
