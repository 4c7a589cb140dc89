// Shared closed-form references for the solver tests.
#ifndef FT_TESTS_ORACLES_HPP
#define FT_TESTS_ORACLES_HPP

#include <cmath>
#include <functional>

#include "ft/shallow_water.hpp"
#include "ft/solver.hpp"

namespace ft::oracles {

/**
 * Exact solution of the linearized system on the half line x >= 0 with a wall
 * (zero discharge) at x = 0: even/odd image extension of the data, then the
 * d'Alembert superposition of the two characteristic families.
 */
struct WallReflection {
    double c;  // wave speed
    std::function<double(double)> zeta0, q0;  // data on x >= 0

    double Ze(double x) const { return zeta0(std::abs(x)); }
    double Qe(double x) const { return x >= 0 ? q0(x) : -q0(-x); }

    double zeta(double x, double t) const {
        return 0.5 * (Ze(x - c * t) + Ze(x + c * t)) -
               (Qe(x + c * t) - Qe(x - c * t)) / (2 * c);
    }
    double q(double x, double t) const {
        return 0.5 * (Qe(x - c * t) + Qe(x + c * t)) -
               0.5 * c * (Ze(x + c * t) - Ze(x - c * t));
    }
};

/** Advances a solver state to the target time with the stored Courant number. */
inline void run_to(SolverState& s, const BoundaryClosure& left, const BoundaryClosure& right,
                   double T) {
    while (s.t < T - 1e-12) {
        const double dt = std::min(0.9 * suggest_dt(s), T - s.t);
        step(s, left, right, dt);
    }
}

/** L1 error of the elevation against the wall-reflection solution at time s.t. */
inline double reflection_l1_error(const SolverState& s, const WallReflection& ex) {
    double err = 0;
    for (int i = 0; i < s.grid.n; ++i)
        err += std::abs(s.u[i][0] - ex.zeta(s.grid.phi_center(i), s.t)) * s.grid.dx;
    return err;
}

/** Builds the standard wall-reflection test state: leftward pulse on [0, L]. */
inline SolverState reflection_state(int n, double L, double a, double xc, double w) {
    SolverState s;
    s.sys = sw_linear(1.0, 1.0);
    s.grid = MovingGrid::uniform(0.0, L, n);
    s.u.resize(n);
    for (int i = 0; i < n; ++i) {
        const double x = s.grid.phi_center(i);
        const double z = a * std::exp(-((x - xc) / w) * ((x - xc) / w));
        s.u[i] = Vec2(z, -z);  // unit wave speed, left-moving
    }
    return s;
}

} // namespace ft::oracles

#endif
