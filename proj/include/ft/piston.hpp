#ifndef FT_PISTON_HPP
#define FT_PISTON_HPP

#include <vector>

#include "ft/solver.hpp"

namespace ft {

/**
 * Spring-loaded piston closing a water column on its right end. The water pushes
 * the piston outward, the spring pulls it back; x_eq is the loaded equilibrium,
 * x_eq - x0 = rho g h0^2 / (2 k) away from the spring rest position x0.
 */
struct PistonParams {
    double mass = 1, stiffness = 1;
    double rho = 1, grav = 1, h0 = 1;
    double x0 = 0;    // unloaded spring position
    double x_eq = 0;  // hydrostatic equilibrium of the contact

    static PistonParams make(double mass, double stiffness, double rho, double grav,
                             double h0, double x0) {
        PistonParams p{mass, stiffness, rho, grav, h0, x0, 0};
        p.x_eq = x0 + rho * grav * h0 * h0 / (2 * stiffness);
        return p;
    }
};

/** Per-step record of the boundary elevations the piston force actually used. */
struct PistonTraceSample {
    double t = 0, dt = 0;
    double zeta1 = 0, zeta2 = 0;  // begin- and end-stage trace elevations
};

/**
 * Coupled water-column / piston evolution: velocity-form Saint-Venant on a
 * Lagrangian grid whose right face rides on the piston, Heun in time for both
 * the PDE and the piston equation.
 */
struct PistonDriver {
    PistonParams par;
    SolverState fluid;  // sw_velocity system; u = (zeta, vbar)
    double xbar = 0, xbar_dot = 0;
    bool force_flat = false;  // piston feels the undisturbed column (decoupled test mode)
    std::vector<PistonTraceSample> log;

    double accel(double xb, double zeta_b) const;
    void step(double dt);
};

/**
 * Re-runs the piston equation alone from the logged trace elevations with the
 * same update arithmetic as PistonDriver::step; returns the final (xbar, xbar_dot).
 */
std::pair<double, double> piston_reintegrate(const PistonParams& par,
                                             const std::vector<PistonTraceSample>& log,
                                             double xbar0, double xbar_dot0);

} // namespace ft

#endif
