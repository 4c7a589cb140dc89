#include "ft/piston.hpp"

#include <cmath>

namespace ft {

double PistonDriver::accel(double xb, double zeta_b) const {
    const double h = par.h0 + zeta_b;
    const double force = -par.stiffness * (xb - par.x_eq) +
                         0.5 * par.rho * par.grav * (h * h - par.h0 * par.h0);
    return force / par.mass;
}

namespace {

// faces ride on the flow; the far (left) face is a fixed wall, the near (right)
// face is the piston
std::vector<double> face_speeds(const SolverState& s, double piston_speed) {
    std::vector<double> v(s.grid.n + 1, 0.0);
    for (int i = 1; i < s.grid.n; ++i) v[i] = 0.5 * (s.u[i - 1][1] + s.u[i][1]);
    v[0] = 0.0;
    v[s.grid.n] = piston_speed;
    return v;
}

BoundaryClosure piston_closure(double speed) {
    return BoundaryClosure::linear([](double) { return Vec2(0, 1); },
                                   [speed](double) { return speed; });
}

} // namespace

void PistonDriver::step(double dt) {
    const BoundaryClosure far_wall = BoundaryClosure::wall();

    const StageResult r1 = stage_rhs(fluid, far_wall, piston_closure(xbar_dot));
    if (r1.max_ref_speed * dt / fluid.grid.dx > fluid.cfl + 1e-12)
        throw CflViolation("dt exceeds the Courant bound");
    const double zeta1 = force_flat ? 0.0 : r1.ub_right[0];
    const double a1 = accel(xbar, zeta1);
    const double xbar_p = xbar + dt * xbar_dot;
    const double xdot_p = xbar_dot + dt * a1;

    const std::vector<double> vfaces_old = face_speeds(fluid, xbar_dot);
    SolverState mid = fluid;
    for (int i = 0; i < fluid.grid.n; ++i) mid.u[i] = fluid.u[i] + dt * r1.dVdt[i];
    mid.grid = advance_lagrangian(fluid.grid, vfaces_old, face_speeds(mid, xdot_p), dt);
    mid.t = fluid.t + dt;

    const StageResult r2 = stage_rhs(mid, far_wall, piston_closure(xdot_p));
    const double zeta2 = force_flat ? 0.0 : r2.ub_right[0];
    const double a2 = accel(xbar_p, zeta2);

    log.push_back({fluid.t, dt, zeta1, zeta2});
    xbar = xbar + 0.5 * dt * (xbar_dot + xdot_p);
    xbar_dot = xbar_dot + 0.5 * dt * (a1 + a2);
    for (int i = 0; i < fluid.grid.n; ++i)
        fluid.u[i] += 0.5 * dt * (r1.dVdt[i] + r2.dVdt[i]);
    fluid.grid = advance_lagrangian(fluid.grid, vfaces_old, face_speeds(fluid, xbar_dot), dt);
    fluid.grid.check_jacobian();
    fluid.t += dt;
}

std::pair<double, double> piston_reintegrate(const PistonParams& par,
                                             const std::vector<PistonTraceSample>& log,
                                             double xbar0, double xbar_dot0) {
    PistonDriver ghost;
    ghost.par = par;
    double xb = xbar0, xd = xbar_dot0;
    for (const PistonTraceSample& s : log) {
        const double a1 = ghost.accel(xb, s.zeta1);
        const double xbar_p = xb + s.dt * xd;
        const double xdot_p = xd + s.dt * a1;
        const double a2 = ghost.accel(xbar_p, s.zeta2);
        xb = xb + 0.5 * s.dt * (xd + xdot_p);
        xd = xd + 0.5 * s.dt * (a1 + a2);
    }
    return {xb, xd};
}

} // namespace ft
