#ifndef FT_SOLVER_HPP
#define FT_SOLVER_HPP

#include <optional>
#include <vector>

#include "ft/grid.hpp"
#include "ft/hyp.hpp"

namespace ft {

enum class Side { Left, Right };

/**
 * Boundary closure at one end of the domain. LinearNu imposes nu(t).u = g(t) on the
 * incoming characteristic, NonlinearPhi imposes Phi(t,u) = g(t), DirichletTrace pins
 * the full trace (used inside free-boundary drivers), Transparent extrapolates both
 * characteristics (domain truncation).
 */
struct BoundaryClosure {
    enum class Kind { LinearNu, NonlinearPhi, DirichletTrace, Transparent } kind =
        Kind::Transparent;
    std::function<Vec2(double)> nu;                      // LinearNu
    std::function<double(double)> g;                     // LinearNu / NonlinearPhi datum
    std::function<double(double, const Vec2&)> Phi;      // NonlinearPhi
    std::function<Vec2(double, const Vec2&)> grad_Phi;   // optional; FD fallback
    std::function<Vec2(double)> u_i;                     // DirichletTrace

    static BoundaryClosure transparent();
    static BoundaryClosure linear(std::function<Vec2(double)> nu, std::function<double(double)> g);
    static BoundaryClosure wall();  // nu = (0,1), g = 0
    static BoundaryClosure dirichlet(std::function<Vec2(double)> u_i);
    static BoundaryClosure nonlinear(std::function<double(double, const Vec2&)> Phi,
                                     std::function<double(double)> g);
};

struct SolverState {
    System2x2 sys;
    MovingGrid grid;
    std::vector<Vec2> u;  // cell averages / point values at cell centers
    double t = 0;
    double cfl = 0.45;
    // last logged outgoing-invariant consistency defect of a DirichletTrace closure
    mutable double dirichlet_residual = 0;
};

/** Face state consistent with the closure and the extrapolated outgoing invariant. */
Vec2 apply_boundary(const SolverState& s, const BoundaryClosure& c, Side side);

/** Transparent truncation value (characteristic extrapolation of both invariants). */
Vec2 farfield_close(const SolverState& s, Side side);

struct StageResult {
    std::vector<Vec2> dVdt;  // conservative: d(phi_x f0(u))/dt; else du/dt
    Vec2 ub_left, ub_right;  // boundary face states used
    double max_ref_speed = 0;
};

/** Semi-discrete right-hand side (characteristic upwind, minmod-limited, 2nd order). */
StageResult stage_rhs(const SolverState& s, const BoundaryClosure& left,
                      const BoundaryClosure& right);

/** Conserved/evolved vector of the stepper (phi_x * f0(u) or u). */
std::vector<Vec2> pack_state(const SolverState& s);
/** Invert pack_state on a (possibly different) grid; guess seeds the f0 inversion. */
std::vector<Vec2> unpack_state(const System2x2& sys, const MovingGrid& grid,
                               const std::vector<Vec2>& V, const std::vector<Vec2>& guess);

/** Largest admissible dt for the stored Courant number. */
double suggest_dt(const SolverState& s);

/** One Heun step on a static grid; raises CflViolation / PhaseBoxExit / closure errors. */
void step(SolverState& s, const BoundaryClosure& left, const BoundaryClosure& right, double dt);

inline double minmod(double a, double b) {
    return a * b > 0 ? (std::abs(a) < std::abs(b) ? a : b) : 0;
}

} // namespace ft

#endif
