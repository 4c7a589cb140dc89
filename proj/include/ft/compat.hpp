#ifndef FT_COMPAT_HPP
#define FT_COMPAT_HPP

#include <vector>

#include "ft/grid.hpp"
#include "ft/hyp.hpp"

namespace ft {

/** Corner compatibility report; residuals[k] is the defect of the order-k identity. */
struct CompatReport {
    int order = 0;
    std::vector<double> residuals;
    std::vector<Vec2> u1, u2;  // derived initial time-derivative fields
    double xbar1 = 0, xbar2 = 0;
};

/**
 * Initial time derivatives of the solution from the interior equation on a fixed
 * grid: u_1 = -A(u) u_x - B u + f and its once-differentiated analogue for order 2.
 * Returns levels 1..order as node fields; needs >= 5 cells.
 */
std::vector<std::vector<Vec2>> initial_time_derivatives(const System2x2& sys,
                                                        const MovingGrid& grid,
                                                        const std::vector<Vec2>& u_in,
                                                        int order);

/** Compatibility of (u_in, g) for the linear boundary condition nu.u = g at the left end. */
CompatReport check_linear_bc(const System2x2& sys, const MovingGrid& grid,
                             const std::vector<Vec2>& u_in, const Vec2& nu,
                             const std::function<double(double)>& g, int order);

/** Order-0 contact defect |u_in|_0 - U_i(0,0)|. */
double contact_order0_residual(const Vec2& u0, const Vec2& Ui00);

/**
 * Order-1 contact defect: the component of A(u)u_x + dt U_i along the direction
 * perpendicular to the derivative jump (u_x - dx U_i) at the corner.
 */
double contact_order1_residual(const Mat2& A0, const Vec2& dxu, const Vec2& dxUi,
                               const Vec2& dtUi);

/**
 * Initial front velocity of a fully nonlinear contact:
 * xbar1 = -(u_x - dx U_i).(u_1 - dt U_i)/|u_x - dx U_i|^2 at the corner.
 */
double contact_front_velocity(const Vec2& dxu, const Vec2& dxUi, const Vec2& u1,
                              const Vec2& dtUi, double c0 = 1e-8);

/**
 * Initial contact velocity of the floating body: (dx q_e - dx Q_i)/(dx zeta_e - dx Z_i),
 * the first-component form of the jump relation at the contact line.
 */
double body_contact_velocity(double dx_qe, double dx_Qi, double dx_ze, double dx_Zi,
                             double c0 = 1e-8);

/** Second-order initial front datum of the spring-loaded piston. */
double piston_xbar2(double m_mass, double k_spring, double x_eq, double rho, double g_grav,
                    double h0, double zeta0);

} // namespace ft

#endif
