#ifndef FT_FRONT_HPP
#define FT_FRONT_HPP

#include <functional>

#include "ft/hyp.hpp"
#include "ft/solver.hpp"

namespace ft {

enum class FrontRegime { Subsonic, LaxRight, LaxLeft, Unclassified };

/** Boundary-trace data of a fully nonlinear contact, in transformed variables. */
struct ContactTraces {
    Vec2 u, u_i;            // solution and constraint traces (equal for exact contacts)
    Vec2 dxphi_u, dxphi_ui; // transported spatial derivatives
    Vec2 dtphi_ui;          // transported time derivative of the constraint
    double xbar_dot = 0;
};

/** Front descriptor shared by the kinematic and contact drivers. */
struct FrontState {
    double xbar = 0;
    double xbar_dot = 0;
    FrontRegime regime = FrontRegime::Subsonic;
    Vec2 mu = Vec2::Zero();   // unit vector orthogonal to dt^phi u_i + A(u_i) dx^phi u_i
    Vec2 nu2 = Vec2::Zero();  // current second-order boundary covector
};

/**
 * First-order contact speed chi = -(Dx.Dt)/|Dx|^2 with Dx = dx^phi u - dx^phi u_i and
 * Dt = dt^phi u - dt^phi u_i; the fluid-side time derivative is taken from the
 * interior equation dt^phi u = -A(u) dx^phi u.
 */
double contact_speed(const System2x2& sys, const ContactTraces& tr, double c0 = 1e-8);

/** Everything needed by the second-order form of the contact evolution. */
struct SecondOrderData {
    Vec2 u2;    // (dt^phi)^2 u at the boundary
    Vec2 nu2;   // boundary covector of the second-order closure
    Vec2 g1;    // inhomogeneity collecting lower-order and constraint terms
    double g2;  // perpendicular component of g1
    double chi2;  // front acceleration of the second-order law
};

/**
 * Assembles the second-order boundary quantities from the trace jet. Inputs beyond
 * ContactTraces: second transported derivatives of u and of the constraint.
 */
SecondOrderData second_order_data(const System2x2& sys, const ContactTraces& tr,
                                  const Vec2& dxx_u, const Vec2& dtt_ui, const Vec2& dtx_ui,
                                  const Vec2& dxx_ui, double c0 = 1e-8);

/** Heun update of a kinematic front: xdot = X(trace); speeds supplied at both stages. */
FrontState kinematic_advance(const FrontState& f, double X_begin, double X_end, double dt);

/**
 * Heun update of a contact front from stage speeds, plus the Dirichlet closure
 * carrying the constraint trace. Checks the contact subsonicity margins.
 */
FrontState contact_advance(const System2x2& sys, const FrontState& f, double chi_begin,
                           double chi_end, const Vec2& u_trace, double dt, double c0 = 1e-8);

/** Unit vector of the contact algebra; throws DegenerateContact below the threshold. */
Vec2 contact_mu(const Vec2& forcing, double threshold = 1e-8);

} // namespace ft

#endif
