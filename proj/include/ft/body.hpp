#ifndef FT_BODY_HPP
#define FT_BODY_HPP

#include <vector>

#include "ft/solver.hpp"

namespace ft {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

/** Underside of the structure as a graph in the body frame at the initial time. */
struct LidShape {
    std::function<double(double)> Z, dZ;
    double X_left = 0, X_right = 0;  // interval on which the lid is defined
    double slope_bound = 0;          // sup |dZ|; used for the rotation admissibility bound
};

enum class BodyMode { Fixed, Prescribed, Free };

struct BodyPose {
    double xG = 0, zG = 0, th = 0;
};

struct FloatingParams {
    double rho = 1, grav = 1, h0 = 1, p_atm = 0;
    double mass = 1, inertia = 1;
    LidShape lid;
    BodyMode mode = BodyMode::Fixed;
    std::function<BodyPose(double)> prescribed;  // pose history (Prescribed mode)
    int interior_cells = 64;
    BodyPose pose0;  // pose at the initial time, entering the lid parameterization
};

/** Lid elevation, slope, and body-frame abscissa at a physical point. */
struct LidSample {
    double Zi = 0, dZi = 0, Xbody = 0;
};

/**
 * Inverts the rigid-motion graph equation for the lid elevation at physical x.
 * Throws RotationOutOfRange when the admissible tilt bound is violated and
 * LidOverrun when x maps outside the lid interval.
 */
LidSample lid_sample(const FloatingParams& par, const BodyPose& pose, double x);

/** Wetted-zone fields sampled at uniform midpoints between the contact lines. */
struct InteriorField {
    double xm = 0, xp = 0, dxw = 0;  // contact points and sampling width
    std::vector<double> x, H, Zi, dZi;
    std::vector<Vec3> T, Tstar;
    std::vector<double> Q;         // horizontal discharge profile
    std::vector<double> FI, FIII;  // forcing profiles (advective+hydrostatic, rotational)
    double denom = 0;              // int 1/H
    Vec3 Tavg = Vec3::Zero();
    double avg_FI = 0, avg_FIII = 0;
    Mat3 Ma = Mat3::Zero();  // added-mass matrix rho int T* T*^T / H
    LidSample at_m, at_p;    // lid samples at the contacts
    double Q_m = 0, Q_p = 0; // discharge traces at the contacts
    double Zi_t_m = 0, Zi_t_p = 0;  // lid vertical speeds at the contacts
};

InteriorField interior_solve(const FloatingParams& par, const BodyPose& pose, const Vec3& vel,
                             double qbar, double xm, double xp);

/** Rigid-body right-hand side (0,-mg,0) - rho int (FI + FIII) starred, weighted by T/H. */
Vec3 hydro_rhs(const FloatingParams& par, const InteriorField& f);

struct BodyForces {
    Vec3 acc = Vec3::Zero();  // d/dt (U_G, omega)
    double qbar_dot = 0;
    Mat3 Mtot = Mat3::Zero();  // M0 + Ma
    Vec3 rhs = Vec3::Zero();
};

/** Accelerations of the coupled body/discharge system for the given mode. */
BodyForces body_forces(const FloatingParams& par, const InteriorField& f, const Vec3& vel,
                       const Vec3& acc_prescribed);

/**
 * Interior pressure at the sampling faces by cumulative integration of its gradient;
 * residual reports the defect of the far-contact atmospheric condition.
 */
std::vector<double> interior_pressure(const FloatingParams& par, const InteriorField& f,
                                      const Vec3& acc, double& residual);

/** Coupled exterior-water / interior-column / rigid-body evolution. */
struct FloatingDriver {
    FloatingParams par;
    System2x2 sys;            // conservative Saint-Venant descriptor
    SolverState left, right;  // exterior domains (left ends at x_-, right starts at x_+)
    MovingGrid base_left, base_right;
    double xm = 0, xp = 0, xm_dot = 0, xp_dot = 0;
    BodyPose pose;
    Vec3 vel = Vec3::Zero();  // (u_G, w_G, omega)
    double qbar = 0;
    double t = 0;
    double min_gap = 0;  // collision threshold; defaulted on the first step

    void step(double dt);
    /** Total water volume: exterior cell sums plus a fine interior quadrature. */
    double water_mass() const;
};

} // namespace ft

#endif
