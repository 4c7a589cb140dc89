#ifndef FT_GRID_HPP
#define FT_GRID_HPP

#include <vector>

#include "ft/hyp.hpp"

namespace ft {

/** C2 quintic bump: 1 on |s|<=1, 0 on |s|>=2, monotone in between. */
struct CutoffProfile {
    double epsilon = 1;
    static double psi(double s);
    static double dpsi(double s);
    // largest |psi'| over the transition (attained at |s| = 1.5)
    static constexpr double max_slope = 1.875;
};

enum class GridKind { Fixed, Lagrangian, Cutoff };

/**
 * Discrete diffeomorphism phi(t,.) on a uniform reference grid of n cells over
 * [x0, x0+n*dx]. phi and phi_t are carried at the n+1 cell faces; per-cell
 * Jacobians come from face differences so that constant states are exactly
 * preserved by the flux-form stepper on moving grids.
 */
struct MovingGrid {
    double x0 = 0;   // reference coordinate of the first face
    double dx = 0;   // reference cell width
    int n = 0;       // number of cells
    GridKind kind = GridKind::Fixed;
    double epsilon = 0;       // cutoff transition scale (reference length)
    double front_anchor = 0;  // reference coordinate mapped to the tracked front
    std::vector<double> phi_face, phi_t_face;  // size n+1

    static MovingGrid uniform(double x0, double length, int cells);

    double face_ref(int i) const { return x0 + dx * i; }
    double center_ref(int i) const { return x0 + dx * (i + 0.5); }
    double phi_center(int i) const { return 0.5 * (phi_face[i] + phi_face[i + 1]); }
    double phi_t_center(int i) const { return 0.5 * (phi_t_face[i] + phi_t_face[i + 1]); }
    double phi_x_cell(int i) const { return (phi_face[i + 1] - phi_face[i]) / dx; }
    /** phi_x at face i by one-sided/central second-order differences of phi_face. */
    double phi_x_face(int i) const;
    /** Position of the tracked front (face mapped from front_anchor). */
    double front() const;

    /** Abort if any cell Jacobian leaves [1/2, 2]. */
    void check_jacobian() const;
};

/**
 * Move every face by the trapezoid rule with the face-sampled transport speeds at
 * the beginning and end of the step; phi_t becomes the end-of-step speeds.
 */
MovingGrid advance_lagrangian(const MovingGrid& g, const std::vector<double>& speed_faces_old,
                              const std::vector<double>& speed_faces_new, double dt);

/**
 * phi = x + psi((x - anchor)/eps) * xbar_offset, phi_t = psi * xbar_dot.
 * xbar_offset is the front displacement from the anchor.
 */
MovingGrid set_cutoff(const MovingGrid& g, double xbar_offset, double xbar_dot);

/**
 * Chain-rule derivatives of a cell-centered field: returns
 * (time correction -(phi_t/phi_x) dx_field, transported derivative dx_field/phi_x),
 * second-order stencils (one-sided at the ends). Needs >= 3 cells.
 */
std::pair<std::vector<Vec2>, std::vector<Vec2>>
chain_derivatives(const MovingGrid& g, const std::vector<Vec2>& field);

/** Plain second-order derivative of a cell-centered scalar field on the reference grid. */
std::vector<double> ref_derivative(const MovingGrid& g, const std::vector<double>& field);

} // namespace ft

#endif
