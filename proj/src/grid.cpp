#include "ft/grid.hpp"

#include <cmath>

namespace ft {

double CutoffProfile::psi(double s) {
    const double a = std::abs(s);
    if (a <= 1) return 1;
    if (a >= 2) return 0;
    const double r = a - 1;
    return 1 - (10 * r * r * r - 15 * r * r * r * r + 6 * r * r * r * r * r);
}

double CutoffProfile::dpsi(double s) {
    const double a = std::abs(s);
    if (a <= 1 || a >= 2) return 0;
    const double r = a - 1;
    const double d = -30 * r * r * (r - 1) * (r - 1);
    return (s > 0) ? d : -d;
}

MovingGrid MovingGrid::uniform(double x0, double length, int cells) {
    MovingGrid g;
    g.x0 = x0;
    g.n = cells;
    g.dx = length / cells;
    g.front_anchor = x0;
    g.phi_face.resize(cells + 1);
    g.phi_t_face.assign(cells + 1, 0.0);
    for (int i = 0; i <= cells; ++i) g.phi_face[i] = g.face_ref(i);
    return g;
}

double MovingGrid::phi_x_face(int i) const {
    if (i == 0)
        return (-3 * phi_face[0] + 4 * phi_face[1] - phi_face[2]) / (2 * dx);
    if (i == n)
        return (3 * phi_face[n] - 4 * phi_face[n - 1] + phi_face[n - 2]) / (2 * dx);
    return (phi_face[i + 1] - phi_face[i - 1]) / (2 * dx);
}

double MovingGrid::front() const {
    const int i = int(std::lround((front_anchor - x0) / dx));
    return phi_face[std::min(std::max(i, 0), n)];
}

void MovingGrid::check_jacobian() const {
    for (int i = 0; i < n; ++i) {
        const double j = phi_x_cell(i);
        if (!(j >= 0.5 && j <= 2.0))
            throw JacobianDegeneracy("cell Jacobian left [1/2,2]");
    }
}

MovingGrid advance_lagrangian(const MovingGrid& g, const std::vector<double>& v_old,
                              const std::vector<double>& v_new, double dt) {
    if ((int)v_old.size() != g.n + 1 || (int)v_new.size() != g.n + 1)
        throw InsufficientStencil("face speed field size mismatch");
    MovingGrid out = g;
    out.kind = GridKind::Lagrangian;
    for (int i = 0; i <= g.n; ++i) {
        out.phi_face[i] = g.phi_face[i] + 0.5 * dt * (v_old[i] + v_new[i]);
        out.phi_t_face[i] = v_new[i];
    }
    out.check_jacobian();
    return out;
}

MovingGrid set_cutoff(const MovingGrid& g, double xbar_offset, double xbar_dot) {
    if (!(g.epsilon > 0)) throw FtError("cutoff grid needs epsilon > 0");
    if (!(std::abs(xbar_offset) < 0.5 * g.epsilon))
        throw FrontExcursionTooLarge("front moved past eps/2 from its anchor");
    MovingGrid out = g;
    out.kind = GridKind::Cutoff;
    for (int i = 0; i <= g.n; ++i) {
        const double s = (g.face_ref(i) - g.front_anchor) / g.epsilon;
        out.phi_face[i] = g.face_ref(i) + CutoffProfile::psi(s) * xbar_offset;
        out.phi_t_face[i] = CutoffProfile::psi(s) * xbar_dot;
    }
    out.check_jacobian();
    return out;
}

std::pair<std::vector<Vec2>, std::vector<Vec2>>
chain_derivatives(const MovingGrid& g, const std::vector<Vec2>& field) {
    const int n = g.n;
    if (n < 3 || (int)field.size() != n) throw InsufficientStencil("need >= 3 cells");
    std::vector<Vec2> tcorr(n), xder(n);
    for (int i = 0; i < n; ++i) {
        Vec2 d;
        if (i == 0)
            d = (-3 * field[0] + 4 * field[1] - field[2]) / (2 * g.dx);
        else if (i == n - 1)
            d = (3 * field[n - 1] - 4 * field[n - 2] + field[n - 3]) / (2 * g.dx);
        else
            d = (field[i + 1] - field[i - 1]) / (2 * g.dx);
        const double jx = g.phi_x_cell(i);
        xder[i] = d / jx;
        tcorr[i] = -(g.phi_t_center(i) / jx) * d;
    }
    return {tcorr, xder};
}

std::vector<double> ref_derivative(const MovingGrid& g, const std::vector<double>& field) {
    const int n = g.n;
    if (n < 3 || (int)field.size() != n) throw InsufficientStencil("need >= 3 cells");
    std::vector<double> d(n);
    for (int i = 0; i < n; ++i) {
        if (i == 0)
            d[i] = (-3 * field[0] + 4 * field[1] - field[2]) / (2 * g.dx);
        else if (i == n - 1)
            d[i] = (3 * field[n - 1] - 4 * field[n - 2] + field[n - 3]) / (2 * g.dx);
        else
            d[i] = (field[i + 1] - field[i - 1]) / (2 * g.dx);
    }
    return d;
}

} // namespace ft
