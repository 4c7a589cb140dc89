#include "ft/compat.hpp"

#include <cmath>

namespace ft {

namespace {

std::vector<Vec2> x_derivative(const MovingGrid& grid, const std::vector<Vec2>& f) {
    auto [tc, xd] = chain_derivatives(grid, f);
    (void)tc;
    return xd;
}

} // namespace

std::vector<std::vector<Vec2>> initial_time_derivatives(const System2x2& sys,
                                                        const MovingGrid& grid,
                                                        const std::vector<Vec2>& u_in,
                                                        int order) {
    if (grid.n < 5) throw InsufficientStencil("need >= 5 cells near the boundary");
    std::vector<std::vector<Vec2>> out;
    const std::vector<Vec2> ux = x_derivative(grid, u_in);
    const double ht = 1e-6;

    std::vector<Vec2> u1(grid.n);
    for (int i = 0; i < grid.n; ++i) {
        const double x = grid.phi_center(i);
        Vec2 v = -sys.A(u_in[i]) * ux[i];
        if (sys.B) v -= sys.B(0, x) * u_in[i];
        if (sys.source) v += sys.source(0, x);
        u1[i] = v;
    }
    out.push_back(u1);
    if (order < 2) return out;

    const std::vector<Vec2> u1x = x_derivative(grid, u1);
    std::vector<Vec2> u2(grid.n);
    for (int i = 0; i < grid.n; ++i) {
        const double x = grid.phi_center(i);
        Vec2 v = -sys.A(u_in[i]) * u1x[i] - dA_dir(sys.A, u_in[i], u1[i]) * ux[i];
        if (sys.B) {
            v -= sys.B(0, x) * u1[i];
            v -= ((sys.B(ht, x) - sys.B(-ht, x)) / (2 * ht)) * u_in[i];
        }
        if (sys.source) v += (sys.source(ht, x) - sys.source(-ht, x)) / (2 * ht);
        u2[i] = v;
    }
    out.push_back(u2);
    return out;
}

CompatReport check_linear_bc(const System2x2& sys, const MovingGrid& grid,
                             const std::vector<Vec2>& u_in, const Vec2& nu,
                             const std::function<double(double)>& g, int order) {
    CompatReport rep;
    rep.order = order;
    // boundary value by quadratic extrapolation of the first three cells to the face
    auto face0 = [&](const std::vector<Vec2>& f) {
        return Vec2(1.875 * f[0] - 1.25 * f[1] + 0.375 * f[2]);
    };
    const double ht = 1e-5;
    auto gder = [&](int k) {
        if (k == 0) return g(0.0);
        if (k == 1) return (g(ht) - g(-ht)) / (2 * ht);
        return (g(ht) - 2 * g(0.0) + g(-ht)) / (ht * ht);
    };
    rep.residuals.push_back(nu.dot(face0(u_in)) - gder(0));
    if (order >= 1) {
        auto levels = initial_time_derivatives(sys, grid, u_in, order);
        rep.u1 = levels[0];
        rep.residuals.push_back(nu.dot(face0(levels[0])) - gder(1));
        if (order >= 2) {
            rep.u2 = levels[1];
            rep.residuals.push_back(nu.dot(face0(levels[1])) - gder(2));
        }
    }
    return rep;
}

double contact_order0_residual(const Vec2& u0, const Vec2& Ui00) {
    return (u0 - Ui00).norm();
}

double contact_order1_residual(const Mat2& A0, const Vec2& dxu, const Vec2& dxUi,
                               const Vec2& dtUi) {
    const Vec2 jump = dxu - dxUi;
    if (jump.norm() < 1e-12) throw DegenerateContact("derivative jump vanishes");
    return perp(jump).dot(A0 * dxu + dtUi) / jump.norm();
}

double contact_front_velocity(const Vec2& dxu, const Vec2& dxUi, const Vec2& u1,
                              const Vec2& dtUi, double c0) {
    const Vec2 jump = dxu - dxUi;
    const double d2 = jump.squaredNorm();
    if (d2 < c0 * c0) throw DegenerateContact("derivative jump below threshold");
    return -jump.dot(u1 - dtUi) / d2;
}

double body_contact_velocity(double dx_qe, double dx_Qi, double dx_ze, double dx_Zi,
                             double c0) {
    const double den = dx_ze - dx_Zi;
    if (std::abs(den) < c0) throw DegenerateContact("surface slopes match at the contact");
    return (dx_qe - dx_Qi) / den;
}

double piston_xbar2(double m_mass, double k_spring, double x_eq, double rho, double g_grav,
                    double h0, double zeta0) {
    return (k_spring * x_eq + 0.5 * rho * g_grav * (zeta0 * zeta0 + 2 * h0 * zeta0)) / m_mass;
}

} // namespace ft
