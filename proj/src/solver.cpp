#include "ft/solver.hpp"

#include <cmath>

namespace ft {

BoundaryClosure BoundaryClosure::transparent() { return {}; }

BoundaryClosure BoundaryClosure::linear(std::function<Vec2(double)> nu,
                                        std::function<double(double)> g) {
    BoundaryClosure c;
    c.kind = Kind::LinearNu;
    c.nu = std::move(nu);
    c.g = std::move(g);
    return c;
}

BoundaryClosure BoundaryClosure::wall() {
    return linear([](double) { return Vec2(0, 1); }, [](double) { return 0.0; });
}

BoundaryClosure BoundaryClosure::dirichlet(std::function<Vec2(double)> u_i) {
    BoundaryClosure c;
    c.kind = Kind::DirichletTrace;
    c.u_i = std::move(u_i);
    return c;
}

BoundaryClosure BoundaryClosure::nonlinear(std::function<double(double, const Vec2&)> Phi,
                                           std::function<double(double)> g) {
    BoundaryClosure c;
    c.kind = Kind::NonlinearPhi;
    c.Phi = std::move(Phi);
    c.g = std::move(g);
    return c;
}

namespace {

struct FaceFrame {
    EigenStructure es;
    Mat2 E, L;           // columns e_+, e_- and its inverse (rows = left eigenvectors)
    double s_plus, s_minus;  // reference-frame transport speeds of the two families
};

FaceFrame face_frame(const System2x2& sys, const Vec2& u, double phi_t, double phi_x) {
    FaceFrame fr;
    fr.es = eigen_decompose(sys.A(u));
    fr.E.col(0) = fr.es.e_plus;
    fr.E.col(1) = fr.es.e_minus;
    fr.L = fr.E.inverse();
    fr.s_plus = (fr.es.lambda_plus - phi_t) / phi_x;
    fr.s_minus = (-fr.es.lambda_minus - phi_t) / phi_x;
    return fr;
}

// monotonized-central slope with a TVB relaxation: clipping smooth extrema to
// zero costs a third of an order of L1 convergence, so slopes below the tvb
// threshold (an O(dx^2) quantity for cell differences) pass through unlimited
double mc_slope(double a, double b, double tvb) {
    const double c = 0.5 * (a + b);
    if (std::abs(c) <= tvb) return c;
    if (a * b <= 0) return 0;
    const double m = 2 * std::min(std::abs(a), std::abs(b));
    return std::copysign(std::min(std::abs(c), m), a);
}

Vec2 extrapolated_face(const SolverState& s, Side side) {
    const int n = s.grid.n;
    if (n < 2) throw InsufficientStencil("need >= 2 cells");
    return side == Side::Left ? Vec2(1.5 * s.u[0] - 0.5 * s.u[1])
                              : Vec2(1.5 * s.u[n - 1] - 0.5 * s.u[n - 2]);
}

} // namespace

Vec2 farfield_close(const SolverState& s, Side side) { return extrapolated_face(s, side); }

Vec2 apply_boundary(const SolverState& s, const BoundaryClosure& c, Side side) {
    const Vec2 u_int = extrapolated_face(s, side);
    if (c.kind == BoundaryClosure::Kind::Transparent) return u_int;

    const int fi = (side == Side::Left) ? 0 : s.grid.n;
    const FaceFrame fr =
        face_frame(s.sys, u_int, s.grid.phi_t_face[fi], s.grid.phi_x_face(fi));
    // the outgoing family carries information from the interior to this face
    const bool left = side == Side::Left;
    const Vec2 l_out = left ? Vec2(fr.L.row(1)) : Vec2(fr.L.row(0));

    if (c.kind == BoundaryClosure::Kind::DirichletTrace) {
        const Vec2 ui = c.u_i(s.t);
        s.dirichlet_residual = std::abs(l_out.dot(ui - u_int));
        return ui;
    }

    // imposed closures require a subsonic face: one incoming, one outgoing family
    const bool sub = left ? (fr.s_plus > 0 && fr.s_minus < 0)
                          : (fr.s_plus > 0 && fr.s_minus < 0);
    if (!sub) throw WrongCharacteristicCount("boundary is not subsonic");

    const double w_out = l_out.dot(u_int);
    if (c.kind == BoundaryClosure::Kind::LinearNu) {
        Mat2 Msys;
        Msys.row(0) = c.nu(s.t).transpose();
        Msys.row(1) = l_out.transpose();
        if (std::abs(Msys.determinant()) < 1e-12)
            throw ClosureFailure("nu parallel to the outgoing left eigenvector");
        return Msys.inverse() * Vec2(c.g(s.t), w_out);
    }

    // NonlinearPhi: Newton on {Phi(t,u)=g, l_out.(u-u_int)=0}
    Vec2 u = u_int;
    const double g = c.g ? c.g(s.t) : 0.0;
    for (int it = 0; it < 50; ++it) {
        const Vec2 F(c.Phi(s.t, u) - g, l_out.dot(u - u_int));
        if (F.norm() < 1e-12) return u;
        Vec2 gp;
        if (c.grad_Phi) {
            gp = c.grad_Phi(s.t, u);
        } else {
            const double h = 1e-7;
            for (int j = 0; j < 2; ++j) {
                Vec2 up = u, um = u;
                up[j] += h;
                um[j] -= h;
                gp[j] = (c.Phi(s.t, up) - c.Phi(s.t, um)) / (2 * h);
            }
        }
        Mat2 J;
        J.row(0) = gp.transpose();
        J.row(1) = l_out.transpose();
        if (std::abs(J.determinant()) < 1e-14) throw NewtonDivergence("singular closure Jacobian");
        u -= J.inverse() * F;
    }
    throw NewtonDivergence("boundary Newton did not reach 1e-12 in 50 iterations");
}

std::vector<Vec2> pack_state(const SolverState& s) {
    std::vector<Vec2> V(s.u.size());
    if (s.sys.conservative()) {
        for (int i = 0; i < s.grid.n; ++i) V[i] = s.grid.phi_x_cell(i) * s.sys.f0(s.u[i]);
    } else {
        V = s.u;
    }
    return V;
}

std::vector<Vec2> unpack_state(const System2x2& sys, const MovingGrid& grid,
                               const std::vector<Vec2>& V, const std::vector<Vec2>& guess) {
    std::vector<Vec2> u(V.size());
    if (!sys.conservative()) return V;
    for (size_t i = 0; i < V.size(); ++i) {
        const Vec2 w = V[i] / grid.phi_x_cell(int(i));
        if (sys.f0_inv) {
            u[i] = sys.f0_inv(w);
        } else {
            Vec2 x = guess.empty() ? w : guess[i];
            for (int it = 0; it < 50; ++it) {
                const Vec2 F = sys.f0(x) - w;
                if (F.norm() < 1e-13) break;
                x -= jacobian_fd(sys.f0, x).inverse() * F;
                if (it == 49) throw NewtonDivergence("f0 inversion failed");
            }
            u[i] = x;
        }
    }
    return u;
}

StageResult stage_rhs(const SolverState& s, const BoundaryClosure& left,
                      const BoundaryClosure& right) {
    const int n = s.grid.n;
    const double dx = s.grid.dx;
    if (n < 3) throw InsufficientStencil("need >= 3 cells");
    StageResult out;
    out.dVdt.assign(n, Vec2::Zero());
    const double tvb = dx * dx;
    auto lim = [tvb](double a, double b) { return mc_slope(a, b, tvb); };
    out.ub_left = apply_boundary(s, left, Side::Left);
    out.ub_right = apply_boundary(s, right, Side::Right);

    auto w_at = [&](const Vec2& l, int j) { return l.dot(s.u[j]); };

    if (s.sys.conservative()) {
        std::vector<Vec2> G(n + 1);
        auto flux = [&](const Vec2& ub, int fi) {
            return Vec2(s.sys.f(ub) - s.grid.phi_t_face[fi] * s.sys.f0(ub));
        };
        G[0] = flux(out.ub_left, 0);
        G[n] = flux(out.ub_right, n);
        for (int i = 1; i < n; ++i) {
            const Vec2 ubar = 0.5 * (s.u[i - 1] + s.u[i]);
            const FaceFrame fr =
                face_frame(s.sys, ubar, s.grid.phi_t_face[i],
                           (s.grid.phi_center(i) - s.grid.phi_center(i - 1)) / dx);
            out.max_ref_speed = std::max({out.max_ref_speed, std::abs(fr.s_plus),
                                          std::abs(fr.s_minus)});
            Vec2 uface = Vec2::Zero();
            for (int k = 0; k < 2; ++k) {
                const Vec2 l = fr.L.row(k);
                const double sk = (k == 0) ? fr.s_plus : fr.s_minus;
                double wf;
                if (sk >= 0) {
                    const double dwr = w_at(l, i) - w_at(l, i - 1);
                    const double dwl = (i >= 2) ? w_at(l, i - 1) - w_at(l, i - 2) : dwr;
                    wf = w_at(l, i - 1) + 0.5 * lim(dwl, dwr);
                } else {
                    const double dwl = w_at(l, i) - w_at(l, i - 1);
                    const double dwr = (i + 1 < n) ? w_at(l, i + 1) - w_at(l, i) : dwl;
                    wf = w_at(l, i) - 0.5 * lim(dwl, dwr);
                }
                uface += wf * Vec2(fr.E.col(k));
            }
            G[i] = flux(uface, i);
        }
        for (int i = 0; i < n; ++i) {
            out.dVdt[i] = -(G[i + 1] - G[i]) / dx;
            if (s.sys.B || s.sys.source) {
                const double xc = s.grid.phi_center(i);
                Vec2 low = Vec2::Zero();
                if (s.sys.source) low += s.sys.source(s.t, xc);
                if (s.sys.B) low -= s.sys.B(s.t, xc) * s.u[i];
                const Mat2 f0p = s.sys.f0_inv ? Mat2(Mat2::Identity())
                                              : jacobian_fd(s.sys.f0, s.u[i]);
                out.dVdt[i] += s.grid.phi_x_cell(i) * (f0p * low);
            }
        }
    } else {
        for (int i = 0; i < n; ++i) {
            const FaceFrame fr = face_frame(s.sys, s.u[i], s.grid.phi_t_center(i),
                                            s.grid.phi_x_cell(i));
            out.max_ref_speed = std::max({out.max_ref_speed, std::abs(fr.s_plus),
                                          std::abs(fr.s_minus)});
            Vec2 du = Vec2::Zero();
            for (int k = 0; k < 2; ++k) {
                const Vec2 l = fr.L.row(k);
                const double sk = (k == 0) ? fr.s_plus : fr.s_minus;
                double D;
                if (sk >= 0) {
                    if (i == 0) {
                        // quadratic through the boundary face value and the first two cells
                        const double wb = l.dot(out.ub_left);
                        D = (-4.0 * wb / 3.0 + w_at(l, 0) + w_at(l, 1) / 3.0) / dx;
                    } else {
                        const double sig_i =
                            (i + 1 < n) ? lim(w_at(l, i) - w_at(l, i - 1),
                                                 w_at(l, i + 1) - w_at(l, i))
                                        : w_at(l, i) - w_at(l, i - 1);
                        const double sig_im =
                            (i >= 2) ? lim(w_at(l, i - 1) - w_at(l, i - 2),
                                              w_at(l, i) - w_at(l, i - 1))
                                     : w_at(l, i) - w_at(l, i - 1);
                        D = (w_at(l, i) + 0.5 * sig_i - w_at(l, i - 1) - 0.5 * sig_im) / dx;
                    }
                } else {
                    if (i == n - 1) {
                        const double wb = l.dot(out.ub_right);
                        D = (4.0 * wb / 3.0 - w_at(l, n - 1) - w_at(l, n - 2) / 3.0) / dx;
                    } else {
                        const double sig_i =
                            (i >= 1) ? lim(w_at(l, i) - w_at(l, i - 1),
                                              w_at(l, i + 1) - w_at(l, i))
                                     : w_at(l, i + 1) - w_at(l, i);
                        const double sig_ip =
                            (i + 2 < n) ? lim(w_at(l, i + 1) - w_at(l, i),
                                                 w_at(l, i + 2) - w_at(l, i + 1))
                                        : w_at(l, i + 1) - w_at(l, i);
                        D = (w_at(l, i + 1) - 0.5 * sig_ip - w_at(l, i) + 0.5 * sig_i) / dx;
                    }
                }
                du -= sk * D * Vec2(fr.E.col(k));
            }
            if (s.sys.source) du += s.sys.source(s.t, s.grid.phi_center(i));
            if (s.sys.B) du -= s.sys.B(s.t, s.grid.phi_center(i)) * s.u[i];
            out.dVdt[i] = du;
        }
    }
    return out;
}

double suggest_dt(const SolverState& s) {
    double smax = 0;
    for (int i = 0; i < s.grid.n; ++i) {
        const EigenStructure es = eigen_decompose(s.sys.A(s.u[i]));
        const double jt = s.grid.phi_t_center(i), jx = s.grid.phi_x_cell(i);
        smax = std::max({smax, std::abs((es.lambda_plus - jt) / jx),
                         std::abs((-es.lambda_minus - jt) / jx)});
    }
    if (smax == 0) return 1e30;
    return s.cfl * s.grid.dx / smax;
}

void step(SolverState& s, const BoundaryClosure& left, const BoundaryClosure& right,
          double dt) {
    const std::vector<Vec2> V0 = pack_state(s);
    const StageResult r1 = stage_rhs(s, left, right);
    if (r1.max_ref_speed * dt / s.grid.dx > s.cfl + 1e-12)
        throw CflViolation("dt exceeds the Courant bound");

    SolverState mid = s;
    std::vector<Vec2> V1(V0.size());
    for (size_t i = 0; i < V0.size(); ++i) V1[i] = V0[i] + dt * r1.dVdt[i];
    mid.u = unpack_state(s.sys, s.grid, V1, s.u);
    mid.t = s.t + dt;

    const StageResult r2 = stage_rhs(mid, left, right);
    for (size_t i = 0; i < V0.size(); ++i)
        V1[i] = V0[i] + 0.5 * dt * (r1.dVdt[i] + r2.dVdt[i]);
    s.u = unpack_state(s.sys, s.grid, V1, s.u);
    s.t += dt;
    for (const Vec2& u : s.u)
        if (!s.sys.phase_box.contains(u)) throw PhaseBoxExit("state left the phase box");
}

} // namespace ft
