#include "ft/body.hpp"

#include <algorithm>
#include <cmath>

namespace ft {

namespace {

double clampd(double x, double lo, double hi) { return std::min(std::max(x, lo), hi); }

double lid_slope_bound(const FloatingParams& par) {
    if (par.lid.slope_bound > 0) return par.lid.slope_bound;
    double sb = 0;
    for (int k = 0; k <= 32; ++k) {
        const double X = par.lid.X_left + (par.lid.X_right - par.lid.X_left) * k / 32.0;
        sb = std::max(sb, std::abs(par.lid.dZ(X)));
    }
    return sb;
}

// one-sided second-order derivative at a face from the first three cell values
double face_derivative(double f0, double f1, double f2, double h) {
    return (-2 * f0 + 3 * f1 - f2) / h;
}

} // namespace

LidSample lid_sample(const FloatingParams& par, const BodyPose& pose, double x) {
    const double c = std::cos(pose.th), s = std::sin(pose.th);
    if (pose.th != 0) {
        const double sb = lid_slope_bound(par);
        if (1 - sb * std::abs(std::tan(pose.th)) <= 0)
            throw RotationOutOfRange("tilt too large for the lid graph inversion");
    }
    const double xr = x - pose.xG;
    auto Zc = [&](double X) {
        return par.lid.Z(clampd(X, par.lid.X_left, par.lid.X_right));
    };
    auto dZc = [&](double X) {
        return par.lid.dZ(clampd(X, par.lid.X_left, par.lid.X_right));
    };
    double z = Zc(xr + par.pose0.xG) - par.pose0.zG;
    bool ok = false;
    for (int it = 0; it < 60; ++it) {
        const double X = xr * c + z * s + par.pose0.xG;
        const double F = z * c - xr * s + par.pose0.zG - Zc(X);
        if (std::abs(F) < 1e-13) {
            ok = true;
            break;
        }
        const double dF = c - dZc(X) * s;
        z -= F / dF;
    }
    if (!ok) throw NewtonDivergence("lid graph inversion did not converge");
    LidSample ls;
    ls.Xbody = xr * c + z * s + par.pose0.xG;
    const double tol = 1e-9 * (par.lid.X_right - par.lid.X_left);
    if (ls.Xbody < par.lid.X_left - tol || ls.Xbody > par.lid.X_right + tol)
        throw LidOverrun("contact zone left the lid interval");
    ls.Zi = z + pose.zG;
    const double dZ = dZc(ls.Xbody);
    ls.dZi = (s + dZ * c) / (c - dZ * s);
    return ls;
}

namespace {

Vec3 T_of(const BodyPose& pose, double x, double Zi) {
    const double rx = x - pose.xG, rz = Zi - pose.zG;
    return Vec3(rz, -rx, -0.5 * (rx * rx + rz * rz));
}

// vertical speed of the lid at a point: (U_G + omega r_G^perp) . N_i
double lid_dt(const BodyPose& pose, const Vec3& vel, double x, const LidSample& ls) {
    const double rx = x - pose.xG, rz = ls.Zi - pose.zG;
    const Vec2 rperp(-rz, rx);
    const Vec2 Ni(-ls.dZi, 1);
    return (Vec2(vel[0], vel[1]) + vel[2] * rperp).dot(Ni);
}

} // namespace

InteriorField interior_solve(const FloatingParams& par, const BodyPose& pose, const Vec3& vel,
                             double qbar, double xm, double xp) {
    const int M = par.interior_cells;
    if (M < 8) throw InsufficientStencil("need >= 8 interior sample cells");
    if (!(xp > xm)) throw ContactCollision("contact points crossed");
    InteriorField f;
    f.xm = xm;
    f.xp = xp;
    f.dxw = (xp - xm) / M;
    f.x.resize(M);
    f.H.resize(M);
    f.Zi.resize(M);
    f.dZi.resize(M);
    f.T.resize(M);
    f.Tstar.resize(M);
    f.Q.resize(M);
    f.FI.resize(M);
    f.FIII.resize(M);

    std::vector<double> sflux(M);  // Q^2/H + g H^2/2, differentiated into FI
    for (int j = 0; j < M; ++j) {
        f.x[j] = xm + (j + 0.5) * f.dxw;
        const LidSample ls = lid_sample(par, pose, f.x[j]);
        f.Zi[j] = ls.Zi;
        f.dZi[j] = ls.dZi;
        f.H[j] = par.h0 + ls.Zi;
        if (f.H[j] <= 0) throw DryInterior("interior depth vanished");
        f.T[j] = T_of(pose, f.x[j], ls.Zi);
        f.Q[j] = vel.dot(f.T[j]) + qbar;
        sflux[j] = f.Q[j] * f.Q[j] / f.H[j] + 0.5 * par.grav * f.H[j] * f.H[j];

        const double rx = f.x[j] - pose.xG, rz = ls.Zi - pose.zG;
        const double rpN = rz * ls.dZi + rx;  // r_G^perp . N_i
        Mat3 Mm;
        Mm << -ls.dZi, 0, rpN, 1, 0, 0, rpN, 0, -rz * rpN;
        f.FIII[j] = vel.dot(Mm * vel);
    }
    for (int j = 0; j < M; ++j) {
        if (j == 0)
            f.FI[j] = (-1.5 * sflux[0] + 2 * sflux[1] - 0.5 * sflux[2]) / f.dxw;
        else if (j == M - 1)
            f.FI[j] = (1.5 * sflux[M - 1] - 2 * sflux[M - 2] + 0.5 * sflux[M - 3]) / f.dxw;
        else
            f.FI[j] = (sflux[j + 1] - sflux[j - 1]) / (2 * f.dxw);
    }

    double sumFI = 0, sumFIII = 0;
    Vec3 sumT = Vec3::Zero();
    f.denom = 0;
    for (int j = 0; j < M; ++j) {
        const double w = f.dxw / f.H[j];
        f.denom += w;
        sumFI += f.FI[j] * w;
        sumFIII += f.FIII[j] * w;
        sumT += f.T[j] * w;
    }
    f.avg_FI = sumFI / f.denom;
    f.avg_FIII = sumFIII / f.denom;
    f.Tavg = sumT / f.denom;
    f.Ma = Mat3::Zero();
    for (int j = 0; j < M; ++j) {
        f.Tstar[j] = f.T[j] - f.Tavg;
        f.Ma += (par.rho * f.dxw / f.H[j]) * (f.Tstar[j] * f.Tstar[j].transpose());
    }

    f.at_m = lid_sample(par, pose, xm);
    f.at_p = lid_sample(par, pose, xp);
    f.Q_m = vel.dot(T_of(pose, xm, f.at_m.Zi)) + qbar;
    f.Q_p = vel.dot(T_of(pose, xp, f.at_p.Zi)) + qbar;
    f.Zi_t_m = lid_dt(pose, vel, xm, f.at_m);
    f.Zi_t_p = lid_dt(pose, vel, xp, f.at_p);
    return f;
}

Vec3 hydro_rhs(const FloatingParams& par, const InteriorField& f) {
    Vec3 b(0, -par.mass * par.grav, 0);
    for (size_t j = 0; j < f.x.size(); ++j) {
        const double Fstar = (f.FI[j] - f.avg_FI) + (f.FIII[j] - f.avg_FIII);
        b -= (par.rho * Fstar * f.dxw / f.H[j]) * f.Tstar[j];
    }
    return b;
}

BodyForces body_forces(const FloatingParams& par, const InteriorField& f, const Vec3& vel,
                       const Vec3& acc_prescribed) {
    (void)vel;
    BodyForces bf;
    Mat3 M0 = Mat3::Zero();
    M0(0, 0) = M0(1, 1) = par.mass;
    M0(2, 2) = par.inertia;
    bf.Mtot = M0 + f.Ma;
    switch (par.mode) {
        case BodyMode::Fixed:
            bf.acc = Vec3::Zero();
            break;
        case BodyMode::Prescribed:
            bf.acc = acc_prescribed;
            break;
        case BodyMode::Free:
            bf.rhs = hydro_rhs(par, f);
            bf.acc = bf.Mtot.ldlt().solve(bf.rhs);
            break;
    }
    bf.qbar_dot = -(f.avg_FI + f.avg_FIII + bf.acc.dot(f.Tavg));
    return bf;
}

std::vector<double> interior_pressure(const FloatingParams& par, const InteriorField& f,
                                      const Vec3& acc, double& residual) {
    const int M = int(f.x.size());
    std::vector<double> P(M + 1);
    P[0] = par.p_atm;
    const double FII_avg = acc.dot(f.Tavg);
    for (int j = 0; j < M; ++j) {
        const double Fstar = (f.FI[j] - f.avg_FI) + (acc.dot(f.T[j]) - FII_avg) +
                             (f.FIII[j] - f.avg_FIII);
        P[j + 1] = P[j] - f.dxw * par.rho / f.H[j] * Fstar;
    }
    residual = std::abs(P[M] - par.p_atm);
    return P;
}

namespace {

struct BodyEval {
    StageResult rl, rr;
    double xm_dot = 0, xp_dot = 0;
    Vec3 pose_rate = Vec3::Zero();
    Vec3 acc = Vec3::Zero();
    double qbar_dot = 0;
};

struct BodyConf {
    SolverState l, r;
    double xm, xp;
    BodyPose pose;
    Vec3 vel;
    double qbar;
    double t;
};

BodyPose prescribed_pose(const FloatingParams& par, double t) { return par.prescribed(t); }

BodyEval eval_conf(const FloatingParams& par, const BodyConf& c) {
    BodyEval e;
    BodyPose pose = c.pose;
    Vec3 vel = c.vel, accP = Vec3::Zero();
    if (par.mode == BodyMode::Fixed) {
        vel = Vec3::Zero();
    } else if (par.mode == BodyMode::Prescribed) {
        const double h = 1e-4;
        pose = prescribed_pose(par, c.t);
        const BodyPose pp = prescribed_pose(par, c.t + h), pm = prescribed_pose(par, c.t - h);
        vel = Vec3(pp.xG - pm.xG, pp.zG - pm.zG, pp.th - pm.th) / (2 * h);
        accP = Vec3(pp.xG - 2 * pose.xG + pm.xG, pp.zG - 2 * pose.zG + pm.zG,
                    pp.th - 2 * pose.th + pm.th) /
               (h * h);
    }
    const InteriorField f = interior_solve(par, pose, vel, c.qbar, c.xm, c.xp);
    const BodyForces bf = body_forces(par, f, vel, accP);

    const Vec2 um(f.at_m.Zi, f.Q_m), up(f.at_p.Zi, f.Q_p);
    auto pin = [](Vec2 v) {
        return BoundaryClosure::dirichlet([v](double) { return v; });
    };
    const BoundaryClosure wall = BoundaryClosure::wall();
    e.rl = stage_rhs(c.l, wall, pin(um));
    e.rr = stage_rhs(c.r, pin(up), wall);

    // contact-line speed from the jump of the surface slopes
    auto contact_speed_at = [&](const SolverState& s, bool right_face, const LidSample& ls,
                                double Zi_t) {
        const int n = s.grid.n;
        if (n < 3) throw InsufficientStencil("need >= 3 exterior cells");
        const int fi = right_face ? n : 0;
        const double px = s.grid.phi_x_face(fi);
        double dz, dq;
        if (right_face) {
            dz = face_derivative(s.u[n - 1][0], s.u[n - 2][0], s.u[n - 3][0], -s.grid.dx) / px;
            dq = face_derivative(s.u[n - 1][1], s.u[n - 2][1], s.u[n - 3][1], -s.grid.dx) / px;
        } else {
            dz = face_derivative(s.u[0][0], s.u[1][0], s.u[2][0], s.grid.dx) / px;
            dq = face_derivative(s.u[0][1], s.u[1][1], s.u[2][1], s.grid.dx) / px;
        }
        const double den = dz - ls.dZi;
        if (std::abs(den) < 1e-8) throw DegenerateContact("surface slopes match at a contact");
        return (Zi_t + dq) / den;
    };
    e.xm_dot = contact_speed_at(c.l, true, f.at_m, f.Zi_t_m);
    e.xp_dot = contact_speed_at(c.r, false, f.at_p, f.Zi_t_p);

    // the contact must stay strictly subsonic relative to the exterior flow
    auto check_sub = [&](const Vec2& ub, double xd) {
        const double h = par.h0 + ub[0];
        if (std::sqrt(par.grav * h) - std::abs(ub[1] / h - xd) <= 0)
            throw SubsonicityLoss("contact line reached a characteristic speed");
    };
    check_sub(e.rl.ub_right, e.xm_dot);
    check_sub(e.rr.ub_left, e.xp_dot);

    e.pose_rate = vel;
    e.acc = bf.acc;
    e.qbar_dot = bf.qbar_dot;
    return e;
}

} // namespace

void FloatingDriver::step(double dt) {
    if (min_gap == 0) min_gap = 4 * (xp - xm) / par.interior_cells;
    const std::vector<Vec2> V0l = pack_state(left), V0r = pack_state(right);

    BodyConf c0{left, right, xm, xp, pose, vel, qbar, t};
    const BodyEval e1 = eval_conf(par, c0);
    const double cmax = std::max(e1.rl.max_ref_speed, e1.rr.max_ref_speed);
    if (cmax * dt / left.grid.dx > left.cfl + 1e-12)
        throw CflViolation("dt exceeds the Courant bound");

    auto advect = [&](const SolverState& s, const MovingGrid& base, const std::vector<Vec2>& V0,
                      const StageResult& r, double front, double front_dot, double fac) {
        SolverState out = s;
        out.grid = set_cutoff(base, front - base.front_anchor, front_dot);
        std::vector<Vec2> V(V0.size());
        for (size_t i = 0; i < V0.size(); ++i) V[i] = V0[i] + fac * r.dVdt[i];
        out.u = unpack_state(out.sys, out.grid, V, s.u);
        return out;
    };

    BodyConf cp;
    cp.xm = xm + dt * e1.xm_dot;
    cp.xp = xp + dt * e1.xp_dot;
    cp.pose = {pose.xG + dt * e1.pose_rate[0], pose.zG + dt * e1.pose_rate[1],
               pose.th + dt * e1.pose_rate[2]};
    cp.vel = vel + dt * e1.acc;
    cp.qbar = qbar + dt * e1.qbar_dot;
    cp.t = t + dt;
    cp.l = advect(left, base_left, V0l, e1.rl, cp.xm, e1.xm_dot, dt);
    cp.r = advect(right, base_right, V0r, e1.rr, cp.xp, e1.xp_dot, dt);
    cp.l.t = cp.r.t = cp.t;

    const BodyEval e2 = eval_conf(par, cp);

    xm += 0.5 * dt * (e1.xm_dot + e2.xm_dot);
    xp += 0.5 * dt * (e1.xp_dot + e2.xp_dot);
    xm_dot = e2.xm_dot;
    xp_dot = e2.xp_dot;
    pose.xG += 0.5 * dt * (e1.pose_rate[0] + e2.pose_rate[0]);
    pose.zG += 0.5 * dt * (e1.pose_rate[1] + e2.pose_rate[1]);
    pose.th += 0.5 * dt * (e1.pose_rate[2] + e2.pose_rate[2]);
    vel += 0.5 * dt * (e1.acc + e2.acc);
    qbar += 0.5 * dt * (e1.qbar_dot + e2.qbar_dot);
    t += dt;
    if (par.mode == BodyMode::Prescribed) pose = prescribed_pose(par, t);
    if (xp - xm < min_gap) throw ContactCollision("contact lines too close");

    std::vector<Vec2> Vl(V0l.size()), Vr(V0r.size());
    for (size_t i = 0; i < V0l.size(); ++i)
        Vl[i] = V0l[i] + 0.5 * dt * (e1.rl.dVdt[i] + e2.rl.dVdt[i]);
    for (size_t i = 0; i < V0r.size(); ++i)
        Vr[i] = V0r[i] + 0.5 * dt * (e1.rr.dVdt[i] + e2.rr.dVdt[i]);

    // Project each contact back onto the surface intersection zeta_e(x) = Zi(x).
    // The slope-jump speed law only advects this matching condition; its discrete
    // defect otherwise feeds back through the pinned boundary flux and grows.
    auto project = [&](SolverState& s, const MovingGrid& base, const std::vector<Vec2>& V,
                       bool right_face, double& xc, double xc_dot) {
        for (int it = 0; it < 2; ++it) {
            s.grid = set_cutoff(base, xc - base.front_anchor, xc_dot);
            s.u = unpack_state(s.sys, s.grid, V, s.u);
            const int n = s.grid.n;
            const double px = s.grid.phi_x_face(right_face ? n : 0);
            double ze, dz;
            if (right_face) {
                ze = 1.5 * s.u[n - 1][0] - 0.5 * s.u[n - 2][0];
                dz = face_derivative(s.u[n - 1][0], s.u[n - 2][0], s.u[n - 3][0],
                                     -s.grid.dx) / px;
            } else {
                ze = 1.5 * s.u[0][0] - 0.5 * s.u[1][0];
                dz = face_derivative(s.u[0][0], s.u[1][0], s.u[2][0], s.grid.dx) / px;
            }
            const LidSample ls = lid_sample(par, pose, xc);
            const double den = dz - ls.dZi;
            if (std::abs(den) < 1e-8)
                throw DegenerateContact("surface slopes match at a contact");
            const double shift = -(ze - ls.Zi) / den;
            if (std::abs(shift) < 1e-15) break;
            // never jump more than a fraction of a cell in one correction
            xc += clampd(shift, -0.25 * px * s.grid.dx, 0.25 * px * s.grid.dx);
        }
        s.grid.check_jacobian();
    };
    project(left, base_left, Vl, true, xm, xm_dot);
    project(right, base_right, Vr, false, xp, xp_dot);
    left.t = right.t = t;
}

double FloatingDriver::water_mass() const {
    double m = 0;
    for (int i = 0; i < left.grid.n; ++i)
        m += left.grid.phi_x_cell(i) * (par.h0 + left.u[i][0]) * left.grid.dx;
    for (int i = 0; i < right.grid.n; ++i)
        m += right.grid.phi_x_cell(i) * (par.h0 + right.u[i][0]) * right.grid.dx;
    // interior column by composite Simpson on the lid geometry
    const int K = 512;
    const double h = (xp - xm) / K;
    double s = 0;
    for (int k = 0; k <= K; ++k) {
        const double Hk = par.h0 + lid_sample(par, pose, xm + k * h).Zi;
        const double w = (k == 0 || k == K) ? 1 : (k % 2 ? 4 : 2);
        s += w * Hk;
    }
    m += s * h / 3;
    return m;
}

} // namespace ft
