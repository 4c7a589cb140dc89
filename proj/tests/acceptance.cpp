// End-to-end acceptance checks: one pass/fail line per numbered criterion.
// Every reference value is either a closed form worked out independently of the
// implementation or a brute-force re-computation by elementary means.
#include <cmath>
#include <cstdio>
#include <random>

#include <Eigen/Dense>

#include "ft/body.hpp"
#include "ft/compat.hpp"
#include "ft/front.hpp"
#include "ft/piston.hpp"
#include "ft/shallow_water.hpp"
#include "ft/solver.hpp"
#include "ft/transmission.hpp"
#include "oracles.hpp"

using namespace ft;

namespace {

int g_failures = 0;

void report(int id, const char* label, bool ok) {
    std::printf("criterion %d (%s): %s\n", id, label, ok ? "PASS" : "FAIL");
    if (!ok) ++g_failures;
}

Vec2 random_subcritical(std::mt19937& rng) {
    std::uniform_real_distribution<double> dz(-0.5, 1.0);
    std::uniform_real_distribution<double> fr(-0.9, 0.9);
    const double z = dz(rng);
    const double h = 1.0 + z;
    return Vec2(z, fr(rng) * h * std::sqrt(h));
}

// ---------------------------------------------------------------- 1 and 2

void criteria_symmetrizer() {
    System2x2 sys = sw_conservative(1.0, 1.0);
    std::mt19937 rng(101);
    std::uniform_real_distribution<double> ang(0, 2 * M_PI);
    bool ok1 = true, ok2 = true;
    for (int k = 0; k < 10000; ++k) {
        const Vec2 u = random_subcritical(rng);
        const double a = ang(rng);
        const Vec2 nu(std::cos(a), std::sin(a));
        const EigenStructure es = eigen_decompose(sys.A(u));
        const Symmetrizer sm = build_symmetrizer(es, nu);

        Eigen::SelfAdjointEigenSolver<Mat2> eig(sm.S);
        ok1 = ok1 && (sm.S - sm.S.transpose()).norm() < 1e-12 * std::max(1.0, sm.S.norm()) &&
              eig.eigenvalues().minCoeff() > 0;
        // near-characteristic nu makes the symmetrizer entries blow up like
        // 1/|pi_- nu_perp|^2, so the algebraic identities hold to a tolerance
        // relative to the matrix scale, not to an absolute 1e-12
        const Mat2 SA = sm.S * sys.A(u);
        const double sc = std::max(1.0, SA.norm());
        ok1 = ok1 && (SA - SA.transpose()).cwiseAbs().maxCoeff() <= 1e-12 * sc;
        const Vec2 np = perp(nu);
        ok1 = ok1 && np.dot(SA * np) <= 1e-12 * sc;

        // two-sided bound tying the scalar nondegeneracy quantity to the
        // incoming projection of the boundary covector
        const double lhs = std::abs(nu.dot(es.e_plus));
        const double mid = (es.pi_minus * np).norm();
        const double rhs = es.pi_minus.operatorNorm() * lhs;
        ok2 = ok2 && lhs <= mid + 1e-12 && mid <= rhs + 1e-12;
    }
    report(1, "symmetrizer positivity and boundary dissipation", ok1);
    report(2, "scalar nondegeneracy sandwich", ok2);
}

// ---------------------------------------------------------------- 3

void criterion_contact_covector() {
    System2x2 sys = sw_conservative(1.0, 1.0);
    std::mt19937 rng(23);
    std::uniform_real_distribution<double> d(-1, 1);
    bool ok = true;
    int checked = 0;
    while (checked < 1000) {
        ContactTraces tr;
        tr.u = random_subcritical(rng);
        tr.u_i = tr.u;
        tr.dxphi_u = Vec2(d(rng), d(rng));
        tr.dxphi_ui = Vec2(d(rng), d(rng));
        const Vec2 jump = tr.dxphi_u - tr.dxphi_ui;
        if (jump.norm() < 0.1) continue;
        const EigenStructure es = eigen_decompose(sys.A(tr.u));
        tr.xbar_dot = 0.8 * std::min(es.lambda_plus, es.lambda_minus) * d(rng);
        tr.dtphi_ui = Vec2::Zero();

        const Mat2 C = tr.xbar_dot * Mat2::Identity() - sys.A(tr.u);
        const Vec2 forcing = C * jump;
        if (forcing.norm() < 1e-6) continue;
        const Vec2 mu = contact_mu(forcing);

        const SecondOrderData so = second_order_data(
            sys, tr, Vec2::Zero(), Vec2::Zero(), Vec2::Zero(), Vec2::Zero());
        const double lhs = std::abs(so.nu2.dot(es.e_plus));
        const double rhs = std::pow(es.lambda_plus - tr.xbar_dot, 3) /
                           (es.lambda_plus * es.lambda_plus) * jump.norm() /
                           (C.transpose() * mu).norm() * std::abs(mu.dot(es.e_plus));
        ok = ok && std::abs(lhs - rhs) <= 1e-10 * std::max(1.0, std::abs(rhs));
        ++checked;
    }
    report(3, "second-order contact covector identity", ok);
}

// ---------------------------------------------------------------- 4

void criterion_convergence() {
    oracles::WallReflection ex;
    ex.c = 1.0;
    const double a = 0.01, xc = 5.0, w = 1.0;
    ex.zeta0 = [=](double x) { return a * std::exp(-((x - xc) / w) * ((x - xc) / w)); };
    ex.q0 = [&](double x) { return -ex.zeta0(x); };

    auto l1 = [&](int n) {
        SolverState s = oracles::reflection_state(n, 20.0, a, xc, w);
        oracles::run_to(s, BoundaryClosure::wall(), BoundaryClosure::transparent(), 10.0);
        return oracles::reflection_l1_error(s, ex);
    };
    const double e1 = l1(200), e2 = l1(400), e3 = l1(800);
    const double p1 = std::log2(e1 / e2), p2 = std::log2(e2 / e3);
    const bool ok = p1 >= 1.7 && p1 <= 2.3 && p2 >= 1.7 && p2 <= 2.3;
    if (!ok) std::printf("  observed orders %.3f, %.3f\n", p1, p2);
    report(4, "wall-reflection convergence order", ok);
}

// ---------------------------------------------------------------- 5

ShockDriver make_jump_driver(const Vec2& ul, const Vec2& ur, double eps) {
    ShockDriver d;
    d.sys = sw_conservative(1.0, 1.0);
    d.sys.phase_box.lo[0] = -0.9;
    const int n = 64;
    const double L = 12.0;
    d.base_left = MovingGrid::uniform(-L, L, n);
    d.base_right = MovingGrid::uniform(0, L, n);
    for (MovingGrid* g : {&d.base_left, &d.base_right}) {
        g->kind = GridKind::Cutoff;
        g->epsilon = eps;
        g->front_anchor = 0;
    }
    d.left.sys = d.right.sys = d.sys;
    d.left.grid = set_cutoff(d.base_left, 0, 0);
    d.right.grid = set_cutoff(d.base_right, 0, 0);
    d.left.u.assign(n, ul);
    d.right.u.assign(n, ur);
    d.ubl = ul;
    d.ubr = ur;
    const auto [chi, phi] = rh_speed_and_residual(d.sys, ul, ur);
    (void)phi;
    d.xbar_dot = chi;
    d.regime =
        classify_regime(eigen_decompose(d.sys.A(ul)), eigen_decompose(d.sys.A(ur)), chi);
    return d;
}

void criterion_shock_tracking() {
    bool ok = true;
    const double s3 = std::sqrt(3.0);

    // flux-matched stationary pair
    ShockDriver st = make_jump_driver(Vec2(1, -s3), Vec2(0, -s3), 2.0);
    for (int k = 0; k < 1000 && ok; ++k) {
        st.step(0.9 * std::min(suggest_dt(st.left), suggest_dt(st.right)));
        ok = ok && std::abs(st.xbar) <= 1e-6 && st.phi_residual <= 1e-10;
    }

    // the same pair boosted to speed sqrt(3): both columns shifted by s3*h
    ShockDriver mv = make_jump_driver(Vec2(1, s3), Vec2(0, 0), 4.0);
    ok = ok && mv.regime == FrontRegime::LaxRight;
    const double T = 0.5;  // keeps the front displacement inside the cutoff transition
    while (mv.left.t < T - 1e-12 && ok) {
        mv.step(std::min(0.9 * std::min(suggest_dt(mv.left), suggest_dt(mv.right)),
                         T - mv.left.t));
        ok = ok && mv.phi_residual <= 1e-10;
    }
    ok = ok && std::abs(mv.xbar / mv.left.t - s3) <= 1e-3 * s3;
    report(5, "tracked jump speed and transmission residual", ok);
}

// ---------------------------------------------------------------- 6

void criterion_piston() {
    bool ok = true;

    auto make = [](int n, double L) {
        PistonDriver d;
        d.par = PistonParams::make(1.0, 1.0, 1.0, 1.0, 1.0, 0.0);
        d.fluid.sys = sw_velocity(1.0, 1.0);
        d.fluid.sys.phase_box.lo[0] = -0.9;
        d.fluid.grid = MovingGrid::uniform(d.par.x_eq - L, L, n);
        d.fluid.grid.kind = GridKind::Lagrangian;
        d.fluid.u.assign(n, Vec2::Zero());
        d.xbar = d.par.x_eq;
        return d;
    };

    PistonDriver eq = make(64, 10.0);
    for (int k = 0; k < 1000 && ok; ++k) {
        eq.step(0.9 * suggest_dt(eq.fluid));
        ok = ok && std::abs(eq.xbar - eq.par.x_eq) <= 1e-12 &&
             std::abs(eq.xbar_dot) <= 1e-12;
    }

    PistonDriver osc = make(200, 10.0);
    osc.force_flat = true;
    const double a = 0.01;
    osc.xbar = osc.par.x_eq + a;
    const double T = 2 * M_PI;  // sqrt(k/m) = 1
    const double dt = T / 1000;
    for (int k = 0; k < 1000 && ok; ++k) {
        osc.step(dt);
        const double exact = osc.par.x_eq + a * std::cos(osc.fluid.t);
        ok = ok && std::abs(osc.xbar - exact) <= 1e-4 * a;
    }

    PistonDriver cp = make(100, 10.0);
    for (int i = 0; i < 100; ++i) {
        const double x = cp.fluid.grid.phi_center(i);
        const double z = 0.02 * std::exp(-(x + 5) * (x + 5));
        cp.fluid.u[i] = Vec2(z, 0.0);
    }
    const double xb0 = cp.xbar, xd0 = cp.xbar_dot;
    for (int k = 0; k < 200; ++k) cp.step(0.9 * suggest_dt(cp.fluid));
    const auto [xb, xd] = piston_reintegrate(cp.par, cp.log, xb0, xd0);
    ok = ok && std::abs(xb - cp.xbar) <= 1e-10 && std::abs(xd - cp.xbar_dot) <= 1e-10;

    report(6, "piston equilibrium, oscillator, and trace replay", ok);
}

// ---------------------------------------------------------------- 7

FloatingParams parabola_lid(double R, double draft, int cells) {
    FloatingParams par;
    par.rho = par.grav = par.h0 = 1.0;
    par.inertia = 1.0;
    par.interior_cells = cells;
    const double w = std::sqrt(2 * R * draft);
    par.lid.Z = [R, draft](double X) { return X * X / (2 * R) - draft; };
    par.lid.dZ = [R](double X) { return X / R; };
    par.lid.X_left = -1.5 * w;
    par.lid.X_right = 1.5 * w;
    par.lid.slope_bound = 1.5 * w / R;
    return par;
}

FloatingDriver make_floating(FloatingParams par, int n, double L,
                             const std::function<Vec2(double)>& left_init) {
    const double wc = par.lid.X_right / 1.5;
    FloatingDriver d;
    d.par = par;
    d.sys = sw_conservative(par.grav, par.h0);
    d.sys.phase_box.lo[0] = -0.9 * par.h0;
    d.base_left = MovingGrid::uniform(-wc - L, L, n);
    d.base_right = MovingGrid::uniform(wc, L, n);
    for (MovingGrid* g : {&d.base_left, &d.base_right}) {
        g->kind = GridKind::Cutoff;
        g->epsilon = 1.0;
    }
    d.base_left.front_anchor = -wc;
    d.base_right.front_anchor = wc;
    d.left.sys = d.right.sys = d.sys;
    d.left.grid = set_cutoff(d.base_left, 0, 0);
    d.right.grid = set_cutoff(d.base_right, 0, 0);
    d.left.u.resize(n);
    for (int i = 0; i < n; ++i) d.left.u[i] = left_init(d.left.grid.phi_center(i));
    d.right.u.assign(n, Vec2::Zero());
    d.xm = -wc;
    d.xp = wc;

    FloatingParams probe = par;
    probe.mass = 0;
    const InteriorField f0 = interior_solve(probe, d.pose, Vec3::Zero(), 0, d.xm, d.xp);
    d.par.mass = hydro_rhs(probe, f0)[1] / par.grav;
    return d;
}

void criterion_floating_body() {
    bool ok_rest = true, ok_ma = true, ok_mass = true, ok_pres = true;

    FloatingParams par = parabola_lid(8.0, 0.1, 48);
    par.mode = BodyMode::Free;
    FloatingDriver rest = make_floating(par, 48, 10.0, [](double) { return Vec2::Zero(); });
    for (int k = 0; k < 1000; ++k)
        rest.step(0.9 * std::min(suggest_dt(rest.left), suggest_dt(rest.right)));
    ok_rest = rest.vel.norm() <= 1e-10 && std::abs(rest.xm_dot) <= 1e-10 &&
              std::abs(rest.xp_dot) <= 1e-10;

    const double wc = std::sqrt(2 * 8.0 * 0.1);
    // residual mass drift through the interaction is O(a dx), so the pulse
    // amplitude keeps the bookkeeping two orders below the conservation budget
    FloatingDriver run = make_floating(par, 48, 10.0, [wc](double x) {
        const double c = -wc - 4.0;
        const double z = 1e-5 * std::exp(-(x - c) * (x - c));
        return Vec2(z, z);
    });
    const double m0 = run.water_mass();
    while (run.t < 6.0) {
        run.step(0.5 * std::min(suggest_dt(run.left), suggest_dt(run.right)));
        const InteriorField f =
            interior_solve(run.par, run.pose, run.vel, run.qbar, run.xm, run.xp);
        Eigen::SelfAdjointEigenSolver<Mat3> eig(f.Ma);
        ok_ma = ok_ma && (f.Ma - f.Ma.transpose()).norm() < 1e-12 &&
                eig.eigenvalues().minCoeff() >= -1e-12;
        const BodyForces bf = body_forces(run.par, f, run.vel, Vec3::Zero());
        double pres = 0;
        interior_pressure(run.par, f, bf.acc, pres);
        ok_pres = ok_pres && pres <= 1e-8;
    }
    ok_mass = std::abs(run.water_mass() - m0) <= 1e-8;

    report(7, "floating body: rest state, added mass, water budget, pressure",
           ok_rest && ok_ma && ok_mass && ok_pres);
    if (!(ok_rest && ok_ma && ok_mass && ok_pres))
        std::printf("  rest=%d added-mass=%d water=%d pressure=%d (water drift %.3e)\n",
                    int(ok_rest), int(ok_ma), int(ok_mass), int(ok_pres),
                    std::abs(run.water_mass() - m0));
}

// ---------------------------------------------------------------- 8

void criterion_compatibility() {
    bool ok = true;

    // manufactured data: quadratic elevation, flat at the wall, zero discharge
    const MovingGrid g = MovingGrid::uniform(0.0, 10.0, 200);
    System2x2 sys = sw_conservative(1.0, 1.0);
    std::vector<Vec2> u(g.n);
    for (int i = 0; i < g.n; ++i) {
        const double x = g.phi_center(i);
        u[i] = Vec2(1e-3 * x * x, 0.0);
    }
    const CompatReport cr =
        check_linear_bc(sys, g, u, Vec2(0, 1), [](double) { return 0.0; }, 1);
    const bool ok_res = std::abs(cr.residuals[0]) <= 1e-8 && std::abs(cr.residuals[1]) <= 1e-8;
    ok = ok && ok_res;

    // predicted initial contact speed of a heaving body versus the tracked contact
    FloatingParams par = parabola_lid(8.0, 0.1, 48);
    par.mode = BodyMode::Prescribed;
    const double az = 1e-3, om = 1.0;
    par.prescribed = [az, om](double t) { return BodyPose{0, az * std::sin(om * t), 0}; };
    FloatingDriver d = make_floating(par, 48, 10.0, [](double) { return Vec2::Zero(); });
    d.par.mode = BodyMode::Prescribed;
    d.par.prescribed = par.prescribed;
    // the lid is already heaving at t = 0, so compatible data must carry the
    // matching interior discharge Q = -zdot x out across each contact; without
    // it the corner launches a one-cell discharge layer that poisons dq
    const double zdot0 = az * om, wc8 = par.lid.X_right / 1.5;
    for (Vec2& v : d.left.u) v = Vec2(0.0, zdot0 * wc8);
    for (Vec2& v : d.right.u) v = Vec2(0.0, -zdot0 * wc8);

    // inputs to the prediction, each recomputed from first principles:
    // lid slope by differencing the graph inversion, interior discharge slope from
    // the column mass balance under the prescribed heave rate
    const double h = 1e-6;
    const double dZi = (lid_sample(par, BodyPose{}, d.xp + h).Zi -
                        lid_sample(par, BodyPose{}, d.xp - h).Zi) /
                       (2 * h);
    const double heave_rate = (par.prescribed(h).zG - par.prescribed(0.0).zG) / h;
    const double predicted = body_contact_velocity(0.0, -heave_rate, 0.0, dZi);

    const double xp0 = d.xp;
    const double dt = 2e-3;
    d.step(dt);
    const double observed = (d.xp - xp0) / dt;
    ok = ok && std::abs(observed - predicted) <= 5 * dt;
    if (!ok)
        std::printf("  residuals %.3e %.3e | contact observed %.6e predicted %.6e\n",
                    cr.residuals[0], cr.residuals[1], observed, predicted);

    report(8, "corner compatibility and initial contact speed", ok);
}

// ---------------------------------------------------------------- 9

void criterion_transmission() {
    bool ok = true;

    // depth-step interfaces over a grid of subcritical trace pairs
    Eigen::MatrixXd Np(2, 4);
    Np << -1, 0, 1, 0, 0, -1, 0, 1;
    std::mt19937 rng(61);
    for (double h0l : {0.5, 0.8, 1.0, 1.5, 2.0}) {
        for (double h0r : {0.5, 0.8, 1.0, 1.5, 2.0}) {
            System2x2 l = sw_conservative(1.0, h0l), r = sw_conservative(1.0, h0r);
            for (int k = 0; k < 40; ++k) {
                std::uniform_real_distribution<double> dz(-0.2, 0.2), fr(-0.5, 0.5);
                const double zl = h0l * dz(rng), zr = h0r * dz(rng);
                const double hl = h0l + zl, hr = h0r + zr;
                const Vec2 ul(zl, fr(rng) * hl * std::sqrt(hl));
                const Vec2 ur(zr, fr(rng) * hr * std::sqrt(hr));
                const Eigen::MatrixXd Ep =
                    assemble_Ep(eigen_decompose(l.A(ul)), eigen_decompose(r.A(ur)), 0.0);
                const LopatinskiiReport rep = lopatinskii_matrix(Np, Ep);
                ok = ok && rep.cond <= 10.0;
            }
        }
    }

    // regime classifier against the brute-force sign table
    auto fake = [](double lp, double lm) {
        EigenStructure es;
        es.lambda_plus = lp;
        es.lambda_minus = lm;
        return es;
    };
    std::uniform_real_distribution<double> lam(0.1, 3.0), chi(-4.0, 4.0);
    for (int k = 0; k < 10000; ++k) {
        const double lpl = lam(rng), lml = lam(rng), lpr = lam(rng), lmr = lam(rng);
        const double c = chi(rng);
        const double a = lpl - c, b = lml + c, cc = lpr - c, dd = lmr + c;
        FrontRegime expect = FrontRegime::Unclassified;
        if (a > 0 && b > 0 && cc > 0 && dd > 0) expect = FrontRegime::Subsonic;
        else if (a > 0 && b > 0 && cc < 0) expect = FrontRegime::LaxRight;
        else if (b < 0 && cc > 0 && dd > 0) expect = FrontRegime::LaxLeft;
        ok = ok && classify_regime(fake(lpl, lml), fake(lpr, lmr), c) == expect;
    }

    report(9, "interface boundary matrix and regime classifier", ok);
}

} // namespace

int main() {
    criteria_symmetrizer();
    criterion_contact_covector();
    criterion_convergence();
    criterion_shock_tracking();
    criterion_piston();
    criterion_floating_body();
    criterion_compatibility();
    criterion_transmission();
    std::printf("%s (%d failing)\n", g_failures == 0 ? "ALL PASS" : "FAILURES", g_failures);
    return g_failures == 0 ? 0 : 1;
}
