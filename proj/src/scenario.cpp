#include "ft/scenario.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "ft/body.hpp"
#include "ft/compat.hpp"
#include "ft/front.hpp"
#include "ft/piston.hpp"
#include "ft/shallow_water.hpp"
#include "ft/solver.hpp"
#include "ft/transmission.hpp"

namespace ft {

using nlohmann::json;

namespace {

[[noreturn]] void validation_error(const std::string& what) { throw ValidationError(what); }

double num_get(const json& j, const std::string& key, double fallback) {
    return j.contains(key) ? j.at(key).get<double>() : fallback;
}

struct Numerics {
    int cells = 0;
    double cfl = 0.45, end_time = 0, cutoff_epsilon = 2.0, cadence = 0;
    bool strict_compat = false;
};

Numerics read_numerics(const json& sc, const RunOptions& opt) {
    if (!sc.contains("numerics")) validation_error("missing 'numerics' section");
    const json& n = sc.at("numerics");
    Numerics out;
    out.cells = int(num_get(n, "cells", 0));
    out.end_time = num_get(n, "end_time", -1);
    out.cfl = num_get(n, "cfl", 0.45);
    out.cutoff_epsilon = num_get(n, "cutoff_epsilon", 2.0);
    out.cadence = num_get(n, "cadence", out.end_time > 0 ? out.end_time / 50 : 1.0);
    out.strict_compat =
        opt.strict_compat || (n.contains("strict_compat") && n.at("strict_compat").get<bool>());
    if (out.cells < 16) validation_error("numerics.cells must be >= 16");
    if (out.end_time < 0) validation_error("numerics.end_time must be >= 0");
    if (out.cadence <= 0) validation_error("numerics.cadence must be > 0");
    return out;
}

struct Recorder {
    RunRecord rec;
    double cadence, next = 0;
    explicit Recorder(std::vector<std::string> cols, double cad) : cadence(cad) {
        rec.columns = std::move(cols);
    }
    void maybe(double t, const std::vector<double>& vals) {
        if (t + 1e-12 < next) return;
        std::vector<double> row{t};
        row.insert(row.end(), vals.begin(), vals.end());
        rec.rows.push_back(std::move(row));
        while (next <= t + 1e-12) next += cadence;
    }
};

void check_outputs(const json& sc, const std::vector<std::string>& produced) {
    if (!sc.contains("outputs")) return;
    for (const json& o : sc.at("outputs")) {
        const std::string q = o.at("quantity").get<std::string>();
        bool found = q == "t";
        for (const std::string& p : produced) found = found || p == q;
        if (!found) validation_error("output quantity '" + q + "' not produced by this family");
    }
}

std::function<Vec2(double)> pulse_init(const json& phys, double grav, double h0) {
    const json p = phys.contains("init") ? phys.at("init") : json::object();
    const double a = num_get(p, "amplitude", 0.0);
    const double c = num_get(p, "center", 0.0);
    const double w = num_get(p, "width", 1.0);
    const double dir = num_get(p, "direction", 0.0);
    const double cs = std::sqrt(grav * h0);
    return [=](double x) {
        const double z = a * std::exp(-((x - c) / w) * ((x - c) / w));
        return Vec2(z, dir * cs * z);
    };
}

void fill_initial(SolverState& s, const std::function<Vec2(double)>& u0) {
    s.u.resize(s.grid.n);
    for (int i = 0; i < s.grid.n; ++i) s.u[i] = u0(s.grid.phi_center(i));
}

BoundaryClosure named_closure(const std::string& name) {
    if (name == "wall") return BoundaryClosure::wall();
    if (name == "transparent") return BoundaryClosure::transparent();
    validation_error("unknown boundary closure '" + name + "'");
}

double domain_mass(const SolverState& s, double h0) {
    double m = 0;
    for (int i = 0; i < s.grid.n; ++i)
        m += s.grid.phi_x_cell(i) * (h0 + s.u[i][0]) * s.grid.dx;
    return m;
}

double pick_dt(double suggested, double remaining) {
    return std::min(0.9 * suggested, remaining);
}

RunRecord run_ibvp(const json& sc, const Numerics& nm) {
    const json& ph = sc.at("physics");
    const double grav = num_get(ph, "grav", 1.0), h0 = num_get(ph, "h0", 1.0);
    const double a = num_get(ph, "x0", 0.0), b = num_get(ph, "x1", a + 1.0);
    const bool linear = ph.contains("linear") && ph.at("linear").get<bool>();

    SolverState s;
    s.sys = linear ? sw_linear(grav, h0) : sw_conservative(grav, h0);
    s.sys.phase_box.lo[0] = -0.9 * h0;
    s.grid = MovingGrid::uniform(a, b - a, nm.cells);
    s.cfl = nm.cfl;
    fill_initial(s, pulse_init(ph, grav, h0));
    const BoundaryClosure cl = named_closure(ph.value("bc_left", "wall"));
    const BoundaryClosure cr = named_closure(ph.value("bc_right", "transparent"));

    if (nm.strict_compat && ph.value("bc_left", "wall") == std::string("wall")) {
        const CompatReport cp = check_linear_bc(
            s.sys, s.grid, s.u, Vec2(0, 1), [](double) { return 0.0; }, 0);
        if (std::abs(cp.residuals[0]) > 1e-6)
            validation_error("strict compatibility: order-0 boundary residual " +
                             std::to_string(cp.residuals[0]));
    }

    Recorder rec({"t", "zeta_left", "q_left", "zeta_right", "q_right", "mass"}, nm.cadence);
    auto sample = [&]() {
        rec.maybe(s.t, {s.u.front()[0], s.u.front()[1], s.u.back()[0], s.u.back()[1],
                        domain_mass(s, h0)});
    };
    sample();
    while (s.t < nm.end_time - 1e-12) {
        step(s, cl, cr, pick_dt(suggest_dt(s), nm.end_time - s.t));
        sample();
    }
    return rec.rec;
}

RunRecord run_kinematic(const json& sc, const Numerics& nm) {
    const json& ph = sc.at("physics");
    const double grav = num_get(ph, "grav", 1.0), h0 = num_get(ph, "h0", 1.0);
    const double xbar0 = num_get(ph, "xbar0", 0.0), L = num_get(ph, "length", 10.0);
    const double kappa = num_get(ph, "kappa", 1.0);

    SolverState s;
    s.sys = sw_conservative(grav, h0);
    s.sys.phase_box.lo[0] = -0.9 * h0;
    MovingGrid base = MovingGrid::uniform(xbar0, L, nm.cells);
    base.kind = GridKind::Cutoff;
    base.epsilon = nm.cutoff_epsilon;
    base.front_anchor = xbar0;
    s.grid = set_cutoff(base, 0, 0);
    s.cfl = nm.cfl;
    fill_initial(s, pulse_init(ph, grav, h0));
    const BoundaryClosure far = BoundaryClosure::transparent();

    FrontState fr;
    fr.xbar = xbar0;
    auto front_speed = [&](const SolverState& st) {
        const Vec2 ub = farfield_close(st, Side::Left);
        return kappa * ub[1] / (h0 + ub[0]);
    };
    auto front_closure = [&](double xd) {
        return BoundaryClosure::nonlinear(
            [xd, h0](double, const Vec2& u) { return u[1] - xd * (h0 + u[0]); },
            [](double) { return 0.0; });
    };

    Recorder rec({"t", "xbar", "xbar_dot", "zeta_front", "q_front", "mass"}, nm.cadence);
    auto sample = [&](const Vec2& ub) {
        rec.maybe(s.t, {fr.xbar, fr.xbar_dot, ub[0], ub[1], domain_mass(s, h0)});
    };
    sample(farfield_close(s, Side::Left));
    while (s.t < nm.end_time - 1e-12) {
        const double dt = pick_dt(suggest_dt(s), nm.end_time - s.t);
        const std::vector<Vec2> V0 = pack_state(s);
        const double X1 = front_speed(s);
        const StageResult r1 = stage_rhs(s, front_closure(X1), far);
        SolverState mid = s;
        mid.grid = set_cutoff(base, fr.xbar + dt * X1 - xbar0, X1);
        std::vector<Vec2> V(V0.size());
        for (size_t i = 0; i < V0.size(); ++i) V[i] = V0[i] + dt * r1.dVdt[i];
        mid.u = unpack_state(s.sys, mid.grid, V, s.u);
        mid.t = s.t + dt;
        const double X2 = front_speed(mid);
        const StageResult r2 = stage_rhs(mid, front_closure(X2), far);
        fr = kinematic_advance(fr, X1, X2, dt);
        s.grid = set_cutoff(base, fr.xbar - xbar0, fr.xbar_dot);
        s.grid.check_jacobian();
        for (size_t i = 0; i < V0.size(); ++i) V[i] = V0[i] + 0.5 * dt * (r1.dVdt[i] + r2.dVdt[i]);
        s.u = unpack_state(s.sys, s.grid, V, s.u);
        s.t += dt;
        sample(r2.ub_left);
    }
    return rec.rec;
}

RunRecord run_contact(const json& sc, const Numerics& nm) {
    const json& ph = sc.at("physics");
    const double grav = num_get(ph, "grav", 1.0), h0 = num_get(ph, "h0", 1.0);
    const double xbar0 = num_get(ph, "xbar0", 0.0), L = num_get(ph, "length", 10.0);
    // affine constraint field: U_i(x) = (s0 + s1 (x-xbar0), m0 + m1 (x-xbar0))
    const double s0 = num_get(ph, "zeta_i0", 0.0), s1 = num_get(ph, "zeta_i_slope", 0.0);
    const double m0 = num_get(ph, "q_i0", 0.0), m1 = num_get(ph, "q_i_slope", 0.0);
    auto Ui = [=](double x) { return Vec2(s0 + s1 * (x - xbar0), m0 + m1 * (x - xbar0)); };

    SolverState s;
    s.sys = sw_conservative(grav, h0);
    s.sys.phase_box.lo[0] = -0.9 * h0;
    MovingGrid base = MovingGrid::uniform(xbar0, L, nm.cells);
    base.kind = GridKind::Cutoff;
    base.epsilon = nm.cutoff_epsilon;
    base.front_anchor = xbar0;
    s.grid = set_cutoff(base, 0, 0);
    s.cfl = nm.cfl;
    fill_initial(s, pulse_init(ph, grav, h0));
    const BoundaryClosure far = BoundaryClosure::transparent();

    if (nm.strict_compat) {
        const double r0 = contact_order0_residual(farfield_close(s, Side::Left), Ui(xbar0));
        if (r0 > 1e-6)
            validation_error("strict compatibility: order-0 contact residual " +
                             std::to_string(r0));
    }

    FrontState fr;
    fr.xbar = xbar0;
    auto chi_of = [&](const SolverState& st, double xb) {
        auto [tc, xd] = chain_derivatives(st.grid, st.u);
        (void)tc;
        ContactTraces tr;
        tr.u = farfield_close(st, Side::Left);
        tr.u_i = Ui(xb);
        tr.dxphi_u = Vec2(1.5 * xd[0] - 0.5 * xd[1]);
        tr.dxphi_ui = Vec2(s1, m1);
        tr.dtphi_ui = Vec2::Zero();
        tr.xbar_dot = fr.xbar_dot;
        return contact_speed(st.sys, tr);
    };

    Recorder rec({"t", "xbar", "chi", "order0_residual"}, nm.cadence);
    auto sample = [&]() {
        rec.maybe(s.t, {fr.xbar, fr.xbar_dot,
                        contact_order0_residual(farfield_close(s, Side::Left), Ui(fr.xbar))});
    };
    sample();
    while (s.t < nm.end_time - 1e-12) {
        const double dt = pick_dt(suggest_dt(s), nm.end_time - s.t);
        const std::vector<Vec2> V0 = pack_state(s);
        const double chi1 = chi_of(s, fr.xbar);
        auto pin = [&](double xb) {
            return BoundaryClosure::dirichlet([&Ui, xb](double) { return Ui(xb); });
        };
        const StageResult r1 = stage_rhs(s, pin(fr.xbar), far);
        SolverState mid = s;
        mid.grid = set_cutoff(base, fr.xbar + dt * chi1 - xbar0, chi1);
        std::vector<Vec2> V(V0.size());
        for (size_t i = 0; i < V0.size(); ++i) V[i] = V0[i] + dt * r1.dVdt[i];
        mid.u = unpack_state(s.sys, mid.grid, V, s.u);
        mid.t = s.t + dt;
        const double chi2 = chi_of(mid, fr.xbar + dt * chi1);
        const StageResult r2 = stage_rhs(mid, pin(fr.xbar + dt * chi1), far);
        fr = contact_advance(s.sys, fr, chi1, chi2, r2.ub_left, dt);
        for (size_t i = 0; i < V0.size(); ++i) V[i] = V0[i] + 0.5 * dt * (r1.dVdt[i] + r2.dVdt[i]);
        // Gauss-Newton projection of the front onto the matching condition
        // u_e(xbar) = U_i(xbar): the speed law only advects it, and its discrete
        // defect otherwise feeds back through the pinned boundary and grows
        for (int it = 0; it < 2; ++it) {
            s.grid = set_cutoff(base, fr.xbar - xbar0, fr.xbar_dot);
            s.u = unpack_state(s.sys, s.grid, V, s.u);
            const double px = s.grid.phi_x_face(0);
            const Vec2 res = farfield_close(s, Side::Left) - Ui(fr.xbar);
            const Vec2 jump((s.u[1][0] - s.u[0][0]) / (px * s.grid.dx) - s1,
                            (s.u[1][1] - s.u[0][1]) / (px * s.grid.dx) - m1);
            if (jump.squaredNorm() < 1e-16) break;
            const double shift = -jump.dot(res) / jump.squaredNorm();
            if (std::abs(shift) < 1e-15) break;
            fr.xbar += std::clamp(shift, -0.25 * px * s.grid.dx, 0.25 * px * s.grid.dx);
        }
        s.grid.check_jacobian();
        s.t += dt;
        sample();
    }
    return rec.rec;
}

RunRecord run_transmission(const json& sc, const Numerics& nm) {
    const json& ph = sc.at("physics");
    const double grav = num_get(ph, "grav", 1.0);
    const double h0l = num_get(ph, "h0_left", 1.0), h0r = num_get(ph, "h0_right", 1.0);
    const double L = num_get(ph, "length", 10.0);

    SolverState sl, sr;
    sl.sys = sw_conservative(grav, h0l);
    sr.sys = sw_conservative(grav, h0r);
    sl.sys.phase_box.lo[0] = -0.9 * h0l;
    sr.sys.phase_box.lo[0] = -0.9 * h0r;
    sl.grid = MovingGrid::uniform(-L, L, nm.cells);
    sr.grid = MovingGrid::uniform(0, L, nm.cells);
    sl.cfl = sr.cfl = nm.cfl;
    fill_initial(sl, pulse_init(ph, grav, h0l));
    fill_initial(sr, [](double) { return Vec2::Zero(); });
    const BoundaryClosure far = BoundaryClosure::transparent();

    // continuity of elevation and discharge across the interface
    auto solve_if = [&](const SolverState& L_, const SolverState& R_) {
        const Vec2 el = farfield_close(L_, Side::Right), er = farfield_close(R_, Side::Left);
        const EigenStructure fl = eigen_decompose(L_.sys.A(el));
        const EigenStructure fr = eigen_decompose(R_.sys.A(er));
        Mat2 El, Er;
        El.col(0) = fl.e_plus;
        El.col(1) = fl.e_minus;
        Er.col(0) = fr.e_plus;
        Er.col(1) = fr.e_minus;
        const Vec2 lout_l = El.inverse().row(0);  // fast family arriving from the left
        const Vec2 lout_r = Er.inverse().row(1);  // slow family arriving from the right
        Eigen::Vector4d y;
        y << el, er;
        for (int it = 0; it < 50; ++it) {
            const Vec2 ul = y.head<2>(), ur = y.tail<2>();
            Eigen::Vector4d F(lout_l.dot(ul - el), lout_r.dot(ur - er), ul[0] - ur[0],
                              ul[1] - ur[1]);
            if (F.norm() < 1e-12) break;
            Eigen::Matrix4d J = Eigen::Matrix4d::Zero();
            J.block<1, 2>(0, 0) = lout_l.transpose();
            J.block<1, 2>(1, 2) = lout_r.transpose();
            J(2, 0) = 1;
            J(2, 2) = -1;
            J(3, 1) = 1;
            J(3, 3) = -1;
            y -= J.inverse() * F;
            if (it == 49) throw NewtonDivergence("interface Newton stalled");
        }
        return std::pair<Vec2, Vec2>(y.head<2>(), y.tail<2>());
    };

    Recorder rec({"t", "zeta_interface", "q_interface", "lop_cond"}, nm.cadence);
    auto sample = [&](const Vec2& ul, const Vec2& ur) {
        Eigen::MatrixXd Np(2, 4);
        Np << -1, 0, 1, 0, 0, -1, 0, 1;
        const Eigen::MatrixXd Ep =
            assemble_Ep(eigen_decompose(sl.sys.A(ul)), eigen_decompose(sr.sys.A(ur)), 0);
        const LopatinskiiReport lr = lopatinskii_matrix(Np, Ep);
        rec.maybe(sl.t, {ul[0], ul[1], lr.cond});
    };
    {
        auto [ul, ur] = solve_if(sl, sr);
        sample(ul, ur);
    }
    while (sl.t < nm.end_time - 1e-12) {
        const double dt =
            pick_dt(std::min(suggest_dt(sl), suggest_dt(sr)), nm.end_time - sl.t);
        auto [ul1, ur1] = solve_if(sl, sr);
        auto pin = [](Vec2 v) {
            return BoundaryClosure::dirichlet([v](double) { return v; });
        };
        const std::vector<Vec2> V0l = pack_state(sl), V0r = pack_state(sr);
        const StageResult r1l = stage_rhs(sl, far, pin(ul1));
        const StageResult r1r = stage_rhs(sr, pin(ur1), far);
        SolverState ml = sl, mr = sr;
        for (int i = 0; i < sl.grid.n; ++i) ml.u[i] = sl.u[i] + dt * r1l.dVdt[i];
        for (int i = 0; i < sr.grid.n; ++i) mr.u[i] = sr.u[i] + dt * r1r.dVdt[i];
        ml.t = mr.t = sl.t + dt;
        auto [ul2, ur2] = solve_if(ml, mr);
        const StageResult r2l = stage_rhs(ml, far, pin(ul2));
        const StageResult r2r = stage_rhs(mr, pin(ur2), far);
        for (int i = 0; i < sl.grid.n; ++i)
            sl.u[i] = Vec2(V0l[i] + 0.5 * dt * (r1l.dVdt[i] + r2l.dVdt[i]));
        for (int i = 0; i < sr.grid.n; ++i)
            sr.u[i] = Vec2(V0r[i] + 0.5 * dt * (r1r.dVdt[i] + r2r.dVdt[i]));
        sl.t += dt;
        sr.t += dt;
        auto [ul, ur] = solve_if(sl, sr);
        sample(ul, ur);
    }
    return rec.rec;
}

RunRecord run_shock(const json& sc, const Numerics& nm) {
    const json& ph = sc.at("physics");
    const double grav = num_get(ph, "grav", 1.0), h0 = num_get(ph, "h0", 1.0);
    const double L = num_get(ph, "length", 12.0);
    const Vec2 ul(num_get(ph, "zeta_l", 0.0), num_get(ph, "q_l", 0.0));
    const Vec2 ur(num_get(ph, "zeta_r", 0.0), num_get(ph, "q_r", 0.0));

    ShockDriver d;
    d.sys = sw_conservative(grav, h0);
    d.sys.phase_box.lo[0] = -0.9 * h0;
    d.base_left = MovingGrid::uniform(-L, L, nm.cells);
    d.base_left.kind = GridKind::Cutoff;
    d.base_left.epsilon = nm.cutoff_epsilon;
    d.base_left.front_anchor = 0;
    d.base_right = MovingGrid::uniform(0, L, nm.cells);
    d.base_right.kind = GridKind::Cutoff;
    d.base_right.epsilon = nm.cutoff_epsilon;
    d.base_right.front_anchor = 0;
    d.left.sys = d.right.sys = d.sys;
    d.left.grid = set_cutoff(d.base_left, 0, 0);
    d.right.grid = set_cutoff(d.base_right, 0, 0);
    d.left.cfl = d.right.cfl = nm.cfl;
    d.left.u.assign(nm.cells, ul);
    d.right.u.assign(nm.cells, ur);
    d.ubl = ul;
    d.ubr = ur;
    const auto [chi0, phi0] = rh_speed_and_residual(d.sys, ul, ur);
    (void)phi0;
    d.xbar_dot = chi0;
    d.regime = classify_regime(eigen_decompose(d.sys.A(ul)), eigen_decompose(d.sys.A(ur)),
                               chi0);
    if (d.regime == FrontRegime::Unclassified)
        validation_error("shock states do not form a recognized regime");

    Recorder rec({"t", "xbar", "chi", "phi_residual"}, nm.cadence);
    rec.maybe(d.left.t, {d.xbar, d.xbar_dot, d.phi_residual});
    while (d.left.t < nm.end_time - 1e-12) {
        d.step(pick_dt(std::min(suggest_dt(d.left), suggest_dt(d.right)),
                       nm.end_time - d.left.t));
        rec.maybe(d.left.t, {d.xbar, d.xbar_dot, d.phi_residual});
    }
    return rec.rec;
}

RunRecord run_piston(const json& sc, const Numerics& nm, json& meta) {
    const json& ph = sc.at("physics");
    PistonParams par = PistonParams::make(
        num_get(ph, "mass", 1.0), num_get(ph, "stiffness", 1.0), num_get(ph, "rho", 1.0),
        num_get(ph, "grav", 1.0), num_get(ph, "h0", 1.0), num_get(ph, "x0", 0.0));
    meta["derived"]["x_eq"] = par.x_eq;
    const double L = num_get(ph, "length", 10.0);

    PistonDriver d;
    d.par = par;
    d.fluid.sys = sw_velocity(par.grav, par.h0);
    d.fluid.sys.phase_box.lo[0] = -0.9 * par.h0;
    d.fluid.grid = MovingGrid::uniform(par.x_eq - L, L, nm.cells);
    d.fluid.grid.kind = GridKind::Lagrangian;
    d.fluid.cfl = nm.cfl;
    fill_initial(d.fluid, pulse_init(ph, par.grav, par.h0));
    d.xbar = num_get(ph, "xbar_init", par.x_eq);
    d.xbar_dot = num_get(ph, "xbar_dot_init", 0.0);
    d.force_flat = ph.contains("force_flat") && ph.at("force_flat").get<bool>();

    Recorder rec({"t", "xbar", "xbar_dot", "zeta_piston"}, nm.cadence);
    rec.maybe(d.fluid.t, {d.xbar, d.xbar_dot, d.fluid.u.back()[0]});
    while (d.fluid.t < nm.end_time - 1e-12) {
        d.step(pick_dt(suggest_dt(d.fluid), nm.end_time - d.fluid.t));
        rec.maybe(d.fluid.t, {d.xbar, d.xbar_dot, d.fluid.u.back()[0]});
    }
    return rec.rec;
}

RunRecord run_floating(const json& sc, const Numerics& nm, json& meta) {
    const json& ph = sc.at("physics");
    FloatingParams par;
    par.rho = num_get(ph, "rho", 1.0);
    par.grav = num_get(ph, "grav", 1.0);
    par.h0 = num_get(ph, "h0", 1.0);
    par.inertia = num_get(ph, "inertia", 1.0);
    par.interior_cells = int(num_get(ph, "interior_cells", 64));
    const double R = num_get(ph, "lid_radius", 8.0), draft = num_get(ph, "lid_draft", 0.1);
    const double w = std::sqrt(2 * R * draft);  // lid meets the rest surface at +-w
    par.lid.Z = [R, draft](double X) { return X * X / (2 * R) - draft; };
    par.lid.dZ = [R](double X) { return X / R; };
    par.lid.X_left = -1.5 * w;
    par.lid.X_right = 1.5 * w;
    par.lid.slope_bound = 1.5 * w / R;
    const std::string mode = ph.value("mode", "free");
    par.mode = mode == "fixed"      ? BodyMode::Fixed
               : mode == "free"     ? BodyMode::Free
                                    : BodyMode::Prescribed;
    if (par.mode == BodyMode::Prescribed) {
        const double az = num_get(ph, "heave_amplitude", 0.0);
        const double om = num_get(ph, "heave_frequency", 1.0);
        par.prescribed = [az, om](double t) {
            return BodyPose{0, az * (1 - std::cos(om * t)), 0};
        };
    }

    FloatingDriver d;
    d.par = par;
    d.sys = sw_conservative(par.grav, par.h0);
    d.sys.phase_box.lo[0] = -0.9 * par.h0;
    const double L = num_get(ph, "length", 20.0);
    d.base_left = MovingGrid::uniform(-w - L, L, nm.cells);
    d.base_left.kind = GridKind::Cutoff;
    d.base_left.epsilon = nm.cutoff_epsilon;
    d.base_left.front_anchor = -w;
    d.base_right = MovingGrid::uniform(w, L, nm.cells);
    d.base_right.kind = GridKind::Cutoff;
    d.base_right.epsilon = nm.cutoff_epsilon;
    d.base_right.front_anchor = w;
    d.left.sys = d.right.sys = d.sys;
    d.left.grid = set_cutoff(d.base_left, 0, 0);
    d.right.grid = set_cutoff(d.base_right, 0, 0);
    d.left.cfl = d.right.cfl = nm.cfl;
    fill_initial(d.left, pulse_init(ph, par.grav, par.h0));
    fill_initial(d.right, [](double) { return Vec2::Zero(); });
    d.xm = -w;
    d.xp = w;

    // Archimedean mass: balance the discrete hydrostatic load at the initial pose
    if (!ph.contains("mass") || ph.at("mass").get<double>() <= 0) {
        FloatingParams probe = par;
        probe.mass = 0;
        const InteriorField f0 =
            interior_solve(probe, d.pose, Vec3::Zero(), 0, d.xm, d.xp);
        par.mass = hydro_rhs(probe, f0)[1] / par.grav;
        d.par.mass = par.mass;
    } else {
        d.par.mass = ph.at("mass").get<double>();
    }
    meta["derived"]["mass"] = d.par.mass;

    Recorder rec({"t", "xm", "xp", "xG", "zG", "theta", "uG", "wG", "omega", "qbar",
                  "water_mass", "pressure_residual"},
                 nm.cadence);
    auto sample = [&]() {
        const InteriorField f = interior_solve(d.par, d.pose, d.vel, d.qbar, d.xm, d.xp);
        const BodyForces bf = body_forces(d.par, f, d.vel, Vec3::Zero());
        double pres = 0;
        interior_pressure(d.par, f, bf.acc, pres);
        rec.maybe(d.t, {d.xm, d.xp, d.pose.xG, d.pose.zG, d.pose.th, d.vel[0], d.vel[1],
                        d.vel[2], d.qbar, d.water_mass(), pres});
    };
    sample();
    while (d.t < nm.end_time - 1e-12) {
        d.step(pick_dt(std::min(suggest_dt(d.left), suggest_dt(d.right)), nm.end_time - d.t));
        sample();
    }
    return rec.rec;
}

} // namespace

json load_scenario(const std::string& text) {
    json sc;
    try {
        sc = json::parse(text);
    } catch (const json::parse_error& e) {
        size_t line = 1, col = 1;
        for (size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        throw ParseError("parse error at line " + std::to_string(line) + ", column " +
                         std::to_string(col) + ": " + e.what());
    }
    if (!sc.is_object()) throw ParseError("scenario document must be an object");
    if (!sc.contains("family")) validation_error("missing 'family'");
    const std::string fam = sc.at("family").get<std::string>();
    static const char* families[] = {"IBVP",  "KinematicFB", "ContactFB",   "Transmission",
                                     "Shock", "Piston",      "FloatingBody"};
    bool ok = false;
    for (const char* f : families) ok = ok || fam == f;
    if (!ok) validation_error("unknown family '" + fam + "'");
    if (!sc.contains("physics")) validation_error("missing 'physics' section");
    return sc;
}

json load_scenario_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open scenario file " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return load_scenario(ss.str());
}

RunRecord run_scenario(const json& sc, const RunOptions& opt) {
    const Numerics nm = read_numerics(sc, opt);
    const std::string fam = sc.at("family").get<std::string>();
    json meta;
    meta["scenario"] = sc;
    meta["tool"] = "ftsim 1.0";
    meta["seed"] = opt.seed;

    RunRecord rec;
    try {
        if (fam == "IBVP") rec = run_ibvp(sc, nm);
        else if (fam == "KinematicFB") rec = run_kinematic(sc, nm);
        else if (fam == "ContactFB") rec = run_contact(sc, nm);
        else if (fam == "Transmission") rec = run_transmission(sc, nm);
        else if (fam == "Shock") rec = run_shock(sc, nm);
        else if (fam == "Piston") rec = run_piston(sc, nm, meta);
        else rec = run_floating(sc, nm, meta);
    } catch (const ValidationError&) {
        throw;
    } catch (const FtError& e) {
        rec.diagnostics.push_back(std::string("abort: ") + e.what());
    }
    if (nm.end_time == 0) rec.rows.clear();  // degenerate horizon: header-only series
    check_outputs(sc, rec.columns);
    rec.metadata = meta;
    for (const std::string& d : rec.diagnostics) rec.metadata["diagnostics"].push_back(d);
    return rec;
}

void write_timeseries(const RunRecord& rec, const std::string& csv_path) {
    std::ofstream out(csv_path);
    if (!out) throw FtError("cannot open output file " + csv_path);
    for (size_t c = 0; c < rec.columns.size(); ++c)
        out << rec.columns[c] << (c + 1 < rec.columns.size() ? "," : "\n");
    out.precision(17);
    for (const auto& row : rec.rows) {
        for (size_t c = 0; c < row.size(); ++c)
            out << row[c] << (c + 1 < row.size() ? "," : "\n");
    }
    std::ofstream ms(csv_path + ".meta.json");
    if (!ms) throw FtError("cannot open metadata file " + csv_path + ".meta.json");
    ms << rec.metadata.dump(2) << "\n";
}

} // namespace ft
