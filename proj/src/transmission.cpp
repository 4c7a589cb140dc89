#include "ft/transmission.hpp"

#include <cmath>

namespace ft {

FrontRegime classify_regime(const EigenStructure& left, const EigenStructure& right,
                            double chi, double margin) {
    // relative characteristic speeds, signed so that "all positive" means subsonic
    const double a = left.lambda_plus - chi;   // fast family on the left
    const double b = left.lambda_minus + chi;  // slow family on the left
    const double c = right.lambda_plus - chi;  // fast family on the right
    const double d = right.lambda_minus + chi; // slow family on the right
    if (a > margin && b > margin && c > margin && d > margin) return FrontRegime::Subsonic;
    if (a > margin && b > margin && c < -margin) return FrontRegime::LaxRight;
    if (b < -margin && c > margin && d > margin) return FrontRegime::LaxLeft;
    return FrontRegime::Unclassified;
}

namespace {

struct BlockModes {
    // the four eigenvalues of diag(chi - A_left, A_right - chi) with their
    // embedded unit eigenvectors and spectral projectors
    double mu[4];
    Eigen::Vector4d vec[4];
    Eigen::Matrix4d proj[4];
};

BlockModes block_modes(const EigenStructure& l, const EigenStructure& r, double chi) {
    BlockModes m;
    auto embed_vec = [](const Vec2& e, int blk) {
        Eigen::Vector4d v = Eigen::Vector4d::Zero();
        v.segment<2>(2 * blk) = e;
        return v;
    };
    auto embed_proj = [](const Mat2& p, int blk) {
        Eigen::Matrix4d P = Eigen::Matrix4d::Zero();
        P.block<2, 2>(2 * blk, 2 * blk) = p;
        return P;
    };
    m.mu[0] = chi - l.lambda_plus;
    m.vec[0] = embed_vec(l.e_plus, 0);
    m.proj[0] = embed_proj(l.pi_plus, 0);
    m.mu[1] = chi + l.lambda_minus;
    m.vec[1] = embed_vec(l.e_minus, 0);
    m.proj[1] = embed_proj(l.pi_minus, 0);
    m.mu[2] = r.lambda_plus - chi;
    m.vec[2] = embed_vec(r.e_plus, 1);
    m.proj[2] = embed_proj(r.pi_plus, 1);
    m.mu[3] = -r.lambda_minus - chi;
    m.vec[3] = embed_vec(r.e_minus, 1);
    m.proj[3] = embed_proj(r.pi_minus, 1);
    return m;
}

double norm2(const Eigen::MatrixXd& A) {
    return Eigen::JacobiSVD<Eigen::MatrixXd>(A).singularValues()(0);
}

} // namespace

int outgoing_count(const EigenStructure& left, const EigenStructure& right, double chi) {
    const BlockModes m = block_modes(left, right, chi);
    int p = 0;
    for (int k = 0; k < 4; ++k)
        if (m.mu[k] > 0) ++p;
    return p;
}

std::pair<double, double> rh_speed_and_residual(const System2x2& sys, const Vec2& u_l,
                                                const Vec2& u_r) {
    auto f0 = [&](const Vec2& u) { return sys.f0 ? sys.f0(u) : u; };
    const Vec2 j0 = f0(u_l) - f0(u_r);
    const Vec2 j1 = sys.f(u_l) - sys.f(u_r);
    if (j0.norm() < 1e-12) throw ZeroJump("conserved-variable jump vanishes");
    return {j1.dot(j0) / j0.squaredNorm(), j1.dot(perp(j0))};
}

Eigen::MatrixXd assemble_Ep(const EigenStructure& left, const EigenStructure& right,
                            double chi) {
    const BlockModes m = block_modes(left, right, chi);
    std::vector<int> out;
    for (int k = 0; k < 4; ++k)
        if (m.mu[k] > 0) out.push_back(k);
    Eigen::MatrixXd Ep(4, out.size());
    for (size_t j = 0; j < out.size(); ++j) Ep.col(j) = m.vec[out[j]];
    return Ep;
}

LopatinskiiReport lopatinskii_matrix(const Eigen::MatrixXd& Np, const Eigen::MatrixXd& Ep,
                                     double c0) {
    if (Np.rows() != Ep.cols())
        throw WrongCharacteristicCount("boundary-condition count != outgoing mode count");
    Eigen::JacobiSVD<Eigen::MatrixXd> svdN(Np);
    if (svdN.singularValues().minCoeff() < c0)
        throw SingularLopatinski("rank-deficient boundary matrix");
    LopatinskiiReport rep;
    rep.Lp = Np * Ep;
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(rep.Lp);
    const double smin = svd.singularValues().minCoeff();
    if (smin < c0) throw SingularLopatinski("boundary matrix loses the outgoing modes");
    rep.inv_norm = 1.0 / smin;
    rep.cond = svd.singularValues().maxCoeff() / smin;
    return rep;
}

double lax_lopatinskii_scalar(const System2x2& sys, const Vec2& u_l, const Vec2& u_r,
                              FrontRegime regime) {
    auto f0 = [&](const Vec2& u) { return sys.f0 ? sys.f0(u) : u; };
    const Vec2 j0 = f0(u_l) - f0(u_r);
    if (j0.norm() < 1e-12) throw ZeroJump("conserved-variable jump vanishes");
    const auto [chi, phi] = rh_speed_and_residual(sys, u_l, u_r);
    (void)phi;
    const Mat2 f0p_l = sys.f0 ? jacobian_fd(sys.f0, u_l) : Mat2(Mat2::Identity());
    const Mat2 f0p_r = sys.f0 ? jacobian_fd(sys.f0, u_r) : Mat2(Mat2::Identity());
    const EigenStructure el = eigen_decompose(sys.A(u_l));
    const EigenStructure er = eigen_decompose(sys.A(u_r));
    if (regime == FrontRegime::LaxRight)
        return (chi + el.lambda_minus) * perp(j0).dot(f0p_l * el.e_minus);
    if (regime == FrontRegime::LaxLeft)
        return (chi - er.lambda_plus) * perp(j0).dot(f0p_r * er.e_plus);
    throw NotAdmissible("scalar boundary determinant needs a one-sided regime");
}

BlockAssembly assemble_block(const EigenStructure& left, const EigenStructure& right,
                             double chi, const Eigen::MatrixXd& Np, double c0) {
    const BlockModes m = block_modes(left, right, chi);
    std::vector<int> out, in;
    for (int k = 0; k < 4; ++k) {
        if (std::abs(m.mu[k]) <= c0)
            throw NotAdmissible("characteristic interface: a relative speed vanishes");
        (m.mu[k] > 0 ? out : in).push_back(k);
    }
    BlockAssembly asmb;
    asmb.Abig = Eigen::Matrix4d::Zero();
    for (int k = 0; k < 4; ++k) asmb.Abig += m.mu[k] * m.proj[k];
    asmb.Np = Np;
    asmb.Ep = assemble_Ep(left, right, chi);
    asmb.Lp = lopatinskii_matrix(Np, asmb.Ep, c0).Lp;

    // size of the incoming part of a kernel vector controls its outgoing part
    Eigen::MatrixXd Ein(4, in.size());
    for (size_t j = 0; j < in.size(); ++j) Ein.col(j) = m.vec[in[j]];
    const Eigen::MatrixXd R = -Np * Ein;
    const double C = norm2(asmb.Lp.inverse() * R);

    double mu_out_max = 0, mu_in_min = 1e300;
    for (int k : out) mu_out_max = std::max(mu_out_max, m.mu[k]);
    for (int k : in) mu_in_min = std::min(mu_in_min, -m.mu[k]);
    asmb.M = 2 + (2 * mu_out_max * C * C + 2 * (1 + C * C)) / mu_in_min;

    asmb.S = Eigen::Matrix4d::Zero();
    for (int k : out) asmb.S += m.proj[k].transpose() * m.proj[k];
    for (int k : in) asmb.S += asmb.M * m.proj[k].transpose() * m.proj[k];

    // sharp dissipation constants of the quadratic form v -> v^T S A v
    const Eigen::Matrix4d SA = asmb.S * asmb.Abig;
    Eigen::JacobiSVD<Eigen::MatrixXd> svdN(Np, Eigen::ComputeFullV);
    const int p = int(Np.rows());
    const Eigen::MatrixXd K = svdN.matrixV().rightCols(4 - p);  // kernel basis of Np
    const Eigen::MatrixXd Qk = -K.transpose() * SA * K;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(0.5 * (Qk + Qk.transpose()));
    const double m0 = eig.eigenvalues().minCoeff();
    if (m0 <= 0) throw LopatinskiFailure("boundary form not dissipative on the kernel");
    const double nSA = norm2(SA);
    const double c1 =
        norm2(Np.transpose() * (Np * Np.transpose()).inverse());
    const double c2 = 2 * nSA * nSA / m0 + nSA;
    asmb.alpha1 = 0.5 * m0;
    asmb.beta1 = (0.5 * m0 + c2) * c1 * c1;
    return asmb;
}

namespace {

struct InterfaceSolve {
    Vec2 ubl, ubr;
    double chi = 0, phi_res = 0;
};

// Newton solve for the two trace states: extrapolate every characteristic that
// reaches the front from an interior, close with the jump relation(s).
InterfaceSolve solve_states(const System2x2& sys, const SolverState& L, const SolverState& R,
                            const Vec2& gl, const Vec2& gr, double chi_guess,
                            const std::optional<KineticRelation>& Psi) {
    const Vec2 ext_l = farfield_close(L, Side::Right);
    const Vec2 ext_r = farfield_close(R, Side::Left);
    const EigenStructure el = eigen_decompose(sys.A(ext_l));
    const EigenStructure er = eigen_decompose(sys.A(ext_r));

    // families hitting the front: relative speed > 0 from the left, < 0 from the right
    struct Arr {
        Vec2 l;      // left eigenvector row
        double wext; // extrapolated invariant
        bool left_side;
    };
    std::vector<Arr> arr;
    Mat2 El, Er;
    El.col(0) = el.e_plus;
    El.col(1) = el.e_minus;
    Er.col(0) = er.e_plus;
    Er.col(1) = er.e_minus;
    const Mat2 Ll = El.inverse(), Lr = Er.inverse();
    const double lamL[2] = {el.lambda_plus, -el.lambda_minus};
    const double lamR[2] = {er.lambda_plus, -er.lambda_minus};
    for (int k = 0; k < 2; ++k) {
        if (lamL[k] - chi_guess > 0) {
            const Vec2 l = Ll.row(k);
            arr.push_back({l, l.dot(ext_l), true});
        }
        if (lamR[k] - chi_guess < 0) {
            const Vec2 l = Lr.row(k);
            arr.push_back({l, l.dot(ext_r), false});
        }
    }
    const int p = 4 - int(arr.size());
    if (p < 1 || p > 2) throw RegimeChange("front left the tracked regime family");
    if (p == 2 && !Psi) throw ClosureFailure("subsonic tracked jump needs a kinetic relation");

    auto resid = [&](const Eigen::Vector4d& y) {
        const Vec2 ul = y.head<2>(), ur = y.tail<2>();
        Eigen::Vector4d F;
        int row = 0;
        for (const Arr& a : arr)
            F[row++] = a.l.dot(a.left_side ? ul : ur) - a.wext;
        const auto [chi, phi] = rh_speed_and_residual(sys, ul, ur);
        (void)chi;
        F[row++] = phi;
        if (p == 2) F[row++] = (*Psi)(ul, ur);
        return F;
    };

    Eigen::Vector4d y;
    y << gl, gr;
    for (int it = 0; it < 50; ++it) {
        const Eigen::Vector4d F = resid(y);
        if (F.norm() < 1e-11) {
            InterfaceSolve s;
            s.ubl = y.head<2>();
            s.ubr = y.tail<2>();
            std::tie(s.chi, s.phi_res) = rh_speed_and_residual(sys, s.ubl, s.ubr);
            s.phi_res = std::abs(s.phi_res);
            return s;
        }
        Eigen::Matrix4d J;
        const double h = 1e-7;
        for (int j = 0; j < 4; ++j) {
            Eigen::Vector4d yp = y, ym = y;
            yp[j] += h;
            ym[j] -= h;
            J.col(j) = (resid(yp) - resid(ym)) / (2 * h);
        }
        Eigen::FullPivLU<Eigen::Matrix4d> lu(J);
        if (!lu.isInvertible()) throw NewtonDivergence("singular front-closure Jacobian");
        y -= lu.solve(F);
    }
    throw NewtonDivergence("front closure Newton did not reach 1e-11 in 50 iterations");
}

} // namespace

void ShockDriver::solve_interface() {
    const InterfaceSolve s = solve_states(sys, left, right, ubl, ubr, xbar_dot, Psi);
    ubl = s.ubl;
    ubr = s.ubr;
    xbar_dot = s.chi;
    phi_residual = s.phi_res;
    const FrontRegime reg =
        classify_regime(eigen_decompose(sys.A(ubl)), eigen_decompose(sys.A(ubr)),
                        xbar_dot, margin);
    if (reg != regime) throw RegimeChange("front left the tracked regime");
}

void ShockDriver::step(double dt) {
    const std::vector<Vec2> V0l = pack_state(left), V0r = pack_state(right);
    const BoundaryClosure far_l = BoundaryClosure::transparent();
    const BoundaryClosure far_r = BoundaryClosure::transparent();
    auto pin = [](Vec2 v) {
        return BoundaryClosure::dirichlet([v](double) { return v; });
    };

    solve_interface();
    const double chi1 = xbar_dot;
    const Vec2 ubl1 = ubl, ubr1 = ubr;
    const StageResult r1l = stage_rhs(left, far_l, pin(ubl1));
    const StageResult r1r = stage_rhs(right, pin(ubr1), far_r);
    const double cmax = std::max(r1l.max_ref_speed, r1r.max_ref_speed);
    if (cmax * dt / left.grid.dx > left.cfl + 1e-12)
        throw CflViolation("dt exceeds the Courant bound");

    // predictor: move the front and both domains with the begin-of-step data
    auto apply = [&](SolverState s, const MovingGrid& base, const std::vector<Vec2>& V0,
                     const StageResult& r, double xb, double xd) {
        s.grid = set_cutoff(base, xb - base.front_anchor, xd);
        std::vector<Vec2> V(V0.size());
        for (size_t i = 0; i < V0.size(); ++i) V[i] = V0[i] + dt * r.dVdt[i];
        s.u = unpack_state(sys, s.grid, V, s.u);
        s.t += dt;
        return s;
    };
    const double xbar_p = xbar + dt * chi1;
    SolverState lp = apply(left, base_left, V0l, r1l, xbar_p, chi1);
    SolverState rp = apply(right, base_right, V0r, r1r, xbar_p, chi1);

    const InterfaceSolve s2 = solve_states(sys, lp, rp, ubl1, ubr1, chi1, Psi);
    const StageResult r2l = stage_rhs(lp, far_l, pin(s2.ubl));
    const StageResult r2r = stage_rhs(rp, pin(s2.ubr), far_r);

    xbar += 0.5 * dt * (chi1 + s2.chi);
    xbar_dot = s2.chi;
    ubl = s2.ubl;
    ubr = s2.ubr;
    phi_residual = s2.phi_res;
    left.grid = set_cutoff(base_left, xbar - base_left.front_anchor, xbar_dot);
    right.grid = set_cutoff(base_right, xbar - base_right.front_anchor, xbar_dot);
    left.grid.check_jacobian();
    right.grid.check_jacobian();
    std::vector<Vec2> V(V0l.size());
    for (size_t i = 0; i < V0l.size(); ++i)
        V[i] = V0l[i] + 0.5 * dt * (r1l.dVdt[i] + r2l.dVdt[i]);
    left.u = unpack_state(sys, left.grid, V, left.u);
    V.resize(V0r.size());
    for (size_t i = 0; i < V0r.size(); ++i)
        V[i] = V0r[i] + 0.5 * dt * (r1r.dVdt[i] + r2r.dVdt[i]);
    right.u = unpack_state(sys, right.grid, V, right.u);
    left.t += dt;
    right.t += dt;

    const FrontRegime reg =
        classify_regime(eigen_decompose(sys.A(ubl)), eigen_decompose(sys.A(ubr)),
                        xbar_dot, margin);
    if (reg != regime) throw RegimeChange("front left the tracked regime");
}

} // namespace ft
