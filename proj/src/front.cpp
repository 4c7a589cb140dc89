#include "ft/front.hpp"

#include <cmath>

namespace ft {

double contact_speed(const System2x2& sys, const ContactTraces& tr, double c0) {
    const Vec2 Dx = tr.dxphi_u - tr.dxphi_ui;
    const double d2 = Dx.squaredNorm();
    if (d2 < c0 * c0) throw DegenerateContact("derivative jump below threshold");
    const Vec2 dtphi_u = -sys.A(tr.u) * tr.dxphi_u;
    return -Dx.dot(dtphi_u - tr.dtphi_ui) / d2;
}

SecondOrderData second_order_data(const System2x2& sys, const ContactTraces& tr,
                                  const Vec2& dxx_u, const Vec2& dtt_ui, const Vec2& dtx_ui,
                                  const Vec2& dxx_ui, double c0) {
    const Mat2 A = sys.A(tr.u);
    if (std::abs(A.determinant()) < 1e-12) throw SingularA("A(u) singular at the trace");
    const Mat2 Ainv = A.inverse();
    const Vec2 Dx = tr.dxphi_u - tr.dxphi_ui;
    if (Dx.squaredNorm() < c0 * c0) throw DegenerateContact("derivative jump below threshold");
    const double xd = tr.xbar_dot;

    const Vec2 ut = -A * tr.dxphi_u;  // dt^phi u from the interior equation
    const Mat2 dA_ut = dA_dir(sys.A, tr.u, ut);
    const Mat2 dA_ux = dA_dir(sys.A, tr.u, tr.dxphi_u);

    SecondOrderData out;
    // (dt^phi)^2 u after eliminating mixed and double spatial derivatives
    out.u2 = -dA_ut * tr.dxphi_u + A * (dA_ux * tr.dxphi_u + A * dxx_u);

    const Mat2 K = Mat2::Identity() - xd * Ainv;  // (Id - xdot A^{-1})
    out.g1 = (2 * xd * Ainv - xd * xd * Ainv * Ainv) * (dA_ut * tr.dxphi_u) +
             xd * xd * Ainv * (dA_ux * tr.dxphi_u) + dtt_ui + 2 * xd * dtx_ui +
             xd * xd * dxx_ui;
    out.chi2 = Dx.dot(out.g1 - (K * K) * out.u2) / Dx.squaredNorm();
    out.nu2 = (K * K).transpose() * perp(Dx);
    out.g2 = perp(Dx).dot(out.g1);
    return out;
}

FrontState kinematic_advance(const FrontState& f, double X_begin, double X_end, double dt) {
    FrontState out = f;
    out.xbar = f.xbar + 0.5 * dt * (X_begin + X_end);
    out.xbar_dot = X_end;
    return out;
}

FrontState contact_advance(const System2x2& sys, const FrontState& f, double chi_begin,
                           double chi_end, const Vec2& u_trace, double dt, double c0) {
    const EigenStructure es = eigen_decompose(sys.A(u_trace));
    const double chi = chi_end;
    if (!(es.lambda_plus - chi >= c0) || !(es.lambda_minus + chi >= c0))
        throw SubsonicityLoss("contact speed reached a characteristic speed");
    FrontState out = f;
    out.xbar = f.xbar + 0.5 * dt * (chi_begin + chi_end);
    out.xbar_dot = chi_end;
    return out;
}

Vec2 contact_mu(const Vec2& forcing, double threshold) {
    const double n = forcing.norm();
    if (n < threshold) throw DegenerateContact("contact forcing vector too small");
    return perp(forcing) / n;
}

} // namespace ft
