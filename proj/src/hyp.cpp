#include "ft/hyp.hpp"

#include <cmath>

namespace ft {

namespace {

// Unit vector spanning the range of a rank-one projector, sign fixed so the
// first component larger than a tiny threshold is positive.
Vec2 range_unit(const Mat2& pi) {
    Vec2 c0 = pi.col(0), c1 = pi.col(1);
    Vec2 v = (c0.norm() >= c1.norm()) ? c0 : c1;
    double n = v.norm();
    if (n == 0) throw NotStrictlyHyperbolic("projector has empty range");
    v /= n;
    double lead = (std::abs(v[0]) > 1e-14) ? v[0] : v[1];
    if (lead < 0) v = -v;
    return v;
}

} // namespace

EigenStructure eigen_decompose(const Mat2& A) {
    const double tr = A.trace();
    const double det = A.determinant();
    const double disc = tr * tr - 4.0 * det;
    if (disc < kHyperbolicGap * kHyperbolicGap)
        throw NotStrictlyHyperbolic("eigenvalue gap below threshold");
    const double s = std::sqrt(disc);
    const double mu_hi = 0.5 * (tr + s);
    const double mu_lo = 0.5 * (tr - s);

    EigenStructure es;
    es.lambda_plus = mu_hi;
    es.lambda_minus = -mu_lo;
    // pi_+ = (A - mu_lo Id)/(mu_hi - mu_lo), pi_- = -(A - mu_hi Id)/(mu_hi - mu_lo)
    es.pi_plus = (A - mu_lo * Mat2::Identity()) / s;
    es.pi_minus = -(A - mu_hi * Mat2::Identity()) / s;
    es.e_plus = range_unit(es.pi_plus);
    es.e_minus = range_unit(es.pi_minus);
    return es;
}

EigenStructure eigen_decompose(const System2x2& sys, const Vec2& u) {
    if (!sys.phase_box.contains(u)) throw NotAdmissible("state outside phase box");
    return eigen_decompose(sys.A(u));
}

Symmetrizer build_symmetrizer(const EigenStructure& es, const Vec2& nu) {
    if (!(es.lambda_plus > 0) || !(es.lambda_minus > 0))
        throw NotAdmissible("symmetrizer needs one positive and one negative speed");
    const Vec2 np = perp(nu);
    const double a_plus = (es.pi_plus * np).norm();
    const double a_minus = (es.pi_minus * np).norm();
    if (a_minus < 1e-10) throw LopatinskiFailure("pi_- nu_perp vanishes");

    Symmetrizer sym;
    sym.M = 2.0 + 8.0 * (es.lambda_plus / es.lambda_minus) * (a_plus * a_plus) / (a_minus * a_minus);
    sym.S = es.pi_plus.transpose() * es.pi_plus + sym.M * es.pi_minus.transpose() * es.pi_minus;
    Eigen::SelfAdjointEigenSolver<Mat2> eig(sym.S);
    sym.alpha0 = eig.eigenvalues()[0];
    sym.beta0 = eig.eigenvalues()[1];
    return sym;
}

double lopatinskii_scalar(const EigenStructure& es, const Vec2& nu) {
    return std::abs(nu.dot(es.e_plus));
}

Vec2 alinhac_good_unknown(const Vec2& u_t, const Vec2& u_x, double phi_t, double phi_x) {
    if (phi_x < 1e-8) throw DegenerateJacobian("phi_x below 1e-8");
    return u_t - (phi_t / phi_x) * u_x;
}

Mat2 jacobian_fd(const std::function<Vec2(const Vec2&)>& F, const Vec2& u, double h) {
    Mat2 J;
    for (int j = 0; j < 2; ++j) {
        Vec2 up = u, um = u;
        up[j] += h;
        um[j] -= h;
        J.col(j) = (F(up) - F(um)) / (2 * h);
    }
    return J;
}

Mat2 dA_dir(const std::function<Mat2(const Vec2&)>& A, const Vec2& u, const Vec2& v, double h) {
    const double n = v.norm();
    if (n == 0) return Mat2::Zero();
    const Vec2 d = v / n;
    return (A(u + h * d) - A(u - h * d)) * (n / (2 * h));
}

} // namespace ft
