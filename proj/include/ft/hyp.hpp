#ifndef FT_HYP_HPP
#define FT_HYP_HPP

#include <Eigen/Dense>
#include <functional>

#include "ft/errors.hpp"

namespace ft {

using Vec2 = Eigen::Vector2d;
using Mat2 = Eigen::Matrix2d;

inline Vec2 perp(const Vec2& v) { return Vec2(-v[1], v[0]); }
inline double cross2(const Vec2& a, const Vec2& b) { return a[0] * b[1] - a[1] * b[0]; }

/** Axis-aligned admissible-state box. */
struct PhaseBox {
    Vec2 lo{-1e300, -1e300};
    Vec2 hi{1e300, 1e300};
    bool contains(const Vec2& u) const {
        return u[0] >= lo[0] && u[0] <= hi[0] && u[1] >= lo[1] && u[1] <= hi[1];
    }
};

/**
 * Descriptor of a 2x2 quasilinear (optionally conservative) hyperbolic system.
 * A(u) is mandatory; f0/f give the conservative form, B a zeroth-order term,
 * source a forcing term.
 */
struct System2x2 {
    std::function<Mat2(const Vec2&)> A;
    std::function<Vec2(const Vec2&)> f0;      // optional
    std::function<Vec2(const Vec2&)> f;       // optional
    std::function<Vec2(const Vec2&)> f0_inv;  // optional inverse of f0 (identity assumed when absent)
    std::function<Mat2(double, double)> B;       // optional, (t,x)
    std::function<Vec2(double, double)> source;  // optional, (t,x)
    PhaseBox phase_box;

    bool conservative() const { return static_cast<bool>(f0) && static_cast<bool>(f); }
};

/** Eigenvalues are lambda_plus and -lambda_minus; e_pm unit, pi_pm the spectral projectors. */
struct EigenStructure {
    double lambda_plus = 0, lambda_minus = 0;
    Vec2 e_plus, e_minus;
    Mat2 pi_plus, pi_minus;
};

// algebraic identity tolerance used throughout
inline constexpr double kAlgebraTol = 1e-12;
// minimum eigenvalue gap accepted as strictly hyperbolic
inline constexpr double kHyperbolicGap = 1e-10;

/** Decompose a plain matrix (no admissibility check). */
EigenStructure eigen_decompose(const Mat2& A);
/** Decompose sys.A(u); checks the phase box and strict hyperbolicity. */
EigenStructure eigen_decompose(const System2x2& sys, const Vec2& u);

struct Symmetrizer {
    Mat2 S;
    double M = 1;       // weight on the incoming-projector part
    double alpha0 = 0;  // smallest eigenvalue of S
    double beta0 = 0;   // largest eigenvalue of S
};

/**
 * S = pi_+^T pi_+ + M pi_-^T pi_- with the explicit pointwise weight
 * M = 2 + 8 (lambda_+/lambda_-) |pi_+ nu_perp|^2 / |pi_- nu_perp|^2,
 * which makes S A symmetric and (nu_perp)^T S A nu_perp <= 0.
 */
Symmetrizer build_symmetrizer(const EigenStructure& es, const Vec2& nu);

/** |nu . e_plus| — the scalar uniform boundary nondegeneracy quantity. */
double lopatinskii_scalar(const EigenStructure& es, const Vec2& nu);

/** dt^phi u = u_t - (phi_t/phi_x) u_x. */
Vec2 alinhac_good_unknown(const Vec2& u_t, const Vec2& u_x, double phi_t, double phi_x);

/** Central finite-difference Jacobian of a 2-vector map. */
Mat2 jacobian_fd(const std::function<Vec2(const Vec2&)>& F, const Vec2& u, double h = 1e-6);

/** Directional derivative dA(u)[v] by central differences. */
Mat2 dA_dir(const std::function<Mat2(const Vec2&)>& A, const Vec2& u, const Vec2& v, double h = 1e-6);

} // namespace ft

#endif
