#ifndef FT_TRANSMISSION_HPP
#define FT_TRANSMISSION_HPP

#include <optional>

#include "ft/front.hpp"
#include "ft/solver.hpp"

namespace ft {

/**
 * Interface regime relative to the front speed chi: all characteristics subsonic,
 * supersonic on the right side (right-going front), supersonic on the left side
 * (left-going front), or outside the three recognized sign patterns.
 */
FrontRegime classify_regime(const EigenStructure& left, const EigenStructure& right,
                            double chi, double margin = 0);

/** Number of outgoing characteristics of the 4x4 one-sided form for this regime. */
int outgoing_count(const EigenStructure& left, const EigenStructure& right, double chi);

/**
 * Rankine-Hugoniot split of the jump: chi = [f].[f0]/|[f0]|^2 (speed) and
 * Phi = [f].[f0]^perp (transmission residual), jumps taken left minus right.
 */
std::pair<double, double> rh_speed_and_residual(const System2x2& sys, const Vec2& u_l,
                                                const Vec2& u_r);

/**
 * 4 x p matrix of outgoing block eigenvectors at the interface (columns ordered
 * left-block first), and the boundary matrix algebra built on it.
 */
Eigen::MatrixXd assemble_Ep(const EigenStructure& left, const EigenStructure& right,
                            double chi);

struct LopatinskiiReport {
    Eigen::MatrixXd Lp;     // p x p
    double cond = 0;        // 2-norm condition number
    double inv_norm = 0;    // ||Lp^{-1}||_2
};

/** Lp = Np * Ep; raises SingularLopatinski on rank-deficient Np or singular Lp. */
LopatinskiiReport lopatinskii_matrix(const Eigen::MatrixXd& Np, const Eigen::MatrixXd& Ep,
                                     double c0 = 1e-10);

/** Scalar boundary determinant of a tracked jump with one outgoing characteristic. */
double lax_lopatinskii_scalar(const System2x2& sys, const Vec2& u_l, const Vec2& u_r,
                              FrontRegime regime);

struct BlockAssembly {
    Eigen::Matrix4d Abig;  // diag(-A_left, A_right) at the interface
    Eigen::MatrixXd Ep;
    Eigen::MatrixXd Np;
    Eigen::MatrixXd Lp;
    Eigen::Matrix4d S;  // block symmetrizer, S*Abig symmetric
    double M = 0, alpha1 = 0, beta1 = 0;
};

/**
 * Full 4x4 interface algebra: block coefficient matrix, outgoing eigenvector matrix,
 * boundary matrix, and a symmetrizer whose boundary form satisfies
 * v^T (S A) v <= -alpha1 |v|^2 + beta1 |Np v|^2.
 */
BlockAssembly assemble_block(const EigenStructure& left, const EigenStructure& right,
                             double chi, const Eigen::MatrixXd& Np, double c0 = 1e-10);

/** Optional kinetic relation closing a subsonic tracked jump. */
using KineticRelation = std::function<double(const Vec2&, const Vec2&)>;

/** Two-sided tracked-discontinuity simulation. */
struct ShockDriver {
    System2x2 sys;                // conservative descriptor (f0, f required)
    SolverState left, right;      // left domain ends at the front, right one starts there
    MovingGrid base_left, base_right;  // identity reference grids for the cutoff map
    double xbar = 0, xbar_dot = 0;
    FrontRegime regime = FrontRegime::Unclassified;
    std::optional<KineticRelation> Psi;
    double margin = 1e-10;        // strictness of the regime sign pattern
    double phi_residual = 0;      // |Phi| after the last interface solve
    Vec2 ubl, ubr;                // interface trace states of the last solve

    /** Newton solve of the interface closure at the current time. */
    void solve_interface();
    /** One coupled Heun step of both domains and the front. */
    void step(double dt);
};

} // namespace ft

#endif
