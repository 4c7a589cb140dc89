#ifndef FT_NORMS_HPP
#define FT_NORMS_HPP

#include <vector>

#include "ft/hyp.hpp"

namespace ft {

/**
 * Exponentially weighted norms of a boundary trace sampled on a uniform time grid.
 * sup_norm      = sup_t e^{-gamma t} |u|
 * integral_norm = (gamma * int e^{-2 gamma t} |u|^2)^{1/2}
 * trace_norm    = sup_norm + integral_norm
 * dual_norm     = discrete maximization of |int e^{-2 gamma t} f phi| over a fixed
 *                 dictionary of piecewise-linear test functions normalized in the
 *                 mixed norm; a certified lower bound of the true dual pairing norm.
 */
struct WeightedNormReport {
    double gamma = 0;
    double sup_norm = 0;
    double integral_norm = 0;
    double trace_norm = 0;
    double dual_norm = 0;
};

/**
 * trajectory[k] holds the time-derivative levels 0..m (m <= 2) of the trace at
 * t_j = j*dt; sup/integral/trace norms sum the levels, the dual norm uses level 0
 * magnitudes only.
 */
WeightedNormReport weighted_norms(const std::vector<std::vector<Vec2>>& trajectory,
                                  double dt, double gamma);

/** Convenience overload for a single level. */
WeightedNormReport weighted_norms(const std::vector<Vec2>& trace, double dt, double gamma);

/** The two closed-form upper bounds on the dual norm (L1-type, L2-type). */
std::pair<double, double> dual_norm_upper_bounds(const std::vector<double>& f_abs,
                                                 double dt, double gamma);

} // namespace ft

#endif
