#include "ft/norms.hpp"

#include <algorithm>
#include <cmath>

namespace ft {

namespace {

double trapz(const std::vector<double>& v, double dt) {
    if (v.size() < 2) return 0;
    double s = 0.5 * (v.front() + v.back());
    for (size_t i = 1; i + 1 < v.size(); ++i) s += v[i];
    return s * dt;
}

// 64 tent functions: 32 uniform centers, widths T/8 and T/2, clipped to [0,T].
std::vector<std::vector<double>> tent_dictionary(size_t n, double dt) {
    const double T = dt * double(n - 1);
    std::vector<std::vector<double>> dict;
    for (int wi = 0; wi < 2; ++wi) {
        const double w = (wi == 0) ? T / 8.0 : T / 2.0;
        for (int c = 0; c < 32; ++c) {
            const double tc = T * (c + 0.5) / 32.0;
            std::vector<double> phi(n);
            for (size_t j = 0; j < n; ++j) {
                const double t = dt * double(j);
                phi[j] = std::max(0.0, 1.0 - std::abs(t - tc) / w);
            }
            dict.push_back(std::move(phi));
        }
    }
    return dict;
}

} // namespace

WeightedNormReport weighted_norms(const std::vector<std::vector<Vec2>>& trajectory,
                                  double dt, double gamma) {
    WeightedNormReport r;
    r.gamma = gamma;
    if (trajectory.empty() || trajectory[0].size() < 2) return r;
    const size_t n = trajectory[0].size();

    for (const auto& level : trajectory) {
        double sup = 0;
        std::vector<double> w2(n);
        for (size_t j = 0; j < n; ++j) {
            const double t = dt * double(j);
            const double a = level[j].norm();
            sup = std::max(sup, std::exp(-gamma * t) * a);
            w2[j] = std::exp(-2 * gamma * t) * a * a;
        }
        r.sup_norm += sup;
        r.integral_norm += std::sqrt(gamma * trapz(w2, dt));
    }
    r.trace_norm = r.sup_norm + r.integral_norm;

    // dual norm of the level-0 magnitude signal
    std::vector<double> fa(n);
    for (size_t j = 0; j < n; ++j) fa[j] = trajectory[0][j].norm();
    for (auto& phi : tent_dictionary(n, dt)) {
        // mixed norm of the test function (same discrete rules as above)
        double sup = 0;
        std::vector<double> p2(n), pair(n);
        for (size_t j = 0; j < n; ++j) {
            const double t = dt * double(j);
            sup = std::max(sup, std::exp(-gamma * t) * std::abs(phi[j]));
            p2[j] = std::exp(-2 * gamma * t) * phi[j] * phi[j];
            pair[j] = std::exp(-2 * gamma * t) * fa[j] * phi[j];
        }
        const double mixed = sup + std::sqrt(gamma * trapz(p2, dt));
        if (mixed < 1e-300) continue;
        r.dual_norm = std::max(r.dual_norm, std::abs(trapz(pair, dt)) / mixed);
    }
    return r;
}

WeightedNormReport weighted_norms(const std::vector<Vec2>& trace, double dt, double gamma) {
    return weighted_norms(std::vector<std::vector<Vec2>>{trace}, dt, gamma);
}

std::pair<double, double> dual_norm_upper_bounds(const std::vector<double>& f_abs,
                                                 double dt, double gamma) {
    const size_t n = f_abs.size();
    std::vector<double> l1(n), l2(n);
    for (size_t j = 0; j < n; ++j) {
        const double t = dt * double(j);
        l1[j] = std::exp(-gamma * t) * f_abs[j];
        l2[j] = std::exp(-2 * gamma * t) * f_abs[j] * f_abs[j];
    }
    return {trapz(l1, dt), std::sqrt(trapz(l2, dt) / gamma)};
}

} // namespace ft
