// SPDX-License-Identifier: MIT
#pragma once

#include <Eigen/Core>

#include <memory>

namespace mtdd {

/// n-point Gauss-Legendre rule on [-1, 1].
struct GaussLegendreRule {
    Eigen::ArrayXd nodes;
    Eigen::ArrayXd weights;

    Eigen::Index size() const noexcept { return nodes.size(); }
};

/// Nodes by Newton iteration on P_n; exact for polynomials of degree 2n − 1.
GaussLegendreRule make_gauss_legendre(int n);

/// Shared immutable rule for n points. Rules are pure constants of n, so they
/// are built once per process and reused across threads.
std::shared_ptr<const GaussLegendreRule> gauss_legendre(int n);

/// Nodes of `rule` mapped onto [a, b].
inline Eigen::ArrayXd map_nodes(const GaussLegendreRule& rule, double a, double b) {
    return 0.5 * (b - a) * rule.nodes + 0.5 * (b + a);
}

/// ∫_a^b f, where f maps an array of abscissae to an array of values.
template <typename F>
double integrate(const GaussLegendreRule& rule, double a, double b, F&& f) {
    const Eigen::ArrayXd x = map_nodes(rule, a, b);
    const Eigen::ArrayXd y = f(x);
    return 0.5 * (b - a) * (rule.weights * y).sum();
}

}  // namespace mtdd
