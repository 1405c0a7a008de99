#include "vesicle/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace vesicle {

QuadRule gauss_legendre(int n, double a, double b) {
    if (n < 1) throw std::invalid_argument("gauss_legendre: need at least one node");
    QuadRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    // Newton iteration on P_n, initial guesses from the Chebyshev-like estimate.
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.nodes[i] = x;
        rule.nodes[n - 1 - i] = -x;
        rule.weights[i] = w;
        rule.weights[n - 1 - i] = w;
    }
    // Map from [-1, 1] to [a, b].
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    for (int i = 0; i < n; ++i) {
        rule.nodes[i] = mid - half * rule.nodes[i];
        rule.weights[i] *= half;
    }
    return rule;
}

QuadRule periodic_trapezoid(int n, double period) {
    if (n < 1) throw std::invalid_argument("periodic_trapezoid: need at least one node");
    QuadRule rule;
    rule.nodes.resize(n);
    rule.weights.assign(n, period / n);
    for (int i = 0; i < n; ++i) rule.nodes[i] = period * i / n;
    return rule;
}

}  // namespace vesicle
