#include "xent/special.hpp"

#include <cmath>
#include <stdexcept>

namespace xent::special {

namespace {

// Lanczos approximation, g = 7, 9 terms. Gives close to full double
// precision for the log-gamma on the positive real axis.
constexpr double kLanczosG = 7.0;
constexpr double kLanczos[9] = {
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
};
constexpr double kHalfLn2Pi = 0.918938533204672741780329736405617639;

double lgamma_lanczos(double x) {
    // valid for x >= 0.5
    double acc = kLanczos[0];
    for (int i = 1; i < 9; ++i) acc += kLanczos[i] / (x - 1.0 + i);
    const double t = x + kLanczosG - 0.5;
    return kHalfLn2Pi + (x - 0.5) * std::log(t) - t + std::log(acc);
}

}  // namespace

double lgamma(double x) {
    if (!(x > 0.0)) throw std::domain_error("lgamma: requires x > 0");
    if (x >= 0.5) return lgamma_lanczos(x);
    // Recurrence: ln Gamma(x) = ln Gamma(x + 1) - ln x.
    return lgamma_lanczos(x + 1.0) - std::log(x);
}

double lbeta(double a, double b) {
    return lgamma(a) + lgamma(b) - lgamma(a + b);
}

double digamma(double x) {
    if (!(x > 0.0)) throw std::domain_error("digamma: requires x > 0");
    // Push the argument above 10 with psi(x) = psi(x+1) - 1/x, then use the
    // asymptotic expansion in inverse even powers.
    double acc = 0.0;
    while (x < 10.0) {
        acc -= 1.0 / x;
        x += 1.0;
    }
    const double inv = 1.0 / x;
    const double inv2 = inv * inv;
    // Bernoulli-number coefficients B_2k / 2k for k = 1..6.
    double series = inv2 * (1.0 / 12.0 +
                    inv2 * (-1.0 / 120.0 +
                    inv2 * (1.0 / 252.0 +
                    inv2 * (-1.0 / 240.0 +
                    inv2 * (1.0 / 132.0 +
                    inv2 * (-691.0 / 32760.0))))));
    return acc + std::log(x) - 0.5 * inv - series;
}

}  // namespace xent::special
