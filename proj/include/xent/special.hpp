#pragma once

namespace xent::special {

inline constexpr double kPi = 3.141592653589793238462643383279502884;
inline constexpr double kLn2Pi = 1.837877066409345483560659472811235279;
// Euler-Mascheroni constant (= -digamma(1)).
inline constexpr double kEulerGamma = 0.577215664901532860606512090082402431;

/// ln Gamma(x) for x > 0. Relative accuracy better than 1e-13 on (0, 170].
double lgamma(double x);

/// ln Beta(a, b) = lgamma(a) + lgamma(b) - lgamma(a + b), a > 0, b > 0.
double lbeta(double a, double b);

/// digamma(x) = d/dx ln Gamma(x) for x > 0.
double digamma(double x);

}  // namespace xent::special
