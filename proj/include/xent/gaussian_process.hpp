#pragma once

#include <functional>
#include <vector>

#include "xent/alpha.hpp"
#include "xent/closed_form.hpp"

namespace xent::gp {

/// Nonnegative spectral density on [0, 2pi] for a stationary zero-mean
/// Gaussian source. Construction samples the evaluator on a uniform grid and
/// checks nonnegativity and symmetry about pi (real-valued process).
class SpectralDensity {
public:
    static SpectralDensity white(double s2);
    /// AR(1) spectrum s2 / |1 - rho e^{i lambda}|^2.
    static SpectralDensity ar1(double rho, double s2);
    static SpectralDensity from_function(std::function<double(double)> f,
                                         int check_grid = 4096);
    /// Piecewise-linear interpolation of (lambda, value) samples; clamped
    /// outside the tabulated range.
    static SpectralDensity from_table(std::vector<std::pair<double, double>> pts);

    double operator()(double lambda) const { return eval_(lambda); }
    double positivity_floor() const noexcept { return floor_; }

private:
    SpectralDensity(std::function<double(double)> f, double floor)
        : eval_(std::move(f)), floor_(floor) {}

    std::function<double(double)> eval_;
    double floor_;
};

struct RateResult {
    double value = 0.0;          // nats per sample
    Measure measure = Measure::Shannon;
    int grid_size = 0;
    double constraint_min = 0.0; // min over the grid of the row's constraint
};

/// Shannon differential cross-entropy rate
///   1/2 ln 2pi + (1/4pi) Int [ln g + f/g].
RateResult shannon_rate(const SpectralDensity& f, const SpectralDensity& g,
                        int grid = 4096);

/// Renyi differential cross-entropy rate
///   1/2 ln 2pi + (1/(4pi(1-a))) Int [(2-a) ln g - ln m],  m = g + (a-1) f,
/// requiring g/m > 0 across the grid.
RateResult renyi_rate(const SpectralDensity& f, const SpectralDensity& g,
                      const AlphaOrder& a, int grid = 4096);

/// Natural Renyi differential cross-entropy rate
///   1/2 ln(2pi a^{1/(a-1)}) + (1/(4pi(1-a))) Int ln(j / g^a),
/// j = a g + (1-a) f, requiring j/g > 0 across the grid.
RateResult natural_renyi_rate(const SpectralDensity& f, const SpectralDensity& g,
                              const AlphaOrder& a, int grid = 4096);

/// Finite-block oracle: builds n x n Toeplitz covariances from the spectral
/// densities, evaluates the multivariate-Gaussian closed form for the
/// requested measure, and divides by n. Converges to the corresponding rate
/// as n grows.
double toeplitz_rate_oracle(const SpectralDensity& f, const SpectralDensity& g,
                            Measure measure, const AlphaOrder& a, int n,
                            int grid = 4096);

}  // namespace xent::gp
