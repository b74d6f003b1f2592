#include "xent/gaussian_process.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "xent/special.hpp"

namespace xent::gp {

namespace {

constexpr double kTwoPi = 2.0 * special::kPi;

double grid_floor_and_checks(const std::function<double(double)>& f, int n) {
    double floor = std::numeric_limits<double>::infinity();
    for (int i = 0; i < n; ++i) {
        const double lam = kTwoPi * i / n;
        const double v = f(lam);
        if (!std::isfinite(v) || v < 0.0)
            throw InvalidParameters("spectral density must be finite and >= 0 "
                                    "(failed at lambda = " + std::to_string(lam) + ")");
        const double vm = f(kTwoPi - lam);
        const double scale = std::max({1.0, std::fabs(v), std::fabs(vm)});
        if (std::fabs(v - vm) > 1e-7 * scale)
            throw InvalidParameters("spectral density must be symmetric about pi "
                                    "(failed at lambda = " + std::to_string(lam) + ")");
        floor = std::min(floor, v);
    }
    return floor;
}

// Periodic trapezoid rule (equals the rectangle rule) over [0, 2pi] with a
// half-grid Richardson error estimate.
double periodic_integral(const std::function<double(double)>& h, int n) {
    double full = 0.0, half = 0.0;
    for (int i = 0; i < n; ++i) {
        const double v = h(kTwoPi * i / n);
        if (!std::isfinite(v)) throw DivergentIntegral("rate integrand not finite");
        full += v;
        if (i % 2 == 0) half += v;
    }
    full *= kTwoPi / n;
    half *= kTwoPi / (n / 2);
    const double err = std::fabs(full - half) / 3.0;
    if (err > 1e-6 * std::max(1.0, std::fabs(full)))
        throw NonConvergent("rate integral Richardson estimate too large; "
                            "increase the grid size");
    return full;
}

[[noreturn]] void violated(const char* name, double value, double lambda) {
    std::ostringstream os;
    os << name << " at lambda = " << lambda;
    throw ConstraintViolated(os.str(), value);
}

}  // namespace

SpectralDensity SpectralDensity::white(double s2) {
    if (!(s2 > 0.0)) throw InvalidParameters("white spectrum requires s2 > 0");
    return from_function([s2](double) { return s2; }, 16);
}

SpectralDensity SpectralDensity::ar1(double rho, double s2) {
    if (!(s2 > 0.0) || !(std::fabs(rho) < 1.0))
        throw InvalidParameters("ar1 spectrum requires s2 > 0 and |rho| < 1");
    return from_function(
        [rho, s2](double lam) {
            return s2 / (1.0 - 2.0 * rho * std::cos(lam) + rho * rho);
        });
}

SpectralDensity SpectralDensity::from_function(std::function<double(double)> f,
                                               int check_grid) {
    const double floor = grid_floor_and_checks(f, std::max(4, check_grid));
    return SpectralDensity(std::move(f), floor);
}

SpectralDensity SpectralDensity::from_table(std::vector<std::pair<double, double>> pts) {
    if (pts.size() < 2) throw ParseError("spectral table needs at least two rows");
    std::sort(pts.begin(), pts.end());
    auto eval = [pts = std::move(pts)](double lam) {
        if (lam <= pts.front().first) return pts.front().second;
        if (lam >= pts.back().first) return pts.back().second;
        auto hi = std::upper_bound(pts.begin(), pts.end(),
                                   std::make_pair(lam, std::numeric_limits<double>::max()));
        auto lo = hi - 1;
        const double t = (lam - lo->first) / (hi->first - lo->first);
        return lo->second + t * (hi->second - lo->second);
    };
    return from_function(std::move(eval));
}

RateResult shannon_rate(const SpectralDensity& f, const SpectralDensity& g, int grid) {
    RateResult r;
    r.measure = Measure::Shannon;
    r.grid_size = grid;
    r.constraint_min = std::numeric_limits<double>::infinity();
    for (int i = 0; i < grid; ++i) {
        const double lam = kTwoPi * i / grid;
        const double gv = g(lam);
        if (gv < r.constraint_min) r.constraint_min = gv;
        if (!(gv > 0.0)) violated("g(lambda) > 0", gv, lam);
    }
    const double integral = periodic_integral(
        [&](double lam) { return std::log(g(lam)) + f(lam) / g(lam); }, grid);
    r.value = 0.5 * std::log(kTwoPi) + integral / (4.0 * special::kPi);
    return r;
}

RateResult renyi_rate(const SpectralDensity& f, const SpectralDensity& g,
                      const AlphaOrder& a, int grid) {
    if (a.is_shannon()) return shannon_rate(f, g, grid);
    const double alpha = a.value();
    RateResult r;
    r.measure = Measure::Renyi;
    r.grid_size = grid;
    r.constraint_min = std::numeric_limits<double>::infinity();
    for (int i = 0; i < grid; ++i) {
        const double lam = kTwoPi * i / grid;
        const double gv = g(lam);
        const double mv = gv + (alpha - 1.0) * f(lam);
        const double ratio = gv / mv;
        if (ratio < r.constraint_min) r.constraint_min = ratio;
        if (!(gv > 0.0) || !(mv > 0.0))
            violated("g(lambda)/h(lambda) > 0", ratio, lam);
    }
    const double integral = periodic_integral(
        [&](double lam) {
            const double gv = g(lam);
            const double mv = gv + (alpha - 1.0) * f(lam);
            return (2.0 - alpha) * std::log(gv) - std::log(mv);
        },
        grid);
    r.value = 0.5 * std::log(kTwoPi) + integral / (4.0 * special::kPi * (1.0 - alpha));
    return r;
}

RateResult natural_renyi_rate(const SpectralDensity& f, const SpectralDensity& g,
                              const AlphaOrder& a, int grid) {
    if (a.is_shannon()) return shannon_rate(f, g, grid);
    const double alpha = a.value();
    RateResult r;
    r.measure = Measure::NaturalRenyi;
    r.grid_size = grid;
    r.constraint_min = std::numeric_limits<double>::infinity();
    for (int i = 0; i < grid; ++i) {
        const double lam = kTwoPi * i / grid;
        const double gv = g(lam);
        const double jv = alpha * gv + (1.0 - alpha) * f(lam);
        const double ratio = jv / gv;
        if (ratio < r.constraint_min) r.constraint_min = ratio;
        if (!(gv > 0.0) || !(jv > 0.0))
            violated("j(lambda)/g(lambda) > 0", ratio, lam);
    }
    const double integral = periodic_integral(
        [&](double lam) {
            const double gv = g(lam);
            const double jv = alpha * gv + (1.0 - alpha) * f(lam);
            return std::log(jv) - alpha * std::log(gv);
        },
        grid);
    r.value = 0.5 * std::log(kTwoPi) + 0.5 * std::log(alpha) / (alpha - 1.0) +
              integral / (4.0 * special::kPi * (1.0 - alpha));
    return r;
}

double toeplitz_rate_oracle(const SpectralDensity& f, const SpectralDensity& g,
                            Measure measure, const AlphaOrder& a, int n, int grid) {
    if (n < 1) throw InvalidParameters("toeplitz oracle requires n >= 1");
    // Autocovariances c_k = (1/2pi) Int f(l) cos(kl) dl on the same grid.
    auto autocov = [&](const SpectralDensity& s) {
        std::vector<double> c(n, 0.0);
        std::vector<double> vals(grid);
        for (int i = 0; i < grid; ++i) vals[i] = s(kTwoPi * i / grid);
        for (int k = 0; k < n; ++k) {
            double acc = 0.0;
            for (int i = 0; i < grid; ++i)
                acc += vals[i] * std::cos(k * kTwoPi * i / grid);
            c[k] = acc / grid;
        }
        return c;
    };
    auto toeplitz = [&](const std::vector<double>& c) {
        linalg::Matrix m(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) m(i, j) = c[std::abs(i - j)];
        return m;
    };
    const linalg::Matrix sf = toeplitz(autocov(f));
    const linalg::Matrix sg = toeplitz(autocov(g));
    if (!linalg::cholesky(sf) || !linalg::cholesky(sg))
        throw NotPositiveDefinite("toeplitz covariance failed to factor; spectral "
                                  "density inconsistent or grid too coarse");
    const std::vector<double> zero(n, 0.0);
    const auto df = FamilyDescriptor::gaussian_multi(zero, sf);
    const auto dg = FamilyDescriptor::gaussian_multi(zero, sg);
    double block;
    switch (measure) {
        case Measure::Renyi:
        case Measure::RenyiEntropy:
            block = renyi_xent(df, dg, a).value;
            break;
        case Measure::NaturalRenyi:
            block = natural_renyi_xent(df, dg, a).value;
            break;
        case Measure::Shannon:
            block = shannon_xent(df, dg).value;
            break;
        default:
            throw InvalidParameters("toeplitz oracle: unsupported measure");
    }
    return block / n;
}

}  // namespace xent::gp
