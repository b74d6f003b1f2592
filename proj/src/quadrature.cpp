#include "xent/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

namespace xent {

namespace {

constexpr double kHalfPi = 1.57079632679489661923132169163975144;

// Gauss-Kronrod 7/15 nodes and weights (QUADPACK dqk15 constants). The
// 7-point Gauss rule sits on the odd-indexed Kronrod abscissae.
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
};

// The tanh-sinh / exp-sinh / sinh-sinh maps run over u in (-kU, kU); beyond
// that the double arithmetic saturates (e^{2w} with w = (pi/2) sinh u passes
// the largest finite double near |u| = 6.1).
constexpr double kU = 6.1;

struct Interval {
    double lo, hi;
    double value;
    double error;
    bool blown;           // a node evaluated non-finite
    std::uint64_t order;  // insertion index for deterministic tie-breaks
};

struct WorseError {
    bool operator()(const Interval& a, const Interval& b) const {
        if (a.error != b.error) return a.error < b.error;
        return a.order > b.order;  // older first on ties
    }
};

// One K15 application on [lo, hi]. Returns false when a node value is not
// finite (overflowing integrand).
bool k15(const std::function<double(double)>& f, double lo, double hi,
         double& value, double& error) {
    const double center = 0.5 * (lo + hi);
    const double half = 0.5 * (hi - lo);
    double fv[15];
    bool finite = true;
    auto eval = [&](double t) {
        const double v = f(t);
        if (!std::isfinite(v)) finite = false;
        return v;
    };
    const double fc = eval(center);
    double resg = kWg[3] * fc;
    double resk = kWgk[7] * fc;
    double resabs = kWgk[7] * std::fabs(fc);
    fv[7] = fc;
    for (int j = 0; j < 7; ++j) {
        const double dx = half * kXgk[j];
        const double f1 = eval(center - dx);
        const double f2 = eval(center + dx);
        fv[j] = f1;
        fv[14 - j] = f2;
        resk += kWgk[j] * (f1 + f2);
        resabs += kWgk[j] * (std::fabs(f1) + std::fabs(f2));
        if (j % 2 == 1) resg += kWg[j / 2] * (f1 + f2);
    }
    if (!finite) {
        value = 0.0;
        error = std::numeric_limits<double>::max();
        return false;
    }
    const double reskh = 0.5 * resk;
    double resasc = kWgk[7] * std::fabs(fc - reskh);
    for (int j = 0; j < 7; ++j)
        resasc += kWgk[j] * (std::fabs(fv[j] - reskh) + std::fabs(fv[14 - j] - reskh));
    value = resk * half;
    resabs *= std::fabs(half);
    resasc *= std::fabs(half);
    double err = std::fabs((resk - resg) * half);
    if (resasc != 0.0 && err != 0.0)
        err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    const double eps50 = 50.0 * std::numeric_limits<double>::epsilon();
    if (resabs > std::numeric_limits<double>::min() / eps50)
        err = std::max(err, eps50 * resabs);
    error = err;
    return true;
}

// Station test at the two double-exponential ends. An integrable transformed
// integrand decays double-exponentially toward |u| = kU; anything flat or
// growing there corresponds to a non-integrable original integrand.
void check_de_divergence(const std::function<double(double)>& g) {
    for (double sign : {-1.0, 1.0}) {
        const double a = std::fabs(g(sign * 4.0));
        const double b = std::fabs(g(sign * 5.0));
        const double c = std::fabs(g(sign * 6.0));
        if (std::isinf(b) || std::isinf(c))
            throw DivergentIntegral("integrand overflows toward a support endpoint");
        if (c > 1e-290 && c >= 0.3 * a && b >= 0.1 * a)
            throw DivergentIntegral(
                "integrand fails to decay toward a support endpoint");
    }
}

QuadResult adapt(const std::function<double(double)>& g, const QuadratureSpec& spec) {
    spec.check();
    check_de_divergence(g);
    const double lo = -kU;
    const double hi = kU;

    std::vector<Interval> heap;
    const WorseError cmp;
    std::uint64_t order = 0;
    {
        Interval root{lo, hi, 0, 0, false, order++};
        root.blown = !k15(g, root.lo, root.hi, root.value, root.error);
        heap.push_back(root);
    }

    auto totals = [&heap](double& value, double& error) {
        value = 0.0;
        error = 0.0;
        for (const Interval& iv : heap) {
            value += iv.value;
            error = iv.blown ? std::numeric_limits<double>::max()
                             : (error == std::numeric_limits<double>::max()
                                    ? error
                                    : error + iv.error);
        }
    };
    auto tolerance = [&](double value) {
        return std::max(spec.abs_tol, spec.rel_tol * std::fabs(value));
    };

    int subdivisions = 1;
    std::vector<double> stage_estimates;
    const double width0 = hi - lo;
    double total_value, total_error;
    totals(total_value, total_error);
    stage_estimates.push_back(std::fabs(total_value));

    while (total_error > tolerance(total_value) &&
           subdivisions < spec.max_subdivisions) {
        std::pop_heap(heap.begin(), heap.end(), cmp);
        Interval worst = heap.back();
        heap.pop_back();
        if (worst.blown && (worst.hi - worst.lo) < 1e-13 * width0)
            throw DivergentIntegral("integrand overflows on a vanishing interval");
        const double mid = 0.5 * (worst.lo + worst.hi);
        Interval left{worst.lo, mid, 0, 0, false, order++};
        Interval right{mid, worst.hi, 0, 0, false, order++};
        left.blown = !k15(g, left.lo, left.hi, left.value, left.error);
        right.blown = !k15(g, right.lo, right.hi, right.value, right.error);
        heap.push_back(left);
        std::push_heap(heap.begin(), heap.end(), cmp);
        heap.push_back(right);
        std::push_heap(heap.begin(), heap.end(), cmp);
        ++subdivisions;
        totals(total_value, total_error);
        if (subdivisions % 100 == 0) stage_estimates.push_back(std::fabs(total_value));
    }

    if (total_error > tolerance(total_value)) {
        // Budget exhausted: steady growth of the running estimate marks a
        // divergent integral rather than slow convergence.
        if (stage_estimates.size() >= 6) {
            bool growing = true;
            const std::size_t n = stage_estimates.size();
            for (std::size_t i = n - 5; i < n; ++i)
                if (stage_estimates[i] <= stage_estimates[i - 1] * 1.01) growing = false;
            if (growing)
                throw DivergentIntegral("integral estimate grows without stabilizing");
        }
        throw NonConvergent("quadrature did not reach tolerance in " +
                            std::to_string(spec.max_subdivisions) + " subdivisions");
    }
    return {total_value, total_error, subdivisions};
}

// sigma(u) in (0,1) and its complement, computed from the logistic form so
// both stay exact down to denormals; jac = d sigma / du.
struct TanhSinhPoint {
    double sigma;
    double one_minus_sigma;
    double jac;
};

TanhSinhPoint tanh_sinh_point(double u) {
    const double w = kHalfPi * std::sinh(u);
    const double s = 1.0 / (1.0 + std::exp(-2.0 * w));
    const double os = 1.0 / (1.0 + std::exp(2.0 * w));
    const double jac = 2.0 * kHalfPi * std::cosh(u) * s * os;
    return {s, os, jac};
}

}  // namespace

QuadResult integrate_finite(const std::function<double(double)>& f, double lo,
                            double hi, const QuadratureSpec& spec) {
    if (!(lo < hi) || !std::isfinite(lo) || !std::isfinite(hi))
        throw InvalidParameters("integrate_finite: need finite lo < hi");
    const double span = hi - lo;
    auto g = [&f, lo, span](double u) {
        const auto p = tanh_sinh_point(u);
        if (p.jac == 0.0) return 0.0;
        const double x = lo + span * p.sigma;
        return f(x) * span * p.jac;
    };
    return adapt(g, spec);
}

QuadResult integrate_over_support(const Integrand& f, const Support& support,
                                  const QuadratureSpec& spec) {
    const bool lo_finite = std::isfinite(support.lo);
    const bool hi_finite = std::isfinite(support.hi);
    const double inf = std::numeric_limits<double>::infinity();

    if (lo_finite && hi_finite) {
        const double lo = support.lo, span = support.hi - support.lo;
        auto g = [&f, lo, span](double u) {
            const auto p = tanh_sinh_point(u);
            if (p.jac == 0.0) return 0.0;
            const double dlo = span * p.sigma;
            const double dhi = span * p.one_minus_sigma;
            const double x = p.sigma <= 0.5 ? lo + dlo : lo + span - dhi;
            return f(x, dlo, dhi) * span * p.jac;
        };
        return adapt(g, spec);
    }
    if (lo_finite && !hi_finite) {
        // exp-sinh: x = lo + e^{2w}, dx = 2 w'(u) e^{2w} du.
        const double lo = support.lo;
        auto g = [&f, lo, inf](double u) {
            const double w = kHalfPi * std::sinh(u);
            const double dlo = std::exp(2.0 * w);
            const double jac = 2.0 * kHalfPi * std::cosh(u) * dlo;
            if (dlo == 0.0 || !std::isfinite(jac)) return 0.0;
            return f(lo + dlo, dlo, inf) * jac;
        };
        return adapt(g, spec);
    }
    if (!lo_finite && !hi_finite) {
        // sinh-sinh: x = sinh(2w), dx = 2 w'(u) cosh(2w) du.
        auto g = [&f, inf](double u) {
            const double w = kHalfPi * std::sinh(u);
            const double x = std::sinh(2.0 * w);
            const double jac = 2.0 * kHalfPi * std::cosh(u) * std::cosh(2.0 * w);
            if (!std::isfinite(x) || !std::isfinite(jac)) return 0.0;
            return f(x, inf, inf) * jac;
        };
        return adapt(g, spec);
    }
    throw InvalidParameters("integrate_over_support: unsupported interval shape");
}

}  // namespace xent
