#include "xent/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "xent/rng.hpp"
#include "xent/special.hpp"

namespace xent::oracle {

namespace {

constexpr double kAlphaGuard = 1e-3;

void check_alpha(const AlphaOrder& a) {
    if (a.is_shannon())
        throw InvalidParameters("use quad_shannon_xent for the Shannon limit");
    if (std::fabs(a.value() - 1.0) < kAlphaGuard)
        throw InvalidParameters(
            "oracle refuses |alpha - 1| < 1e-3 (ill-conditioned integral form)");
}

Support common_support(const FamilyDescriptor& f1, const FamilyDescriptor& f2,
                       bool need_f1_inside_f2) {
    const Support s1 = f1.support();
    const Support s2 = f2.support();
    if (need_f1_inside_f2 && (s1.lo < s2.lo || s1.hi > s2.hi))
        throw SupportMismatch("support of f1 is not contained in support of f2");
    Support s;
    s.lo = std::max(s1.lo, s2.lo);
    s.hi = std::min(s1.hi, s2.hi);
    s.lo_closed = false;
    if (!(s.lo < s.hi)) throw SupportMismatch("disjoint supports");
    return s;
}

// Log-density evaluator against the common integration interval: shifts the
// endpoint distances to the family's own support so distance-consuming
// densities stay exact, even when the two supports differ.
struct LogDensity {
    const FamilyDescriptor* d;
    double lo_shift;  // family lo -> interval lo offset (inf for infinite lo)
    double hi_shift;

    LogDensity(const FamilyDescriptor& fam, const Support& interval) : d(&fam) {
        const Support own = fam.support();
        lo_shift = std::isfinite(own.lo)
                       ? interval.lo - own.lo
                       : std::numeric_limits<double>::infinity();
        hi_shift = std::isfinite(own.hi)
                       ? own.hi - interval.hi
                       : std::numeric_limits<double>::infinity();
    }

    double operator()(double x, double dlo, double dhi) const {
        return detail::log_pdf_prevalidated(*d, x, dlo + lo_shift, dhi + hi_shift);
    }
};

void check_univariate(const FamilyDescriptor& f1, const FamilyDescriptor& f2) {
    ensure_valid(f1);
    ensure_valid(f2);
    if (f1.multivariate() || f2.multivariate())
        throw InvalidParameters("quadrature oracle covers univariate families; "
                                "use the Monte Carlo oracle for multivariate pairs");
}

// ---------------------------------------------------------------------------
// Monte Carlo machinery for multivariate Gaussians.
// ---------------------------------------------------------------------------

std::vector<double> sample_gaussian(const std::vector<double>& mean,
                                    const linalg::Matrix& chol, Rng& rng) {
    const std::size_t n = mean.size();
    std::vector<double> z(n), x(mean);
    for (auto& v : z) v = rng.normal();
    for (std::size_t i = 0; i < n; ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j <= i; ++j) s += chol(i, j) * z[j];
        x[i] += s;
    }
    return x;
}

struct BatchStats {
    double mean = 0.0;
    double std_error = 0.0;
    bool heavy_tail = false;  // one draw dominates the sum
};

// Batch-means estimate of E[w(X)] with X drawn by `draw`. 100 equal batches.
template <typename Draw, typename Weight>
BatchStats batch_mc(std::size_t n, Draw&& draw, Weight&& weight) {
    constexpr std::size_t kBatches = 100;
    const std::size_t per_batch = std::max<std::size_t>(1, n / kBatches);
    const std::size_t used = per_batch * kBatches;
    std::vector<double> means(kBatches, 0.0);
    double max_w = 0.0, total = 0.0;
    for (std::size_t b = 0; b < kBatches; ++b) {
        double s = 0.0;
        for (std::size_t i = 0; i < per_batch; ++i) {
            const double w = weight(draw());
            s += w;
            max_w = std::max(max_w, std::fabs(w));
        }
        means[b] = s / static_cast<double>(per_batch);
        total += s;
    }
    BatchStats st;
    st.mean = total / static_cast<double>(used);
    double var = 0.0;
    for (double m : means) var += (m - st.mean) * (m - st.mean);
    var /= static_cast<double>(kBatches - 1);
    st.std_error = std::sqrt(var / static_cast<double>(kBatches));
    st.heavy_tail = used >= 10000 && total > 0.0 && max_w > 0.1 * total;
    return st;
}

struct WeightedTarget {
    const FamilyDescriptor* f;
    double power;
};

// E_s[ exp(sum_j power_j * ln f_j(X)) / s(X) ] under a Gaussian proposal.
McResult mc_weighted_integral(const std::vector<WeightedTarget>& targets,
                              const std::vector<double>& prop_mean,
                              const linalg::Matrix& prop_cov, double log_map_scale,
                              std::size_t n, std::uint64_t seed) {
    const auto chol = linalg::cholesky(prop_cov);
    if (!chol) throw NotPositiveDefinite("mc proposal covariance not positive definite");
    const FamilyDescriptor proposal =
        FamilyDescriptor::gaussian_multi(prop_mean, prop_cov);
    Rng rng(seed);
    auto draw = [&] { return sample_gaussian(prop_mean, *chol, rng); };
    auto weight = [&](const std::vector<double>& x) {
        double lp = -log_pdf(proposal, x);
        for (const auto& t : targets) lp += t.power * log_pdf(*t.f, x);
        return std::exp(lp);
    };
    const BatchStats st = batch_mc(n, draw, weight);
    McResult r;
    r.samples = n;
    r.infinite_variance_suspect = st.heavy_tail;
    if (!(st.mean > 0.0) || !std::isfinite(st.mean))
        throw DivergentIntegral("monte carlo integral estimate not positive/finite");
    r.estimate = std::log(st.mean) * log_map_scale;
    r.std_error = std::fabs(log_map_scale) * st.std_error / st.mean;
    return r;
}

// Precision-mixture Gaussian used as the exact carrier of a product of
// Gaussian powers; covariance doubled so the weights have finite variance
// whenever the mixture itself is positive definite.
struct GaussianMixtureCarrier {
    std::vector<double> mean;
    linalg::Matrix cov2;  // 2 * Lambda^-1
};

GaussianMixtureCarrier mixture_carrier(const std::vector<WeightedTarget>& targets) {
    const std::size_t n = targets.front().f->dimension();
    linalg::Matrix lambda(n, n);
    std::vector<double> v(n, 0.0);
    for (const auto& t : targets) {
        const auto chol = linalg::cholesky(t.f->covariance());
        const auto inv = linalg::cholesky_inverse(*chol);
        const auto im = linalg::matvec(inv, t.f->mean_vector());
        for (std::size_t i = 0; i < n; ++i) {
            v[i] += t.power * im[i];
            for (std::size_t j = 0; j < n; ++j) lambda(i, j) += t.power * inv(i, j);
        }
    }
    const auto chol = linalg::cholesky(lambda);
    if (!chol)
        throw DivergentIntegral(
            "precision mixture not positive definite; integral diverges");
    GaussianMixtureCarrier c;
    c.mean = linalg::cholesky_solve(*chol, v);
    c.cov2 = linalg::cholesky_inverse(*chol);
    for (auto& x : c.cov2.data()) x *= 2.0;
    return c;
}

McResult mc_gaussian_power_integral(const std::vector<WeightedTarget>& targets,
                                    double log_map_scale, std::size_t n,
                                    std::uint64_t seed) {
    const auto carrier = mixture_carrier(targets);
    return mc_weighted_integral(targets, carrier.mean, carrier.cov2, log_map_scale, n,
                                seed);
}

void check_mv_pair(const FamilyDescriptor& f1, const FamilyDescriptor& f2) {
    ensure_valid(f1);
    ensure_valid(f2);
    if (!f1.multivariate() || !f2.multivariate() ||
        f1.dimension() != f2.dimension())
        throw InvalidParameters("monte carlo oracle expects two multivariate "
                                "gaussians of equal dimension");
}

McResult mc_shannon_multivariate(const FamilyDescriptor& f1, const FamilyDescriptor& f2,
                                 std::size_t n, std::uint64_t seed) {
    check_mv_pair(f1, f2);
    const auto chol = linalg::cholesky(f1.covariance());
    Rng rng(seed);
    auto draw = [&] { return sample_gaussian(f1.mean_vector(), *chol, rng); };
    auto weight = [&](const std::vector<double>& x) { return -log_pdf(f2, x); };
    const BatchStats st = batch_mc(n, draw, weight);
    McResult r;
    r.samples = n;
    r.estimate = st.mean;
    r.std_error = st.std_error;
    r.infinite_variance_suspect = st.heavy_tail;
    return r;
}

}  // namespace

double quad_renyi_xent(const FamilyDescriptor& f1, const FamilyDescriptor& f2,
                       const AlphaOrder& a, const QuadratureSpec& spec) {
    check_univariate(f1, f2);
    check_alpha(a);
    const double alpha = a.value();
    if (alpha < 1.0 && !(f2.support().lo <= f1.support().lo &&
                         f1.support().hi <= f2.support().hi))
        throw DivergentIntegral(
            "alpha < 1 with f1 support escaping f2 support: integrand unbounded");
    const Support sup = common_support(f1, f2, false);
    const LogDensity lp1(f1, sup), lp2(f2, sup);
    auto integrand = [&](double x, double dlo, double dhi) {
        return std::exp(lp1(x, dlo, dhi) + (alpha - 1.0) * lp2(x, dlo, dhi));
    };
    const double integral = integrate_over_support(integrand, sup, spec).value;
    return std::log(integral) / (1.0 - alpha);
}

double quad_shannon_xent(const FamilyDescriptor& f1, const FamilyDescriptor& f2,
                         const QuadratureSpec& spec) {
    check_univariate(f1, f2);
    const Support sup = common_support(f1, f2, true);
    const LogDensity lp1(f1, sup), lp2(f2, sup);
    auto integrand = [&](double x, double dlo, double dhi) {
        const double p = std::exp(lp1(x, dlo, dhi));
        return p == 0.0 ? 0.0 : -p * lp2(x, dlo, dhi);
    };
    return integrate_over_support(integrand, sup, spec).value;
}

double quad_renyi_divergence(const FamilyDescriptor& f1, const FamilyDescriptor& f2,
                             const AlphaOrder& a, const QuadratureSpec& spec) {
    check_univariate(f1, f2);
    check_alpha(a);
    const double alpha = a.value();
    if (alpha > 1.0 && !(f2.support().lo <= f1.support().lo &&
                         f1.support().hi <= f2.support().hi))
        throw DivergentIntegral(
            "alpha > 1 with f1 support escaping f2 support: divergence infinite");
    const Support sup = common_support(f1, f2, false);
    const LogDensity lp1(f1, sup), lp2(f2, sup);
    auto integrand = [&](double x, double dlo, double dhi) {
        return std::exp(alpha * lp1(x, dlo, dhi) + (1.0 - alpha) * lp2(x, dlo, dhi));
    };
    const double integral = integrate_over_support(integrand, sup, spec).value;
    return std::log(integral) / (alpha - 1.0);
}

double quad_renyi_entropy(const FamilyDescriptor& f, const AlphaOrder& a,
                          const QuadratureSpec& spec) {
    check_univariate(f, f);
    check_alpha(a);
    const double alpha = a.value();
    const Support sup = f.support();
    const LogDensity lp(f, sup);
    auto integrand = [&](double x, double dlo, double dhi) {
        return std::exp(alpha * lp(x, dlo, dhi));
    };
    const double integral = integrate_over_support(integrand, sup, spec).value;
    return std::log(integral) / (1.0 - alpha);
}

McResult mc_renyi_xent_multivariate(const FamilyDescriptor& f1,
                                    const FamilyDescriptor& f2, const AlphaOrder& a,
                                    std::size_t n_samples, std::uint64_t seed) {
    check_mv_pair(f1, f2);
    check_alpha(a);
    const double alpha = a.value();
    const auto chol = linalg::cholesky(f1.covariance());
    Rng rng(seed);
    auto draw = [&] { return sample_gaussian(f1.mean_vector(), *chol, rng); };
    auto weight = [&](const std::vector<double>& x) {
        return std::exp((alpha - 1.0) * log_pdf(f2, x));
    };
    const BatchStats st = batch_mc(n_samples, draw, weight);
    McResult r;
    r.samples = n_samples;
    r.infinite_variance_suspect = st.heavy_tail;
    if (!(st.mean > 0.0) || !std::isfinite(st.mean))
        throw DivergentIntegral("monte carlo integral estimate not positive/finite");
    r.estimate = std::log(st.mean) / (1.0 - alpha);
    r.std_error = st.std_error / (std::fabs(1.0 - alpha) * st.mean);
    return r;
}

const char* verdict_name(Verdict v) {
    switch (v) {
        case Verdict::PASS: return "PASS";
        case Verdict::FAIL: return "FAIL";
        case Verdict::UNDEFINED: return "UNDEFINED";
    }
    return "?";
}

OracleReport certify(Measure measure, const FamilyDescriptor& f1,
                     const FamilyDescriptor& f2, const AlphaOrder& a,
                     std::optional<double> closed_value,
                     const CertifySettings& settings) {
    OracleReport rep;
    rep.measure = measure;
    rep.closed_form_value = closed_value;
    rep.abs_err = std::numeric_limits<double>::quiet_NaN();
    rep.rel_err = std::numeric_limits<double>::quiet_NaN();

    bool oracle_diverged = false;
    try {
        if (f1.multivariate()) {
            McResult mc;
            switch (measure) {
                case Measure::Renyi:
                case Measure::RenyiEntropy: {
                    const double alpha = a.is_shannon() ? 1.0 : a.value();
                    if (a.is_shannon()) {
                        mc = mc_shannon_multivariate(f1, f2, settings.mc_samples,
                                                     settings.seed);
                    } else {
                        mc = mc_gaussian_power_integral(
                            {{&f1, 1.0}, {&f2, alpha - 1.0}}, 1.0 / (1.0 - alpha),
                            settings.mc_samples, settings.seed);
                    }
                    break;
                }
                case Measure::NaturalRenyi: {
                    if (a.is_shannon()) {
                        mc = mc_shannon_multivariate(f1, f2, settings.mc_samples,
                                                     settings.seed);
                        break;
                    }
                    const double alpha = a.value();
                    const McResult div = mc_gaussian_power_integral(
                        {{&f1, alpha}, {&f2, 1.0 - alpha}}, 1.0 / (alpha - 1.0),
                        settings.mc_samples, settings.seed);
                    const McResult ent = mc_gaussian_power_integral(
                        {{&f1, alpha}}, 1.0 / (1.0 - alpha), settings.mc_samples,
                        settings.seed + 1);
                    mc.estimate = div.estimate + ent.estimate;
                    mc.std_error = std::sqrt(div.std_error * div.std_error +
                                             ent.std_error * ent.std_error);
                    mc.infinite_variance_suspect =
                        div.infinite_variance_suspect || ent.infinite_variance_suspect;
                    mc.samples = div.samples + ent.samples;
                    break;
                }
                case Measure::Shannon:
                    mc = mc_shannon_multivariate(f1, f2, settings.mc_samples,
                                                 settings.seed);
                    break;
            }
            rep.oracle_value = mc.estimate;
            rep.mc_std_error = mc.std_error;
            if (mc.infinite_variance_suspect) rep.note += "[mc heavy tail]";
        } else {
            switch (measure) {
                case Measure::Renyi:
                case Measure::RenyiEntropy:
                    rep.oracle_value = a.is_shannon()
                                           ? quad_shannon_xent(f1, f2, settings.quad)
                                           : quad_renyi_xent(f1, f2, a, settings.quad);
                    break;
                case Measure::NaturalRenyi:
                    rep.oracle_value =
                        a.is_shannon()
                            ? quad_shannon_xent(f1, f2, settings.quad)
                            : quad_renyi_divergence(f1, f2, a, settings.quad) +
                                  quad_renyi_entropy(f1, a, settings.quad);
                    break;
                case Measure::Shannon:
                    rep.oracle_value = quad_shannon_xent(f1, f2, settings.quad);
                    break;
            }
        }
    } catch (const DivergentIntegral& e) {
        oracle_diverged = true;
        rep.note += std::string("[oracle divergent: ") + e.what() + "]";
    } catch (const SupportMismatch& e) {
        oracle_diverged = true;
        rep.note += std::string("[oracle support mismatch: ") + e.what() + "]";
    } catch (const NonConvergent& e) {
        rep.note += std::string("[oracle non-convergent: ") + e.what() + "]";
    } catch (const Error& e) {
        rep.note += std::string("[oracle error: ") + e.what() + "]";
    }

    if (!closed_value && (oracle_diverged || !rep.oracle_value)) {
        // Closed form reported a violated constraint and the oracle could not
        // produce a finite value either: consistently undefined.
        rep.verdict = oracle_diverged ? Verdict::UNDEFINED : Verdict::FAIL;
        if (!oracle_diverged) rep.note += "[oracle inconclusive on undefined input]";
        return rep;
    }
    if (!closed_value || !rep.oracle_value) {
        rep.verdict = Verdict::FAIL;
        rep.note += "[closed form and oracle disagree on definedness]";
        return rep;
    }

    rep.abs_err = std::fabs(*closed_value - *rep.oracle_value);
    rep.rel_err = rep.abs_err / std::max(std::fabs(*rep.oracle_value),
                                         std::numeric_limits<double>::min());
    bool pass;
    if (rep.mc_std_error) {
        pass = rep.abs_err <= std::max(3.0 * *rep.mc_std_error, settings.abs_floor);
    } else {
        pass = rep.abs_err <= settings.abs_floor || rep.rel_err <= settings.rel_threshold;
    }
    rep.verdict = pass ? Verdict::PASS : Verdict::FAIL;
    return rep;
}

}  // namespace xent::oracle
