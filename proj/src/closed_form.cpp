#include "xent/closed_form.hpp"

#include <cmath>

#include "xent/quadrature.hpp"
#include "xent/special.hpp"

namespace xent {

namespace {

using special::digamma;
using special::kEulerGamma;
using special::kLn2Pi;
using special::kPi;
using special::lbeta;
using special::lgamma;

// Log-normalizers in classical parameters, one per host parameterization.
double A_chi(double k, double s2) {
    return (1.0 - 0.5 * k) * std::log(2.0) - 0.5 * k * std::log(s2) - lgamma(0.5 * k);
}
double A_gamma(double k, double theta) {
    return -k * std::log(theta) - lgamma(k);
}
double A_maxwell(double s2) {
    return 0.5 * (std::log(2.0) - std::log(kPi)) - 1.5 * std::log(s2);
}
double A_rayleigh(double s2) { return -std::log(s2); }

void check_pair(const FamilyDescriptor& f1, const FamilyDescriptor& f2) {
    ensure_valid(f1);
    ensure_valid(f2);
    if (f1.tag() != f2.tag())
        throw FamilyMismatch(std::string("family mismatch: ") + family_name(f1.tag()) +
                             " vs " + family_name(f2.tag()));
    if (f1.multivariate() && f1.dimension() != f2.dimension())
        throw FamilyMismatch("multivariate gaussian dimension mismatch");
    const auto c1 = f1.shared_constant();
    const auto c2 = f2.shared_constant();
    if (c1 && c2) {
        const double scale = std::max({1.0, std::fabs(*c1), std::fabs(*c2)});
        if (std::fabs(*c1 - *c2) > 1e-12 * scale)
            throw FamilyMismatch(std::string(family_name(f1.tag())) +
                                 ": shared parameter must match across the pair");
    }
}

void require(XentResult& r, const char* name, double v) {
    r.put(name, v);
    r.constraint_keys.push_back(name);
    if (!(v > 0.0)) throw ConstraintViolated(std::string(name) + " > 0", v);
}

// Multivariate Gaussian helpers.
struct MvParts {
    linalg::Matrix inv;      // Sigma^-1
    double logdet;           // ln |Sigma|
};

MvParts mv_parts(const FamilyDescriptor& d) {
    const auto chol = linalg::cholesky(d.covariance());
    return {linalg::cholesky_inverse(*chol), linalg::logdet_from_cholesky(*chol)};
}

// ---------------------------------------------------------------------------
// Renyi differential cross-entropy, per family.
// ---------------------------------------------------------------------------
double renyi_value(const FamilyDescriptor& f1, const FamilyDescriptor& f2,
                   double alpha, XentResult& r) {
    const double am1 = alpha - 1.0;
    const double om = 1.0 - alpha;
    switch (f1.tag()) {
        case FamilyTag::Beta: {
            const double a1 = f1.param(0), b1 = f1.param(1);
            const double a2 = f2.param(0), b2 = f2.param(1);
            const double ah = a1 + am1 * (a2 - 1.0);
            const double bh = b1 + am1 * (b2 - 1.0);
            require(r, "a_h", ah);
            require(r, "b_h", bh);
            return lbeta(a2, b2) + (lbeta(ah, bh) - lbeta(a1, b1)) / om;
        }
        case FamilyTag::ChiScaled:
        case FamilyTag::ChiNonScaled: {
            const bool scaled = f1.tag() == FamilyTag::ChiScaled;
            const double k1 = f1.param(0), s21 = scaled ? f1.param(1) : 1.0;
            const double k2 = f2.param(0), s22 = scaled ? f2.param(1) : 1.0;
            const double sh = 1.0 / s21 + am1 / s22;  // precision mixture
            const double kh = k1 + am1 * (k2 - 1.0);
            require(r, "sigma2_h", sh);
            require(r, "k_h", kh);
            return (A_chi(k1, s21) - A_chi(kh, 1.0 / sh)) / om - A_chi(k2, s22);
        }
        case FamilyTag::ChiSquared: {
            const double nu1 = f1.param(0), nu2 = f2.param(0);
            const double nuh = nu1 + am1 * (nu2 - 2.0);
            require(r, "nu_h", nuh);
            return (A_gamma(0.5 * nu1, 2.0) - A_gamma(0.5 * nuh, 2.0 / alpha)) / om -
                   A_gamma(0.5 * nu2, 2.0);
        }
        case FamilyTag::Exponential: {
            const double l1 = f1.param(0), l2 = f2.param(0);
            const double lh = l1 + am1 * l2;
            require(r, "lambda_h", lh);
            return std::log(l1 / lh) / om - std::log(l2);
        }
        case FamilyTag::Gamma: {
            const double k1 = f1.param(0), t1 = f1.param(1);
            const double k2 = f2.param(0), t2 = f2.param(1);
            const double kh = k1 + am1 * (k2 - 1.0);
            const double rate_h = 1.0 / t1 + am1 / t2;  // 1 / theta_h
            require(r, "k_h", kh);
            r.put("inv_theta_h", rate_h);
            r.constraint_keys.push_back("inv_theta_h");
            if (!(rate_h > 0.0))
                throw ConstraintViolated("theta_h > 0", rate_h < 0.0 ? 1.0 / rate_h : 0.0);
            r.put("theta_h", 1.0 / rate_h);
            return (A_gamma(k1, t1) - A_gamma(kh, 1.0 / rate_h)) / om - A_gamma(k2, t2);
        }
        case FamilyTag::GaussianUni: {
            const double m1 = f1.param(0), s21 = f1.param(1);
            const double m2 = f2.param(0), s22 = f2.param(1);
            const double vh = s22 + am1 * s21;
            require(r, "sigma2_h", vh);
            const double dm = m1 - m2;
            return 0.5 * (kLn2Pi + std::log(s22) + std::log(s22 / vh) / om + dm * dm / vh);
        }
        case FamilyTag::GaussianMulti: {
            const auto p1 = mv_parts(f1);
            const auto p2 = mv_parts(f2);
            const std::size_t n = f1.dimension();
            linalg::Matrix a(n, n);
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j)
                    a(i, j) = p1.inv(i, j) + am1 * p2.inv(i, j);
            double pivot = 0.0;
            const auto chol_a = linalg::cholesky(a, &pivot);
            if (!chol_a) {
                r.put("A_min_pivot", pivot);
                throw ConstraintViolated("A positive definite (min pivot)", pivot);
            }
            const double logdet_a = linalg::logdet_from_cholesky(*chol_a);
            r.put("A_logdet", logdet_a);
            const auto& mu1 = f1.mean_vector();
            const auto& mu2 = f2.mean_vector();
            std::vector<double> v(n, 0.0);
            const auto i1m1 = linalg::matvec(p1.inv, mu1);
            const auto i2m2 = linalg::matvec(p2.inv, mu2);
            for (std::size_t i = 0; i < n; ++i) v[i] = i1m1[i] + am1 * i2m2[i];
            const double w = linalg::quadratic_form(p1.inv, mu1, mu1) +
                             am1 * linalg::quadratic_form(p2.inv, mu2, mu2);
            const auto av = linalg::cholesky_solve(*chol_a, v);
            double vav = 0.0;
            for (std::size_t i = 0; i < n; ++i) vav += v[i] * av[i];
            const double d = w - vav;
            r.put("d", d);
            const double nd = static_cast<double>(n);
            return (-logdet_a - p1.logdet + om * (nd * kLn2Pi + p2.logdet) - d) /
                   (2.0 * om);
        }
        case FamilyTag::Gumbel: {
            const double m1 = f1.param(0), beta = f1.param(1);
            const double m2 = f2.param(0);
            const double eh = std::exp(m1 / beta) + am1 * std::exp(m2 / beta);
            require(r, "eta_h", eh);
            return std::log(beta) - m2 / beta +
                   (m1 / beta + lgamma(alpha) - alpha * std::log(eh)) / om;
        }
        case FamilyTag::HalfNormal: {
            const double s21 = f1.param(0), s22 = f2.param(0);
            const double vh = s22 + am1 * s21;
            require(r, "sigma2_h", vh);
            return 0.5 * (std::log(kPi * s22 / 2.0) + std::log(s22 / vh) / om);
        }
        case FamilyTag::Laplace0: {
            const double b1 = f1.param(0), b2 = f2.param(0);
            const double bh = b2 + am1 * b1;
            require(r, "b_h", bh);
            return std::log(2.0 * b2) + std::log(b2 / bh) / om;
        }
        case FamilyTag::MaxwellBoltzmann: {
            const double s21 = f1.param(0), s22 = f2.param(0);
            const double sh = 1.0 / s21 + am1 / s22;
            require(r, "sigma2_h", sh);
            return 0.5 * kLn2Pi + 1.5 * std::log(s22) + std::log(sh) +
                   (lgamma(2.0 * alpha) - lgamma(alpha) - 1.5 * std::log(s21 * sh)) / om;
        }
        case FamilyTag::Pareto: {
            const double l1 = f1.param(0), m = f1.param(1);
            const double l2 = f2.param(0);
            const double lh = l1 + am1 * (l2 + 1.0);
            require(r, "lambda_h", lh);
            return std::log(m) - std::log(l2) + std::log(l1 / lh) / om;
        }
        case FamilyTag::Rayleigh: {
            const double s21 = f1.param(0), s22 = f2.param(0);
            const double sh = 1.0 / s21 + am1 / s22;
            require(r, "sigma2_h", sh);
            const double ln_eh = 0.5 * am1 * std::log(2.0 / sh) + lgamma(0.5 * (alpha + 1.0));
            r.put("ln_E_h", ln_eh);
            return (-std::log(s21) - std::log(sh) + ln_eh) / om + std::log(s22);
        }
    }
    throw InvalidParameters("renyi_xent: unsupported family");
}

// ---------------------------------------------------------------------------
// Natural Renyi differential cross-entropy, per family.
// ---------------------------------------------------------------------------
double natural_value(const FamilyDescriptor& f1, const FamilyDescriptor& f2,
                     double alpha, XentResult& r) {
    const double om = 1.0 - alpha;
    switch (f1.tag()) {
        case FamilyTag::Beta: {
            const double a1 = f1.param(0), b1 = f1.param(1);
            const double a2 = f2.param(0), b2 = f2.param(1);
            const double aa = alpha * a1 + om * a2;
            const double ba = alpha * b1 + om * b2;
            const double abar = alpha * (a1 - 1.0) + 1.0;
            const double bbar = alpha * (b1 - 1.0) + 1.0;
            require(r, "a_alpha", aa);
            require(r, "b_alpha", ba);
            require(r, "a_bar", abar);
            require(r, "b_bar", bbar);
            return lbeta(a2, b2) + (lbeta(aa, ba) - lbeta(abar, bbar)) / -om;
        }
        case FamilyTag::ChiScaled:
        case FamilyTag::ChiNonScaled: {
            const bool scaled = f1.tag() == FamilyTag::ChiScaled;
            const double k1 = f1.param(0), s21 = scaled ? f1.param(1) : 1.0;
            const double k2 = f2.param(0), s22 = scaled ? f2.param(1) : 1.0;
            const double sa = alpha / s21 + om / s22;
            const double ka = alpha * k1 + om * k2;
            const double kbar = alpha * (k1 - 1.0) + 1.0;
            require(r, "sigma2_alpha", sa);
            require(r, "k_alpha", ka);
            require(r, "k_bar", kbar);
            return (A_chi(ka, 1.0 / sa) - A_chi(kbar, s21 / alpha)) / om - A_chi(k2, s22);
        }
        case FamilyTag::ChiSquared: {
            const double nu1 = f1.param(0), nu2 = f2.param(0);
            const double nua = alpha * nu1 + om * nu2;
            const double kbar = alpha * (0.5 * nu1 - 1.0) + 1.0;
            require(r, "nu_alpha", nua);
            require(r, "k_bar", kbar);
            return (A_gamma(0.5 * nua, 2.0) - A_gamma(kbar, 2.0 / alpha)) / om -
                   A_gamma(0.5 * nu2, 2.0);
        }
        case FamilyTag::Exponential: {
            const double l1 = f1.param(0), l2 = f2.param(0);
            const double la = alpha * l1 + om * l2;
            require(r, "lambda_alpha", la);
            return std::log(la / (alpha * l1)) / om - std::log(l2);
        }
        case FamilyTag::Gamma: {
            const double k1 = f1.param(0), t1 = f1.param(1);
            const double k2 = f2.param(0), t2 = f2.param(1);
            const double ka = alpha * k1 + om * k2;
            const double rate_a = alpha / t1 + om / t2;
            const double kbar = alpha * (k1 - 1.0) + 1.0;
            require(r, "k_alpha", ka);
            require(r, "theta_alpha", rate_a);
            require(r, "k_bar", kbar);
            return (A_gamma(ka, 1.0 / rate_a) - A_gamma(kbar, t1 / alpha)) / om -
                   A_gamma(k2, t2);
        }
        case FamilyTag::GaussianUni: {
            const double m1 = f1.param(0), s21 = f1.param(1);
            const double m2 = f2.param(0), s22 = f2.param(1);
            const double va = alpha * s22 + om * s21;
            require(r, "sigma2_alpha", va);
            const double dm = m1 - m2;
            return 0.5 * kLn2Pi + 0.5 * alpha * dm * dm / va +
                   (std::log(va) - alpha * std::log(s22) - std::log(alpha)) / (2.0 * om);
        }
        case FamilyTag::GaussianMulti: {
            const auto p1 = mv_parts(f1);
            const auto p2 = mv_parts(f2);
            const std::size_t n = f1.dimension();
            linalg::Matrix a(n, n);
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j)
                    a(i, j) = alpha * p1.inv(i, j) + om * p2.inv(i, j);
            double pivot = 0.0;
            const auto chol_a = linalg::cholesky(a, &pivot);
            if (!chol_a) {
                r.put("A_min_pivot", pivot);
                throw ConstraintViolated("A positive definite (min pivot)", pivot);
            }
            const double logdet_a = linalg::logdet_from_cholesky(*chol_a);
            r.put("A_logdet", logdet_a);
            const auto& mu1 = f1.mean_vector();
            const auto& mu2 = f2.mean_vector();
            std::vector<double> dm(n);
            for (std::size_t i = 0; i < n; ++i) dm[i] = mu1[i] - mu2[i];
            // quadratic term: (alpha/2) (mu1-mu2)^T S1i A^-1 S2i (mu1-mu2)
            const auto s2dm = linalg::matvec(p2.inv, dm);
            const auto ainv_s2dm = linalg::cholesky_solve(*chol_a, s2dm);
            const auto s1dm = linalg::matvec(p1.inv, dm);
            double quad = 0.0;
            for (std::size_t i = 0; i < n; ++i) quad += s1dm[i] * ainv_s2dm[i];
            r.put("d", quad);
            const double nd = static_cast<double>(n);
            return 0.5 * alpha * quad +
                   (logdet_a + p1.logdet - nd * std::log(alpha)) / (2.0 * om) +
                   0.5 * (nd * kLn2Pi + p2.logdet);
        }
        case FamilyTag::Gumbel: {
            const double m1 = f1.param(0), beta = f1.param(1);
            const double m2 = f2.param(0);
            const double ea = alpha * std::exp(m1 / beta) + om * std::exp(m2 / beta);
            require(r, "eta_alpha", ea);
            return std::log(beta) + std::log(alpha) + m1 / beta - m2 / beta +
                   (std::log(ea) - std::log(alpha) - m1 / beta + lgamma(alpha)) / om;
        }
        case FamilyTag::HalfNormal: {
            const double s21 = f1.param(0), s22 = f2.param(0);
            const double va = alpha * s22 + om * s21;
            require(r, "sigma2_alpha", va);
            return 0.5 * std::log(kPi * s22 / 2.0) +
                   std::log(va / (alpha * s22)) / (2.0 * om);
        }
        case FamilyTag::Laplace0: {
            const double b1 = f1.param(0), b2 = f2.param(0);
            const double ra = alpha / b1 + om / b2;
            require(r, "b_alpha", ra);
            return std::log(2.0 * b2) + std::log(ra * b1 / alpha) / om;
        }
        case FamilyTag::MaxwellBoltzmann: {
            const double s21 = f1.param(0), s22 = f2.param(0);
            const double sa = alpha / s21 + om / s22;
            require(r, "sigma2_alpha", sa);
            const double ln_ea = alpha * std::log(2.0) - 0.5 * std::log(kPi) +
                                 lgamma(alpha + 0.5) - om * std::log(s21 / alpha);
            r.put("ln_E_alpha", ln_ea);
            return (A_maxwell(1.0 / sa) - A_maxwell(s21 / alpha) + ln_ea) / om -
                   A_maxwell(s22);
        }
        case FamilyTag::Pareto: {
            const double l1 = f1.param(0), m = f1.param(1);
            const double l2 = f2.param(0);
            const double la = alpha * l1 + om * l2;
            const double lbar = alpha * (l1 + 1.0) - 1.0;
            require(r, "lambda_alpha", la);
            require(r, "lambda_bar", lbar);
            return std::log(m) - std::log(l2) + std::log(la / lbar) / om;
        }
        case FamilyTag::Rayleigh: {
            const double s21 = f1.param(0), s22 = f2.param(0);
            const double sa = alpha / s21 + om / s22;
            require(r, "sigma2_alpha", sa);
            const double ln_ea =
                -0.5 * om * std::log(2.0 * s21 / alpha) + lgamma(0.5 * (alpha + 1.0));
            r.put("ln_E_alpha", ln_ea);
            return (A_rayleigh(1.0 / sa) - A_rayleigh(s21 / alpha) + ln_ea) / om -
                   A_rayleigh(s22);
        }
    }
    throw InvalidParameters("natural_renyi_xent: unsupported family");
}

// ---------------------------------------------------------------------------
// Shannon differential cross-entropy -E_{f1}[ln f2], per family.
// ---------------------------------------------------------------------------
double shannon_value(const FamilyDescriptor& f1, const FamilyDescriptor& f2) {
    switch (f1.tag()) {
        case FamilyTag::Beta: {
            const double a1 = f1.param(0), b1 = f1.param(1);
            const double a2 = f2.param(0), b2 = f2.param(1);
            const double psi_sum = digamma(a1 + b1);
            return lbeta(a2, b2) - (a2 - 1.0) * (digamma(a1) - psi_sum) -
                   (b2 - 1.0) * (digamma(b1) - psi_sum);
        }
        case FamilyTag::ChiScaled:
        case FamilyTag::ChiNonScaled: {
            const bool scaled = f1.tag() == FamilyTag::ChiScaled;
            const double k1 = f1.param(0), s21 = scaled ? f1.param(1) : 1.0;
            const double k2 = f2.param(0), s22 = scaled ? f2.param(1) : 1.0;
            // E[ln X] and E[X^2] of a scaled chi with k1 dof.
            const double e_lnx = 0.5 * (std::log(s21) + digamma(0.5 * k1) + std::log(2.0));
            const double e_x2 = s21 * k1;
            return -A_chi(k2, s22) - (k2 - 1.0) * e_lnx + e_x2 / (2.0 * s22);
        }
        case FamilyTag::ChiSquared: {
            const double k1 = 0.5 * f1.param(0), k2 = 0.5 * f2.param(0);
            return lgamma(k2) + k2 * std::log(2.0) -
                   (k2 - 1.0) * (digamma(k1) + std::log(2.0)) + k1;
        }
        case FamilyTag::Exponential: {
            const double l1 = f1.param(0), l2 = f2.param(0);
            return l2 / l1 - std::log(l2);
        }
        case FamilyTag::Gamma: {
            const double k1 = f1.param(0), t1 = f1.param(1);
            const double k2 = f2.param(0), t2 = f2.param(1);
            return lgamma(k2) + k2 * std::log(t2) -
                   (k2 - 1.0) * (digamma(k1) + std::log(t1)) + k1 * t1 / t2;
        }
        case FamilyTag::GaussianUni: {
            const double m1 = f1.param(0), s21 = f1.param(1);
            const double m2 = f2.param(0), s22 = f2.param(1);
            const double dm = m1 - m2;
            return 0.5 * (kLn2Pi + std::log(s22)) + (s21 + dm * dm) / (2.0 * s22);
        }
        case FamilyTag::GaussianMulti: {
            const auto p2 = mv_parts(f2);
            const auto& s1 = f1.covariance();
            const std::size_t n = f1.dimension();
            double trace = 0.0;
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j) trace += p2.inv(i, j) * s1(j, i);
            const auto& mu1 = f1.mean_vector();
            const auto& mu2 = f2.mean_vector();
            std::vector<double> dm(n);
            for (std::size_t i = 0; i < n; ++i) dm[i] = mu1[i] - mu2[i];
            const double quad = linalg::quadratic_form(p2.inv, dm, dm);
            return 0.5 * (static_cast<double>(n) * kLn2Pi + p2.logdet + trace + quad);
        }
        case FamilyTag::Gumbel: {
            const double m1 = f1.param(0), beta = f1.param(1);
            const double m2 = f2.param(0);
            return std::log(beta) + (m1 - m2) / beta + kEulerGamma +
                   std::exp((m2 - m1) / beta);
        }
        case FamilyTag::HalfNormal: {
            const double s21 = f1.param(0), s22 = f2.param(0);
            return 0.5 * std::log(kPi * s22 / 2.0) + s21 / (2.0 * s22);
        }
        case FamilyTag::Laplace0: {
            const double b1 = f1.param(0), b2 = f2.param(0);
            return std::log(2.0 * b2) + b1 / b2;
        }
        case FamilyTag::MaxwellBoltzmann: {
            const double s21 = f1.param(0), s22 = f2.param(0);
            const double e_lnx =
                0.5 * (std::log(s21) + digamma(1.5) + std::log(2.0));
            return -A_maxwell(s22) - 2.0 * e_lnx + 3.0 * s21 / (2.0 * s22);
        }
        case FamilyTag::Pareto: {
            const double l1 = f1.param(0), m = f1.param(1);
            const double l2 = f2.param(0);
            return -std::log(l2) + std::log(m) + (l2 + 1.0) / l1;
        }
        case FamilyTag::Rayleigh: {
            const double s21 = f1.param(0), s22 = f2.param(0);
            const double e_lnx =
                0.5 * (std::log(s21) + std::log(2.0) - kEulerGamma);
            return std::log(s22) - e_lnx + s21 / s22;
        }
    }
    throw InvalidParameters("shannon_xent: unsupported family");
}

// Internal quadrature fallback for E = E_{f_eta}[b(X)^(alpha-1)].
double carrier_expectation_quadrature(const FamilyDescriptor& proto,
                                      const NaturalParameterization& base,
                                      std::span<const double> eta,
                                      double log_normalizer, double alpha) {
    QuadratureSpec spec;
    const Support sup = proto.support();
    std::vector<double> eta_copy(eta.begin(), eta.end());
    auto integrand = [&base, &eta_copy, log_normalizer, alpha](double x, double,
                                                               double) {
        const auto t = base.sufficient_stat(x);
        double dot = 0.0;
        for (std::size_t i = 0; i < t.size(); ++i) dot += eta_copy[i] * t[i];
        return std::exp(alpha * base.carrier_log(x) + dot + log_normalizer);
    };
    return integrate_over_support(integrand, sup, spec).value;
}

XentResult generic_engine(const FamilyDescriptor& f1, const FamilyDescriptor& f2,
                          const AlphaOrder& a, const CarrierExpectation& ce,
                          bool natural) {
    check_pair(f1, f2);
    if (a.is_shannon())
        throw InvalidParameters("generic engine requires alpha != 1");
    if (f1.multivariate())
        throw InvalidParameters("generic engine covers univariate families");
    const double alpha = a.value();

    XentResult r;
    r.measure = natural ? Measure::NaturalRenyi : Measure::Renyi;
    r.method = Method::GenericEngine;
    const auto np1 = to_natural(f1);
    const auto np2 = to_natural(f2);

    std::vector<double> eta_mix(np1.eta.size());
    std::vector<double> eta_ref(np1.eta.size());  // the "from" member of E
    for (std::size_t i = 0; i < eta_mix.size(); ++i) {
        if (natural) {
            eta_mix[i] = alpha * np1.eta[i] + (1.0 - alpha) * np2.eta[i];
            eta_ref[i] = alpha * np1.eta[i];
        } else {
            eta_mix[i] = np1.eta[i] + (alpha - 1.0) * np2.eta[i];
            eta_ref[i] = np1.eta[i];
        }
        r.put((natural ? "eta_alpha_" : "eta_h_") + std::to_string(i), eta_mix[i]);
    }
    if (!natural_in_domain(f1, eta_mix))
        throw NaturalParamOutOfDomain(std::string(family_name(f1.tag())) + ": mixed natural parameter " +
                                      (natural ? "eta_alpha" : "eta_h") +
                                      " outside the natural-parameter domain");
    if (natural && !natural_in_domain(f1, eta_ref))
        throw NaturalParamOutOfDomain(std::string(family_name(f1.tag())) +
                                      ": alpha*eta1 outside the natural-parameter domain");

    const double a_mix = log_normalizer_from_eta(f1, eta_mix);
    const double a_ref =
        natural ? log_normalizer_from_eta(f1, eta_ref) : np1.log_normalizer;
    r.put("A_eta1", np1.log_normalizer);
    r.put(natural ? "A_eta_alpha" : "A_eta_h", a_mix);
    if (natural) r.put("A_alpha_eta1", a_ref);

    double ln_e = 0.0;
    if (!np1.carrier_is_one) {
        // E is taken under the member with natural parameter eta_ref for the
        // Natural measure and eta_mix for the plain Renyi measure.
        const std::vector<double>& eta_e = natural ? eta_ref : eta_mix;
        const double a_e = natural ? a_ref : a_mix;
        const double e = ce ? ce(np1, eta_e, a_e, alpha)
                            : carrier_expectation_quadrature(f1, np1, eta_e, a_e, alpha);
        ln_e = std::log(e);
        r.put(natural ? "E_alpha" : "E_h", e);
    } else {
        r.put(natural ? "E_alpha" : "E_h", 1.0);
    }

    // Renyi:   [A(eta1)   - A(eta_h)     + ln E_h] / (1-alpha) - A(eta2)
    // Natural: [A(eta_a)  - A(alpha*eta1)+ ln E_a] / (1-alpha) - A(eta2)
    const double num = natural ? (a_mix - a_ref + ln_e) : (a_ref - a_mix + ln_e);
    r.value = num / (1.0 - alpha) - np2.log_normalizer;
    return r;
}

}  // namespace

const char* measure_name(Measure m) {
    switch (m) {
        case Measure::Renyi: return "renyi";
        case Measure::NaturalRenyi: return "natural";
        case Measure::Shannon: return "shannon";
        case Measure::RenyiEntropy: return "renyi-entropy";
    }
    return "?";
}

const char* method_name(Method m) {
    switch (m) {
        case Method::ClosedForm: return "closed-form";
        case Method::GenericEngine: return "generic-engine";
        case Method::Oracle: return "oracle";
    }
    return "?";
}

double XentResult::diagnostic(const std::string& key) const {
    for (const auto& [k, v] : diagnostics)
        if (k == key) return v;
    throw Error("no diagnostic named " + key);
}

bool XentResult::has_diagnostic(const std::string& key) const {
    for (const auto& [k, v] : diagnostics)
        if (k == key) return true;
    return false;
}

XentResult renyi_xent(const FamilyDescriptor& f1, const FamilyDescriptor& f2,
                      const AlphaOrder& a) {
    check_pair(f1, f2);
    if (a.is_shannon()) return shannon_xent(f1, f2);
    XentResult r;
    r.measure = Measure::Renyi;
    r.method = Method::ClosedForm;
    r.put("alpha", a.value());
    r.value = renyi_value(f1, f2, a.value(), r);
    return r;
}

XentResult natural_renyi_xent(const FamilyDescriptor& f1, const FamilyDescriptor& f2,
                              const AlphaOrder& a) {
    check_pair(f1, f2);
    if (a.is_shannon()) return shannon_xent(f1, f2);
    XentResult r;
    r.measure = Measure::NaturalRenyi;
    r.method = Method::ClosedForm;
    r.put("alpha", a.value());
    r.value = natural_value(f1, f2, a.value(), r);
    return r;
}

XentResult shannon_xent(const FamilyDescriptor& f1, const FamilyDescriptor& f2) {
    check_pair(f1, f2);
    XentResult r;
    r.measure = Measure::Shannon;
    r.method = Method::ClosedForm;
    r.value = shannon_value(f1, f2);
    return r;
}

XentResult renyi_entropy(const FamilyDescriptor& f, const AlphaOrder& a) {
    XentResult r = a.is_shannon() ? shannon_xent(f, f) : renyi_xent(f, f, a);
    r.measure = a.is_shannon() ? Measure::Shannon : Measure::RenyiEntropy;
    return r;
}

XentResult generic_renyi_xent(const FamilyDescriptor& f1, const FamilyDescriptor& f2,
                              const AlphaOrder& a, const CarrierExpectation& ce) {
    return generic_engine(f1, f2, a, ce, /*natural=*/false);
}

XentResult generic_natural_renyi_xent(const FamilyDescriptor& f1,
                                      const FamilyDescriptor& f2, const AlphaOrder& a,
                                      const CarrierExpectation& ce) {
    return generic_engine(f1, f2, a, ce, /*natural=*/true);
}

}  // namespace xent
