#include "xent/families.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "xent/special.hpp"

namespace xent {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void require_positive(std::vector<Violation>& out, const char* name, double v) {
    if (!(v > 0.0) || !std::isfinite(v)) {
        out.push_back({name, std::string(name) + " > 0", v});
    }
}

void require_finite(std::vector<Violation>& out, const char* name, double v) {
    if (!std::isfinite(v)) out.push_back({name, std::string(name) + " finite", v});
}

}  // namespace

const char* family_name(FamilyTag tag) {
    switch (tag) {
        case FamilyTag::Beta: return "beta";
        case FamilyTag::ChiScaled: return "chi-scaled";
        case FamilyTag::ChiNonScaled: return "chi";
        case FamilyTag::ChiSquared: return "chi-squared";
        case FamilyTag::Exponential: return "exponential";
        case FamilyTag::Gamma: return "gamma";
        case FamilyTag::GaussianUni: return "gaussian";
        case FamilyTag::GaussianMulti: return "mvgaussian";
        case FamilyTag::Gumbel: return "gumbel";
        case FamilyTag::HalfNormal: return "half-normal";
        case FamilyTag::Laplace0: return "laplace";
        case FamilyTag::MaxwellBoltzmann: return "maxwell";
        case FamilyTag::Pareto: return "pareto";
        case FamilyTag::Rayleigh: return "rayleigh";
    }
    return "?";
}

std::optional<FamilyTag> family_from_name(const std::string& name) {
    static const std::pair<const char*, FamilyTag> table[] = {
        {"beta", FamilyTag::Beta},
        {"chi-scaled", FamilyTag::ChiScaled},
        {"chi", FamilyTag::ChiNonScaled},
        {"chi-squared", FamilyTag::ChiSquared},
        {"exponential", FamilyTag::Exponential},
        {"gamma", FamilyTag::Gamma},
        {"gaussian", FamilyTag::GaussianUni},
        {"mvgaussian", FamilyTag::GaussianMulti},
        {"gumbel", FamilyTag::Gumbel},
        {"half-normal", FamilyTag::HalfNormal},
        {"laplace", FamilyTag::Laplace0},
        {"maxwell", FamilyTag::MaxwellBoltzmann},
        {"pareto", FamilyTag::Pareto},
        {"rayleigh", FamilyTag::Rayleigh},
    };
    for (const auto& [n, t] : table)
        if (name == n) return t;
    return std::nullopt;
}

FamilyDescriptor FamilyDescriptor::beta(double a, double b) {
    return {FamilyTag::Beta, {a, b}};
}
FamilyDescriptor FamilyDescriptor::chi_scaled(double k, double var) {
    return {FamilyTag::ChiScaled, {k, var}};
}
FamilyDescriptor FamilyDescriptor::chi(double k) {
    return {FamilyTag::ChiNonScaled, {k}};
}
FamilyDescriptor FamilyDescriptor::chi_squared(double nu) {
    return {FamilyTag::ChiSquared, {nu}};
}
FamilyDescriptor FamilyDescriptor::exponential(double lambda) {
    return {FamilyTag::Exponential, {lambda}};
}
FamilyDescriptor FamilyDescriptor::gamma(double k, double theta) {
    return {FamilyTag::Gamma, {k, theta}};
}
FamilyDescriptor FamilyDescriptor::gaussian(double mu, double var) {
    return {FamilyTag::GaussianUni, {mu, var}};
}
FamilyDescriptor FamilyDescriptor::gaussian_multi(std::vector<double> mu,
                                                  linalg::Matrix sigma) {
    return {std::move(mu), std::move(sigma)};
}
FamilyDescriptor FamilyDescriptor::gumbel(double mu, double beta) {
    return {FamilyTag::Gumbel, {mu, beta}};
}
FamilyDescriptor FamilyDescriptor::half_normal(double var) {
    return {FamilyTag::HalfNormal, {var}};
}
FamilyDescriptor FamilyDescriptor::laplace0(double b) {
    return {FamilyTag::Laplace0, {b}};
}
FamilyDescriptor FamilyDescriptor::maxwell(double var) {
    return {FamilyTag::MaxwellBoltzmann, {var}};
}
FamilyDescriptor FamilyDescriptor::pareto(double lambda, double m) {
    return {FamilyTag::Pareto, {lambda, m}};
}
FamilyDescriptor FamilyDescriptor::rayleigh(double var) {
    return {FamilyTag::Rayleigh, {var}};
}

std::optional<double> FamilyDescriptor::shared_constant() const {
    switch (tag_) {
        case FamilyTag::Gumbel: return theta_[1];   // beta
        case FamilyTag::Pareto: return theta_[1];   // m
        case FamilyTag::Laplace0: return 0.0;       // fixed location
        default: return std::nullopt;
    }
}

Support FamilyDescriptor::support() const {
    switch (tag_) {
        case FamilyTag::Beta: return {0.0, 1.0, false};
        case FamilyTag::Exponential:
        case FamilyTag::HalfNormal: return {0.0, kInf, true};
        case FamilyTag::ChiScaled:
        case FamilyTag::ChiNonScaled:
        case FamilyTag::ChiSquared:
        case FamilyTag::Gamma:
        case FamilyTag::MaxwellBoltzmann:
        case FamilyTag::Rayleigh: return {0.0, kInf, false};
        case FamilyTag::Pareto: return {theta_[1], kInf, false};
        case FamilyTag::GaussianUni:
        case FamilyTag::Gumbel:
        case FamilyTag::Laplace0:
        case FamilyTag::GaussianMulti: return {-kInf, kInf, false};
    }
    return {-kInf, kInf, false};
}

std::string FamilyDescriptor::to_string() const {
    std::ostringstream os;
    os << family_name(tag_) << "{";
    switch (tag_) {
        case FamilyTag::Beta: os << "a=" << theta_[0] << ",b=" << theta_[1]; break;
        case FamilyTag::ChiScaled: os << "k=" << theta_[0] << ",var=" << theta_[1]; break;
        case FamilyTag::ChiNonScaled: os << "k=" << theta_[0]; break;
        case FamilyTag::ChiSquared: os << "nu=" << theta_[0]; break;
        case FamilyTag::Exponential: os << "lambda=" << theta_[0]; break;
        case FamilyTag::Gamma: os << "k=" << theta_[0] << ",theta=" << theta_[1]; break;
        case FamilyTag::GaussianUni: os << "mu=" << theta_[0] << ",var=" << theta_[1]; break;
        case FamilyTag::Gumbel: os << "mu=" << theta_[0] << ",beta=" << theta_[1]; break;
        case FamilyTag::HalfNormal:
        case FamilyTag::MaxwellBoltzmann:
        case FamilyTag::Rayleigh: os << "var=" << theta_[0]; break;
        case FamilyTag::Laplace0: os << "b=" << theta_[0]; break;
        case FamilyTag::Pareto: os << "lambda=" << theta_[0] << ",m=" << theta_[1]; break;
        case FamilyTag::GaussianMulti: {
            os << "mu=[";
            for (std::size_t i = 0; i < mu_.size(); ++i)
                os << (i ? "," : "") << mu_[i];
            os << "],cov=[";
            for (std::size_t i = 0; i < sigma_.rows(); ++i) {
                os << (i ? ",[" : "[");
                for (std::size_t j = 0; j < sigma_.cols(); ++j)
                    os << (j ? "," : "") << sigma_(i, j);
                os << "]";
            }
            os << "]";
            break;
        }
    }
    os << "}";
    return os.str();
}

std::vector<Violation> validate(const FamilyDescriptor& d) {
    std::vector<Violation> v;
    switch (d.tag()) {
        case FamilyTag::Beta:
            require_positive(v, "a", d.param(0));
            require_positive(v, "b", d.param(1));
            break;
        case FamilyTag::ChiScaled:
            require_positive(v, "k", d.param(0));
            require_positive(v, "var", d.param(1));
            break;
        case FamilyTag::ChiNonScaled:
            require_positive(v, "k", d.param(0));
            break;
        case FamilyTag::ChiSquared:
            require_positive(v, "nu", d.param(0));
            break;
        case FamilyTag::Exponential:
            require_positive(v, "lambda", d.param(0));
            break;
        case FamilyTag::Gamma:
            require_positive(v, "k", d.param(0));
            require_positive(v, "theta", d.param(1));
            break;
        case FamilyTag::GaussianUni:
            require_finite(v, "mu", d.param(0));
            require_positive(v, "var", d.param(1));
            break;
        case FamilyTag::Gumbel:
            require_finite(v, "mu", d.param(0));
            require_positive(v, "beta", d.param(1));
            break;
        case FamilyTag::HalfNormal:
        case FamilyTag::MaxwellBoltzmann:
        case FamilyTag::Rayleigh:
            require_positive(v, "var", d.param(0));
            break;
        case FamilyTag::Laplace0:
            require_positive(v, "b", d.param(0));
            break;
        case FamilyTag::Pareto:
            require_positive(v, "lambda", d.param(0));
            require_positive(v, "m", d.param(1));
            break;
        case FamilyTag::GaussianMulti: {
            const auto& mu = d.mean_vector();
            const auto& s = d.covariance();
            if (s.rows() != s.cols() || s.rows() != mu.size() || mu.empty()) {
                v.push_back({"Sigma", "Sigma square and conformal with mu", kNaN});
                break;
            }
            for (double m : mu)
                if (!std::isfinite(m)) {
                    v.push_back({"mu", "mu finite", m});
                    break;
                }
            bool sym = true;
            for (std::size_t i = 0; i < s.rows() && sym; ++i)
                for (std::size_t j = i + 1; j < s.cols(); ++j) {
                    const double scale = std::max({1.0, std::fabs(s(i, j)), std::fabs(s(j, i))});
                    if (std::fabs(s(i, j) - s(j, i)) > 1e-12 * scale) {
                        v.push_back({"Sigma", "Sigma symmetric", s(i, j) - s(j, i)});
                        sym = false;
                        break;
                    }
                }
            if (sym && !linalg::cholesky(s)) {
                v.push_back({"Sigma", "Sigma positive definite", kNaN});
            }
            break;
        }
    }
    return v;
}

void ensure_valid(const FamilyDescriptor& d) {
    const auto v = validate(d);
    if (v.empty()) return;
    std::string msg = "invalid parameters for " + std::string(family_name(d.tag())) + ":";
    for (const auto& x : v) msg += " [" + x.constraint + "]";
    throw InvalidParameters(msg);
}

namespace detail {

double log_pdf_prevalidated(const FamilyDescriptor& d, double x, double dist_lo,
                            double dist_hi) {
    using special::lgamma;
    using special::lbeta;
    switch (d.tag()) {
        case FamilyTag::Beta: {
            const double a = d.param(0), b = d.param(1);
            return (a - 1.0) * std::log(dist_lo) + (b - 1.0) * std::log(dist_hi) -
                   lbeta(a, b);
        }
        case FamilyTag::ChiScaled: {
            const double k = d.param(0), s2 = d.param(1);
            return (1.0 - 0.5 * k) * std::log(2.0) + (k - 1.0) * std::log(x) -
                   x * x / (2.0 * s2) - 0.5 * k * std::log(s2) - lgamma(0.5 * k);
        }
        case FamilyTag::ChiNonScaled: {
            const double k = d.param(0);
            return (1.0 - 0.5 * k) * std::log(2.0) + (k - 1.0) * std::log(x) -
                   0.5 * x * x - lgamma(0.5 * k);
        }
        case FamilyTag::ChiSquared: {
            const double nu = d.param(0);
            return (0.5 * nu - 1.0) * std::log(x) - 0.5 * x - 0.5 * nu * std::log(2.0) -
                   lgamma(0.5 * nu);
        }
        case FamilyTag::Exponential: {
            const double lam = d.param(0);
            return std::log(lam) - lam * x;
        }
        case FamilyTag::Gamma: {
            const double k = d.param(0), th = d.param(1);
            return (k - 1.0) * std::log(x) - x / th - k * std::log(th) - lgamma(k);
        }
        case FamilyTag::GaussianUni: {
            const double mu = d.param(0), s2 = d.param(1);
            const double z = x - mu;
            return -0.5 * (special::kLn2Pi + std::log(s2)) - z * z / (2.0 * s2);
        }
        case FamilyTag::Gumbel: {
            const double mu = d.param(0), beta = d.param(1);
            const double z = (x - mu) / beta;
            // Saturate the double-exponential term so deep-left-tail values
            // stay finite; mixtures of two such log-densities would otherwise
            // produce inf - inf.
            return -std::log(beta) - z - std::min(std::exp(-z), 1e300);
        }
        case FamilyTag::HalfNormal: {
            const double s2 = d.param(0);
            return 0.5 * (std::log(2.0) - std::log(special::kPi) - std::log(s2)) -
                   x * x / (2.0 * s2);
        }
        case FamilyTag::Laplace0: {
            const double b = d.param(0);
            return -std::log(2.0 * b) - std::fabs(x) / b;
        }
        case FamilyTag::MaxwellBoltzmann: {
            const double s2 = d.param(0);
            return 0.5 * (std::log(2.0) - std::log(special::kPi)) + 2.0 * std::log(x) -
                   1.5 * std::log(s2) - x * x / (2.0 * s2);
        }
        case FamilyTag::Pareto: {
            const double lam = d.param(0), m = d.param(1);
            return std::log(lam) + lam * std::log(m) - (lam + 1.0) * std::log(x);
        }
        case FamilyTag::Rayleigh: {
            const double s2 = d.param(0);
            return std::log(x) - std::log(s2) - x * x / (2.0 * s2);
        }
        default: break;
    }
    throw InvalidParameters("log_pdf: unsupported family");
}

}  // namespace detail

double log_pdf(const FamilyDescriptor& d, double x) {
    ensure_valid(d);
    if (d.multivariate())
        throw InvalidParameters("log_pdf(double): descriptor is multivariate");
    const Support sup = d.support();
    if (!sup.contains(x))
        throw PointOutsideSupport(d.to_string() + ": point " + std::to_string(x) +
                                  " outside support");
    return detail::log_pdf_prevalidated(d, x, x - sup.lo, sup.hi - x);
}

double log_pdf(const FamilyDescriptor& d, const std::vector<double>& x) {
    if (!d.multivariate()) {
        if (x.size() != 1)
            throw PointOutsideSupport("log_pdf: univariate family, expected 1-d point");
        return log_pdf(d, x[0]);
    }
    ensure_valid(d);
    const auto& mu = d.mean_vector();
    if (x.size() != mu.size())
        throw PointOutsideSupport("log_pdf: point dimension mismatch");
    const auto chol = linalg::cholesky(d.covariance());
    // validate() already guaranteed factorability
    std::vector<double> diff(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) diff[i] = x[i] - mu[i];
    const auto sol = linalg::cholesky_solve(*chol, diff);
    double quad = 0.0;
    for (std::size_t i = 0; i < diff.size(); ++i) quad += diff[i] * sol[i];
    const double logdet = linalg::logdet_from_cholesky(*chol);
    const double n = static_cast<double>(x.size());
    return -0.5 * (n * special::kLn2Pi + logdet + quad);
}

NaturalParameterization to_natural(const FamilyDescriptor& d) {
    ensure_valid(d);
    using special::lbeta;
    using special::lgamma;
    NaturalParameterization np;
    np.carrier_is_one = true;
    np.carrier_log = [](double) { return 0.0; };
    switch (d.tag()) {
        case FamilyTag::Beta: {
            const double a = d.param(0), b = d.param(1);
            np.eta = {a - 1.0, b - 1.0};
            np.log_normalizer = -lbeta(a, b);
            np.sufficient_stat = [](double x) {
                return std::vector<double>{std::log(x), std::log1p(-x)};
            };
            break;
        }
        case FamilyTag::ChiScaled:
        case FamilyTag::ChiNonScaled: {
            const double k = d.param(0);
            const double s2 = d.tag() == FamilyTag::ChiScaled ? d.param(1) : 1.0;
            np.eta = {k - 1.0, -1.0 / (2.0 * s2)};
            np.log_normalizer = (1.0 - 0.5 * k) * std::log(2.0) -
                                0.5 * k * std::log(s2) - lgamma(0.5 * k);
            np.sufficient_stat = [](double x) {
                return std::vector<double>{std::log(x), x * x};
            };
            break;
        }
        case FamilyTag::ChiSquared:
        case FamilyTag::Gamma: {
            const double k = d.tag() == FamilyTag::Gamma ? d.param(0) : 0.5 * d.param(0);
            const double th = d.tag() == FamilyTag::Gamma ? d.param(1) : 2.0;
            np.eta = {k - 1.0, -1.0 / th};
            np.log_normalizer = -k * std::log(th) - lgamma(k);
            np.sufficient_stat = [](double x) {
                return std::vector<double>{std::log(x), x};
            };
            break;
        }
        case FamilyTag::Exponential: {
            const double lam = d.param(0);
            np.eta = {-lam};
            np.log_normalizer = std::log(lam);
            np.sufficient_stat = [](double x) { return std::vector<double>{x}; };
            break;
        }
        case FamilyTag::GaussianUni: {
            const double mu = d.param(0), s2 = d.param(1);
            np.eta = {mu / s2, -1.0 / (2.0 * s2)};
            np.log_normalizer = -mu * mu / (2.0 * s2) -
                                0.5 * (special::kLn2Pi + std::log(s2));
            np.sufficient_stat = [](double x) {
                return std::vector<double>{x, x * x};
            };
            break;
        }
        case FamilyTag::Gumbel: {
            const double mu = d.param(0), beta = d.param(1);
            np.eta = {-std::exp(mu / beta)};
            np.log_normalizer = mu / beta;
            np.carrier_is_one = false;
            np.carrier_log = [beta](double x) { return -std::log(beta) - x / beta; };
            np.sufficient_stat = [beta](double x) {
                return std::vector<double>{std::exp(-x / beta)};
            };
            break;
        }
        case FamilyTag::HalfNormal: {
            const double s2 = d.param(0);
            np.eta = {-1.0 / (2.0 * s2)};
            np.log_normalizer = 0.5 * (std::log(2.0) - std::log(special::kPi) -
                                       std::log(s2));
            np.sufficient_stat = [](double x) { return std::vector<double>{x * x}; };
            break;
        }
        case FamilyTag::Laplace0: {
            const double b = d.param(0);
            np.eta = {-1.0 / b};
            np.log_normalizer = -std::log(2.0 * b);
            np.sufficient_stat = [](double x) {
                return std::vector<double>{std::fabs(x)};
            };
            break;
        }
        case FamilyTag::MaxwellBoltzmann: {
            const double s2 = d.param(0);
            np.eta = {-1.0 / (2.0 * s2)};
            np.log_normalizer = 0.5 * (std::log(2.0) - std::log(special::kPi)) -
                                1.5 * std::log(s2);
            np.carrier_is_one = false;
            np.carrier_log = [](double x) { return 2.0 * std::log(x); };
            np.sufficient_stat = [](double x) { return std::vector<double>{x * x}; };
            break;
        }
        case FamilyTag::Pareto: {
            const double lam = d.param(0), m = d.param(1);
            np.eta = {-(lam + 1.0)};
            np.log_normalizer = std::log(lam) + lam * std::log(m);
            np.sufficient_stat = [](double x) {
                return std::vector<double>{std::log(x)};
            };
            break;
        }
        case FamilyTag::Rayleigh: {
            const double s2 = d.param(0);
            np.eta = {-1.0 / (2.0 * s2)};
            np.log_normalizer = -std::log(s2);
            np.carrier_is_one = false;
            np.carrier_log = [](double x) { return std::log(x); };
            np.sufficient_stat = [](double x) { return std::vector<double>{x * x}; };
            break;
        }
        case FamilyTag::GaussianMulti:
            throw InvalidParameters(
                "to_natural: vector-form natural parameterization covers univariate "
                "families; the multivariate Gaussian is handled with matrix algebra");
    }
    return np;
}

bool natural_in_domain(const FamilyDescriptor& proto, std::span<const double> eta) {
    switch (proto.tag()) {
        case FamilyTag::Beta:
            return eta.size() == 2 && eta[0] > -1.0 && eta[1] > -1.0;
        case FamilyTag::ChiScaled:
        case FamilyTag::ChiNonScaled:
        case FamilyTag::ChiSquared:
        case FamilyTag::Gamma:
            return eta.size() == 2 && eta[0] > -1.0 && eta[1] < 0.0;
        case FamilyTag::Exponential:
        case FamilyTag::Gumbel:
        case FamilyTag::HalfNormal:
        case FamilyTag::Laplace0:
        case FamilyTag::MaxwellBoltzmann:
        case FamilyTag::Rayleigh:
            return eta.size() == 1 && eta[0] < 0.0;
        case FamilyTag::GaussianUni:
            return eta.size() == 2 && eta[1] < 0.0;
        case FamilyTag::Pareto:
            return eta.size() == 1 && eta[0] < -1.0;
        case FamilyTag::GaussianMulti:
            return false;
    }
    return false;
}

double log_normalizer_from_eta(const FamilyDescriptor& proto,
                               std::span<const double> eta) {
    if (!natural_in_domain(proto, eta))
        throw NaturalParamOutOfDomain(std::string(family_name(proto.tag())) +
                                      ": natural parameter outside domain");
    using special::lbeta;
    using special::lgamma;
    switch (proto.tag()) {
        case FamilyTag::Beta:
            return -lbeta(eta[0] + 1.0, eta[1] + 1.0);
        case FamilyTag::ChiScaled:
        case FamilyTag::ChiNonScaled: {
            const double k = eta[0] + 1.0;
            const double s2 = -1.0 / (2.0 * eta[1]);
            return (1.0 - 0.5 * k) * std::log(2.0) - 0.5 * k * std::log(s2) -
                   lgamma(0.5 * k);
        }
        case FamilyTag::ChiSquared:
        case FamilyTag::Gamma: {
            const double k = eta[0] + 1.0;
            const double th = -1.0 / eta[1];
            return -k * std::log(th) - lgamma(k);
        }
        case FamilyTag::Exponential:
            return std::log(-eta[0]);
        case FamilyTag::GaussianUni: {
            const double s2 = -1.0 / (2.0 * eta[1]);
            const double mu = eta[0] * s2;
            return -mu * mu / (2.0 * s2) - 0.5 * (special::kLn2Pi + std::log(s2));
        }
        case FamilyTag::Gumbel:
            return std::log(-eta[0]);  // = mu / beta
        case FamilyTag::HalfNormal: {
            const double s2 = -1.0 / (2.0 * eta[0]);
            return 0.5 * (std::log(2.0) - std::log(special::kPi) - std::log(s2));
        }
        case FamilyTag::Laplace0:
            return -std::log(2.0) + std::log(-eta[0]);
        case FamilyTag::MaxwellBoltzmann: {
            const double s2 = -1.0 / (2.0 * eta[0]);
            return 0.5 * (std::log(2.0) - std::log(special::kPi)) - 1.5 * std::log(s2);
        }
        case FamilyTag::Pareto: {
            const double lam = -eta[0] - 1.0;
            return std::log(lam) + lam * std::log(proto.param(1));
        }
        case FamilyTag::Rayleigh: {
            const double s2 = -1.0 / (2.0 * eta[0]);
            return -std::log(s2);
        }
        case FamilyTag::GaussianMulti:
            break;
    }
    throw InvalidParameters("log_normalizer_from_eta: unsupported family");
}

}  // namespace xent
