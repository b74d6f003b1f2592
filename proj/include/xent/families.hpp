#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "xent/errors.hpp"
#include "xent/linalg.hpp"

namespace xent {

/// The supported distribution families. Exactly this set; nothing else is
/// constructible.
enum class FamilyTag {
    Beta,
    ChiScaled,
    ChiNonScaled,
    ChiSquared,
    Exponential,
    Gamma,
    GaussianUni,
    GaussianMulti,
    Gumbel,
    HalfNormal,
    Laplace0,
    MaxwellBoltzmann,
    Pareto,
    Rayleigh,
};

const char* family_name(FamilyTag tag);
std::optional<FamilyTag> family_from_name(const std::string& name);

/// Univariate support interval. `lo_closed` marks families whose density is
/// finite at the left endpoint (Exponential, Half-Normal).
struct Support {
    double lo;
    double hi;
    bool lo_closed;

    bool contains(double x) const {
        if (x < lo || (x == lo && !lo_closed)) return false;
        return x < hi;
    }
};

struct Violation {
    std::string parameter;   // offending parameter, e.g. "a"
    std::string constraint;  // violated condition, e.g. "a > 0"
    double value;            // observed value (NaN for structural failures)
};

/// One concrete distribution instance: family tag plus classical parameters.
/// Classical parameters are authoritative; natural parameters are derived on
/// demand. Parameter layout per family:
///   Beta              {a, b}
///   ChiScaled         {k, var}
///   ChiNonScaled      {k}
///   ChiSquared        {nu}
///   Exponential       {lambda}
///   Gamma             {k, theta}
///   GaussianUni       {mu, var}
///   Gumbel            {mu, beta}      beta shared across a pair
///   HalfNormal        {var}
///   Laplace0          {b}             location fixed at 0
///   MaxwellBoltzmann  {var}
///   Pareto            {lambda, m}     m shared across a pair
///   Rayleigh          {var}
///   GaussianMulti     mean vector + covariance matrix
class FamilyDescriptor {
public:
    static FamilyDescriptor beta(double a, double b);
    static FamilyDescriptor chi_scaled(double k, double var);
    static FamilyDescriptor chi(double k);
    static FamilyDescriptor chi_squared(double nu);
    static FamilyDescriptor exponential(double lambda);
    static FamilyDescriptor gamma(double k, double theta);
    static FamilyDescriptor gaussian(double mu, double var);
    static FamilyDescriptor gaussian_multi(std::vector<double> mu, linalg::Matrix sigma);
    static FamilyDescriptor gumbel(double mu, double beta);
    static FamilyDescriptor half_normal(double var);
    static FamilyDescriptor laplace0(double b);
    static FamilyDescriptor maxwell(double var);
    static FamilyDescriptor pareto(double lambda, double m);
    static FamilyDescriptor rayleigh(double var);

    FamilyTag tag() const noexcept { return tag_; }
    bool multivariate() const noexcept { return tag_ == FamilyTag::GaussianMulti; }
    std::size_t dimension() const noexcept { return multivariate() ? mu_.size() : 1; }

    /// Classical parameter by position in the layout above (univariate only).
    double param(std::size_t i) const { return theta_.at(i); }
    const std::vector<double>& theta() const noexcept { return theta_; }

    const std::vector<double>& mean_vector() const { return mu_; }
    const linalg::Matrix& covariance() const { return sigma_; }

    /// Cross-pair constant that the closed forms require to be shared
    /// (Gumbel beta, Pareto m); nullopt for other families.
    std::optional<double> shared_constant() const;

    Support support() const;

    std::string to_string() const;

private:
    FamilyDescriptor(FamilyTag tag, std::vector<double> theta)
        : tag_(tag), theta_(std::move(theta)) {}
    FamilyDescriptor(std::vector<double> mu, linalg::Matrix sigma)
        : tag_(FamilyTag::GaussianMulti), mu_(std::move(mu)), sigma_(std::move(sigma)) {}

    FamilyTag tag_;
    std::vector<double> theta_;
    std::vector<double> mu_;     // GaussianMulti only
    linalg::Matrix sigma_;       // GaussianMulti only
};

/// Natural-parameter view of a univariate descriptor:
///   pdf(x) = exp(carrier_log(x) + <eta, sufficient_stat(x)> + log_normalizer).
struct NaturalParameterization {
    std::vector<double> eta;
    double log_normalizer;  // A(eta)
    std::function<double(double)> carrier_log;
    std::function<std::vector<double>(double)> sufficient_stat;
    bool carrier_is_one;    // true when b(x) == 1 identically
};

/// Parameter-domain violations for the descriptor; empty iff valid.
std::vector<Violation> validate(const FamilyDescriptor& d);

/// Throws InvalidParameters when validate(d) is nonempty.
void ensure_valid(const FamilyDescriptor& d);

/// ln f(x). Throws PointOutsideSupport / InvalidParameters.
double log_pdf(const FamilyDescriptor& d, double x);
double log_pdf(const FamilyDescriptor& d, const std::vector<double>& x);

/// Natural parameterization of a univariate descriptor. The two chi variants
/// and chi-squared are embedded in their two-parameter host families
/// (scaled chi and gamma) so their carriers stay identically one.
NaturalParameterization to_natural(const FamilyDescriptor& d);

/// Whether a (possibly mixed) natural-parameter vector lies in the family's
/// natural-parameter domain. `proto` supplies the family tag and any shared
/// constants.
bool natural_in_domain(const FamilyDescriptor& proto, std::span<const double> eta);

/// A(eta) for a vector in the family's natural-parameter domain.
double log_normalizer_from_eta(const FamilyDescriptor& proto, std::span<const double> eta);

namespace detail {

/// ln f(x) for quadrature interiors: skips validation and support checks and
/// consumes exact distances to the support endpoints, which keeps
/// endpoint-singular factors (powers of x and 1-x) accurate far below one
/// ulp of x. Callers must have validated the descriptor.
double log_pdf_prevalidated(const FamilyDescriptor& d, double x, double dist_lo,
                            double dist_hi);

}  // namespace detail

}  // namespace xent
