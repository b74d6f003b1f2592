#pragma once

#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "xent/alpha.hpp"
#include "xent/families.hpp"

namespace xent {

enum class Measure { Renyi, NaturalRenyi, Shannon, RenyiEntropy };
enum class Method { ClosedForm, GenericEngine, Oracle };

const char* measure_name(Measure m);
const char* method_name(Method m);

/// A computed measure value together with how it was obtained and the named
/// intermediates (mixture parameters, log-normalizers, carrier expectations)
/// that the formula passed through. Diagnostics preserve insertion order so
/// serialized output is deterministic.
struct XentResult {
    double value = 0.0;
    Measure measure = Measure::Renyi;
    Method method = Method::ClosedForm;
    std::vector<std::pair<std::string, double>> diagnostics;
    /// Diagnostics keys holding the row's positivity-constraint quantities
    /// (each must stay > 0 for the measure to be defined).
    std::vector<std::string> constraint_keys;

    void put(std::string key, double v) { diagnostics.emplace_back(std::move(key), v); }
    double diagnostic(const std::string& key) const;
    bool has_diagnostic(const std::string& key) const;
};

/// Renyi differential cross-entropy h_a(f1; f2) in closed form. Dispatches to
/// the Shannon cross-entropy for the Shannon-limit order. Throws
/// ConstraintViolated when the row's positivity constraint fails (the measure
/// is undefined/infinite there) and FamilyMismatch for mixed families or
/// unequal shared constants.
XentResult renyi_xent(const FamilyDescriptor& f1, const FamilyDescriptor& f2,
                      const AlphaOrder& a);

/// Natural Renyi differential cross-entropy (Renyi divergence plus Renyi
/// entropy) in closed form.
XentResult natural_renyi_xent(const FamilyDescriptor& f1, const FamilyDescriptor& f2,
                              const AlphaOrder& a);

/// Shannon differential cross-entropy -Int f1 ln f2 in closed form.
XentResult shannon_xent(const FamilyDescriptor& f1, const FamilyDescriptor& f2);

/// Renyi differential entropy, i.e. the cross-entropy of f with itself.
XentResult renyi_entropy(const FamilyDescriptor& f, const AlphaOrder& a);

/// Evaluator for E = E_{f_mix}[b(X)^(alpha-1)] given the base natural
/// parameterization (for carrier and sufficient statistic), the mixed natural
/// parameter, its log-normalizer, and alpha. Returns E itself.
using CarrierExpectation = std::function<double(
    const NaturalParameterization& base, std::span<const double> eta_mixed,
    double log_normalizer_mixed, double alpha)>;

/// Generic exponential-family engine:
///   value = [A(eta1) - A(eta_h) + ln E_h] / (1 - alpha) - A(eta2),
/// with eta_h = eta1 + (alpha-1) eta2. Families whose carrier is identically
/// one have E_h = 1; otherwise E_h comes from the supplied evaluator or an
/// internal adaptive quadrature. Univariate families only.
XentResult generic_renyi_xent(const FamilyDescriptor& f1, const FamilyDescriptor& f2,
                              const AlphaOrder& a,
                              const CarrierExpectation& carrier_expectation = {});

/// Generic engine for the Natural measure:
///   value = [A(eta_a) - A(alpha eta1) + ln E_a] / (1 - alpha) - A(eta2),
/// with eta_a = alpha eta1 + (1-alpha) eta2 and E_a taken under the member
/// with natural parameter alpha*eta1.
XentResult generic_natural_renyi_xent(const FamilyDescriptor& f1,
                                      const FamilyDescriptor& f2, const AlphaOrder& a,
                                      const CarrierExpectation& carrier_expectation = {});

}  // namespace xent
