#pragma once

#include <cstdint>
#include <vector>

#include "xent/alpha.hpp"
#include "xent/closed_form.hpp"
#include "xent/linalg.hpp"

namespace xent::markov {

/// Finite-alphabet time-invariant Markov source: row-stochastic transition
/// matrix plus an initial distribution. Construction enforces the type
/// invariants (rows sum to one within 1e-12, entries nonnegative).
struct MarkovSource {
    linalg::Matrix transition;
    std::vector<double> initial;

    static MarkovSource make(linalg::Matrix transition, std::vector<double> initial);
    /// Uniform initial distribution.
    static MarkovSource make(linalg::Matrix transition);

    std::size_t states() const { return transition.rows(); }
};

struct CommunicatingClass {
    std::vector<std::size_t> states;
    bool self_communicating = false;       // size > 1, or a singleton with a self-loop
    double perron_root = 0.0;              // 0 by convention for inessential singletons
    bool reachable_from_inessential = false;
};

enum class MatrixClassification { Irreducible, Reducible };

/// lambda(R) for a nonnegative matrix: the Perron root when R is irreducible;
/// otherwise max(lambda_star, lambda_sub) over the canonical-form classes.
struct LambdaResult {
    double value = 0.0;
    MatrixClassification classification = MatrixClassification::Irreducible;
    std::vector<CommunicatingClass> class_structure;
    double lambda_star = 0.0;  // max Perron root over self-communicating classes
    double lambda_sub = 0.0;   // max Perron root over classes reachable from an
                               // inessential class
};

/// Stationary row vector pi with pi^T P = pi^T, requiring a unique essential
/// class. Throws NonUniqueStationary otherwise.
std::vector<double> stationary_distribution(const linalg::Matrix& p);

LambdaResult lambda_measure(const linalg::Matrix& r);

/// Perron root and eigenvector of an irreducible nonnegative matrix by
/// shifted power iteration (exposed for the property tests).
std::pair<double, std::vector<double>> perron_root(const linalg::Matrix& r);

/// Shannon cross-entropy rate  -sum_i pi_p(i) sum_j P(i,j) ln Q(i,j),
/// with the 0 ln q := 0 convention for P(i,j) = 0.
double shannon_rate(const MarkovSource& src1, const MarkovSource& src2);

/// Renyi cross-entropy rate  (1/(1-a)) ln lambda(P o Q^(a-1))  (Hadamard
/// product and elementwise power). Independent of the initial distributions.
double renyi_rate(const MarkovSource& src1, const MarkovSource& src2,
                  const AlphaOrder& a);

/// Natural Renyi cross-entropy rate
///   (1/(a-1)) [ln lambda(P^a o Q^(1-a)) - ln lambda(P^a)]
/// with elementwise powers and 0^a := 0.
double natural_renyi_rate(const MarkovSource& src1, const MarkovSource& src2,
                          const AlphaOrder& a);

/// Finite-n oracle: enumerates all m^n sequences, computes their P- and
/// Q-probabilities by the chain rule with the given initial vectors, and
/// returns the per-letter cross-entropy of the length-n sequence
/// distributions. Measure selects the plain Renyi sum (default), the Natural
/// decomposition, or (with the Shannon-limit order) the Shannon sum. Requires
/// m^n <= 10^7.
double brute_force_rate(const MarkovSource& src1, const MarkovSource& src2,
                        const AlphaOrder& a, int n,
                        Measure measure = Measure::Renyi);

}  // namespace xent::markov
