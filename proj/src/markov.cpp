#include "xent/markov.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace xent::markov {

namespace {

// Strongly connected components of the adjacency graph (edge i->j iff
// m(i,j) > 0), iterative Tarjan. Components come out in reverse topological
// order of the condensation.
std::vector<std::vector<std::size_t>> scc(const linalg::Matrix& m) {
    const std::size_t n = m.rows();
    std::vector<int> index(n, -1), low(n, 0);
    std::vector<bool> on_stack(n, false);
    std::vector<std::size_t> stack;
    std::vector<std::vector<std::size_t>> comps;
    int next_index = 0;

    struct Frame {
        std::size_t v;
        std::size_t child;
    };
    for (std::size_t root = 0; root < n; ++root) {
        if (index[root] != -1) continue;
        std::vector<Frame> call{{root, 0}};
        index[root] = low[root] = next_index++;
        stack.push_back(root);
        on_stack[root] = true;
        while (!call.empty()) {
            Frame& fr = call.back();
            bool descended = false;
            while (fr.child < n) {
                const std::size_t w = fr.child++;
                if (m(fr.v, w) <= 0.0) continue;
                if (index[w] == -1) {
                    index[w] = low[w] = next_index++;
                    stack.push_back(w);
                    on_stack[w] = true;
                    call.push_back({w, 0});
                    descended = true;
                    break;
                }
                if (on_stack[w]) low[fr.v] = std::min(low[fr.v], index[w]);
            }
            if (descended) continue;
            if (low[fr.v] == index[fr.v]) {
                std::vector<std::size_t> comp;
                while (true) {
                    const std::size_t w = stack.back();
                    stack.pop_back();
                    on_stack[w] = false;
                    comp.push_back(w);
                    if (w == fr.v) break;
                }
                std::sort(comp.begin(), comp.end());
                comps.push_back(std::move(comp));
            }
            const std::size_t v = fr.v;
            call.pop_back();
            if (!call.empty()) low[call.back().v] = std::min(low[call.back().v], low[v]);
        }
    }
    return comps;
}

linalg::Matrix submatrix(const linalg::Matrix& m, const std::vector<std::size_t>& idx) {
    linalg::Matrix s(idx.size(), idx.size());
    for (std::size_t i = 0; i < idx.size(); ++i)
        for (std::size_t j = 0; j < idx.size(); ++j) s(i, j) = m(idx[i], idx[j]);
    return s;
}

void check_q_positive(const linalg::Matrix& q) {
    for (std::size_t i = 0; i < q.rows(); ++i)
        for (std::size_t j = 0; j < q.cols(); ++j)
            if (!(q(i, j) > 0.0))
                throw QNotPositive("transition matrix Q must have positive entries");
}

void check_initial_positive(const std::vector<double>& v, const char* which) {
    for (double x : v)
        if (!(x > 0.0))
            throw InitialNotPositive(std::string("initial distribution ") + which +
                                     " must have positive entries");
}

void check_same_alphabet(const MarkovSource& a, const MarkovSource& b) {
    if (a.states() != b.states())
        throw InvalidParameters("markov sources must share a common alphabet size");
}

// Elementwise x^p with 0^p := 0 for p > 0 (and for any p, by the convention
// used in the Hadamard-power rates; zero entries stay structural zeros).
linalg::Matrix hadamard_pow(const linalg::Matrix& m, double p) {
    linalg::Matrix r(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            r(i, j) = m(i, j) == 0.0 ? 0.0 : std::pow(m(i, j), p);
    return r;
}

linalg::Matrix hadamard_mul(const linalg::Matrix& a, const linalg::Matrix& b) {
    linalg::Matrix r(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) r(i, j) = a(i, j) * b(i, j);
    return r;
}

}  // namespace

MarkovSource MarkovSource::make(linalg::Matrix transition, std::vector<double> initial) {
    const std::size_t n = transition.rows();
    if (transition.cols() != n || n == 0)
        throw InvalidParameters("transition matrix must be square and nonempty");
    for (std::size_t i = 0; i < n; ++i) {
        double row = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            if (transition(i, j) < 0.0 || !std::isfinite(transition(i, j)))
                throw InvalidParameters("transition entries must be nonnegative");
            row += transition(i, j);
        }
        if (std::fabs(row - 1.0) > 1e-12)
            throw InvalidParameters("transition row " + std::to_string(i) +
                                    " sums to " + std::to_string(row) + ", not 1");
    }
    if (initial.size() != n)
        throw InvalidParameters("initial distribution length mismatch");
    double total = 0.0;
    for (double x : initial) {
        if (x < 0.0 || !std::isfinite(x))
            throw InvalidParameters("initial entries must be nonnegative");
        total += x;
    }
    if (std::fabs(total - 1.0) > 1e-12)
        throw InvalidParameters("initial distribution must sum to 1");
    return {std::move(transition), std::move(initial)};
}

MarkovSource MarkovSource::make(linalg::Matrix transition) {
    const std::size_t n = transition.rows();
    return make(std::move(transition),
                std::vector<double>(n, 1.0 / static_cast<double>(n)));
}

std::pair<double, std::vector<double>> perron_root(const linalg::Matrix& r) {
    const std::size_t n = r.rows();
    if (n == 1) return {r(0, 0), {1.0}};
    // Power iteration on the shifted matrix R + sI. The shift makes every
    // irreducible nonnegative matrix primitive, so the iteration converges
    // regardless of the period of R.
    double shift = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double row = 0.0;
        for (std::size_t j = 0; j < n; ++j) row += r(i, j);
        shift = std::max(shift, row);
    }
    if (shift == 0.0) return {0.0, std::vector<double>(n, 1.0)};
    std::vector<double> x(n, 1.0), y(n, 0.0);
    double lo = 0.0, hi = 0.0;
    for (int iter = 0; iter < 100000; ++iter) {
        lo = std::numeric_limits<double>::infinity();
        hi = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            double s = shift * x[i];
            for (std::size_t j = 0; j < n; ++j) s += r(i, j) * x[j];
            y[i] = s;
            const double ratio = s / x[i];
            lo = std::min(lo, ratio);
            hi = std::max(hi, ratio);
        }
        double norm = 0.0;
        for (double v : y) norm = std::max(norm, std::fabs(v));
        for (std::size_t i = 0; i < n; ++i) x[i] = y[i] / norm;
        // Collatz-Wielandt bracket: lo <= lambda + shift <= hi.
        if (hi - lo <= 1e-13 * hi) {
            return {0.5 * (lo + hi) - shift, x};
        }
    }
    throw NonConvergent("perron root power iteration did not converge");
}

LambdaResult lambda_measure(const linalg::Matrix& r) {
    const std::size_t n = r.rows();
    if (r.cols() != n || n == 0) throw InvalidParameters("lambda: matrix must be square");
    bool all_zero = true;
    for (std::size_t i = 0; i < n && all_zero; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (r(i, j) < 0.0 || !std::isfinite(r(i, j)))
                throw InvalidParameters("lambda: matrix must be nonnegative");
            if (r(i, j) > 0.0) all_zero = false;
        }
    if (all_zero) throw ZeroMatrix("lambda of the all-zero matrix is undefined");

    LambdaResult res;
    const auto comps = scc(r);
    res.classification = comps.size() == 1 ? MatrixClassification::Irreducible
                                           : MatrixClassification::Reducible;

    // Class metadata and per-class Perron roots.
    std::vector<std::size_t> comp_of(n, 0);
    for (std::size_t c = 0; c < comps.size(); ++c)
        for (std::size_t v : comps[c]) comp_of[v] = c;
    for (const auto& members : comps) {
        CommunicatingClass cc;
        cc.states = members;
        cc.self_communicating =
            members.size() > 1 || r(members[0], members[0]) > 0.0;
        cc.perron_root =
            cc.self_communicating ? perron_root(submatrix(r, members)).first : 0.0;
        res.class_structure.push_back(std::move(cc));
    }

    // Condensation reachability: mark classes reachable from any inessential
    // (non-self-communicating) class. Tarjan emits components in reverse
    // topological order, so scanning from the back follows edge direction.
    const std::size_t nc = comps.size();
    std::vector<std::vector<bool>> reach(nc, std::vector<bool>(nc, false));
    for (std::size_t c = 0; c < nc; ++c) reach[c][c] = true;
    for (std::size_t ci = nc; ci-- > 0;) {
        for (std::size_t v : comps[ci])
            for (std::size_t w = 0; w < n; ++w) {
                if (r(v, w) <= 0.0) continue;
                const std::size_t cj = comp_of[w];
                if (cj == ci) continue;
                for (std::size_t t = 0; t < nc; ++t)
                    if (reach[cj][t]) reach[ci][t] = true;
            }
    }
    for (std::size_t c = 0; c < nc; ++c) {
        if (res.class_structure[c].self_communicating) continue;
        for (std::size_t t = 0; t < nc; ++t)
            if (reach[c][t]) res.class_structure[t].reachable_from_inessential = true;
    }

    res.lambda_star = 0.0;
    res.lambda_sub = 0.0;
    for (const auto& cc : res.class_structure) {
        if (cc.self_communicating)
            res.lambda_star = std::max(res.lambda_star, cc.perron_root);
        if (cc.reachable_from_inessential)
            res.lambda_sub = std::max(res.lambda_sub, cc.perron_root);
    }
    res.value = res.classification == MatrixClassification::Irreducible
                    ? res.class_structure.front().perron_root
                    : std::max(res.lambda_star, res.lambda_sub);
    return res;
}

std::vector<double> stationary_distribution(const linalg::Matrix& p) {
    MarkovSource::make(p);  // row-stochasticity check
    const std::size_t n = p.rows();
    const auto comps = scc(p);
    std::vector<std::size_t> comp_of(n, 0);
    for (std::size_t c = 0; c < comps.size(); ++c)
        for (std::size_t v : comps[c]) comp_of[v] = c;
    // Essential classes have no edges leaving the class.
    std::vector<std::size_t> essential;
    for (std::size_t c = 0; c < comps.size(); ++c) {
        bool closed = true;
        for (std::size_t v : comps[c])
            for (std::size_t w = 0; w < n && closed; ++w)
                if (p(v, w) > 0.0 && comp_of[w] != c) closed = false;
        if (closed) essential.push_back(c);
    }
    if (essential.size() != 1)
        throw NonUniqueStationary("chain has " + std::to_string(essential.size()) +
                                  " essential classes; stationary distribution "
                                  "not unique");
    const auto& members = comps[essential.front()];
    const std::size_t m = members.size();
    const linalg::Matrix pc = submatrix(p, members);
    // Solve x^T (P - I) = 0 with sum(x) = 1: transpose system with the last
    // equation replaced by the normalization.
    linalg::Matrix sys(m, m);
    std::vector<double> rhs(m, 0.0);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j)
            sys(i, j) = pc(j, i) - (i == j ? 1.0 : 0.0);
    for (std::size_t j = 0; j < m; ++j) sys(m - 1, j) = 1.0;
    rhs[m - 1] = 1.0;
    auto sol = linalg::solve(sys, rhs);
    if (!sol) throw NonConvergent("stationary distribution solve failed");
    // One step of iterative refinement through the chain itself.
    std::vector<double> pi = *sol;
    std::vector<double> next(m, 0.0);
    for (std::size_t j = 0; j < m; ++j) {
        double s = 0.0;
        for (std::size_t i = 0; i < m; ++i) s += pi[i] * pc(i, j);
        next[j] = s;
    }
    double total = 0.0;
    for (double v : next) total += v;
    for (auto& v : next) v /= total;

    std::vector<double> full(n, 0.0);
    for (std::size_t i = 0; i < m; ++i) full[members[i]] = next[i];
    return full;
}

double shannon_rate(const MarkovSource& src1, const MarkovSource& src2) {
    check_same_alphabet(src1, src2);
    check_q_positive(src2.transition);
    const auto pi = stationary_distribution(src1.transition);
    const std::size_t n = src1.states();
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        if (pi[i] == 0.0) continue;
        double row = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            const double pij = src1.transition(i, j);
            if (pij == 0.0) continue;  // 0 ln q := 0
            row += pij * std::log(src2.transition(i, j));
        }
        acc += pi[i] * row;
    }
    return -acc;
}

double renyi_rate(const MarkovSource& src1, const MarkovSource& src2,
                  const AlphaOrder& a) {
    if (a.is_shannon()) return shannon_rate(src1, src2);
    check_same_alphabet(src1, src2);
    check_q_positive(src2.transition);
    check_initial_positive(src1.initial, "p");
    check_initial_positive(src2.initial, "q");
    const double alpha = a.value();
    const auto r = hadamard_mul(src1.transition,
                                hadamard_pow(src2.transition, alpha - 1.0));
    return std::log(lambda_measure(r).value) / (1.0 - alpha);
}

double natural_renyi_rate(const MarkovSource& src1, const MarkovSource& src2,
                          const AlphaOrder& a) {
    if (a.is_shannon()) return shannon_rate(src1, src2);
    check_same_alphabet(src1, src2);
    check_q_positive(src2.transition);
    check_initial_positive(src1.initial, "p");
    check_initial_positive(src2.initial, "q");
    const double alpha = a.value();
    const auto pa = hadamard_pow(src1.transition, alpha);
    const auto num = hadamard_mul(pa, hadamard_pow(src2.transition, 1.0 - alpha));
    const double l_num = lambda_measure(num).value;
    const double l_den = lambda_measure(pa).value;
    return (std::log(l_num) - std::log(l_den)) / (alpha - 1.0);
}

double brute_force_rate(const MarkovSource& src1, const MarkovSource& src2,
                        const AlphaOrder& a, int n, Measure measure) {
    check_same_alphabet(src1, src2);
    check_q_positive(src2.transition);
    check_initial_positive(src1.initial, "p");
    check_initial_positive(src2.initial, "q");
    if (n < 1) throw InvalidParameters("brute force: n >= 1 required");
    const std::size_t m = src1.states();
    double budget = 1.0;
    for (int i = 0; i < n; ++i) {
        budget *= static_cast<double>(m);
        if (budget > 1e7)
            throw BudgetExceeded("brute force enumeration exceeds 10^7 sequences");
    }

    const linalg::Matrix& p = src1.transition;
    const linalg::Matrix& q = src2.transition;

    // Depth-first sum over all sequences; the recursion tree fixes the
    // summation order deterministically.
    struct Enumerator {
        const linalg::Matrix& p;
        const linalg::Matrix& q;
        int n;
        double p_pow, q_pow;  // accumulate p(x)^p_pow q(x)^q_pow
        bool shannon;

        double leaf(double ln_p, double ln_q) const {
            if (shannon) return std::exp(ln_p) * (-ln_q);
            return std::exp(p_pow * ln_p + q_pow * ln_q);
        }
        double walk(std::size_t state, int depth, double ln_p, double ln_q) const {
            if (depth == n) return leaf(ln_p, ln_q);
            double acc = 0.0;
            for (std::size_t j = 0; j < p.cols(); ++j) {
                const double pj = p(state, j);
                if (pj == 0.0) continue;  // entire subtree contributes 0
                acc += walk(j, depth + 1, ln_p + std::log(pj),
                            ln_q + std::log(q(state, j)));
            }
            return acc;
        }
        double run(const std::vector<double>& p0, const std::vector<double>& q0) const {
            double acc = 0.0;
            for (std::size_t j = 0; j < p0.size(); ++j)
                acc += walk(j, 1, std::log(p0[j]), std::log(q0[j]));
            return acc;
        }
    };

    if (a.is_shannon() || measure == Measure::Shannon) {
        Enumerator e{p, q, n, 1.0, 1.0, true};
        return e.run(src1.initial, src2.initial) / n;
    }
    const double alpha = a.value();
    switch (measure) {
        case Measure::Renyi:
        case Measure::RenyiEntropy: {
            Enumerator e{p, q, n, 1.0, alpha - 1.0, false};
            const double s = e.run(src1.initial, src2.initial);
            return std::log(s) / ((1.0 - alpha) * n);
        }
        case Measure::NaturalRenyi: {
            Enumerator div{p, q, n, alpha, 1.0 - alpha, false};
            Enumerator ent{p, q, n, alpha, 0.0, false};
            const double sd = div.run(src1.initial, src2.initial);
            const double se = ent.run(src1.initial, src2.initial);
            return (std::log(sd) / (alpha - 1.0) + std::log(se) / (1.0 - alpha)) / n;
        }
        default:
            throw InvalidParameters("brute force: unsupported measure");
    }
}

}  // namespace xent::markov
