#pragma once

#include <memory>
#include <mutex>
#include <unordered_map>

#include "freepot/freemap.hpp"
#include "freepot/quadrature.hpp"

namespace freepot {

/// Phi(X, Y) = I(T, path from Y to X). Built-in domains use the straight
/// segment (levels are convex); custom domains must supply waypoints.
MatrixTuple phi(const DemilinearMap& t, const MatrixTuple& x, const MatrixTuple& y,
                const FreeDomain& domain, const QuadratureConfig& q = {},
                const std::vector<MatrixTuple>& waypoints = {});

struct BetaResult {
    MatrixTuple value;
    double mc_error = 0.0;  // Frobenius estimate of the Monte-Carlo standard error
};

/// beta_n(X): Monte-Carlo Haar average of U* Phi(U X U*, Z_n) U over `haar_samples`
/// unitaries drawn from per-index substreams of `rng`. alpha_n(X) = Phi(X, Z_n)
/// is the one-sample, U = I special case. Deterministic given (seed, M, q)
/// regardless of worker count.
BetaResult beta(const DemilinearMap& t, const MatrixTuple& x, const MatrixTuple& anchor,
                std::size_t haar_samples, const SplitRng& rng, const FreeDomain& domain,
                const QuadratureConfig& q = {});

struct SimilarityCheckReport {
    double max_residual = 0.0;       // relative, divided by cond(S) * (1 + scale)
    double max_mc_error = 0.0;
    bool restricted_to_unitaries = false;  // ball domains are only unitary-closed
};

/// Numeric check that a beta evaluator respects conjugation by similarities
/// (unitaries only on ball domains).
SimilarityCheckReport similarity_check(
    const std::function<BetaResult(const MatrixTuple&)>& beta_fn, std::size_t level,
    const FreeDomain& domain, std::size_t trials, SplitRng rng);

struct PairConstants {
    std::vector<cplx> c_low;   // c^m_{m+n}, one per output slot
    std::vector<cplx> c_high;  // c^n_{m+n}
    double structure_residual = 0.0;  // deviation from the scalar-block form
    double probe_deviation = 0.0;     // scalar drift across the second probe pair
    double mc_error = 0.0;
};

/// Evaluates beta_{m+n}(X (+) Y) - beta_m(X) (+) beta_n(Y), asserts the result
/// is c I_m (+) c' I_n and returns the scalars. A structure residual above
/// max(1e-6, 10 * mc_error) aborts: the map is not curl-free or M is too small.
PairConstants pair_constants(const DemilinearMap& t, std::size_t m, std::size_t n,
                             const FreeDomain& domain, std::size_t haar_samples,
                             const SplitRng& rng, const QuadratureConfig& q = {},
                             bool enforce_structure = true);

struct ConstantsTable {
    std::size_t n0 = 0;  // min of the covered level set
    std::map<std::pair<std::size_t, std::size_t>, PairConstants> pairs;
    std::map<std::size_t, std::vector<cplx>> level_constants;  // b_k per slot
};

/// Reconstructed potential: per-level Haar-averaged anchor integrals plus the
/// direct-sum level constants, f_k(X) = beta_k(X) + b_k I. Evaluation is
/// deterministic given (seed, M); repeated probes hit a per-point cache.
class PotentialFunction {
public:
    MatrixTuple operator()(const MatrixTuple& x) const;
    BetaResult beta_at(const MatrixTuple& x) const;

    const ConstantsTable& constants() const;
    const FreeDomain& domain() const;
    const DemilinearMap& source() const;
    std::size_t haar_samples() const;
    std::uint64_t seed() const;
    const std::vector<std::size_t>& covered_levels() const;
    bool constants_fixed() const;  // false when the level set cannot reach k + n0

    /// b at a level, computing and recording new pair constants on demand.
    std::vector<cplx> level_constant(std::size_t level) const;

    FreeMap as_free_map() const;

private:
    friend PotentialFunction build_potential(const DemilinearMap&, const FreeDomain&,
                                             const std::vector<std::size_t>&, std::size_t,
                                             std::uint64_t, const QuadratureConfig&);
    struct State;
    std::shared_ptr<State> state_;
};

/// The four-step construction: anchors, Haar-averaged integrals, and level
/// constants b_k = c^k_{k+n0} - c^{n0}_{k+n0} from direct sums. Anchors come
/// from the domain (set custom ones on it beforehand).
PotentialFunction build_potential(const DemilinearMap& t, const FreeDomain& domain,
                                  const std::vector<std::size_t>& levels,
                                  std::size_t haar_samples, std::uint64_t seed,
                                  const QuadratureConfig& q = {});

struct ValidationReport {
    double derivative_residual = 0.0;   // || Dfhat(X)[H] - T(X,H) || via the limit engine
    double direct_sum_residual = 0.0;
    double similarity_residual = 0.0;
    double mc_error = 0.0;
    double tolerance_model = 0.0;  // abs_tol + kappa / sqrt(M)
    bool similarity_restricted_to_unitaries = false;
    bool verdict = false;
};

ValidationReport validate_potential(const PotentialFunction& fhat, const DemilinearMap& t,
                                    std::size_t samples, SplitRng rng, double tol);

}  // namespace freepot
