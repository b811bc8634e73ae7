#pragma once

#include "freepot/demilinear.hpp"
#include "freepot/paths.hpp"

namespace freepot {

/// Composite Gauss-Legendre configuration: fixed node count per panel with
/// panel doubling until successive estimates agree to abs_tol.
struct QuadratureConfig {
    std::size_t nodes = 16;
    double abs_tol = 1e-10;
    std::size_t max_panels = 1024;
};

/// Nodes and weights on [-1, 1].
struct GaussRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

const GaussRule& gauss_legendre(std::size_t m);

struct LineIntegralResult {
    MatrixTuple value;
    bool converged = true;  // false when the panel budget ran out
    double est_error = 0.0;
    std::size_t panels = 0;
};

/// I(T, gamma) = integral over [0,1] of T(gamma(t), gamma'(t)) dt, entrywise.
/// When a domain is supplied, every quadrature node is membership-checked.
LineIntegralResult line_integral(const DemilinearMap& t, const SmoothPath& gamma,
                                 const QuadratureConfig& q = {},
                                 const FreeDomain* domain = nullptr);

struct IntegralFreeReport {
    double direct_sum_residual = 0.0;
    double conjugation_residual = 0.0;
};

/// Checks I(T, gamma (+) eta) = I(T,gamma) (+) I(T,eta) and
/// I(T, S^,-1 gamma S) = S^{-1} I(T,gamma) S.
IntegralFreeReport integral_free_check(const DemilinearMap& t, const SmoothPath& gamma,
                                       const SmoothPath& eta, const Similarity& s,
                                       const QuadratureConfig& q = {});

struct PathIndependenceReport {
    double residual = 0.0;
    bool verdict = false;
};

/// Same-endpoint paths must agree for curl-free T.
PathIndependenceReport path_independence_test(const DemilinearMap& t, const SmoothPath& g1,
                                              const SmoothPath& g2, const QuadratureConfig& q,
                                              double tol);

}  // namespace freepot
