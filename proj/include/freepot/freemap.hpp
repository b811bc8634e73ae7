#pragma once

#include <functional>
#include <optional>

#include "freepot/demilinear.hpp"

namespace freepot {

enum class MapProvenance { polynomial, black_box };

/// Level-wise map X -> f(X) assumed free analytic on its caller-managed domain.
/// Evaluators must be safe to invoke concurrently.
class FreeMap {
public:
    using Evaluator = std::function<MatrixTuple(const MatrixTuple&)>;

    FreeMap(const NcPoly& poly);
    FreeMap(std::size_t g, std::size_t h, Evaluator eval);

    std::size_t arity() const { return g_; }
    std::size_t out_arity() const { return h_; }
    MapProvenance provenance() const { return provenance_; }
    const std::optional<NcPoly>& poly() const { return poly_; }

    MatrixTuple operator()(const MatrixTuple& x) const;

private:
    std::size_t g_, h_;
    Evaluator eval_;
    MapProvenance provenance_;
    std::optional<NcPoly> poly_;
};

/// Df(X)[H] via the block trick: the upper-right block of f([[X,H],[0,X]]).
/// Exact for analytic free maps; evaluates f at the doubled level.
MatrixTuple nc_derivative(const FreeMap& f, const MatrixTuple& x, const MatrixTuple& h);

struct LimitDerivative {
    MatrixTuple value;
    double error_estimate = 0.0;
    bool converged = true;  // false when the extrapolation increments grow
};

/// Difference-quotient derivative with one Richardson stage over a descending
/// step ladder. Exists as an independent oracle and for maps only available
/// level-wise.
LimitDerivative nc_derivative_limit(const FreeMap& f, const MatrixTuple& x,
                                    const MatrixTuple& h,
                                    const std::vector<double>& steps = {1e-2, 5e-3, 2.5e-3});

/// Wrap F(X,H) = Df(X)[H] as a demilinear map (runs the linearity probe).
DemilinearMap derivative_as_demilinear(const FreeMap& f);

struct FreeAxiomReport {
    double direct_sum_residual = 0.0;
    double similarity_residual = 0.0;
    bool verdict = false;
    std::optional<CMatrix> witness_similarity;  // the S that broke conjugation
};

/// Samples X, Y and random well-conditioned S; checks f(X (+) Y) = f(X) (+) f(Y)
/// and f(S^{-1} X S) = S^{-1} f(X) S within tol * cond(S) * (1 + scale).
FreeAxiomReport verify_free(const FreeMap& f, const FreeDomain& domain, std::size_t trials,
                            SplitRng rng, double tol);

}  // namespace freepot
