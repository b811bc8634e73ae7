#pragma once

#include <functional>

#include "freepot/tuple.hpp"

namespace freepot {

/// Differentiable path gamma: [0,1] -> matrix-tuple space with an evaluable
/// derivative. Interior breakpoints mark reduced smoothness; quadrature panels
/// never straddle them.
class SmoothPath {
public:
    using PointFn = std::function<MatrixTuple(double)>;

    static SmoothPath segment(MatrixTuple from, MatrixTuple to);
    /// Quadratic Bezier arc through the given control tuple.
    static SmoothPath bezier(MatrixTuple from, MatrixTuple control, MatrixTuple to);
    /// C^1 path through waypoints; each leg is time-warped so the velocity
    /// vanishes at the corners.
    static SmoothPath polyline(std::vector<MatrixTuple> waypoints);
    static SmoothPath parametric(std::size_t g, std::size_t level, PointFn gamma,
                                 PointFn dgamma, std::vector<double> breakpoints = {});

    MatrixTuple at(double t) const { return gamma_(t); }
    MatrixTuple derivative(double t) const { return dgamma_(t); }

    std::size_t arity() const { return g_; }
    std::size_t level() const { return level_; }
    const std::vector<double>& breakpoints() const { return breakpoints_; }

    MatrixTuple start() const { return gamma_(0.0); }
    MatrixTuple end() const { return gamma_(1.0); }

    /// Max mismatch between the declared derivative and a central difference
    /// probe at five random interior times.
    double derivative_probe(std::mt19937_64& eng) const;

private:
    SmoothPath(std::size_t g, std::size_t level, PointFn gamma, PointFn dgamma,
               std::vector<double> breakpoints);
    std::size_t g_, level_;
    PointFn gamma_, dgamma_;
    std::vector<double> breakpoints_;
};

/// Pointwise direct sum (gamma (+) eta)(t); levels add.
SmoothPath direct_sum_path(const SmoothPath& a, const SmoothPath& b);

/// S^{-1} gamma(t) S.
SmoothPath conjugate_path(const Similarity& s, const SmoothPath& p);

}  // namespace freepot
