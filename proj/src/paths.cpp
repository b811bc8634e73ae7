#include "freepot/paths.hpp"

#include <cmath>
#include <random>

namespace freepot {

SmoothPath::SmoothPath(std::size_t g, std::size_t level, PointFn gamma, PointFn dgamma,
                       std::vector<double> breakpoints)
    : g_(g),
      level_(level),
      gamma_(std::move(gamma)),
      dgamma_(std::move(dgamma)),
      breakpoints_(std::move(breakpoints)) {}

SmoothPath SmoothPath::segment(MatrixTuple from, MatrixTuple to) {
    if (from.arity() != to.arity() || from.level() != to.level())
        throw std::invalid_argument("SmoothPath: endpoint shape mismatch");
    MatrixTuple diff = to - from;
    const std::size_t g = from.arity(), n = from.level();
    auto gamma = [from = std::move(from), diff](double t) {
        MatrixTuple p = from;
        p += cplx{t} * diff;
        return p;
    };
    auto dgamma = [diff](double) { return diff; };
    return SmoothPath(g, n, std::move(gamma), std::move(dgamma), {});
}

SmoothPath SmoothPath::bezier(MatrixTuple from, MatrixTuple control, MatrixTuple to) {
    if (from.arity() != to.arity() || from.level() != to.level() ||
        control.arity() != from.arity() || control.level() != from.level())
        throw std::invalid_argument("SmoothPath: endpoint shape mismatch");
    const std::size_t g = from.arity(), n = from.level();
    auto gamma = [from, control, to](double t) {
        const double u = 1.0 - t;
        MatrixTuple p = cplx{u * u} * from;
        p += cplx{2.0 * u * t} * control;
        p += cplx{t * t} * to;
        return p;
    };
    auto dgamma = [from, control, to](double t) {
        MatrixTuple d = cplx{2.0 * (1.0 - t)} * (control - from);
        d += cplx{2.0 * t} * (to - control);
        return d;
    };
    return SmoothPath(g, n, std::move(gamma), std::move(dgamma), {});
}

SmoothPath SmoothPath::polyline(std::vector<MatrixTuple> waypoints) {
    if (waypoints.size() < 2)
        throw std::invalid_argument("SmoothPath: polyline needs at least two waypoints");
    for (const auto& w : waypoints)
        if (w.arity() != waypoints[0].arity() || w.level() != waypoints[0].level())
            throw std::invalid_argument("SmoothPath: waypoint shape mismatch");
    const std::size_t g = waypoints[0].arity(), n = waypoints[0].level();
    const std::size_t legs = waypoints.size() - 1;
    std::vector<double> breaks;
    for (std::size_t k = 1; k < legs; ++k)
        breaks.push_back(static_cast<double>(k) / static_cast<double>(legs));
    auto locate = [legs](double t) {
        double scaled = t * static_cast<double>(legs);
        std::size_t leg = std::min(static_cast<std::size_t>(scaled), legs - 1);
        return std::pair<std::size_t, double>(leg, scaled - static_cast<double>(leg));
    };
    auto gamma = [waypoints, locate](double t) {
        auto [leg, u] = locate(t);
        const double s = u * u * (3.0 - 2.0 * u);  // velocity vanishes at corners
        MatrixTuple p = waypoints[leg];
        p += cplx{s} * (waypoints[leg + 1] - waypoints[leg]);
        return p;
    };
    auto dgamma = [waypoints, locate, legs](double t) {
        auto [leg, u] = locate(t);
        const double ds = 6.0 * u * (1.0 - u) * static_cast<double>(legs);
        return cplx{ds} * (waypoints[leg + 1] - waypoints[leg]);
    };
    return SmoothPath(g, n, std::move(gamma), std::move(dgamma), std::move(breaks));
}

SmoothPath SmoothPath::parametric(std::size_t g, std::size_t level, PointFn gamma,
                                  PointFn dgamma, std::vector<double> breakpoints) {
    if (!gamma || !dgamma)
        throw std::invalid_argument("SmoothPath: parametric path needs both callables");
    return SmoothPath(g, level, std::move(gamma), std::move(dgamma), std::move(breakpoints));
}

double SmoothPath::derivative_probe(std::mt19937_64& eng) const {
    std::uniform_real_distribution<double> u(0.05, 0.95);
    const double step = 1e-6;
    double worst = 0.0;
    for (int i = 0; i < 5; ++i) {
        const double t = u(eng);
        MatrixTuple central = at(t + step) - at(t - step);
        central *= cplx{0.5 / step};
        const double scale = 1.0 + central.frobenius();
        worst = std::max(worst, (central - derivative(t)).frobenius() / scale);
    }
    return worst;
}

SmoothPath direct_sum_path(const SmoothPath& a, const SmoothPath& b) {
    if (a.arity() != b.arity())
        throw std::invalid_argument("direct_sum_path: arity mismatch");
    std::vector<double> breaks = a.breakpoints();
    breaks.insert(breaks.end(), b.breakpoints().begin(), b.breakpoints().end());
    std::sort(breaks.begin(), breaks.end());
    breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());
    return SmoothPath::parametric(
        a.arity(), a.level() + b.level(),
        [a, b](double t) { return direct_sum(a.at(t), b.at(t)); },
        [a, b](double t) { return direct_sum(a.derivative(t), b.derivative(t)); },
        std::move(breaks));
}

SmoothPath conjugate_path(const Similarity& s, const SmoothPath& p) {
    if (s.dim() != p.level())
        throw std::invalid_argument("conjugate_path: dimension mismatch");
    return SmoothPath::parametric(
        p.arity(), p.level(), [s, p](double t) { return conjugate(s, p.at(t)); },
        [s, p](double t) { return conjugate(s, p.derivative(t)); }, p.breakpoints());
}

}  // namespace freepot
