#include "freepot/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>

namespace freepot {

const GaussRule& gauss_legendre(std::size_t m) {
    static std::map<std::size_t, GaussRule> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(m);
    if (it != cache.end()) return it->second;
    if (m < 2) throw std::invalid_argument("gauss_legendre: need at least 2 nodes");

    GaussRule rule;
    rule.nodes.resize(m);
    rule.weights.resize(m);
    for (std::size_t i = 0; i < (m + 1) / 2; ++i) {
        // Newton on P_m with the Chebyshev-based initial guess
        double x = std::cos(M_PI * (static_cast<double>(i) + 0.75) /
                            (static_cast<double>(m) + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = x;
            for (std::size_t k = 2; k <= m; ++k) {
                const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = pk;
            }
            dp = m * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        rule.nodes[i] = -x;
        rule.nodes[m - 1 - i] = x;
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.weights[i] = w;
        rule.weights[m - 1 - i] = w;
    }
    return cache.emplace(m, std::move(rule)).first->second;
}

namespace {

MatrixTuple integrate_panels(const DemilinearMap& t, const SmoothPath& gamma,
                             const std::vector<double>& bounds, const GaussRule& rule,
                             const FreeDomain* domain) {
    MatrixTuple acc(t.out_arity(), gamma.level());
    for (std::size_t p = 0; p + 1 < bounds.size(); ++p) {
        const double a = bounds[p], b = bounds[p + 1];
        const double half = 0.5 * (b - a), mid = 0.5 * (a + b);
        for (std::size_t j = 0; j < rule.nodes.size(); ++j) {
            const double tj = mid + half * rule.nodes[j];
            MatrixTuple point = gamma.at(tj);
            if (domain && !domain->contains(point))
                throw std::domain_error("line_integral: path leaves the domain at t=" +
                                        std::to_string(tj));
            MatrixTuple val = t(point, gamma.derivative(tj));
            acc += cplx{half * rule.weights[j]} * val;
        }
    }
    return acc;
}

std::vector<double> halve_panels(const std::vector<double>& bounds) {
    std::vector<double> out;
    out.reserve(bounds.size() * 2 - 1);
    for (std::size_t i = 0; i + 1 < bounds.size(); ++i) {
        out.push_back(bounds[i]);
        out.push_back(0.5 * (bounds[i] + bounds[i + 1]));
    }
    out.push_back(bounds.back());
    return out;
}

}  // namespace

LineIntegralResult line_integral(const DemilinearMap& t, const SmoothPath& gamma,
                                 const QuadratureConfig& q, const FreeDomain* domain) {
    if (t.arity() != gamma.arity())
        throw std::invalid_argument("line_integral: arity mismatch");
    const GaussRule& rule = gauss_legendre(q.nodes);

    std::vector<double> bounds{0.0};
    for (double b : gamma.breakpoints())
        if (b > 0.0 && b < 1.0) bounds.push_back(b);
    bounds.push_back(1.0);

    MatrixTuple estimate = integrate_panels(t, gamma, bounds, rule, domain);
    for (;;) {
        if (bounds.size() - 1 >= q.max_panels)
            return {std::move(estimate), false, q.abs_tol, bounds.size() - 1};
        bounds = halve_panels(bounds);
        MatrixTuple refined = integrate_panels(t, gamma, bounds, rule, domain);
        const double diff = (refined - estimate).frobenius();
        estimate = std::move(refined);
        if (diff <= q.abs_tol) return {std::move(estimate), true, diff, bounds.size() - 1};
    }
}

IntegralFreeReport integral_free_check(const DemilinearMap& t, const SmoothPath& gamma,
                                       const SmoothPath& eta, const Similarity& s,
                                       const QuadratureConfig& q) {
    IntegralFreeReport report;

    MatrixTuple joint = line_integral(t, direct_sum_path(gamma, eta), q).value;
    MatrixTuple split =
        direct_sum(line_integral(t, gamma, q).value, line_integral(t, eta, q).value);
    report.direct_sum_residual = (joint - split).frobenius() / rel_scale(split);

    MatrixTuple conj_first = line_integral(t, conjugate_path(s, gamma), q).value;
    MatrixTuple conj_last = conjugate(s, line_integral(t, gamma, q).value);
    report.conjugation_residual =
        (conj_first - conj_last).frobenius() / (s.cond() * rel_scale(conj_last));
    return report;
}

PathIndependenceReport path_independence_test(const DemilinearMap& t, const SmoothPath& g1,
                                              const SmoothPath& g2, const QuadratureConfig& q,
                                              double tol) {
    if ((g1.start() - g2.start()).frobenius() > 1e-12 ||
        (g1.end() - g2.end()).frobenius() > 1e-12)
        throw std::invalid_argument("path_independence_test: endpoint mismatch");
    MatrixTuple i1 = line_integral(t, g1, q).value;
    MatrixTuple i2 = line_integral(t, g2, q).value;
    PathIndependenceReport report;
    report.residual = (i1 - i2).frobenius();
    report.verdict = report.residual <= tol;
    return report;
}

}  // namespace freepot
