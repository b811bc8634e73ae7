#include "freepot/freemap.hpp"

#include <cmath>

namespace freepot {

FreeMap::FreeMap(const NcPoly& poly)
    : g_(poly.arity()),
      h_(poly.out_arity()),
      eval_([p = poly](const MatrixTuple& x) { return eval_poly(p, x); }),
      provenance_(MapProvenance::polynomial),
      poly_(poly) {}

FreeMap::FreeMap(std::size_t g, std::size_t h, Evaluator eval)
    : g_(g), h_(h), eval_(std::move(eval)), provenance_(MapProvenance::black_box) {
    if (g == 0 || h == 0) throw std::invalid_argument("FreeMap: arities must be positive");
    if (!eval_) throw std::invalid_argument("FreeMap: evaluator required");
}

MatrixTuple FreeMap::operator()(const MatrixTuple& x) const {
    if (x.arity() != g_) throw std::invalid_argument("FreeMap: arity mismatch");
    MatrixTuple out = eval_(x);
    if (out.arity() != h_ || out.level() != x.level())
        throw std::runtime_error("FreeMap: evaluator output has the wrong shape");
    return out;
}

MatrixTuple nc_derivative(const FreeMap& f, const MatrixTuple& x, const MatrixTuple& h) {
    return extract_upper_right(f(embed_upper(x, h)));
}

LimitDerivative nc_derivative_limit(const FreeMap& f, const MatrixTuple& x,
                                    const MatrixTuple& h, const std::vector<double>& steps) {
    if (steps.size() < 2)
        throw std::invalid_argument("nc_derivative_limit: need at least two steps");
    const MatrixTuple fx = f(x);
    std::vector<MatrixTuple> quotients;
    quotients.reserve(steps.size());
    for (double z : steps) {
        MatrixTuple shifted = x;
        shifted += cplx{z} * h;
        MatrixTuple q = f(shifted) - fx;
        q *= cplx{1.0 / z};
        quotients.push_back(std::move(q));
    }
    bool converged = true;
    for (std::size_t i = 2; i < quotients.size(); ++i) {
        const double prev = (quotients[i - 1] - quotients[i - 2]).frobenius();
        const double cur = (quotients[i] - quotients[i - 1]).frobenius();
        if (cur > prev * 1.5 && cur > 1e-14 * (1.0 + quotients[i].frobenius()))
            converged = false;
    }
    // one Richardson stage: with steps halving, 2 q(s/2) - q(s) kills the O(s) term
    std::vector<MatrixTuple> extrap;
    extrap.reserve(quotients.size() - 1);
    for (std::size_t i = 0; i + 1 < quotients.size(); ++i) {
        const double ratio = steps[i] / steps[i + 1];
        const double w = ratio / (ratio - 1.0);
        MatrixTuple e = quotients[i + 1];
        e *= cplx{w};
        MatrixTuple tail = quotients[i];
        tail *= cplx{w - 1.0};
        e -= tail;
        extrap.push_back(std::move(e));
    }
    double err = extrap.size() > 1
                     ? (extrap.back() - extrap[extrap.size() - 2]).frobenius()
                     : (extrap.back() - quotients.back()).frobenius();
    return {extrap.back(), err, converged};
}

DemilinearMap derivative_as_demilinear(const FreeMap& f) {
    FreeMap copy = f;
    return DemilinearMap(f.arity(), f.out_arity(),
                         [copy](const MatrixTuple& x, const MatrixTuple& h) {
                             return nc_derivative(copy, x, h);
                         });
}

FreeAxiomReport verify_free(const FreeMap& f, const FreeDomain& domain, std::size_t trials,
                            SplitRng rng, double tol) {
    if (domain.levels().empty())
        throw std::invalid_argument("verify_free: empty domain level set");
    std::vector<std::size_t> levels(domain.levels().begin(), domain.levels().end());
    FreeAxiomReport report;
    bool ok = true;
    for (std::size_t i = 0; i < trials; ++i) {
        auto eng = rng.substream(i);
        const std::size_t n = levels[i % levels.size()];
        const std::size_t m = levels[(i + 1) % levels.size()];
        MatrixTuple x = domain.sample(n, eng);
        MatrixTuple y = domain.sample(m, eng);

        MatrixTuple joint = f(direct_sum(x, y));
        MatrixTuple split = direct_sum(f(x), f(y));
        const double ds_scale = 1.0 + split.frobenius();
        const double ds_res = (joint - split).frobenius() / ds_scale;
        report.direct_sum_residual = std::max(report.direct_sum_residual, ds_res);
        if (ds_res > tol) ok = false;

        Similarity s = domain.similarity_closed() ? random_similarity(n, eng)
                                                  : Similarity(haar_unitary(n, eng));
        MatrixTuple conj_then_eval = f(conjugate(s, x));
        MatrixTuple eval_then_conj = conjugate(s, f(x));
        const double sim_scale = s.cond() * (1.0 + eval_then_conj.frobenius());
        const double sim_res = (conj_then_eval - eval_then_conj).frobenius() / sim_scale;
        report.similarity_residual = std::max(report.similarity_residual, sim_res);
        if (sim_res > tol) {
            ok = false;
            if (!report.witness_similarity) report.witness_similarity = s.matrix();
        }
    }
    report.verdict = ok;
    return report;
}

}  // namespace freepot
