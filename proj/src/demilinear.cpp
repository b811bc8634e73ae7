#include "freepot/demilinear.hpp"

#include <cmath>

namespace freepot {

DemiPoly::DemiPoly(std::size_t g, std::size_t h) : g_(g), h_(h), slots_(h) {
    if (g == 0 || h == 0) throw std::invalid_argument("DemiPoly: arities must be positive");
}

void DemiPoly::add_term(std::size_t s, const DemiKey& key, cplx c) {
    if (key.var < 1 || key.var > g_)
        throw std::invalid_argument("DemiPoly: variable index out of range");
    for (unsigned letter : key.left)
        if (letter < 1 || letter > g_)
            throw std::invalid_argument("DemiPoly: letter out of range");
    for (unsigned letter : key.right)
        if (letter < 1 || letter > g_)
            throw std::invalid_argument("DemiPoly: letter out of range");
    auto it = slots_[s].find(key);
    if (it == slots_[s].end()) {
        if (c != cplx{}) slots_[s].emplace(key, c);
        return;
    }
    it->second += c;
    if (it->second == cplx{}) slots_[s].erase(it);
}

cplx DemiPoly::coeff(std::size_t s, const DemiKey& key) const {
    auto it = slots_[s].find(key);
    return it == slots_[s].end() ? cplx{} : it->second;
}

bool DemiPoly::is_zero() const {
    for (const auto& m : slots_)
        if (!m.empty()) return false;
    return true;
}

MatrixTuple eval_demi(const DemiPoly& t, const MatrixTuple& x, const MatrixTuple& h) {
    if (t.arity() != x.arity() || t.arity() != h.arity())
        throw std::invalid_argument("eval_demi: arity mismatch");
    if (x.level() != h.level()) throw std::invalid_argument("eval_demi: level mismatch");
    const std::size_t n = x.level();
    MatrixTuple out(t.out_arity(), n);
    for (std::size_t s = 0; s < t.out_arity(); ++s) {
        CMatrix acc(n);
        for (const auto& [key, c] : t.slot(s)) {
            CMatrix term = eval_word(key.left, x) * h[key.var - 1];
            if (!key.right.empty()) term = term * eval_word(key.right, x);
            acc += c * term;
        }
        out[s] = std::move(acc);
    }
    return out;
}

DemilinearMap::DemilinearMap(const DemiPoly& poly)
    : g_(poly.arity()),
      h_(poly.out_arity()),
      eval_([p = poly](const MatrixTuple& x, const MatrixTuple& h) {
          return eval_demi(p, x, h);
      }),
      provenance_(Provenance::symbolic),
      poly_(poly) {}

DemilinearMap::DemilinearMap(std::size_t g, std::size_t h, Evaluator eval,
                             std::uint64_t probe_seed)
    : g_(g), h_(h), eval_(std::move(eval)), provenance_(Provenance::black_box) {
    if (g == 0 || h == 0)
        throw std::invalid_argument("DemilinearMap: arities must be positive");
    if (!eval_) throw std::invalid_argument("DemilinearMap: evaluator required");
    // linearity probe: T(X, aH + K) = a T(X,H) + T(X,K) on three random triples
    SplitRng rng(probe_seed);
    for (int trial = 0; trial < 3; ++trial) {
        auto eng = rng.substream(static_cast<std::uint64_t>(trial));
        const std::size_t n = 2;
        MatrixTuple x = random_gaussian_tuple(g_, n, eng);
        MatrixTuple hh = random_gaussian_tuple(g_, n, eng);
        MatrixTuple kk = random_gaussian_tuple(g_, n, eng);
        const cplx a = complex_gaussian(eng);
        MatrixTuple lhs = eval_(x, a * hh + kk);
        MatrixTuple rhs = a * eval_(x, hh) + eval_(x, kk);
        const double scale = 1.0 + rhs.frobenius();
        if ((lhs - rhs).frobenius() > 1e-10 * scale)
            throw std::invalid_argument(
                "DemilinearMap: evaluator failed the linearity probe");
    }
}

MatrixTuple DemilinearMap::operator()(const MatrixTuple& x, const MatrixTuple& h) const {
    if (x.arity() != g_ || h.arity() != g_)
        throw std::invalid_argument("DemilinearMap: arity mismatch");
    if (x.level() != h.level())
        throw std::invalid_argument("DemilinearMap: level mismatch");
    MatrixTuple out = eval_(x, h);
    if (out.level() != x.level())
        throw std::runtime_error("DemilinearMap: evaluator changed the level");
    return out;
}

MatrixTuple second_derivative(const DemilinearMap& t, const MatrixTuple& x,
                              const MatrixTuple& h, const MatrixTuple& k,
                              const MatrixTuple& l) {
    MatrixTuple first = embed_upper(x, k);
    MatrixTuple second = embed_upper(h, l);
    return extract_upper_right(t(first, second));
}

MatrixTuple free_curl(const DemilinearMap& t, const MatrixTuple& x, const MatrixTuple& h,
                      const MatrixTuple& k) {
    const MatrixTuple zero = MatrixTuple::zero(x.arity(), x.level());
    return second_derivative(t, x, h, k, zero) - second_derivative(t, x, k, h, zero);
}

CurlReport curl_free_test(const DemilinearMap& t, const FreeDomain& domain,
                          std::size_t samples, SplitRng rng, double tol) {
    if (domain.levels().empty())
        throw std::invalid_argument("curl_free_test: empty domain level set");
    std::vector<std::size_t> levels(domain.levels().begin(), domain.levels().end());
    CurlReport report;
    report.levels_tested = levels;
    report.only_level_one = levels.size() == 1 && levels[0] == 1;
    for (std::size_t i = 0; i < samples; ++i) {
        auto eng = rng.substream(i);
        const std::size_t n = levels[i % levels.size()];
        MatrixTuple x = domain.sample(n, eng);
        MatrixTuple h = random_gaussian_tuple(t.arity(), n, eng);
        MatrixTuple k = random_gaussian_tuple(t.arity(), n, eng);
        if (h.frobenius() > 0) h *= cplx{1.0 / h.frobenius()};
        if (k.frobenius() > 0) k *= cplx{1.0 / k.frobenius()};
        const MatrixTuple zero = MatrixTuple::zero(t.arity(), n);
        MatrixTuple dhk = second_derivative(t, x, h, k, zero);
        MatrixTuple dkh = second_derivative(t, x, k, h, zero);
        const double scale = 1.0 + std::max(dhk.frobenius(), dkh.frobenius());
        const double residual = (dhk - dkh).frobenius() / scale;
        if (residual > report.max_residual) {
            report.max_residual = residual;
            report.worst_x = x;
            report.worst_h = h;
            report.worst_k = k;
        }
    }
    report.curl_free = report.max_residual <= tol;
    return report;
}

ExactnessReport symbolic_antiderivative(const DemiPoly& t) {
    ExactnessReport report;
    NcPoly potential(t.arity(), t.out_arity());
    for (std::size_t s = 0; s < t.out_arity(); ++s) {
        // bucket the decomposition coefficients of every contributing word
        std::map<Word, std::vector<cplx>, WordOrder> buckets;
        for (const auto& [key, c] : t.slot(s)) {
            Word m = key.left;
            m.push_back(key.var);
            m.insert(m.end(), key.right.begin(), key.right.end());
            auto [it, inserted] = buckets.try_emplace(m, std::vector<cplx>(m.size()));
            it->second[key.left.size()] = c;
        }
        for (const auto& [m, coeffs] : buckets) {
            bool agree = true;
            for (const cplx& c : coeffs)
                if (c != coeffs[0]) {
                    agree = false;
                    break;
                }
            if (!agree) {
                report.exact = false;
                report.witness = ExactnessWitness{s, m, coeffs};
                report.potential.reset();
                return report;
            }
            potential.set_coeff(s, m, coeffs[0]);
        }
    }
    report.exact = true;
    report.potential = std::move(potential);
    return report;
}

bool symbolic_curl_free(const DemiPoly& t) { return symbolic_antiderivative(t).exact; }

}  // namespace freepot
