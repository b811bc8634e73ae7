#include "freepot/potential.hpp"

#include <cmath>
#include <cstring>
#include <thread>

namespace freepot {

namespace {

// rng conventions shared by the pipeline stages so that standalone calls and
// PotentialFunction evaluation see identical unitary streams per level
SplitRng beta_rng(const SplitRng& master, std::size_t level) {
    return master.split(0xBE7A0000ull + level);
}
SplitRng probe_rng(const SplitRng& master, std::size_t m, std::size_t n) {
    return master.split(0x9A120000ull + 64 * m + n);
}

void for_each_index(std::size_t count, const std::function<void(std::size_t)>& fn) {
    const unsigned hw = std::thread::hardware_concurrency();
    if (hw <= 1 || count < 16) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    const unsigned workers = std::min<unsigned>(hw, 8);
    std::vector<std::thread> threads;
    std::exception_ptr first_error;
    std::mutex err_mu;
    for (unsigned w = 0; w < workers; ++w) {
        threads.emplace_back([&, w] {
            try {
                for (std::size_t i = w; i < count; i += workers) fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(err_mu);
                if (!first_error) first_error = std::current_exception();
            }
        });
    }
    for (auto& t : threads) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

MatrixTuple unitary_conjugate(const CMatrix& u, const MatrixTuple& x) {
    // U X U*
    CMatrix ustar = u.adjoint();
    MatrixTuple out(x.arity(), x.level());
    for (std::size_t i = 0; i < x.arity(); ++i) out[i] = u * x[i] * ustar;
    return out;
}

MatrixTuple sandwich(const CMatrix& u, const MatrixTuple& v) {
    // U* V U
    CMatrix ustar = u.adjoint();
    MatrixTuple out(v.arity(), v.level());
    for (std::size_t i = 0; i < v.arity(); ++i) out[i] = ustar * v[i] * u;
    return out;
}

}  // namespace

MatrixTuple phi(const DemilinearMap& t, const MatrixTuple& x, const MatrixTuple& y,
                const FreeDomain& domain, const QuadratureConfig& q,
                const std::vector<MatrixTuple>& waypoints) {
    if (x.level() != y.level()) throw std::invalid_argument("phi: level mismatch");
    if (!domain.contains(x) || !domain.contains(y))
        throw std::invalid_argument("phi: endpoint outside domain");
    SmoothPath path = [&] {
        if (!waypoints.empty()) {
            std::vector<MatrixTuple> pts;
            pts.push_back(y);
            pts.insert(pts.end(), waypoints.begin(), waypoints.end());
            pts.push_back(x);
            return SmoothPath::polyline(std::move(pts));
        }
        if (!domain.convex_levels())
            throw std::invalid_argument(
                "phi: custom domain requires waypoints from Y to X");
        return SmoothPath::segment(y, x);
    }();
    return line_integral(t, path, q, &domain).value;
}

BetaResult beta(const DemilinearMap& t, const MatrixTuple& x, const MatrixTuple& anchor,
                std::size_t haar_samples, const SplitRng& rng, const FreeDomain& domain,
                const QuadratureConfig& q) {
    if (haar_samples == 0) throw std::invalid_argument("beta: need at least one sample");
    if (anchor.level() != x.level()) throw std::invalid_argument("beta: anchor level mismatch");
    if (!domain.contains(anchor))
        throw std::invalid_argument("beta: anchor outside domain");
    const std::size_t n = x.level();

    std::vector<MatrixTuple> samples(haar_samples);
    for_each_index(haar_samples, [&](std::size_t j) {
        auto eng = rng.substream(j);
        CMatrix u = haar_unitary(n, eng);
        MatrixTuple rotated = unitary_conjugate(u, x);
        samples[j] = sandwich(u, phi(t, rotated, anchor, domain, q));
    });

    // mean in index order, then the per-entry standard error of that mean
    MatrixTuple mean(t.out_arity(), n);
    for (const auto& s : samples) mean += s;
    mean *= cplx{1.0 / static_cast<double>(haar_samples)};

    double se_sq = 0.0;
    if (haar_samples > 1) {
        double dev_sq = 0.0;
        for (const auto& s : samples) {
            const double d = (s - mean).frobenius();
            dev_sq += d * d;
        }
        se_sq = dev_sq / static_cast<double>(haar_samples - 1) /
                static_cast<double>(haar_samples);
    }
    return {std::move(mean), std::sqrt(se_sq)};
}

SimilarityCheckReport similarity_check(
    const std::function<BetaResult(const MatrixTuple&)>& beta_fn, std::size_t level,
    const FreeDomain& domain, std::size_t trials, SplitRng rng) {
    SimilarityCheckReport report;
    report.restricted_to_unitaries = !domain.similarity_closed();
    for (std::size_t i = 0; i < trials; ++i) {
        auto eng = rng.substream(i);
        MatrixTuple x = domain.sample(level, eng);
        Similarity s = report.restricted_to_unitaries
                           ? Similarity(haar_unitary(level, eng))
                           : random_similarity(level, eng);
        BetaResult lhs = beta_fn(conjugate(s, x));
        BetaResult rhs = beta_fn(x);
        MatrixTuple conj_rhs = conjugate(s, rhs.value);
        const double scale = s.cond() * rel_scale(conj_rhs);
        report.max_residual =
            std::max(report.max_residual, (lhs.value - conj_rhs).frobenius() / scale);
        report.max_mc_error = std::max({report.max_mc_error, lhs.mc_error, rhs.mc_error});
    }
    return report;
}

PairConstants pair_constants(const DemilinearMap& t, std::size_t m, std::size_t n,
                             const FreeDomain& domain, std::size_t haar_samples,
                             const SplitRng& rng, const QuadratureConfig& q,
                             bool enforce_structure) {
    const std::size_t h = t.out_arity();
    PairConstants out;
    out.c_low.resize(h);
    out.c_high.resize(h);

    SplitRng probes = probe_rng(rng, m, n);
    std::vector<std::vector<cplx>> probe_low(2), probe_high(2);
    for (int p = 0; p < 2; ++p) {
        auto eng_x = probes.substream(2 * p);
        auto eng_y = probes.substream(2 * p + 1);
        MatrixTuple x = domain.sample(m, eng_x);
        MatrixTuple y = domain.sample(n, eng_y);
        MatrixTuple xy = direct_sum(x, y);
        if (!domain.contains(xy))
            throw std::invalid_argument("pair_constants: X (+) Y left the domain");

        BetaResult bm = beta(t, x, domain.anchor(m), haar_samples, beta_rng(rng, m), domain, q);
        BetaResult bn = beta(t, y, domain.anchor(n), haar_samples, beta_rng(rng, n), domain, q);
        BetaResult bmn = beta(t, xy, domain.anchor(m + n), haar_samples,
                              beta_rng(rng, m + n), domain, q);

        MatrixTuple diff = bmn.value - direct_sum(bm.value, bn.value);
        probe_low[p].resize(h);
        probe_high[p].resize(h);
        double res_sq = 0.0;
        for (std::size_t s = 0; s < h; ++s) {
            cplx tr_low = 0.0, tr_high = 0.0;
            for (std::size_t i = 0; i < m; ++i) tr_low += diff[s].at(i, i);
            for (std::size_t i = 0; i < n; ++i) tr_high += diff[s].at(m + i, m + i);
            const cplx c_low = tr_low / static_cast<double>(m);
            const cplx c_high = tr_high / static_cast<double>(n);
            probe_low[p][s] = c_low;
            probe_high[p][s] = c_high;
            CMatrix deviation = diff[s];
            for (std::size_t i = 0; i < m; ++i) deviation.at(i, i) -= c_low;
            for (std::size_t i = 0; i < n; ++i) deviation.at(m + i, m + i) -= c_high;
            const double f = deviation.frobenius();
            res_sq += f * f;
        }
        const double mc =
            std::sqrt(bm.mc_error * bm.mc_error + bn.mc_error * bn.mc_error +
                      bmn.mc_error * bmn.mc_error);
        if (p == 0) {
            out.c_low = probe_low[0];
            out.c_high = probe_high[0];
            out.structure_residual = std::sqrt(res_sq);
            out.mc_error = mc;
        } else {
            out.structure_residual = std::max(out.structure_residual, std::sqrt(res_sq));
            out.mc_error = std::max(out.mc_error, mc);
        }
    }
    for (std::size_t s = 0; s < h; ++s) {
        out.probe_deviation =
            std::max(out.probe_deviation, std::abs(probe_low[0][s] - probe_low[1][s]));
        out.probe_deviation =
            std::max(out.probe_deviation, std::abs(probe_high[0][s] - probe_high[1][s]));
    }

    if (enforce_structure) {
        const double threshold =
            std::max({1e-6, 10.0 * out.mc_error, 100.0 * q.abs_tol});
        if (out.structure_residual > threshold || out.probe_deviation > threshold)
            throw std::runtime_error(
                "pair_constants: direct-sum defect is not a scalar block at levels (" +
                std::to_string(m) + "," + std::to_string(n) +
                "); the map is not curl-free or the Haar sample count is too small "
                "(structure residual " +
                std::to_string(out.structure_residual) + ", threshold " +
                std::to_string(threshold) + ")");
    }
    return out;
}

struct PotentialFunction::State {
    DemilinearMap t;
    FreeDomain domain;
    QuadratureConfig q;
    std::size_t haar_samples;
    std::uint64_t seed;
    std::vector<std::size_t> levels;
    mutable bool constants_fixed = true;

    mutable ConstantsTable table;
    mutable std::unordered_map<std::string, BetaResult> beta_cache;
    mutable std::mutex mu;

    State(DemilinearMap t_, FreeDomain d_, QuadratureConfig q_, std::size_t m_,
          std::uint64_t seed_)
        : t(std::move(t_)), domain(std::move(d_)), q(q_), haar_samples(m_), seed(seed_) {}

    SplitRng master() const { return SplitRng(seed); }

    static std::string cache_key(const MatrixTuple& x) {
        std::string key;
        key.reserve(16 + x.arity() * x.level() * x.level() * sizeof(cplx));
        const std::size_t lvl = x.level();
        key.append(reinterpret_cast<const char*>(&lvl), sizeof lvl);
        for (std::size_t i = 0; i < x.arity(); ++i)
            key.append(reinterpret_cast<const char*>(x[i].data()),
                       x[i].size() * sizeof(cplx));
        return key;
    }

    BetaResult beta_at(const MatrixTuple& x) const {
        const std::string key = cache_key(x);
        {
            std::lock_guard<std::mutex> lock(mu);
            auto it = beta_cache.find(key);
            if (it != beta_cache.end()) return it->second;
        }
        BetaResult r = beta(t, x, domain.anchor(x.level()), haar_samples,
                            beta_rng(master(), x.level()), domain, q);
        std::lock_guard<std::mutex> lock(mu);
        return beta_cache.emplace(key, std::move(r)).first->second;
    }

    // b_k = c^k_{k+n0} - c^{n0}_{k+n0}; the minimum level gets zero
    std::vector<cplx> level_constant(std::size_t level) const {
        {
            std::lock_guard<std::mutex> lock(mu);
            auto it = table.level_constants.find(level);
            if (it != table.level_constants.end()) return it->second;
        }
        std::vector<cplx> b(t.out_arity(), cplx{});
        if (level != table.n0 && domain.has_anchor(level + table.n0)) {
            PairConstants pc = pair_constants(t, level, table.n0, domain, haar_samples,
                                              master(), q, true);
            for (std::size_t s = 0; s < t.out_arity(); ++s)
                b[s] = pc.c_low[s] - pc.c_high[s];
            std::lock_guard<std::mutex> lock(mu);
            table.pairs.emplace(std::make_pair(level, table.n0), std::move(pc));
            return table.level_constants.emplace(level, std::move(b)).first->second;
        }
        if (level != table.n0) constants_fixed = false;
        std::lock_guard<std::mutex> lock(mu);
        return table.level_constants.emplace(level, std::move(b)).first->second;
    }
};

MatrixTuple PotentialFunction::operator()(const MatrixTuple& x) const {
    BetaResult br = state_->beta_at(x);
    std::vector<cplx> b = state_->level_constant(x.level());
    MatrixTuple out = br.value;
    const CMatrix eye = CMatrix::identity(x.level());
    for (std::size_t s = 0; s < out.arity(); ++s) out[s] += b[s] * eye;
    return out;
}

BetaResult PotentialFunction::beta_at(const MatrixTuple& x) const {
    return state_->beta_at(x);
}

const ConstantsTable& PotentialFunction::constants() const { return state_->table; }
const FreeDomain& PotentialFunction::domain() const { return state_->domain; }
const DemilinearMap& PotentialFunction::source() const { return state_->t; }
std::size_t PotentialFunction::haar_samples() const { return state_->haar_samples; }
std::uint64_t PotentialFunction::seed() const { return state_->seed; }
const std::vector<std::size_t>& PotentialFunction::covered_levels() const {
    return state_->levels;
}
bool PotentialFunction::constants_fixed() const { return state_->constants_fixed; }

std::vector<cplx> PotentialFunction::level_constant(std::size_t level) const {
    return state_->level_constant(level);
}

FreeMap PotentialFunction::as_free_map() const {
    PotentialFunction self = *this;
    return FreeMap(state_->t.arity(), state_->t.out_arity(),
                   [self](const MatrixTuple& x) { return self(x); });
}

PotentialFunction build_potential(const DemilinearMap& t, const FreeDomain& domain,
                                  const std::vector<std::size_t>& levels,
                                  std::size_t haar_samples, std::uint64_t seed,
                                  const QuadratureConfig& q) {
    if (levels.empty()) throw std::invalid_argument("build_potential: no levels given");
    if (!domain.connected())
        throw std::invalid_argument("build_potential: domain must be connected");
    for (std::size_t lvl : levels)
        if (!domain.has_anchor(lvl))
            throw std::invalid_argument("build_potential: no anchor at level " +
                                        std::to_string(lvl));

    PotentialFunction f;
    f.state_ = std::make_shared<PotentialFunction::State>(t, domain, q, haar_samples, seed);
    f.state_->levels = levels;
    std::sort(f.state_->levels.begin(), f.state_->levels.end());
    f.state_->table.n0 = f.state_->levels.front();
    for (std::size_t lvl : f.state_->levels) f.state_->level_constant(lvl);
    return f;
}

ValidationReport validate_potential(const PotentialFunction& fhat, const DemilinearMap& t,
                                    std::size_t samples, SplitRng rng, double tol) {
    const FreeDomain& domain = fhat.domain();
    const std::vector<std::size_t>& levels = fhat.covered_levels();
    FreeMap f = fhat.as_free_map();
    ValidationReport report;
    const std::vector<double> ladder{5e-3, 2.5e-3, 1.25e-3};

    for (std::size_t i = 0; i < samples; ++i) {
        auto eng = rng.substream(i);
        const std::size_t n = levels[i % levels.size()];
        MatrixTuple x = domain.sample(n, eng);
        MatrixTuple h = random_gaussian_tuple(t.arity(), n, eng);
        if (h.frobenius() > 0) h *= cplx{1.0 / h.frobenius()};

        LimitDerivative ld = nc_derivative_limit(f, x, h, ladder);
        MatrixTuple expected = t(x, h);
        report.derivative_residual =
            std::max(report.derivative_residual,
                     (ld.value - expected).frobenius() / rel_scale(expected));

        // direct sums across consecutive covered levels
        const std::size_t m = levels[(i + 1) % levels.size()];
        MatrixTuple y = domain.sample(m, eng);
        MatrixTuple split = direct_sum(f(x), f(y));
        MatrixTuple joint = f(direct_sum(x, y));
        report.direct_sum_residual =
            std::max(report.direct_sum_residual,
                     (joint - split).frobenius() / rel_scale(split));

        Similarity s = domain.similarity_closed() ? random_similarity(n, eng)
                                                  : Similarity(haar_unitary(n, eng));
        MatrixTuple lhs = f(conjugate(s, x));
        MatrixTuple rhs = conjugate(s, f(x));
        report.similarity_residual =
            std::max(report.similarity_residual,
                     (lhs - rhs).frobenius() / (s.cond() * rel_scale(rhs)));

        report.mc_error = std::max(report.mc_error, fhat.beta_at(x).mc_error);
    }

    report.similarity_restricted_to_unitaries = !domain.similarity_closed();
    const double m_count = static_cast<double>(fhat.haar_samples());
    report.tolerance_model = 1e-10 + 5.0 / std::sqrt(m_count) * (1.0 + report.mc_error) +
                             5.0 * report.mc_error;
    report.verdict = report.derivative_residual <= tol &&
                     report.direct_sum_residual <= tol &&
                     report.similarity_residual <= tol;
    return report;
}

}  // namespace freepot
