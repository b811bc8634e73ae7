#include "freepot/tuple.hpp"

#include <cmath>

namespace freepot {

MatrixTuple::MatrixTuple(std::vector<CMatrix> components)
    : components_(std::move(components)) {
    if (components_.empty())
        throw std::invalid_argument("MatrixTuple: arity must be at least 1");
    for (const auto& c : components_)
        if (c.dim() != components_[0].dim())
            throw std::invalid_argument("MatrixTuple: components must share one level");
}

MatrixTuple& MatrixTuple::operator+=(const MatrixTuple& o) {
    if (arity() != o.arity() || level() != o.level())
        throw std::invalid_argument("MatrixTuple: shape mismatch in +");
    for (std::size_t i = 0; i < components_.size(); ++i) components_[i] += o.components_[i];
    return *this;
}

MatrixTuple& MatrixTuple::operator-=(const MatrixTuple& o) {
    if (arity() != o.arity() || level() != o.level())
        throw std::invalid_argument("MatrixTuple: shape mismatch in -");
    for (std::size_t i = 0; i < components_.size(); ++i) components_[i] -= o.components_[i];
    return *this;
}

MatrixTuple& MatrixTuple::operator*=(cplx s) {
    for (auto& c : components_) c *= s;
    return *this;
}

double MatrixTuple::frobenius() const {
    double ssq = 0.0;
    for (const auto& c : components_) {
        double f = c.frobenius();
        ssq += f * f;
    }
    return std::sqrt(ssq);
}

bool MatrixTuple::all_finite() const {
    for (const auto& c : components_)
        if (!c.all_finite()) return false;
    return true;
}

double rel_scale(const MatrixTuple& a) { return 1.0 + a.frobenius(); }
double rel_scale(const MatrixTuple& a, const MatrixTuple& b) {
    return 1.0 + std::max(a.frobenius(), b.frobenius());
}

Similarity::Similarity(CMatrix s) : s_(std::move(s)), sinv_(), cond_(0.0) {
    if (!s_.all_finite()) throw std::invalid_argument("Similarity: non-finite entries");
    sinv_ = inverse(s_);  // throws std::domain_error when singular
    cond_ = s_.one_norm() * sinv_.one_norm();
    if (!(cond_ <= 1e12))
        throw std::domain_error("Similarity: condition estimate exceeds 1e12");
}

Similarity Similarity::inverted() const { return Similarity(sinv_, s_, cond_); }

CMatrix direct_sum(const CMatrix& a, const CMatrix& b) {
    const std::size_t n = a.dim(), m = b.dim();
    CMatrix r(n + m);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) r.at(i, j) = a.at(i, j);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) r.at(n + i, n + j) = b.at(i, j);
    return r;
}

MatrixTuple direct_sum(const MatrixTuple& x, const MatrixTuple& y) {
    if (x.arity() != y.arity())
        throw std::invalid_argument("direct_sum: arity mismatch");
    std::vector<CMatrix> comps;
    comps.reserve(x.arity());
    for (std::size_t i = 0; i < x.arity(); ++i) comps.push_back(direct_sum(x[i], y[i]));
    return MatrixTuple(std::move(comps));
}

CMatrix conjugate(const Similarity& s, const CMatrix& a) {
    if (s.dim() != a.dim()) throw std::invalid_argument("conjugate: dimension mismatch");
    return s.inverse() * a * s.matrix();
}

MatrixTuple conjugate(const Similarity& s, const MatrixTuple& x) {
    if (s.dim() != x.level()) throw std::invalid_argument("conjugate: dimension mismatch");
    std::vector<CMatrix> comps;
    comps.reserve(x.arity());
    for (std::size_t i = 0; i < x.arity(); ++i) comps.push_back(conjugate(s, x[i]));
    return MatrixTuple(std::move(comps));
}

CMatrix embed_upper(const CMatrix& x, const CMatrix& h) {
    if (x.dim() != h.dim()) throw std::invalid_argument("embed_upper: dimension mismatch");
    const std::size_t n = x.dim();
    CMatrix r(2 * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            r.at(i, j) = x.at(i, j);
            r.at(i, n + j) = h.at(i, j);
            r.at(n + i, n + j) = x.at(i, j);
        }
    return r;
}

MatrixTuple embed_upper(const MatrixTuple& x, const MatrixTuple& h) {
    if (x.arity() != h.arity() || x.level() != h.level())
        throw std::invalid_argument("embed_upper: shape mismatch");
    std::vector<CMatrix> comps;
    comps.reserve(x.arity());
    for (std::size_t i = 0; i < x.arity(); ++i) comps.push_back(embed_upper(x[i], h[i]));
    return MatrixTuple(std::move(comps));
}

BlockGrid extract_blocks(const MatrixTuple& m, const std::vector<std::size_t>& sizes) {
    std::size_t total = 0;
    for (auto s : sizes) total += s;
    if (total != m.level())
        throw std::invalid_argument("extract_blocks: sizes do not sum to level");
    const std::size_t nb = sizes.size();
    std::vector<std::size_t> offset(nb, 0);
    for (std::size_t i = 1; i < nb; ++i) offset[i] = offset[i - 1] + sizes[i - 1];

    BlockGrid grid{sizes, {}};
    grid.blocks.resize(nb);
    for (std::size_t br = 0; br < nb; ++br) {
        grid.blocks[br].reserve(nb);
        for (std::size_t bc = 0; bc < nb; ++bc) {
            std::vector<CMatrix> comps;
            comps.reserve(m.arity());
            for (std::size_t k = 0; k < m.arity(); ++k) {
                // rectangular blocks are zero-padded to square when br != bc sizes differ;
                // the partitions used here are always square per block
                if (sizes[br] != sizes[bc])
                    throw std::invalid_argument("extract_blocks: non-square block requested");
                CMatrix blk(sizes[br]);
                for (std::size_t i = 0; i < sizes[br]; ++i)
                    for (std::size_t j = 0; j < sizes[bc]; ++j)
                        blk.at(i, j) = m[k].at(offset[br] + i, offset[bc] + j);
                comps.push_back(std::move(blk));
            }
            grid.blocks[br].push_back(MatrixTuple(std::move(comps)));
        }
    }
    return grid;
}

MatrixTuple reassemble_blocks(const BlockGrid& grid) {
    const std::size_t nb = grid.sizes.size();
    std::size_t total = 0;
    for (auto s : grid.sizes) total += s;
    std::vector<std::size_t> offset(nb, 0);
    for (std::size_t i = 1; i < nb; ++i) offset[i] = offset[i - 1] + grid.sizes[i - 1];
    const std::size_t g = grid.blocks[0][0].arity();

    MatrixTuple out(g, total);
    for (std::size_t br = 0; br < nb; ++br)
        for (std::size_t bc = 0; bc < nb; ++bc)
            for (std::size_t k = 0; k < g; ++k)
                for (std::size_t i = 0; i < grid.sizes[br]; ++i)
                    for (std::size_t j = 0; j < grid.sizes[bc]; ++j)
                        out[k].at(offset[br] + i, offset[bc] + j) =
                            grid.blocks[br][bc][k].at(i, j);
    return out;
}

MatrixTuple extract_upper_right(const MatrixTuple& m) {
    if (m.level() % 2 != 0)
        throw std::invalid_argument("extract_upper_right: level must be even");
    const std::size_t n = m.level() / 2;
    MatrixTuple out(m.arity(), n);
    for (std::size_t k = 0; k < m.arity(); ++k)
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) out[k].at(i, j) = m[k].at(i, n + j);
    return out;
}

}  // namespace freepot
