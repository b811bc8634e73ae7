#include "freepot/complexmat.hpp"

#include <algorithm>
#include <cmath>

#include "freepot/kernels.hpp"

namespace freepot {

CMatrix::CMatrix(std::size_t dim, std::vector<cplx> entries)
    : dim_(dim), entries_(std::move(entries)) {
    if (entries_.size() != dim * dim)
        throw std::invalid_argument("CMatrix: entry count does not match dim^2");
}

CMatrix CMatrix::identity(std::size_t dim) {
    CMatrix m(dim);
    for (std::size_t i = 0; i < dim; ++i) m.at(i, i) = 1.0;
    return m;
}

CMatrix& CMatrix::operator+=(const CMatrix& o) {
    if (dim_ != o.dim_) throw std::invalid_argument("CMatrix: dimension mismatch in +");
    kern::caxpy(entries_.data(), 1.0, o.entries_.data(), entries_.size());
    return *this;
}

CMatrix& CMatrix::operator-=(const CMatrix& o) {
    if (dim_ != o.dim_) throw std::invalid_argument("CMatrix: dimension mismatch in -");
    kern::caxpy(entries_.data(), -1.0, o.entries_.data(), entries_.size());
    return *this;
}

CMatrix& CMatrix::operator*=(cplx s) {
    kern::cscal(entries_.data(), s, entries_.size());
    return *this;
}

CMatrix CMatrix::matmul(const CMatrix& a, const CMatrix& b) {
    if (a.dim_ != b.dim_) throw std::invalid_argument("CMatrix: dimension mismatch in *");
    CMatrix c(a.dim_);
    kern::cgemm_acc(c.entries_.data(), a.entries_.data(), b.entries_.data(), a.dim_);
    return c;
}

CMatrix CMatrix::adjoint() const {
    CMatrix r(dim_);
    for (std::size_t i = 0; i < dim_; ++i)
        for (std::size_t j = 0; j < dim_; ++j) r.at(j, i) = std::conj(at(i, j));
    return r;
}

CMatrix CMatrix::conj_entries() const {
    CMatrix r(dim_);
    for (std::size_t i = 0; i < entries_.size(); ++i) r.entries_[i] = std::conj(entries_[i]);
    return r;
}

CMatrix CMatrix::transpose() const {
    CMatrix r(dim_);
    for (std::size_t i = 0; i < dim_; ++i)
        for (std::size_t j = 0; j < dim_; ++j) r.at(j, i) = at(i, j);
    return r;
}

cplx CMatrix::trace() const {
    cplx t = 0.0;
    for (std::size_t i = 0; i < dim_; ++i) t += at(i, i);
    return t;
}

double CMatrix::frobenius() const {
    return std::sqrt(kern::norm_sq(entries_.data(), entries_.size()));
}

bool CMatrix::all_finite() const {
    for (const cplx& z : entries_)
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
    return true;
}

double CMatrix::op_norm() const {
    if (dim_ == 0) return 0.0;
    if (dim_ == 1) return std::abs(entries_[0]);
    // power iteration on A*A; matrices here are tiny so fixed iteration count is plenty
    std::vector<cplx> v(dim_, 1.0), w(dim_);
    v[0] = 1.3;  // break symmetry
    double lambda = 0.0;
    for (int it = 0; it < 200; ++it) {
        // w = A v
        for (std::size_t i = 0; i < dim_; ++i) {
            cplx s = 0.0;
            for (std::size_t j = 0; j < dim_; ++j) s += at(i, j) * v[j];
            w[i] = s;
        }
        // v = A* w
        double nsq = 0.0;
        for (std::size_t i = 0; i < dim_; ++i) {
            cplx s = 0.0;
            for (std::size_t j = 0; j < dim_; ++j) s += std::conj(at(j, i)) * w[j];
            v[i] = s;
            nsq += std::norm(s);
        }
        double nrm = std::sqrt(nsq);
        if (nrm == 0.0) return 0.0;
        for (auto& z : v) z /= nrm;
        double next = std::sqrt(nrm);
        if (it > 4 && std::abs(next - lambda) <= 1e-13 * (1.0 + next)) return next;
        lambda = next;
    }
    return lambda;
}

double CMatrix::one_norm() const {
    double best = 0.0;
    for (std::size_t j = 0; j < dim_; ++j) {
        double s = 0.0;
        for (std::size_t i = 0; i < dim_; ++i) s += std::abs(at(i, j));
        best = std::max(best, s);
    }
    return best;
}

double rel_scale(const CMatrix& a) { return 1.0 + a.frobenius(); }
double rel_scale(const CMatrix& a, const CMatrix& b) {
    return 1.0 + std::max(a.frobenius(), b.frobenius());
}

LuDecomposition lu_factor(const CMatrix& a) {
    const std::size_t n = a.dim();
    LuDecomposition d{a, std::vector<int>(n), false};
    for (std::size_t i = 0; i < n; ++i) d.perm[i] = static_cast<int>(i);
    CMatrix& m = d.lu;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        double best = std::abs(m.at(k, k));
        for (std::size_t i = k + 1; i < n; ++i) {
            double v = std::abs(m.at(i, k));
            if (v > best) { best = v; piv = i; }
        }
        if (best == 0.0) { d.singular = true; return d; }
        if (piv != k) {
            for (std::size_t j = 0; j < n; ++j) std::swap(m.at(k, j), m.at(piv, j));
            std::swap(d.perm[k], d.perm[piv]);
        }
        const cplx pivot = m.at(k, k);
        for (std::size_t i = k + 1; i < n; ++i) {
            const cplx f = m.at(i, k) / pivot;
            m.at(i, k) = f;
            for (std::size_t j = k + 1; j < n; ++j) m.at(i, j) -= f * m.at(k, j);
        }
    }
    return d;
}

std::vector<cplx> LuDecomposition::solve(const std::vector<cplx>& rhs) const {
    const std::size_t n = lu.dim();
    std::vector<cplx> x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = rhs[perm[i]];
    for (std::size_t i = 1; i < n; ++i)
        for (std::size_t j = 0; j < i; ++j) x[i] -= lu.at(i, j) * x[j];
    for (std::size_t ii = n; ii-- > 0;) {
        for (std::size_t j = ii + 1; j < n; ++j) x[ii] -= lu.at(ii, j) * x[j];
        x[ii] /= lu.at(ii, ii);
    }
    return x;
}

CMatrix inverse(const CMatrix& a) {
    const std::size_t n = a.dim();
    LuDecomposition d = lu_factor(a);
    if (d.singular) throw std::domain_error("inverse: matrix is singular");
    CMatrix inv(n);
    std::vector<cplx> e(n);
    for (std::size_t col = 0; col < n; ++col) {
        std::fill(e.begin(), e.end(), cplx{});
        e[col] = 1.0;
        auto x = d.solve(e);
        for (std::size_t i = 0; i < n; ++i) inv.at(i, col) = x[i];
    }
    return inv;
}

std::pair<CMatrix, CMatrix> qr_decompose(const CMatrix& a) {
    const std::size_t n = a.dim();
    CMatrix r = a;
    CMatrix q = CMatrix::identity(n);
    std::vector<cplx> v(n);
    for (std::size_t k = 0; k + 1 < n; ++k) {
        double xnorm_sq = 0.0;
        for (std::size_t i = k; i < n; ++i) xnorm_sq += std::norm(r.at(i, k));
        double xnorm = std::sqrt(xnorm_sq);
        if (xnorm == 0.0) continue;
        const cplx x0 = r.at(k, k);
        const double ax0 = std::abs(x0);
        const cplx phase = ax0 == 0.0 ? cplx{1.0} : x0 / ax0;
        const cplx alpha = -phase * xnorm;
        // v = x - alpha*e_k, reflector H = I - 2 v v* / (v* v)
        double vnorm_sq = 0.0;
        for (std::size_t i = k; i < n; ++i) {
            v[i] = r.at(i, k);
            if (i == k) v[i] -= alpha;
            vnorm_sq += std::norm(v[i]);
        }
        if (vnorm_sq == 0.0) continue;
        // apply H to R from the left
        for (std::size_t j = k; j < n; ++j) {
            cplx dot = 0.0;
            for (std::size_t i = k; i < n; ++i) dot += std::conj(v[i]) * r.at(i, j);
            const cplx f = 2.0 * dot / vnorm_sq;
            for (std::size_t i = k; i < n; ++i) r.at(i, j) -= f * v[i];
        }
        // accumulate Q = Q * H
        for (std::size_t i = 0; i < n; ++i) {
            cplx dot = 0.0;
            for (std::size_t j = k; j < n; ++j) dot += q.at(i, j) * v[j];
            const cplx f = 2.0 * dot / vnorm_sq;
            for (std::size_t j = k; j < n; ++j) q.at(i, j) -= f * std::conj(v[j]);
        }
    }
    return {q, r};
}

}  // namespace freepot
