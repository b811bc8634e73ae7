#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace freepot {

using cplx = std::complex<double>;

/// Dense square complex matrix, row-major, immutable by convention once built.
class CMatrix {
public:
    CMatrix() : dim_(0) {}
    explicit CMatrix(std::size_t dim) : dim_(dim), entries_(dim * dim) {}
    CMatrix(std::size_t dim, std::vector<cplx> entries);

    static CMatrix identity(std::size_t dim);
    static CMatrix zero(std::size_t dim) { return CMatrix(dim); }

    std::size_t dim() const { return dim_; }

    cplx& at(std::size_t r, std::size_t c) { return entries_[r * dim_ + c]; }
    const cplx& at(std::size_t r, std::size_t c) const { return entries_[r * dim_ + c]; }

    cplx* data() { return entries_.data(); }
    const cplx* data() const { return entries_.data(); }
    std::size_t size() const { return entries_.size(); }

    CMatrix& operator+=(const CMatrix& o);
    CMatrix& operator-=(const CMatrix& o);
    CMatrix& operator*=(cplx s);

    friend CMatrix operator+(CMatrix a, const CMatrix& b) { return a += b; }
    friend CMatrix operator-(CMatrix a, const CMatrix& b) { return a -= b; }
    friend CMatrix operator*(cplx s, CMatrix a) { return a *= s; }
    friend CMatrix operator*(const CMatrix& a, const CMatrix& b) { return matmul(a, b); }
    friend bool operator==(const CMatrix& a, const CMatrix& b) {
        return a.dim_ == b.dim_ && a.entries_ == b.entries_;
    }

    static CMatrix matmul(const CMatrix& a, const CMatrix& b);

    CMatrix adjoint() const;
    CMatrix conj_entries() const;
    CMatrix transpose() const;

    cplx trace() const;
    double frobenius() const;
    bool all_finite() const;

    /// Largest singular value via power iteration on A*A.
    double op_norm() const;

    /// Max column sum of absolute values.
    double one_norm() const;

private:
    std::size_t dim_;
    std::vector<cplx> entries_;
};

/// Scale factor for relative comparisons: 1 + max Frobenius norm of operands.
double rel_scale(const CMatrix& a);
double rel_scale(const CMatrix& a, const CMatrix& b);

struct LuDecomposition {
    CMatrix lu;              // packed L (unit diagonal) and U
    std::vector<int> perm;   // row permutation
    bool singular = false;

    std::vector<cplx> solve(const std::vector<cplx>& rhs) const;
};

LuDecomposition lu_factor(const CMatrix& a);

/// Inverse via LU with partial pivoting. Throws std::domain_error when singular.
CMatrix inverse(const CMatrix& a);

/// QR of a square matrix by Householder reflections; returns (Q, R).
std::pair<CMatrix, CMatrix> qr_decompose(const CMatrix& a);

}  // namespace freepot
