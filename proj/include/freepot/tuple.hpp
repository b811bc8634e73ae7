#pragma once

#include <vector>

#include "freepot/complexmat.hpp"

namespace freepot {

/// A g-tuple of n x n complex matrices; the points X, directions H/K/L, and
/// values of free maps. All components share one level n.
class MatrixTuple {
public:
    MatrixTuple() = default;
    MatrixTuple(std::size_t g, std::size_t level)
        : components_(g, CMatrix(level)) {}
    explicit MatrixTuple(std::vector<CMatrix> components);

    std::size_t arity() const { return components_.size(); }
    std::size_t level() const { return components_.empty() ? 0 : components_[0].dim(); }

    CMatrix& operator[](std::size_t i) { return components_[i]; }
    const CMatrix& operator[](std::size_t i) const { return components_[i]; }

    MatrixTuple& operator+=(const MatrixTuple& o);
    MatrixTuple& operator-=(const MatrixTuple& o);
    MatrixTuple& operator*=(cplx s);
    friend MatrixTuple operator+(MatrixTuple a, const MatrixTuple& b) { return a += b; }
    friend MatrixTuple operator-(MatrixTuple a, const MatrixTuple& b) { return a -= b; }
    friend MatrixTuple operator*(cplx s, MatrixTuple a) { return a *= s; }
    friend bool operator==(const MatrixTuple& a, const MatrixTuple& b) {
        return a.components_ == b.components_;
    }

    double frobenius() const;
    bool all_finite() const;

    static MatrixTuple zero(std::size_t g, std::size_t level) { return {g, level}; }

private:
    std::vector<CMatrix> components_;
};

double rel_scale(const MatrixTuple& a);
double rel_scale(const MatrixTuple& a, const MatrixTuple& b);

/// Invertible conjugator S with its inverse computed once at construction.
/// Construction rejects condition-number estimates above 1e12.
class Similarity {
public:
    explicit Similarity(CMatrix s);

    static Similarity identity(std::size_t dim) { return Similarity(CMatrix::identity(dim)); }

    const CMatrix& matrix() const { return s_; }
    const CMatrix& inverse() const { return sinv_; }
    std::size_t dim() const { return s_.dim(); }
    double cond() const { return cond_; }

    Similarity inverted() const;

private:
    Similarity(CMatrix s, CMatrix sinv, double cond)
        : s_(std::move(s)), sinv_(std::move(sinv)), cond_(cond) {}
    CMatrix s_;
    CMatrix sinv_;
    double cond_;
};

// block_diag(X_i, Y_i) componentwise; levels add.
MatrixTuple direct_sum(const MatrixTuple& x, const MatrixTuple& y);
CMatrix direct_sum(const CMatrix& a, const CMatrix& b);

// S^{-1} X_i S componentwise.
MatrixTuple conjugate(const Similarity& s, const MatrixTuple& x);
CMatrix conjugate(const Similarity& s, const CMatrix& a);

// [[X_i, H_i], [0, X_i]] componentwise; level doubles.
MatrixTuple embed_upper(const MatrixTuple& x, const MatrixTuple& h);
CMatrix embed_upper(const CMatrix& x, const CMatrix& h);

/// Partition of tuple components into a square grid of blocks.
struct BlockGrid {
    std::vector<std::size_t> sizes;
    // blocks[r][c] is the tuple of (r,c) blocks across components
    std::vector<std::vector<MatrixTuple>> blocks;

    const MatrixTuple& at(std::size_t r, std::size_t c) const { return blocks[r][c]; }
};

BlockGrid extract_blocks(const MatrixTuple& m, const std::vector<std::size_t>& sizes);
MatrixTuple reassemble_blocks(const BlockGrid& grid);

/// Upper-right n x n block of each component of a 2n-level tuple.
MatrixTuple extract_upper_right(const MatrixTuple& m);

}  // namespace freepot
