#pragma once

#include <complex>
#include <cstddef>

// Arithmetic kernels on interleaved complex-double arrays. Every operation has
// a scalar reference implementation plus SIMD variants (AVX2/NEON) selected at
// runtime; the two are equivalence-tested against each other.

namespace freepot::kern {

using cplx = std::complex<double>;

// C += A * B for row-major n x n matrices. C must not alias A or B.
void cgemm_acc(cplx* c, const cplx* a, const cplx* b, std::size_t n);

// y += alpha * x over len entries.
void caxpy(cplx* y, cplx alpha, const cplx* x, std::size_t len);

// y *= alpha over len entries.
void cscal(cplx* y, cplx alpha, std::size_t len);

// sum of |a_i|^2 (squared Frobenius norm of the flattened matrix).
double norm_sq(const cplx* a, std::size_t len);

// Scalar reference versions, kept callable for equivalence tests.
namespace scalar {
void cgemm_acc(cplx* c, const cplx* a, const cplx* b, std::size_t n);
void caxpy(cplx* y, cplx alpha, const cplx* x, std::size_t len);
void cscal(cplx* y, cplx alpha, std::size_t len);
double norm_sq(const cplx* a, std::size_t len);
}  // namespace scalar

}  // namespace freepot::kern
