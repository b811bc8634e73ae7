#include "freepot/kernels.hpp"

#include "freepot/cpu_features.hpp"

#if defined(__x86_64__) || defined(__i386__)
#include <immintrin.h>
#define FREEPOT_HAS_AVX2_PATH 1
#endif

#if defined(__aarch64__) || defined(__ARM_NEON)
#include <arm_neon.h>
#define FREEPOT_HAS_NEON_PATH 1
#endif

namespace freepot::kern {

// ---------------------------------------------------------------------------
// scalar reference kernels
// ---------------------------------------------------------------------------

namespace scalar {

void cgemm_acc(cplx* c, const cplx* a, const cplx* b, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < n; ++k) {
            const cplx aik = a[i * n + k];
            if (aik == cplx{}) continue;
            const cplx* brow = b + k * n;
            cplx* crow = c + i * n;
            for (std::size_t j = 0; j < n; ++j) crow[j] += aik * brow[j];
        }
    }
}

void caxpy(cplx* y, cplx alpha, const cplx* x, std::size_t len) {
    for (std::size_t i = 0; i < len; ++i) y[i] += alpha * x[i];
}

void cscal(cplx* y, cplx alpha, std::size_t len) {
    for (std::size_t i = 0; i < len; ++i) y[i] *= alpha;
}

double norm_sq(const cplx* a, std::size_t len) {
    double s = 0.0;
    for (std::size_t i = 0; i < len; ++i) s += std::norm(a[i]);
    return s;
}

}  // namespace scalar

// ---------------------------------------------------------------------------
// AVX2 kernels: two interleaved complex doubles per 256-bit lane
// ---------------------------------------------------------------------------

#ifdef FREEPOT_HAS_AVX2_PATH
namespace avx2 {

// y[0..1] += (ar + i*ai) * x[0..1], all packed [re0, im0, re1, im1]
__attribute__((target("avx2,fma"))) static inline __m256d cmul_acc(
    __m256d acc, __m256d x, __m256d ar, __m256d ai) {
    __m256d xs = _mm256_permute_pd(x, 0x5);           // [im0, re0, im1, re1]
    __m256d t = _mm256_mul_pd(xs, ai);                // [ai*im, ai*re, ...]
    __m256d p = _mm256_fmaddsub_pd(x, ar, t);         // [ar*re - ai*im, ar*im + ai*re]
    return _mm256_add_pd(acc, p);
}

__attribute__((target("avx2,fma"))) void caxpy(cplx* y, cplx alpha, const cplx* x,
                                               std::size_t len) {
    double* yd = reinterpret_cast<double*>(y);
    const double* xd = reinterpret_cast<const double*>(x);
    const __m256d ar = _mm256_set1_pd(alpha.real());
    const __m256d ai = _mm256_set1_pd(alpha.imag());
    std::size_t i = 0;
    for (; i + 2 <= len; i += 2) {
        __m256d xv = _mm256_loadu_pd(xd + 2 * i);
        __m256d yv = _mm256_loadu_pd(yd + 2 * i);
        _mm256_storeu_pd(yd + 2 * i, cmul_acc(yv, xv, ar, ai));
    }
    for (; i < len; ++i) y[i] += alpha * x[i];
}

__attribute__((target("avx2,fma"))) void cgemm_acc(cplx* c, const cplx* a, const cplx* b,
                                                   std::size_t n) {
    const double* bd = reinterpret_cast<const double*>(b);
    double* cd = reinterpret_cast<double*>(c);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < n; ++k) {
            const cplx aik = a[i * n + k];
            if (aik == cplx{}) continue;
            const __m256d ar = _mm256_set1_pd(aik.real());
            const __m256d ai = _mm256_set1_pd(aik.imag());
            const double* brow = bd + 2 * k * n;
            double* crow = cd + 2 * i * n;
            std::size_t j = 0;
            for (; j + 2 <= n; j += 2) {
                __m256d xv = _mm256_loadu_pd(brow + 2 * j);
                __m256d yv = _mm256_loadu_pd(crow + 2 * j);
                _mm256_storeu_pd(crow + 2 * j, cmul_acc(yv, xv, ar, ai));
            }
            for (; j < n; ++j) c[i * n + j] += aik * b[k * n + j];
        }
    }
}

__attribute__((target("avx2,fma"))) void cscal(cplx* y, cplx alpha, std::size_t len) {
    double* yd = reinterpret_cast<double*>(y);
    const __m256d ar = _mm256_set1_pd(alpha.real());
    const __m256d ai = _mm256_set1_pd(alpha.imag());
    std::size_t i = 0;
    for (; i + 2 <= len; i += 2) {
        __m256d xv = _mm256_loadu_pd(yd + 2 * i);
        __m256d xs = _mm256_permute_pd(xv, 0x5);
        __m256d t = _mm256_mul_pd(xs, ai);
        _mm256_storeu_pd(yd + 2 * i, _mm256_fmaddsub_pd(xv, ar, t));
    }
    for (; i < len; ++i) y[i] *= alpha;
}

__attribute__((target("avx2,fma"))) double norm_sq(const cplx* a, std::size_t len) {
    const double* ad = reinterpret_cast<const double*>(a);
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 2 <= len; i += 2) {
        __m256d v = _mm256_loadu_pd(ad + 2 * i);
        acc = _mm256_fmadd_pd(v, v, acc);
    }
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, acc);
    double s = lanes[0] + lanes[1] + lanes[2] + lanes[3];
    for (; i < len; ++i) s += std::norm(a[i]);
    return s;
}

}  // namespace avx2
#endif  // FREEPOT_HAS_AVX2_PATH

// ---------------------------------------------------------------------------
// NEON kernels: one complex double per 128-bit lane, fused multiply-adds
// ---------------------------------------------------------------------------

#ifdef FREEPOT_HAS_NEON_PATH
namespace neon {

static inline float64x2_t cmul_acc(float64x2_t acc, float64x2_t x, float64x2_t ar,
                                   float64x2_t ais) {
    // acc + (ar + i*ai) * x with ais = [-ai, ai]
    float64x2_t xs = vextq_f64(x, x, 1);  // [im, re]
    acc = vfmaq_f64(acc, x, ar);
    return vfmaq_f64(acc, xs, ais);
}

void caxpy(cplx* y, cplx alpha, const cplx* x, std::size_t len) {
    double* yd = reinterpret_cast<double*>(y);
    const double* xd = reinterpret_cast<const double*>(x);
    const float64x2_t ar = vdupq_n_f64(alpha.real());
    const float64x2_t ais = {-alpha.imag(), alpha.imag()};
    for (std::size_t i = 0; i < len; ++i) {
        float64x2_t yv = vld1q_f64(yd + 2 * i);
        float64x2_t xv = vld1q_f64(xd + 2 * i);
        vst1q_f64(yd + 2 * i, cmul_acc(yv, xv, ar, ais));
    }
}

void cgemm_acc(cplx* c, const cplx* a, const cplx* b, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < n; ++k) {
            const cplx aik = a[i * n + k];
            if (aik == cplx{}) continue;
            caxpy(c + i * n, aik, b + k * n, n);
        }
    }
}

void cscal(cplx* y, cplx alpha, std::size_t len) {
    double* yd = reinterpret_cast<double*>(y);
    const float64x2_t ar = vdupq_n_f64(alpha.real());
    const float64x2_t ais = {-alpha.imag(), alpha.imag()};
    for (std::size_t i = 0; i < len; ++i) {
        float64x2_t yv = vld1q_f64(yd + 2 * i);
        float64x2_t xs = vextq_f64(yv, yv, 1);
        float64x2_t p = vmulq_f64(yv, ar);
        vst1q_f64(yd + 2 * i, vfmaq_f64(p, xs, ais));
    }
}

double norm_sq(const cplx* a, std::size_t len) {
    const double* ad = reinterpret_cast<const double*>(a);
    float64x2_t acc = vdupq_n_f64(0.0);
    for (std::size_t i = 0; i < len; ++i) {
        float64x2_t v = vld1q_f64(ad + 2 * i);
        acc = vfmaq_f64(acc, v, v);
    }
    return vgetq_lane_f64(acc, 0) + vgetq_lane_f64(acc, 1);
}

}  // namespace neon
#endif  // FREEPOT_HAS_NEON_PATH

// ---------------------------------------------------------------------------
// runtime dispatch
// ---------------------------------------------------------------------------

namespace {

template <class Fn>
Fn pick(Fn scalar_fn, [[maybe_unused]] Fn avx2_fn, [[maybe_unused]] Fn neon_fn) {
#ifdef FREEPOT_HAS_AVX2_PATH
    if (simd::cpu_supports_avx2()) return avx2_fn;
#endif
#ifdef FREEPOT_HAS_NEON_PATH
    if (simd::cpu_supports_neon()) return neon_fn;
#endif
    return scalar_fn;
}

#ifdef FREEPOT_HAS_AVX2_PATH
#define FREEPOT_AVX2_FN(name) avx2::name
#else
#define FREEPOT_AVX2_FN(name) scalar::name
#endif
#ifdef FREEPOT_HAS_NEON_PATH
#define FREEPOT_NEON_FN(name) neon::name
#else
#define FREEPOT_NEON_FN(name) scalar::name
#endif

}  // namespace

void cgemm_acc(cplx* c, const cplx* a, const cplx* b, std::size_t n) {
    static const auto fn =
        pick(&scalar::cgemm_acc, &FREEPOT_AVX2_FN(cgemm_acc), &FREEPOT_NEON_FN(cgemm_acc));
    fn(c, a, b, n);
}

void caxpy(cplx* y, cplx alpha, const cplx* x, std::size_t len) {
    static const auto fn =
        pick(&scalar::caxpy, &FREEPOT_AVX2_FN(caxpy), &FREEPOT_NEON_FN(caxpy));
    fn(y, alpha, x, len);
}

void cscal(cplx* y, cplx alpha, std::size_t len) {
    static const auto fn =
        pick(&scalar::cscal, &FREEPOT_AVX2_FN(cscal), &FREEPOT_NEON_FN(cscal));
    fn(y, alpha, len);
}

double norm_sq(const cplx* a, std::size_t len) {
    static const auto fn =
        pick(&scalar::norm_sq, &FREEPOT_AVX2_FN(norm_sq), &FREEPOT_NEON_FN(norm_sq));
    return fn(a, len);
}

}  // namespace freepot::kern
