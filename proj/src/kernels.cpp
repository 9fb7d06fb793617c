#include "qae/kernels.hpp"

#include <algorithm>
#include <cmath>

#if defined(__x86_64__) || defined(_M_X64)
#include <immintrin.h>
#endif
#if defined(__ARM_NEON) || defined(__aarch64__)
#include <arm_neon.h>
#endif

namespace qae::kernels {

double clenshaw(const double* c, std::size_t n, double x) {
    if (n == 0) return 0.0;
    double b1 = 0.0, b2 = 0.0;
    const double x2 = 2.0 * x;
    for (std::size_t k = n - 1; k >= 1; --k) {
        const double b0 = c[k] + x2 * b1 - b2;
        b2 = b1;
        b1 = b0;
    }
    return c[0] + x * b1 - b2;
}

void clenshaw_batch_scalar(const double* c, std::size_t n, const double* x, double* out,
                           std::size_t m) {
    for (std::size_t i = 0; i < m; ++i) out[i] = clenshaw(c, n, x[i]);
}

double max_abs_scalar(const double* v, std::size_t m) {
    double r = 0.0;
    for (std::size_t i = 0; i < m; ++i) r = std::max(r, std::fabs(v[i]));
    return r;
}

#if defined(__x86_64__) || defined(_M_X64)

__attribute__((target("avx2,fma"))) void clenshaw_batch_avx2(const double* c, std::size_t n,
                                                              const double* x, double* out,
                                                              std::size_t m) {
    if (n == 0) {
        std::fill(out, out + m, 0.0);
        return;
    }
    std::size_t i = 0;
    // Two independent 4-lane chains per step hide the FMA latency.
    for (; i + 8 <= m; i += 8) {
        const __m256d xa = _mm256_loadu_pd(x + i);
        const __m256d xb = _mm256_loadu_pd(x + i + 4);
        const __m256d x2a = _mm256_add_pd(xa, xa);
        const __m256d x2b = _mm256_add_pd(xb, xb);
        __m256d b1a = _mm256_setzero_pd(), b2a = _mm256_setzero_pd();
        __m256d b1b = _mm256_setzero_pd(), b2b = _mm256_setzero_pd();
        for (std::size_t k = n - 1; k >= 1; --k) {
            const __m256d ck = _mm256_set1_pd(c[k]);
            const __m256d b0a = _mm256_fmadd_pd(x2a, b1a, _mm256_sub_pd(ck, b2a));
            const __m256d b0b = _mm256_fmadd_pd(x2b, b1b, _mm256_sub_pd(ck, b2b));
            b2a = b1a;
            b1a = b0a;
            b2b = b1b;
            b1b = b0b;
        }
        const __m256d c0 = _mm256_set1_pd(c[0]);
        _mm256_storeu_pd(out + i, _mm256_fmadd_pd(xa, b1a, _mm256_sub_pd(c0, b2a)));
        _mm256_storeu_pd(out + i + 4, _mm256_fmadd_pd(xb, b1b, _mm256_sub_pd(c0, b2b)));
    }
    for (; i + 4 <= m; i += 4) {
        const __m256d xa = _mm256_loadu_pd(x + i);
        const __m256d x2a = _mm256_add_pd(xa, xa);
        __m256d b1 = _mm256_setzero_pd(), b2 = _mm256_setzero_pd();
        for (std::size_t k = n - 1; k >= 1; --k) {
            const __m256d b0 = _mm256_fmadd_pd(x2a, b1, _mm256_sub_pd(_mm256_set1_pd(c[k]), b2));
            b2 = b1;
            b1 = b0;
        }
        _mm256_storeu_pd(out + i, _mm256_fmadd_pd(xa, b1, _mm256_sub_pd(_mm256_set1_pd(c[0]), b2)));
    }
    for (; i < m; ++i) out[i] = clenshaw(c, n, x[i]);
}

__attribute__((target("avx2"))) double max_abs_avx2(const double* v, std::size_t m) {
    const __m256d sign = _mm256_set1_pd(-0.0);
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= m; i += 4) acc = _mm256_max_pd(acc, _mm256_andnot_pd(sign, _mm256_loadu_pd(v + i)));
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, acc);
    double r = std::max(std::max(lanes[0], lanes[1]), std::max(lanes[2], lanes[3]));
    for (; i < m; ++i) r = std::max(r, std::fabs(v[i]));
    return r;
}

bool avx2_supported() {
    static const bool ok = __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
    return ok;
}

#else

bool avx2_supported() { return false; }

#endif

#if defined(__ARM_NEON) || defined(__aarch64__)

void clenshaw_batch_neon(const double* c, std::size_t n, const double* x, double* out,
                         std::size_t m) {
    if (n == 0) {
        std::fill(out, out + m, 0.0);
        return;
    }
    std::size_t i = 0;
    for (; i + 2 <= m; i += 2) {
        const float64x2_t xv = vld1q_f64(x + i);
        const float64x2_t x2 = vaddq_f64(xv, xv);
        float64x2_t b1 = vdupq_n_f64(0.0), b2 = vdupq_n_f64(0.0);
        for (std::size_t k = n - 1; k >= 1; --k) {
            const float64x2_t b0 = vfmaq_f64(vsubq_f64(vdupq_n_f64(c[k]), b2), x2, b1);
            b2 = b1;
            b1 = b0;
        }
        vst1q_f64(out + i, vfmaq_f64(vsubq_f64(vdupq_n_f64(c[0]), b2), xv, b1));
    }
    for (; i < m; ++i) out[i] = clenshaw(c, n, x[i]);
}

#endif

void clenshaw_batch(const double* c, std::size_t n, const double* x, double* out, std::size_t m) {
#if defined(__x86_64__) || defined(_M_X64)
    if (avx2_supported()) return clenshaw_batch_avx2(c, n, x, out, m);
#elif defined(__ARM_NEON) || defined(__aarch64__)
    return clenshaw_batch_neon(c, n, x, out, m);
#endif
    clenshaw_batch_scalar(c, n, x, out, m);
}

double max_abs(const double* v, std::size_t m) {
#if defined(__x86_64__) || defined(_M_X64)
    if (avx2_supported()) return max_abs_avx2(v, m);
#endif
    return max_abs_scalar(v, m);
}

std::string_view active_kernel() {
#if defined(__x86_64__) || defined(_M_X64)
    return avx2_supported() ? "avx2" : "scalar";
#elif defined(__ARM_NEON) || defined(__aarch64__)
    return "neon";
#else
    return "scalar";
#endif
}

}  // namespace qae::kernels
