#pragma once

#include <cstddef>
#include <string_view>

namespace qae::kernels {

/// Clenshaw evaluation of sum_k c[k] T_k(x), k < n.
double clenshaw(const double* c, std::size_t n, double x);

/// Batched Clenshaw over m points. Dispatches to the widest kernel the CPU runs.
void clenshaw_batch(const double* c, std::size_t n, const double* x, double* out, std::size_t m);

void clenshaw_batch_scalar(const double* c, std::size_t n, const double* x, double* out,
                           std::size_t m);
#if defined(__x86_64__) || defined(_M_X64)
void clenshaw_batch_avx2(const double* c, std::size_t n, const double* x, double* out,
                         std::size_t m);
#endif
#if defined(__ARM_NEON) || defined(__aarch64__)
void clenshaw_batch_neon(const double* c, std::size_t n, const double* x, double* out,
                         std::size_t m);
#endif

/// Max |v[i]| with the same dispatch rules.
double max_abs(const double* v, std::size_t m);
double max_abs_scalar(const double* v, std::size_t m);
#if defined(__x86_64__) || defined(_M_X64)
double max_abs_avx2(const double* v, std::size_t m);
#endif

bool avx2_supported();
std::string_view active_kernel();

}  // namespace qae::kernels
