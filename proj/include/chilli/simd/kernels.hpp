#pragma once

#include <cstddef>

namespace chilli::simd {

// Elementwise batch kernels over double arrays. Every variant of a kernel
// performs the same IEEE operation sequence per element (no FMA, no
// reassociation; exp always goes through libm), so scalar and vector builds
// produce bit-identical output. Reductions are deliberately not part of this
// table: they live in shared scalar code with a fixed or canonicalized
// summation order.
struct Kernels {
    // out[i] = min(|a[i] - b|, 1)
    void (*abs_diff_clamp1)(const double* a, double b, double* out, std::size_t n);
    // a, b are phase values in [0, 1); out[i] = 2 * min(d, 1 - d), d = |a[i] - b|
    void (*cyclic_arc_unit)(const double* a, double b, double* out, std::size_t n);
    // out[i] = (a[i] == b) ? 0 : 1
    void (*indicator_neq)(const double* a, double b, double* out, std::size_t n);
    // acc[i] += x[i]
    void (*add_inplace)(double* acc, const double* x, std::size_t n);
    // a[i] /= s
    void (*div_inplace)(double* a, double s, std::size_t n);
    // acc[i] += (a[i] - b)^2
    void (*sq_diff_add)(const double* a, double b, double* acc, std::size_t n);
    // out[i] = exp(-(d[i]*d[i]) / denom)
    void (*exp_neg_sq_over)(const double* d, double denom, double* out, std::size_t n);
    // out[i] = exp(-(gamma * s[i]))
    void (*exp_neg_scaled)(const double* s, double gamma, double* out, std::size_t n);
    // out[i] = (w[i] * a[i]) * b[i]
    void (*mul3)(const double* w, const double* a, const double* b, double* out, std::size_t n);
};

enum class Level { scalar, avx2 };

const char* level_name(Level level);

// Reference implementation, always available.
const Kernels& scalar_kernels();

// AVX2 implementation, or nullptr when not compiled in (non-x86 builds).
const Kernels* avx2_kernels();

// Variant selected at startup: the widest one the CPU supports, overridable
// with CHILLI_SIMD=scalar|avx2 in the environment.
const Kernels& active();
Level active_level();

} // namespace chilli::simd
