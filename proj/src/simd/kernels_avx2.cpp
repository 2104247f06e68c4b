#include "chilli/simd/kernels.hpp"

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

#include <cmath>

#include "kernels_elem.hpp"

// 4-wide AVX2 variants. Only IEEE-exact lane ops are used (add, sub, mul,
// div, min, and, cmp), never FMA, so each lane matches the scalar reference
// bit-for-bit. exp is evaluated with libm on a staged buffer for the same
// reason.
namespace chilli::simd {
namespace {

const __m256d kAbsMask = _mm256_castsi256_pd(_mm256_set1_epi64x(0x7FFFFFFFFFFFFFFFLL));
const __m256d kSignMask = _mm256_set1_pd(-0.0);

inline __m256d abs_pd(__m256d v) { return _mm256_and_pd(v, kAbsMask); }
inline __m256d neg_pd(__m256d v) { return _mm256_xor_pd(v, kSignMask); }

void abs_diff_clamp1(const double* a, double b, double* out, std::size_t n) {
    const __m256d vb = _mm256_set1_pd(b);
    const __m256d one = _mm256_set1_pd(1.0);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d d = abs_pd(_mm256_sub_pd(_mm256_loadu_pd(a + i), vb));
        _mm256_storeu_pd(out + i, _mm256_min_pd(d, one));
    }
    for (; i < n; ++i) out[i] = elem::abs_diff_clamp1(a[i], b);
}

void cyclic_arc_unit(const double* a, double b, double* out, std::size_t n) {
    const __m256d vb = _mm256_set1_pd(b);
    const __m256d one = _mm256_set1_pd(1.0);
    const __m256d two = _mm256_set1_pd(2.0);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d d = abs_pd(_mm256_sub_pd(_mm256_loadu_pd(a + i), vb));
        __m256d arc = _mm256_min_pd(d, _mm256_sub_pd(one, d));
        _mm256_storeu_pd(out + i, _mm256_mul_pd(two, arc));
    }
    for (; i < n; ++i) out[i] = elem::cyclic_arc_unit(a[i], b);
}

void indicator_neq(const double* a, double b, double* out, std::size_t n) {
    const __m256d vb = _mm256_set1_pd(b);
    const __m256d one = _mm256_set1_pd(1.0);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d eq = _mm256_cmp_pd(_mm256_loadu_pd(a + i), vb, _CMP_EQ_OQ);
        _mm256_storeu_pd(out + i, _mm256_andnot_pd(eq, one));
    }
    for (; i < n; ++i) out[i] = elem::indicator_neq(a[i], b);
}

void add_inplace(double* acc, const double* x, std::size_t n) {
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d v = _mm256_add_pd(_mm256_loadu_pd(acc + i), _mm256_loadu_pd(x + i));
        _mm256_storeu_pd(acc + i, v);
    }
    for (; i < n; ++i) acc[i] += x[i];
}

void div_inplace(double* a, double s, std::size_t n) {
    const __m256d vs = _mm256_set1_pd(s);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        _mm256_storeu_pd(a + i, _mm256_div_pd(_mm256_loadu_pd(a + i), vs));
    for (; i < n; ++i) a[i] /= s;
}

void sq_diff_add(const double* a, double b, double* acc, std::size_t n) {
    const __m256d vb = _mm256_set1_pd(b);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d d = _mm256_sub_pd(_mm256_loadu_pd(a + i), vb);
        __m256d v = _mm256_add_pd(_mm256_loadu_pd(acc + i), _mm256_mul_pd(d, d));
        _mm256_storeu_pd(acc + i, v);
    }
    for (; i < n; ++i) acc[i] += elem::sq_diff(a[i], b);
}

void exp_neg_sq_over(const double* d, double denom, double* out, std::size_t n) {
    const __m256d vden = _mm256_set1_pd(denom);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d v = _mm256_loadu_pd(d + i);
        __m256d u = _mm256_div_pd(_mm256_mul_pd(v, v), vden);
        _mm256_storeu_pd(out + i, neg_pd(u));
        out[i + 0] = std::exp(out[i + 0]);
        out[i + 1] = std::exp(out[i + 1]);
        out[i + 2] = std::exp(out[i + 2]);
        out[i + 3] = std::exp(out[i + 3]);
    }
    for (; i < n; ++i) out[i] = elem::exp_neg_sq_over(d[i], denom);
}

void exp_neg_scaled(const double* s, double gamma, double* out, std::size_t n) {
    const __m256d vg = _mm256_set1_pd(gamma);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d u = _mm256_mul_pd(vg, _mm256_loadu_pd(s + i));
        _mm256_storeu_pd(out + i, neg_pd(u));
        out[i + 0] = std::exp(out[i + 0]);
        out[i + 1] = std::exp(out[i + 1]);
        out[i + 2] = std::exp(out[i + 2]);
        out[i + 3] = std::exp(out[i + 3]);
    }
    for (; i < n; ++i) out[i] = elem::exp_neg_scaled(s[i], gamma);
}

void mul3(const double* w, const double* a, const double* b, double* out, std::size_t n) {
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d p = _mm256_mul_pd(_mm256_loadu_pd(w + i), _mm256_loadu_pd(a + i));
        _mm256_storeu_pd(out + i, _mm256_mul_pd(p, _mm256_loadu_pd(b + i)));
    }
    for (; i < n; ++i) out[i] = elem::mul3(w[i], a[i], b[i]);
}

} // namespace

const Kernels* avx2_kernels() {
    static const Kernels table = {
        abs_diff_clamp1, cyclic_arc_unit, indicator_neq, add_inplace, div_inplace,
        sq_diff_add,     exp_neg_sq_over, exp_neg_scaled, mul3,
    };
    return &table;
}

} // namespace chilli::simd

#else

namespace chilli::simd {

const Kernels* avx2_kernels() { return nullptr; }

} // namespace chilli::simd

#endif
