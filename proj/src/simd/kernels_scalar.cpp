#include "chilli/simd/kernels.hpp"

#include "kernels_elem.hpp"

namespace chilli::simd {
namespace {

void abs_diff_clamp1(const double* a, double b, double* out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) out[i] = elem::abs_diff_clamp1(a[i], b);
}

void cyclic_arc_unit(const double* a, double b, double* out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) out[i] = elem::cyclic_arc_unit(a[i], b);
}

void indicator_neq(const double* a, double b, double* out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) out[i] = elem::indicator_neq(a[i], b);
}

void add_inplace(double* acc, const double* x, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) acc[i] += x[i];
}

void div_inplace(double* a, double s, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) a[i] /= s;
}

void sq_diff_add(const double* a, double b, double* acc, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) acc[i] += elem::sq_diff(a[i], b);
}

void exp_neg_sq_over(const double* d, double denom, double* out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) out[i] = elem::exp_neg_sq_over(d[i], denom);
}

void exp_neg_scaled(const double* s, double gamma, double* out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) out[i] = elem::exp_neg_scaled(s[i], gamma);
}

void mul3(const double* w, const double* a, const double* b, double* out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) out[i] = elem::mul3(w[i], a[i], b[i]);
}

} // namespace

const Kernels& scalar_kernels() {
    static const Kernels table = {
        abs_diff_clamp1, cyclic_arc_unit, indicator_neq, add_inplace, div_inplace,
        sq_diff_add,     exp_neg_sq_over, exp_neg_scaled, mul3,
    };
    return table;
}

} // namespace chilli::simd
