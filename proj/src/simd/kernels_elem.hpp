#pragma once

#include <algorithm>
#include <cmath>

// Per-element definitions shared by the scalar reference kernels and the
// tail loops of the vector variants. Keeping one definition per element op
// is what makes bit-exact equivalence across variants checkable.
namespace chilli::simd::elem {

inline double abs_diff_clamp1(double a, double b) {
    return std::min(std::fabs(a - b), 1.0);
}

inline double cyclic_arc_unit(double a, double b) {
    double d = std::fabs(a - b);
    return 2.0 * std::min(d, 1.0 - d);
}

inline double indicator_neq(double a, double b) {
    return a == b ? 0.0 : 1.0;
}

inline double sq_diff(double a, double b) {
    double t = a - b;
    return t * t;
}

inline double exp_neg_sq_over(double d, double denom) {
    double t = d * d;
    return std::exp(-(t / denom));
}

inline double exp_neg_scaled(double s, double gamma) {
    return std::exp(-(gamma * s));
}

inline double mul3(double w, double a, double b) {
    return (w * a) * b;
}

} // namespace chilli::simd::elem
