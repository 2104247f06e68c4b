#include "chilli/numeric.hpp"

#include <algorithm>
#include <cmath>

#include "chilli/error.hpp"

namespace chilli::numeric {

double sum(std::span<const double> xs) {
    double acc = 0.0;
    for (double x : xs) acc += x;
    return acc;
}

double deterministic_sum(std::span<const double> xs) {
    std::vector<double> terms(xs.begin(), xs.end());
    std::sort(terms.begin(), terms.end());
    double acc = 0.0;
    for (double t : terms) acc += t;
    return acc;
}

double quantile_linear(std::vector<double> values, double q) {
    if (values.empty()) fail("validation", "quantile of an empty sample");
    std::sort(values.begin(), values.end());
    if (values.size() == 1) return values[0];
    double pos = q * static_cast<double>(values.size() - 1);
    std::size_t lo = static_cast<std::size_t>(std::floor(pos));
    if (lo >= values.size() - 1) return values.back();
    double frac = pos - static_cast<double>(lo);
    return values[lo] + frac * (values[lo + 1] - values[lo]);
}

bool cholesky_inplace(std::vector<double>& a, std::size_t n) {
    for (std::size_t j = 0; j < n; ++j) {
        double diag = a[j * n + j];
        for (std::size_t k = 0; k < j; ++k) diag -= a[j * n + k] * a[j * n + k];
        if (!(diag > 0.0)) return false;
        double ljj = std::sqrt(diag);
        a[j * n + j] = ljj;
        for (std::size_t i = j + 1; i < n; ++i) {
            double v = a[i * n + j];
            for (std::size_t k = 0; k < j; ++k) v -= a[i * n + k] * a[j * n + k];
            a[i * n + j] = v / ljj;
        }
    }
    // zero the strict upper triangle so the factor is self-describing
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) a[i * n + j] = 0.0;
    return true;
}

std::vector<double> cholesky_solve(const std::vector<double>& l, std::size_t n,
                                   std::span<const double> b) {
    std::vector<double> x(b.begin(), b.end());
    for (std::size_t i = 0; i < n; ++i) {
        double v = x[i];
        for (std::size_t k = 0; k < i; ++k) v -= l[i * n + k] * x[k];
        x[i] = v / l[i * n + i];
    }
    for (std::size_t ii = n; ii-- > 0;) {
        double v = x[ii];
        for (std::size_t k = ii + 1; k < n; ++k) v -= l[k * n + ii] * x[k];
        x[ii] = v / l[ii * n + ii];
    }
    return x;
}

std::vector<double> solve_spd(std::vector<double> a, std::size_t n,
                              std::span<const double> b, const char* context) {
    if (!cholesky_inplace(a, n)) fail("singular_system", context);
    return cholesky_solve(a, n, b);
}

} // namespace chilli::numeric
