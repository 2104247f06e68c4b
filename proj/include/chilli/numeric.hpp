#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace chilli::numeric {

// Plain left-to-right sum.
double sum(std::span<const double> xs);

// Sum of a multiset of doubles that is invariant under permutation of the
// input: the terms are sorted into a canonical order before accumulation.
// Used wherever a result is contractually bit-identical under reordering
// (e.g. the weighted normal equations).
double deterministic_sum(std::span<const double> xs);

// Quantile with linear interpolation between order statistics:
// position (n-1)*q in the sorted sample. `values` is copied and sorted.
double quantile_linear(std::vector<double> values, double q);

// In-place lower Cholesky factorization of a dense symmetric matrix stored
// row-major. Returns false if a pivot is not strictly positive.
bool cholesky_inplace(std::vector<double>& a, std::size_t n);

// Solves L L^T x = b given the factorization produced above.
std::vector<double> cholesky_solve(const std::vector<double>& l, std::size_t n,
                                   std::span<const double> b);

// Convenience: solve a small SPD system, throwing Error("singular_system",
// context) when the factorization fails.
std::vector<double> solve_spd(std::vector<double> a, std::size_t n,
                              std::span<const double> b, const char* context);

} // namespace chilli::numeric
