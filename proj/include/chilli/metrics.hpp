#pragma once

#include <cstddef>

namespace chilli {

// Agreement between the surrogate and the base model over a perturbation
// set. rmse/mae are unweighted; weighted_rmse uses proximity weights
// normalized to sum 1.
struct FaithfulnessReport {
    double rmse = 0.0;
    double mae = 0.0;
    double weighted_rmse = 0.0;
    std::size_t n_perturbations = 0;
    std::size_t out_of_bounds_count = 0;
};

} // namespace chilli
