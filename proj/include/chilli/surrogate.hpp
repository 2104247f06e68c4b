#pragma once

#include <span>
#include <string>
#include <vector>

#include "chilli/metrics.hpp"
#include "chilli/perturbation.hpp"
#include "chilli/schema.hpp"

namespace chilli {

// The interpretable proxy g: a linear model over normalized features.
struct LinearSurrogate {
    std::vector<double> coefficients;  // one per feature, normalized units
    double intercept = 0.0;
    double ridge_lambda = 0.0;
};

struct Contribution {
    std::string feature;
    double coefficient;
};

struct Explanation {
    LinearSurrogate surrogate;
    std::vector<Contribution> contributions;  // sorted by |coefficient| desc, stable
    double local_prediction = 0.0;            // g(x)
    FaithfulnessReport faithfulness;

    // provenance
    Method method = Method::lime;
    std::uint64_t seed = 0;
    double sigma = 0.0;
    std::vector<std::string> feature_names;  // schema order
};

// Minimizes sum_i w_i (f(z_i) - g(z_i))^2 + lambda * |coefficients|^2 with an
// unpenalized intercept, by weighted normal equations over normalized
// features. The moment sums are accumulated in a canonical order, so the
// result is bit-identical under any permutation of the perturbations.
// Throws Error("singular_system") when the system cannot be factorized,
// which at lambda = 0 means: raise lambda or add perturbations.
LinearSurrogate fit_weighted_linear(const PerturbationSet& z,
                                    std::span<const FeatureSchema> schema, double lambda);

// Fits one candidate per lambda and returns the one with the lowest
// proximity-weighted RMSE on (Z, f(Z)). Ties go to the larger lambda.
// Candidates that fail to fit are skipped; if all fail, the last error is
// rethrown.
LinearSurrogate select_best(const PerturbationSet& z, std::span<const FeatureSchema> schema,
                            std::span<const double> lambda_grid);

// g evaluated at a raw instance (features are normalized internally).
double surrogate_predict(const LinearSurrogate& g, const Instance& x,
                         std::span<const FeatureSchema> schema);

std::vector<double> surrogate_predict_batch(const LinearSurrogate& g,
                                            std::span<const Instance> instances,
                                            std::span<const FeatureSchema> schema);

// Weighted RMSE of g against the stored predictions, weights as in the set.
double weighted_rmse(const LinearSurrogate& g, const PerturbationSet& z,
                     std::span<const FeatureSchema> schema);

// Coefficients rescaled to raw feature units (divide by the feature's
// normalization range). Categorical coefficients are unchanged.
std::vector<double> raw_unit_coefficients(const LinearSurrogate& g,
                                          std::span<const FeatureSchema> schema);

// Assembles the presented explanation: ranked contributions, g(x) and the
// faithfulness of g over the perturbation set.
Explanation explain(const LinearSurrogate& best, const Instance& x, const PerturbationSet& z,
                    std::span<const FeatureSchema> schema);

extern const std::vector<double> kDefaultLambdaGrid;  // {0, 1e-4, 1e-3, 1e-2, 1e-1}

} // namespace chilli
