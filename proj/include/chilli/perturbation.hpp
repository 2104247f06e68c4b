#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "chilli/proximity.hpp"
#include "chilli/schema.hpp"

namespace chilli {

enum class Method { lime, chilli };

const char* method_name(Method method);
Method method_from_name(const std::string& name);

// How anchor-selection weights are reported: sum-normalized is a proper
// probability distribution; max-normalized rescales by the largest proximity
// instead. Selection draws are identical under either scaling, so the choice
// only affects the reported probabilities.
enum class AnchorNormalization { sum, max };

struct AnchorDistribution {
    std::vector<double> probabilities;  // one per training instance
    AnchorNormalization normalization = AnchorNormalization::sum;
};

// A synthetic neighborhood around `origin`: the perturbations, the base
// model's predictions for them, and their proximity weights.
struct PerturbationSet {
    Instance origin;
    std::vector<Instance> perturbations;
    std::vector<double> predictions;
    std::vector<double> weights;
    Method method = Method::lime;
    std::uint64_t seed = 0;
    ProximityConfig proximity;
};

// Gaussian perturbations around x: each continuous/cyclic feature gets
// x_f + stddev_train(f) * N(0,1); categorical features are resampled from
// the training frequency table. Values are intentionally not clipped to the
// schema bounds. Features with zero training stddev stay fixed at x_f.
std::vector<Instance> lime_perturb(const Instance& x, const Dataset& data, std::size_t n,
                                   std::uint64_t seed);

// Features of the given dataset that lime_perturb would hold constant.
std::vector<std::string> zero_stddev_features(const Dataset& data);

// Anchor-selection weights: proximity of x to every training instance,
// normalized per `normalization`.
AnchorDistribution anchor_distribution(const Instance& x, const Dataset& data,
                                       const ProximityConfig& config,
                                       AnchorNormalization normalization = AnchorNormalization::sum);

// One interpolated perturbation: continuous/cyclic features move a fraction
// t along the segment from x to the anchor (shorter arc for cyclic values);
// categorical features take x's value for t <= 0.5 and the anchor's
// otherwise. t = 0 and t = 1 reproduce x and the anchor exactly.
Instance chilli_interpolate(const Instance& x, const Instance& anchor, double t,
                            std::span<const FeatureSchema> schema);

// Interpolation perturbations: per perturbation, draw one t ~ U[0,1), pick an
// anchor from the proximity distribution, and interpolate. Continuous values
// can never leave the interval spanned by x and the training data.
std::vector<Instance> chilli_perturb(const Instance& x, const Dataset& data, std::size_t n,
                                     const ProximityConfig& config, std::uint64_t seed,
                                     AnchorNormalization normalization = AnchorNormalization::sum);

// Labels a perturbation list with base-model predictions and proximity
// weights. `predict` must return one value per instance, in order.
template <typename PredictFn>
PerturbationSet label_perturbations(const Instance& x, std::vector<Instance> zs, Method method,
                                    const ProximityConfig& config, std::uint64_t seed,
                                    PredictFn&& predict,
                                    std::span<const FeatureSchema> schema) {
    PerturbationSet set;
    set.origin = x;
    set.predictions = predict(std::span<const Instance>(zs));
    if (set.predictions.size() != zs.size())
        fail("model", "prediction count mismatch: expected " + std::to_string(zs.size()) +
                          ", got " + std::to_string(set.predictions.size()));
    set.weights = proximity_batch(x, zs, config, schema);
    set.perturbations = std::move(zs);
    set.method = method;
    set.seed = seed;
    set.proximity = config;
    return set;
}

// Number of feature values outside the schema's bounds: continuous outside
// [min, max], cyclic outside [0, period). Categorical values never count.
std::size_t count_out_of_bounds(std::span<const Instance> zs,
                                std::span<const FeatureSchema> schema);

} // namespace chilli
