#pragma once

#include <span>
#include <vector>

#include "chilli/schema.hpp"

namespace chilli {

// euclidean: exp(-D^2/sigma^2) with D the Euclidean distance over min-max
// normalized continuous/cyclic values plus a 0/1 indicator per categorical
// feature (the classic LIME weighting).
// contextual: exp(-m^2/sigma^2) with m the mean of per-feature distances,
// each feature measured on its own scale (arc distance for cyclic values).
enum class ProximityKernel { euclidean_eq1, contextual_eq2 };

const char* kernel_name(ProximityKernel kernel);

struct ProximityConfig {
    double sigma = 0.1;
    ProximityKernel kernel = ProximityKernel::contextual_eq2;

    void validate() const {
        if (!(sigma > 0.0)) fail("validation", "proximity sigma must be > 0");
    }
};

// sigma when the caller does not choose one: 0.1 for the contextual kernel,
// 0.75*sqrt(d) for the euclidean baseline.
double default_sigma(ProximityKernel kernel, std::size_t n_features);

// Distance between two values of one feature, in [0, 1]. Symmetric, zero iff
// the values coincide (mod period for cyclic features).
double feature_distance(double a, double b, const FeatureSchema& feature);

// Mean of feature_distance over all features, in [0, 1].
double aggregate_distance(const Instance& p, const Instance& q,
                          std::span<const FeatureSchema> schema);

// Kernel weight in (0, 1]; equals 1 iff the distance is zero.
double proximity(const Instance& p, const Instance& q, const ProximityConfig& config,
                 std::span<const FeatureSchema> schema);

// Batch proximity of x against every row of the dataset; entry i is
// bit-identical to proximity(x, instances[i], ...).
std::vector<double> proximity_vector(const Instance& x, const Dataset& data,
                                     const ProximityConfig& config);

// Same, against an arbitrary instance list (e.g. a perturbation set).
std::vector<double> proximity_batch(const Instance& x, std::span<const Instance> points,
                                    const ProximityConfig& config,
                                    std::span<const FeatureSchema> schema);

// Batch contextual aggregate distance of x to every dataset row.
std::vector<double> aggregate_distance_vector(const Instance& x, const Dataset& data);

} // namespace chilli
