#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "chilli/base_models.hpp"
#include "chilli/metrics.hpp"
#include "chilli/perturbation.hpp"
#include "chilli/surrogate.hpp"

namespace chilli {

// Unweighted RMSE/MAE of g against the base-model predictions over the set,
// plus the weighted RMSE used during selection and the out-of-bounds count.
FaithfulnessReport faithfulness(const LinearSurrogate& g, const PerturbationSet& z,
                                std::span<const FeatureSchema> schema);

// One end-to-end explanation: perturb, label, select the best-fitting
// candidate over the lambda grid, assemble the report.
struct PipelineOptions {
    Method method = Method::chilli;
    double sigma = 0.1;
    ProximityKernel kernel = ProximityKernel::contextual_eq2;
    std::size_t n_perturbations = 1000;
    std::vector<double> lambda_grid = kDefaultLambdaGrid;
    std::uint64_t seed = 0;
    // evaluate faithfulness on a fresh perturbation set instead of the
    // training one (off by default: same-set evaluation)
    bool fresh_evaluation_set = false;
    AnchorNormalization anchor_normalization = AnchorNormalization::sum;
};

// Kernel conventionally paired with each method: euclidean for lime,
// contextual for chilli.
ProximityKernel default_kernel(Method method);

struct ExplanationRun {
    Explanation explanation;
    PerturbationSet set;
};

ExplanationRun run_explanation(const Dataset& data, const Predictor& model, const Instance& x,
                               const PipelineOptions& options);

struct ComparisonConfig {
    std::size_t n_instances = 25;
    double sigma = 0.1;
    std::size_t n_perturbations = 1000;
    std::vector<double> lambda_grid = kDefaultLambdaGrid;
    std::uint64_t seed = 0;
    std::string metric = "rmse";  // rmse | mae
    bool fresh_evaluation_set = false;
};

struct InstanceComparison {
    std::size_t instance_id;
    double lime_error;
    double chilli_error;
};

struct ComparisonRun {
    std::vector<InstanceComparison> per_instance;  // ascending instance_id
    double lime_average = 0.0;
    double chilli_average = 0.0;
    double reduction_percent = 0.0;  // (lime - chilli) / lime * 100
    ComparisonConfig config;
};

// Explains n uniformly sampled instances with both methods against the same
// base model and reports per-instance and average errors.
ComparisonRun compare_explainers(const Dataset& data, const Predictor& model,
                                 const ComparisonConfig& config);

struct SweepRow {
    double sigma;
    Method method;
    double mae;
};

struct SweepConfig {
    std::size_t n_perturbations = 1000;
    std::vector<double> lambda_grid = kDefaultLambdaGrid;
    std::uint64_t seed = 0;
    bool fresh_evaluation_set = false;
};

// Both methods' MAE at each sigma, everything else fixed. Every cell runs
// from the same seed, so the table is independent of the sigma order.
std::vector<SweepRow> sigma_sweep(const Dataset& data, const Predictor& model,
                                  const Instance& x, std::span<const double> sigmas,
                                  const SweepConfig& config);

struct FeatureQuartiles {
    std::string feature;
    double q1;
    double median;
    double q3;
};

// Median and quartiles (linear interpolation between order statistics) of
// each feature's coefficient across a set of explanations.
std::vector<FeatureQuartiles> contribution_variance(std::span<const Explanation> runs);

// --- plot-data emission (CSV + JSON, lossless for finite values) ---

void write_explanation_json(const Explanation& e, const std::string& path);
std::string explanation_to_json(const Explanation& e);

void write_comparison_files(const ComparisonRun& run, const std::string& path_prefix);
ComparisonRun read_comparison_json(const std::string& path);

void write_sweep_files(std::span<const SweepRow> rows, const std::string& path_prefix);
std::vector<SweepRow> read_sweep_json(const std::string& path);

void write_perturbations_csv(const PerturbationSet& set,
                             std::span<const FeatureSchema> schema, const std::string& path);
PerturbationSet read_perturbations_csv(const std::string& path,
                                       std::span<const FeatureSchema> schema);

} // namespace chilli
