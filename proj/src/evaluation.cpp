#include "chilli/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <json.hpp>

#include "chilli/io.hpp"
#include "chilli/numeric.hpp"
#include "chilli/rng.hpp"

namespace chilli {

FaithfulnessReport faithfulness(const LinearSurrogate& g, const PerturbationSet& z,
                                std::span<const FeatureSchema> schema) {
    const std::size_t n = z.perturbations.size();
    if (n == 0) fail("validation", "faithfulness of an empty perturbation set");
    auto fitted = surrogate_predict_batch(g, z.perturbations, schema);

    double se = 0.0, ae = 0.0, wsum = 0.0, wse = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double e = z.predictions[i] - fitted[i];
        se += e * e;
        ae += std::fabs(e);
        wsum += z.weights[i];
        wse += z.weights[i] * (e * e);
    }

    FaithfulnessReport report;
    report.n_perturbations = n;
    report.rmse = std::sqrt(se / static_cast<double>(n));
    report.mae = ae / static_cast<double>(n);
    report.weighted_rmse = wsum > 0.0 ? std::sqrt(wse / wsum) : 0.0;
    report.out_of_bounds_count = count_out_of_bounds(z.perturbations, schema);
    return report;
}

ProximityKernel default_kernel(Method method) {
    return method == Method::lime ? ProximityKernel::euclidean_eq1
                                  : ProximityKernel::contextual_eq2;
}

ExplanationRun run_explanation(const Dataset& data, const Predictor& model, const Instance& x,
                               const PipelineOptions& options) {
    ProximityConfig prox{options.sigma, options.kernel};
    prox.validate();

    auto generate = [&](std::uint64_t seed) {
        return options.method == Method::lime
                   ? lime_perturb(x, data, options.n_perturbations, seed)
                   : chilli_perturb(x, data, options.n_perturbations, prox, seed,
                                    options.anchor_normalization);
    };
    auto predict = [&](std::span<const Instance> zs) { return model.predict_batch(zs); };

    PerturbationSet fit_set = label_perturbations(x, generate(options.seed), options.method,
                                                  prox, options.seed, predict, data.schema());
    LinearSurrogate best = select_best(fit_set, data.schema(), options.lambda_grid);

    ExplanationRun run;
    if (options.fresh_evaluation_set) {
        std::uint64_t eval_seed = options.seed ^ 0xE5A1A1ULL;
        PerturbationSet eval_set = label_perturbations(
            x, generate(eval_seed), options.method, prox, eval_seed, predict, data.schema());
        run.explanation = explain(best, x, eval_set, data.schema());
        run.set = std::move(eval_set);
    } else {
        run.explanation = explain(best, x, fit_set, data.schema());
        run.set = std::move(fit_set);
    }
    return run;
}

namespace {

double error_by_metric(const FaithfulnessReport& r, const std::string& metric) {
    if (metric == "rmse") return r.rmse;
    if (metric == "mae") return r.mae;
    fail("usage", "unknown metric '" + metric + "' (expected rmse or mae)");
}

PipelineOptions pipeline_for(Method method, double sigma, std::size_t n_perturbations,
                             const std::vector<double>& lambda_grid, std::uint64_t seed,
                             bool fresh_eval) {
    PipelineOptions o;
    o.method = method;
    o.sigma = sigma;
    o.kernel = default_kernel(method);
    o.n_perturbations = n_perturbations;
    o.lambda_grid = lambda_grid;
    o.seed = seed;
    o.fresh_evaluation_set = fresh_eval;
    return o;
}

} // namespace

ComparisonRun compare_explainers(const Dataset& data, const Predictor& model,
                                 const ComparisonConfig& config) {
    if (config.n_instances > data.n_rows())
        fail("validation", "cannot sample " + std::to_string(config.n_instances) +
                               " instances from " + std::to_string(data.n_rows()) + " rows");
    (void)error_by_metric({}, config.metric);

    rng::Stream picker(config.seed);
    auto ids = rng::sample_without_replacement(picker, data.n_rows(), config.n_instances);

    ComparisonRun run;
    run.config = config;
    run.per_instance.reserve(ids.size());
    for (std::size_t id : ids) {
        const Instance& x = data.instances()[id];
        // both methods share the instance's substream seed
        std::uint64_t seed = rng::Stream::substream(config.seed, id).next_u64();
        InstanceComparison row{};
        row.instance_id = id;
        try {
            auto lime_run = run_explanation(
                data, model, x,
                pipeline_for(Method::lime, config.sigma, config.n_perturbations,
                             config.lambda_grid, seed, config.fresh_evaluation_set));
            row.lime_error = error_by_metric(lime_run.explanation.faithfulness, config.metric);
            auto chilli_run = run_explanation(
                data, model, x,
                pipeline_for(Method::chilli, config.sigma, config.n_perturbations,
                             config.lambda_grid, seed, config.fresh_evaluation_set));
            row.chilli_error =
                error_by_metric(chilli_run.explanation.faithfulness, config.metric);
        } catch (const Error& e) {
            fail(e.kind(), "instance " + std::to_string(id) + ": " + e.what());
        }
        run.per_instance.push_back(row);
    }

    double ls = 0.0, cs = 0.0;
    for (const auto& row : run.per_instance) {
        ls += row.lime_error;
        cs += row.chilli_error;
    }
    run.lime_average = ls / static_cast<double>(run.per_instance.size());
    run.chilli_average = cs / static_cast<double>(run.per_instance.size());
    run.reduction_percent =
        run.lime_average != 0.0
            ? (run.lime_average - run.chilli_average) / run.lime_average * 100.0
            : 0.0;
    return run;
}

std::vector<SweepRow> sigma_sweep(const Dataset& data, const Predictor& model,
                                  const Instance& x, std::span<const double> sigmas,
                                  const SweepConfig& config) {
    if (sigmas.empty()) fail("validation", "sigma list must be non-empty");
    for (double s : sigmas)
        if (!(s > 0.0)) fail("validation", "sigma values must be > 0");

    std::vector<SweepRow> rows;
    rows.reserve(sigmas.size() * 2);
    for (double sigma : sigmas) {
        for (Method method : {Method::lime, Method::chilli}) {
            auto run = run_explanation(
                data, model, x,
                pipeline_for(method, sigma, config.n_perturbations, config.lambda_grid,
                             config.seed, config.fresh_evaluation_set));
            rows.push_back({sigma, method, run.explanation.faithfulness.mae});
        }
    }
    return rows;
}

std::vector<FeatureQuartiles> contribution_variance(std::span<const Explanation> runs) {
    if (runs.empty()) fail("validation", "contribution_variance over zero explanations");
    const auto& names = runs.front().feature_names;
    for (const auto& r : runs)
        if (r.feature_names != names)
            fail("validation", "explanations do not share a schema");

    std::vector<FeatureQuartiles> out;
    out.reserve(names.size());
    for (std::size_t f = 0; f < names.size(); ++f) {
        std::vector<double> coeffs;
        coeffs.reserve(runs.size());
        for (const auto& r : runs) coeffs.push_back(r.surrogate.coefficients[f]);
        FeatureQuartiles q;
        q.feature = names[f];
        q.q1 = numeric::quantile_linear(coeffs, 0.25);
        q.median = numeric::quantile_linear(coeffs, 0.5);
        q.q3 = numeric::quantile_linear(coeffs, 0.75);
        out.push_back(std::move(q));
    }
    return out;
}

// ---------------------------------------------------------------- emission

std::string explanation_to_json(const Explanation& e) {
    nlohmann::ordered_json j;
    j["method"] = method_name(e.method);
    j["seed"] = e.seed;
    j["sigma"] = e.sigma;
    j["lambda"] = e.surrogate.ridge_lambda;
    j["contributions"] = nlohmann::ordered_json::array();
    for (const auto& c : e.contributions)
        j["contributions"].push_back({{"feature", c.feature}, {"coefficient", c.coefficient}});
    j["local_prediction"] = e.local_prediction;
    j["faithfulness"] = {{"rmse", e.faithfulness.rmse},
                         {"mae", e.faithfulness.mae},
                         {"weighted_rmse", e.faithfulness.weighted_rmse},
                         {"n_perturbations", e.faithfulness.n_perturbations},
                         {"out_of_bounds_count", e.faithfulness.out_of_bounds_count}};
    return j.dump(2) + "\n";
}

void write_explanation_json(const Explanation& e, const std::string& path) {
    io::write_text_file(path, explanation_to_json(e));
}

namespace {

nlohmann::ordered_json comparison_to_json(const ComparisonRun& run) {
    nlohmann::ordered_json j;
    j["config"] = {{"n_instances", run.config.n_instances},
                   {"sigma", run.config.sigma},
                   {"n_perturbations", run.config.n_perturbations},
                   {"lambda_grid", run.config.lambda_grid},
                   {"seed", run.config.seed},
                   {"metric", run.config.metric},
                   {"fresh_evaluation_set", run.config.fresh_evaluation_set}};
    j["per_instance"] = nlohmann::ordered_json::array();
    for (const auto& row : run.per_instance)
        j["per_instance"].push_back({{"instance_id", row.instance_id},
                                     {"lime_error", row.lime_error},
                                     {"chilli_error", row.chilli_error}});
    j["lime_average"] = run.lime_average;
    j["chilli_average"] = run.chilli_average;
    j["reduction_percent"] = run.reduction_percent;
    return j;
}

} // namespace

void write_comparison_files(const ComparisonRun& run, const std::string& path_prefix) {
    io::write_text_file(path_prefix + ".json", comparison_to_json(run).dump(2) + "\n");

    std::ostringstream csv;
    csv << "instance_id,lime_error,chilli_error\n";
    for (const auto& row : run.per_instance)
        csv << row.instance_id << ',' << io::format_double(row.lime_error) << ','
            << io::format_double(row.chilli_error) << '\n';
    io::write_text_file(path_prefix + ".csv", csv.str());
}

ComparisonRun read_comparison_json(const std::string& path) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(io::read_text_file(path));
    } catch (const nlohmann::json::exception& e) {
        fail("parse", path + ": " + e.what());
    }
    ComparisonRun run;
    const auto& c = j.at("config");
    run.config.n_instances = c.at("n_instances").get<std::size_t>();
    run.config.sigma = c.at("sigma").get<double>();
    run.config.n_perturbations = c.at("n_perturbations").get<std::size_t>();
    run.config.lambda_grid = c.at("lambda_grid").get<std::vector<double>>();
    run.config.seed = c.at("seed").get<std::uint64_t>();
    run.config.metric = c.at("metric").get<std::string>();
    run.config.fresh_evaluation_set = c.at("fresh_evaluation_set").get<bool>();
    for (const auto& row : j.at("per_instance"))
        run.per_instance.push_back({row.at("instance_id").get<std::size_t>(),
                                    row.at("lime_error").get<double>(),
                                    row.at("chilli_error").get<double>()});
    run.lime_average = j.at("lime_average").get<double>();
    run.chilli_average = j.at("chilli_average").get<double>();
    run.reduction_percent = j.at("reduction_percent").get<double>();
    return run;
}

void write_sweep_files(std::span<const SweepRow> rows, const std::string& path_prefix) {
    nlohmann::ordered_json j = nlohmann::ordered_json::array();
    for (const auto& r : rows)
        j.push_back({{"sigma", r.sigma}, {"method", method_name(r.method)}, {"mae", r.mae}});
    io::write_text_file(path_prefix + ".json", j.dump(2) + "\n");

    std::ostringstream csv;
    csv << "sigma,method,mae\n";
    for (const auto& r : rows)
        csv << io::format_double(r.sigma) << ',' << method_name(r.method) << ','
            << io::format_double(r.mae) << '\n';
    io::write_text_file(path_prefix + ".csv", csv.str());
}

std::vector<SweepRow> read_sweep_json(const std::string& path) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(io::read_text_file(path));
    } catch (const nlohmann::json::exception& e) {
        fail("parse", path + ": " + e.what());
    }
    std::vector<SweepRow> rows;
    for (const auto& r : j)
        rows.push_back({r.at("sigma").get<double>(),
                        method_from_name(r.at("method").get<std::string>()),
                        r.at("mae").get<double>()});
    return rows;
}

void write_perturbations_csv(const PerturbationSet& set,
                             std::span<const FeatureSchema> schema, const std::string& path) {
    std::ostringstream csv;
    for (const auto& f : schema) csv << io::csv_escape(f.name) << ',';
    csv << "prediction,weight\n";
    for (std::size_t i = 0; i < set.perturbations.size(); ++i) {
        for (std::size_t f = 0; f < schema.size(); ++f)
            csv << io::format_double(set.perturbations[i][f]) << ',';
        csv << io::format_double(set.predictions[i]) << ','
            << io::format_double(set.weights[i]) << '\n';
    }
    io::write_text_file(path, csv.str());
}

PerturbationSet read_perturbations_csv(const std::string& path,
                                       std::span<const FeatureSchema> schema) {
    auto records = io::read_csv(path);
    if (records.empty()) fail("parse", path + ": empty file");
    const std::size_t d = schema.size();
    if (records.front().size() != d + 2)
        fail("parse", path + ": expected " + std::to_string(d + 2) + " columns");
    PerturbationSet set;
    for (std::size_t r = 1; r < records.size(); ++r) {
        const auto& row = records[r];
        Instance z;
        z.values.reserve(d);
        for (std::size_t f = 0; f < d; ++f)
            z.values.push_back(io::parse_double(row[f], path + " row " + std::to_string(r)));
        set.perturbations.push_back(std::move(z));
        set.predictions.push_back(io::parse_double(row[d], path));
        set.weights.push_back(io::parse_double(row[d + 1], path));
    }
    return set;
}

} // namespace chilli
