#include <cstdint>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "chilli/base_models.hpp"
#include "chilli/benchmarks.hpp"
#include "chilli/evaluation.hpp"
#include "chilli/io.hpp"
#include "chilli/perturbation.hpp"
#include "chilli/simd/kernels.hpp"

namespace {

using namespace chilli;

struct CommonArgs {
    std::string data_path;
    std::string schema_path;
    std::string target_column;
    std::string model_spec = "rbf";
    std::size_t knn_k = 10;
    double rbf_gamma = 20.0;
    double rbf_alpha = 1e-4;
    std::optional<double> sigma;
    std::size_t n_perturbations = 1000;
    std::string lambda_grid_text;
    std::uint64_t seed = 0;
    std::string out_path;
    bool eval_fresh = false;
    std::string anchor_norm = "sum";
    std::string kernel_override;
};

void add_common(CLI::App* cmd, CommonArgs& a) {
    cmd->add_option("--data", a.data_path, "dataset CSV")->required();
    cmd->add_option("--schema", a.schema_path, "schema JSON")->required();
    cmd->add_option("--target", a.target_column, "target column name")->required();
    cmd->add_option("--model", a.model_spec, "knn | rbf | external:CMD");
    cmd->add_option("--knn-k", a.knn_k, "k for the knn model");
    cmd->add_option("--rbf-gamma", a.rbf_gamma, "kernel width for the rbf model");
    cmd->add_option("--rbf-alpha", a.rbf_alpha, "ridge term for the rbf model");
    cmd->add_option("--sigma", a.sigma, "locality parameter");
    cmd->add_option("--num-perturbations", a.n_perturbations, "neighborhood size");
    cmd->add_option("--lambda-grid", a.lambda_grid_text, "comma-separated ridge grid");
    cmd->add_option("--seed", a.seed, "random seed");
    cmd->add_option("--out", a.out_path, "output path")->required();
    cmd->add_flag("--eval-fresh", a.eval_fresh,
                  "evaluate faithfulness on a fresh perturbation set");
    cmd->add_option("--anchor-norm", a.anchor_norm, "anchor probability scaling: sum | max");
    cmd->add_option("--kernel", a.kernel_override,
                    "proximity kernel override: euclidean | contextual");
}

std::vector<double> parse_double_list(const std::string& text, const char* flag) {
    std::vector<double> values;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t comma = text.find(',', start);
        std::string item =
            text.substr(start, comma == std::string::npos ? comma : comma - start);
        values.push_back(io::parse_double(item, flag));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return values;
}

std::vector<double> parse_lambda_grid(const std::string& text) {
    if (text.empty()) return kDefaultLambdaGrid;
    return parse_double_list(text, "--lambda-grid");
}

Dataset load_data(const CommonArgs& a) {
    auto schema = load_schema(a.schema_path);
    return load_dataset(a.data_path, std::move(schema), a.target_column);
}

std::unique_ptr<Predictor> build_model(const CommonArgs& a, const Dataset& data) {
    if (a.model_spec == "knn") return train_knn(data, a.knn_k);
    if (a.model_spec == "rbf") return train_rbf_ridge(data, a.rbf_gamma, a.rbf_alpha);
    if (a.model_spec.rfind("external:", 0) == 0)
        return make_external(data.schema(), a.model_spec.substr(9));
    fail("usage", "unknown model '" + a.model_spec + "' (expected knn, rbf or external:CMD)");
}

AnchorNormalization parse_anchor_norm(const std::string& name) {
    if (name == "sum") return AnchorNormalization::sum;
    if (name == "max") return AnchorNormalization::max;
    fail("usage", "unknown --anchor-norm '" + name + "' (expected sum or max)");
}

PipelineOptions pipeline_options(const CommonArgs& a, Method method, std::size_t n_features) {
    PipelineOptions o;
    o.method = method;
    o.kernel = default_kernel(method);
    if (!a.kernel_override.empty()) {
        if (a.kernel_override == "euclidean") o.kernel = ProximityKernel::euclidean_eq1;
        else if (a.kernel_override == "contextual") o.kernel = ProximityKernel::contextual_eq2;
        else fail("usage", "unknown --kernel '" + a.kernel_override + "'");
    }
    o.sigma = a.sigma.value_or(default_sigma(o.kernel, n_features));
    o.n_perturbations = a.n_perturbations;
    o.lambda_grid = parse_lambda_grid(a.lambda_grid_text);
    o.seed = a.seed;
    o.fresh_evaluation_set = a.eval_fresh;
    o.anchor_normalization = parse_anchor_norm(a.anchor_norm);
    return o;
}

const Instance& instance_at(const Dataset& data, std::size_t row) {
    if (row >= data.n_rows())
        fail("usage", "--instance " + std::to_string(row) + " out of range (dataset has " +
                          std::to_string(data.n_rows()) + " rows)");
    return data.instances()[row];
}

int cmd_explain(const CommonArgs& a, std::size_t instance_row,
                const std::string& method_text, bool raw_units) {
    Dataset data = load_data(a);
    auto model = build_model(a, data);
    Method method = method_from_name(method_text);
    PipelineOptions opts = pipeline_options(a, method, data.n_features());

    ExplanationRun run = run_explanation(data, *model, instance_at(data, instance_row), opts);
    Explanation& e = run.explanation;
    if (raw_units) {
        auto raw = raw_unit_coefficients(e.surrogate, data.schema());
        for (auto& c : e.contributions)
            for (std::size_t f = 0; f < data.n_features(); ++f)
                if (data.schema()[f].name == c.feature) c.coefficient = raw[f];
    }
    write_explanation_json(e, a.out_path);

    std::cout << "method=" << method_name(e.method) << " sigma=" << io::format_double(e.sigma)
              << " lambda=" << io::format_double(e.surrogate.ridge_lambda)
              << " rmse=" << io::format_double(e.faithfulness.rmse)
              << " mae=" << io::format_double(e.faithfulness.mae)
              << " out_of_bounds=" << e.faithfulness.out_of_bounds_count << "\n";
    auto held = zero_stddev_features(data);
    if (!held.empty() && method == Method::lime) {
        std::cout << "held constant (zero training stddev):";
        for (const auto& name : held) std::cout << ' ' << name;
        std::cout << "\n";
    }
    std::cout << "wrote " << a.out_path << "\n";
    return 0;
}

int cmd_perturb(const CommonArgs& a, std::size_t instance_row,
                const std::string& method_text) {
    Dataset data = load_data(a);
    auto model = build_model(a, data);
    Method method = method_from_name(method_text);
    PipelineOptions opts = pipeline_options(a, method, data.n_features());

    const Instance& x = instance_at(data, instance_row);
    ProximityConfig prox{opts.sigma, opts.kernel};
    auto zs = method == Method::lime
                  ? lime_perturb(x, data, opts.n_perturbations, opts.seed)
                  : chilli_perturb(x, data, opts.n_perturbations, prox, opts.seed,
                                   opts.anchor_normalization);
    auto predict = [&](std::span<const Instance> batch) { return model->predict_batch(batch); };
    PerturbationSet set =
        label_perturbations(x, std::move(zs), method, prox, opts.seed, predict, data.schema());
    write_perturbations_csv(set, data.schema(), a.out_path);
    std::cout << "wrote " << set.perturbations.size() << " perturbations to " << a.out_path
              << " (out_of_bounds=" << count_out_of_bounds(set.perturbations, data.schema())
              << ")\n";
    return 0;
}

int cmd_compare(const CommonArgs& a, std::size_t n_instances, const std::string& metric) {
    Dataset data = load_data(a);
    auto model = build_model(a, data);

    ComparisonConfig config;
    config.n_instances = n_instances;
    config.sigma = a.sigma.value_or(0.1);
    config.n_perturbations = a.n_perturbations;
    config.lambda_grid = parse_lambda_grid(a.lambda_grid_text);
    config.seed = a.seed;
    config.metric = metric;
    config.fresh_evaluation_set = a.eval_fresh;

    ComparisonRun run = compare_explainers(data, *model, config);
    write_comparison_files(run, a.out_path);
    std::cout << "lime_average=" << io::format_double(run.lime_average)
              << " chilli_average=" << io::format_double(run.chilli_average)
              << " reduction_percent=" << io::format_double(run.reduction_percent) << "\n"
              << "wrote " << a.out_path << ".json and " << a.out_path << ".csv\n";
    return 0;
}

int cmd_sweep(const CommonArgs& a, std::size_t instance_row, const std::string& sigmas_text) {
    Dataset data = load_data(a);
    auto model = build_model(a, data);

    SweepConfig config;
    config.n_perturbations = a.n_perturbations;
    config.lambda_grid = parse_lambda_grid(a.lambda_grid_text);
    config.seed = a.seed;
    config.fresh_evaluation_set = a.eval_fresh;

    auto sigmas = parse_double_list(sigmas_text, "--sigmas");
    auto rows = sigma_sweep(data, *model, instance_at(data, instance_row), sigmas, config);
    write_sweep_files(rows, a.out_path);
    for (const auto& r : rows)
        std::cout << "sigma=" << io::format_double(r.sigma)
                  << " method=" << method_name(r.method)
                  << " mae=" << io::format_double(r.mae) << "\n";
    std::cout << "wrote " << a.out_path << ".json and " << a.out_path << ".csv\n";
    return 0;
}

int cmd_bench_gen(const std::string& name, std::size_t rows, std::uint64_t seed,
                  const std::string& out_dir) {
    Dataset data = generate_benchmark(name, rows, seed);
    write_benchmark_files(data, name, out_dir);
    std::cout << "wrote " << out_dir << "/" << name << ".csv and " << out_dir << "/" << name
              << ".schema.json (" << rows << " rows)\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Local surrogate explanations for tabular regressors (LIME and CHILLI)"};
    app.require_subcommand(1);

    CommonArgs a;
    std::size_t instance_row = 0;
    std::string method = "chilli";
    std::string metric = "rmse";
    std::string sigmas_text;
    std::size_t n_instances = 25;
    bool raw_units = false;

    auto* explain_cmd = app.add_subcommand("explain", "explain one prediction");
    add_common(explain_cmd, a);
    explain_cmd->add_option("--instance", instance_row, "dataset row to explain")->required();
    explain_cmd->add_option("--method", method, "lime | chilli");
    explain_cmd->add_flag("--raw-units", raw_units, "report coefficients in raw feature units");

    auto* compare_cmd = app.add_subcommand("compare", "lime vs chilli over sampled instances");
    add_common(compare_cmd, a);
    compare_cmd->add_option("--instances", n_instances, "number of instances to sample");
    compare_cmd->add_option("--metric", metric, "rmse | mae");

    auto* sweep_cmd = app.add_subcommand("sweep", "error as a function of sigma");
    add_common(sweep_cmd, a);
    sweep_cmd->add_option("--instance", instance_row, "dataset row to explain")->required();
    sweep_cmd->add_option("--sigmas", sigmas_text, "comma-separated sigma values")->required();

    auto* perturb_cmd = app.add_subcommand("perturb", "emit a perturbation set as CSV");
    add_common(perturb_cmd, a);
    perturb_cmd->add_option("--instance", instance_row, "dataset row to perturb")->required();
    perturb_cmd->add_option("--method", method, "lime | chilli");

    auto* bench_cmd = app.add_subcommand("bench", "synthetic benchmark utilities");
    auto* gen_cmd = bench_cmd->add_subcommand("gen", "generate a benchmark dataset");
    std::string bench_name;
    std::size_t bench_rows = 2000;
    std::uint64_t bench_seed = 0;
    std::string bench_out;
    gen_cmd->add_option("--name", bench_name, "sinusoid | piecewise | linear")->required();
    gen_cmd->add_option("--rows", bench_rows, "row count");
    gen_cmd->add_option("--seed", bench_seed, "random seed");
    gen_cmd->add_option("--out", bench_out, "output directory")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*explain_cmd) return cmd_explain(a, instance_row, method, raw_units);
        if (*compare_cmd) return cmd_compare(a, n_instances, metric);
        if (*sweep_cmd) return cmd_sweep(a, instance_row, sigmas_text);
        if (*perturb_cmd) return cmd_perturb(a, instance_row, method);
        if (*gen_cmd) return cmd_bench_gen(bench_name, bench_rows, bench_seed, bench_out);
        fail("usage", "no subcommand given");
    } catch (const chilli::Error& e) {
        nlohmann::ordered_json err{{"error", e.kind()}, {"message", e.what()}};
        std::cerr << err.dump() << "\n";
        return 1;
    } catch (const std::exception& e) {
        nlohmann::ordered_json err{{"error", "internal"}, {"message", e.what()}};
        std::cerr << err.dump() << "\n";
        return 2;
    }
}
