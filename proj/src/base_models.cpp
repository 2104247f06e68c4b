#include "chilli/base_models.hpp"

#include <unistd.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <numeric>
#include <sstream>

#include <json.hpp>

#include "chilli/io.hpp"
#include "chilli/numeric.hpp"
#include "chilli/proximity.hpp"
#include "chilli/simd/kernels.hpp"

namespace chilli {

namespace {

class KnnPredictor final : public Predictor {
public:
    KnnPredictor(const Dataset& data, std::size_t k) : data_(data), k_(k) {
        if (k < 1 || k > data.n_rows())
            fail("validation", "knn: k must be in [1, " + std::to_string(data.n_rows()) + "]");
    }

    std::vector<double> predict_batch(std::span<const Instance> instances) const override {
        std::vector<double> out;
        out.reserve(instances.size());
        std::vector<std::size_t> order(data_.n_rows());
        for (const auto& q : instances) {
            std::vector<double> dist = aggregate_distance_vector(q, data_);
            std::iota(order.begin(), order.end(), std::size_t{0});
            std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
                if (dist[a] != dist[b]) return dist[a] < dist[b];
                return a < b;
            });
            double s = 0.0;
            for (std::size_t i = 0; i < k_; ++i) s += data_.targets()[order[i]];
            out.push_back(s / static_cast<double>(k_));
        }
        return out;
    }

    std::string describe() const override {
        nlohmann::ordered_json j{{"kind", "knn"}, {"k", k_}};
        return j.dump();
    }

private:
    Dataset data_;
    std::size_t k_;
};

class RbfRidgePredictor final : public Predictor {
public:
    RbfRidgePredictor(const Dataset& data, double gamma, double alpha)
        : schema_(data.schema()), gamma_(gamma), alpha_(alpha) {
        if (!(gamma > 0.0)) fail("validation", "rbf: gamma must be > 0");
        if (!(alpha >= 0.0)) fail("validation", "rbf: alpha must be >= 0");

        const std::size_t n = data.n_rows();
        const std::size_t d = data.n_features();
        columns_.resize(d);
        for (std::size_t f = 0; f < d; ++f) {
            auto col = data.normalized_column(f);
            columns_[f].assign(col.begin(), col.end());
        }

        const auto& k = simd::active();
        std::vector<double> kmat(n * n);
        std::vector<double> ssq(n);
        for (std::size_t i = 0; i < n; ++i) {
            std::fill(ssq.begin(), ssq.end(), 0.0);
            for (std::size_t f = 0; f < d; ++f)
                k.sq_diff_add(columns_[f].data(), columns_[f][i], ssq.data(), n);
            k.exp_neg_scaled(ssq.data(), gamma_, kmat.data() + i * n, n);
        }
        for (std::size_t i = 0; i < n; ++i) kmat[i * n + i] += alpha_;

        if (!numeric::cholesky_inplace(kmat, n))
            fail("singular_system",
                 "rbf: kernel matrix is singular at alpha = " + io::format_double(alpha_) +
                     "; use alpha > 0");
        beta_ = numeric::cholesky_solve(kmat, n, data.targets());
    }

    std::vector<double> predict_batch(std::span<const Instance> instances) const override {
        const auto& k = simd::active();
        const std::size_t n = beta_.size();
        const std::size_t d = schema_.size();
        std::vector<double> out;
        out.reserve(instances.size());
        std::vector<double> ssq(n), weights(n);
        for (const auto& q : instances) {
            std::fill(ssq.begin(), ssq.end(), 0.0);
            for (std::size_t f = 0; f < d; ++f) {
                double qn = normalize_value(q[f], schema_[f]);
                k.sq_diff_add(columns_[f].data(), qn, ssq.data(), n);
            }
            k.exp_neg_scaled(ssq.data(), gamma_, weights.data(), n);
            double y = 0.0;
            for (std::size_t i = 0; i < n; ++i) y += weights[i] * beta_[i];
            out.push_back(y);
        }
        return out;
    }

    std::string describe() const override {
        nlohmann::ordered_json j{{"kind", "rbf_kernel_ridge"},
                                 {"gamma", gamma_},
                                 {"alpha", alpha_},
                                 {"n_train", beta_.size()}};
        return j.dump();
    }

private:
    std::vector<FeatureSchema> schema_;
    std::vector<std::vector<double>> columns_;  // normalized training features
    std::vector<double> beta_;
    double gamma_;
    double alpha_;
};

std::string shell_quote(const std::string& s) {
    std::string out = "'";
    for (char c : s) {
        if (c == '\'') out += "'\\''";
        else out.push_back(c);
    }
    out.push_back('\'');
    return out;
}

class ExternalPredictor final : public Predictor {
public:
    ExternalPredictor(std::vector<FeatureSchema> schema, std::string command)
        : schema_(std::move(schema)), command_(std::move(command)) {
        if (command_.empty()) fail("usage", "external model command is empty");
    }

    std::vector<double> predict_batch(std::span<const Instance> instances) const override {
        if (instances.empty()) return {};

        std::ostringstream csv;
        for (std::size_t f = 0; f < schema_.size(); ++f) {
            if (f) csv << ',';
            csv << io::csv_escape(schema_[f].name);
        }
        csv << '\n';
        for (const auto& z : instances) {
            for (std::size_t f = 0; f < schema_.size(); ++f) {
                if (f) csv << ',';
                if (schema_[f].kind == FeatureKind::categorical)
                    csv << io::csv_escape(
                        schema_[f].categories[static_cast<std::size_t>(z[f])]);
                else
                    csv << io::format_double(z[f]);
            }
            csv << '\n';
        }

        auto dir = std::filesystem::temp_directory_path();
        std::string path =
            (dir / ("chilli_batch_" + std::to_string(::getpid()) + "_" +
                    std::to_string(counter_++) + ".csv"))
                .string();
        io::write_text_file(path, csv.str());

        std::string cmdline = command_ + " " + shell_quote(path);
        FILE* pipe = ::popen(cmdline.c_str(), "r");
        if (!pipe) {
            std::filesystem::remove(path);
            fail("model", "cannot launch external model: " + cmdline);
        }
        std::string output;
        char buf[4096];
        std::size_t got;
        while ((got = std::fread(buf, 1, sizeof(buf), pipe)) > 0) output.append(buf, got);
        int status = ::pclose(pipe);
        std::filesystem::remove(path);
        if (status != 0)
            fail("model", "external model exited with status " + std::to_string(status));

        std::vector<double> preds;
        preds.reserve(instances.size());
        std::istringstream lines(output);
        std::string line;
        while (std::getline(lines, line)) {
            if (!line.empty() && line.back() == '\r') line.pop_back();
            if (line.empty()) continue;
            preds.push_back(io::parse_double(
                line, "external model output row " + std::to_string(preds.size())));
        }
        if (preds.size() != instances.size())
            fail("model", "external model returned " + std::to_string(preds.size()) +
                              " predictions for " + std::to_string(instances.size()) +
                              " rows (first mismatch at row " +
                              std::to_string(std::min(preds.size(), instances.size())) + ")");
        return preds;
    }

    std::string describe() const override {
        nlohmann::ordered_json j{{"kind", "external"}, {"command", command_}};
        return j.dump();
    }

private:
    std::vector<FeatureSchema> schema_;
    std::string command_;
    mutable std::uint64_t counter_ = 0;
};

} // namespace

std::unique_ptr<Predictor> train_knn(const Dataset& data, std::size_t k) {
    return std::make_unique<KnnPredictor>(data, k);
}

std::unique_ptr<Predictor> train_rbf_ridge(const Dataset& data, double gamma, double alpha) {
    return std::make_unique<RbfRidgePredictor>(data, gamma, alpha);
}

std::unique_ptr<Predictor> make_external(std::vector<FeatureSchema> schema,
                                         std::string command) {
    return std::make_unique<ExternalPredictor>(std::move(schema), std::move(command));
}

} // namespace chilli
