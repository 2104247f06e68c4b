#include "chilli/benchmarks.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <sstream>

#include "chilli/io.hpp"
#include "chilli/rng.hpp"

namespace chilli {

namespace {

constexpr double kTwoPi = 6.283185307179586;

FeatureSchema continuous(const std::string& name, double lo, double hi) {
    FeatureSchema f;
    f.name = name;
    f.kind = FeatureKind::continuous;
    f.min = lo;
    f.max = hi;
    return f;
}

FeatureSchema cyclic(const std::string& name, double period) {
    FeatureSchema f;
    f.name = name;
    f.kind = FeatureKind::cyclic;
    f.period = period;
    return f;
}

// segments chosen so the map is locally linear but clearly non-linear overall
double piecewise_map(double t) {
    if (t < 0.3) return 2.0 * t;
    if (t < 0.6) return 0.6 - 3.0 * (t - 0.3);
    return -0.3 + 1.5 * (t - 0.6);
}

} // namespace

bool is_benchmark_name(const std::string& name) {
    return name == "sinusoid" || name == "piecewise" || name == "linear";
}

Dataset generate_benchmark(const std::string& name, std::size_t rows, std::uint64_t seed) {
    if (!is_benchmark_name(name))
        fail("usage", "unknown benchmark '" + name + "' (expected sinusoid, piecewise or linear)");
    if (rows < 2) fail("validation", "benchmark needs at least 2 rows");

    std::vector<FeatureSchema> schema;
    std::vector<Instance> instances;
    std::vector<double> targets;
    instances.reserve(rows);
    targets.reserve(rows);

    if (name == "sinusoid") {
        schema = {cyclic("v1", 1.0), continuous("v2", 0.0, 1.0)};
        for (std::size_t i = 0; i < rows; ++i) {
            rng::Stream s = rng::Stream::substream(seed, i);
            double v1 = s.uniform01();
            double v2 = s.uniform01();
            double y = std::sin(kTwoPi * v1) + 0.2 * v2 + 0.05 * s.normal();
            instances.push_back(Instance({v1, v2}));
            targets.push_back(y);
        }
    } else if (name == "piecewise") {
        schema = {continuous("v1", 0.0, 1.0), continuous("v2", 0.0, 1.0)};
        for (std::size_t i = 0; i < rows; ++i) {
            rng::Stream s = rng::Stream::substream(seed, i);
            double v1 = s.uniform01();
            double v2 = s.uniform01();
            double y = piecewise_map(v1) + 0.3 * v2 + 0.05 * s.normal();
            instances.push_back(Instance({v1, v2}));
            targets.push_back(y);
        }
    } else {  // linear
        schema = {cyclic("v1", 1.0), continuous("v2", 0.0, 1.0), continuous("v3", 0.0, 1.0)};
        for (std::size_t i = 0; i < rows; ++i) {
            rng::Stream s = rng::Stream::substream(seed, i);
            // v2 is an exact smooth wave of a latent phase and carries the
            // dominant, globally linear signal; v1 observes the same phase
            // with jitter, so it only becomes informative once v2 is removed
            double phase = s.uniform01();
            double v1 = std::fmod(phase + 0.08 * s.normal() + 1.0, 1.0);
            double v2 = 0.5 * (std::sin(kTwoPi * phase) + 1.0);
            double v3 = s.uniform01();
            double y = 2.6 * (v2 - 0.5) + 0.4 * std::sin(4.0 * kTwoPi * v3) + 0.05 * s.normal();
            instances.push_back(Instance({v1, v2, v3}));
            targets.push_back(y);
        }
    }

    return Dataset(std::move(schema), std::move(instances), std::move(targets));
}

void write_benchmark_files(const Dataset& data, const std::string& name,
                           const std::string& out_dir) {
    std::filesystem::create_directories(out_dir);
    auto dir = std::filesystem::path(out_dir);

    std::ostringstream csv;
    for (const auto& f : data.schema()) csv << io::csv_escape(f.name) << ',';
    csv << "y\n";
    for (std::size_t i = 0; i < data.n_rows(); ++i) {
        for (std::size_t f = 0; f < data.n_features(); ++f)
            csv << io::format_double(data.instances()[i][f]) << ',';
        csv << io::format_double(data.targets()[i]) << '\n';
    }
    io::write_text_file((dir / (name + ".csv")).string(), csv.str());

    std::ostringstream js;
    js << "[\n";
    for (std::size_t f = 0; f < data.n_features(); ++f) {
        const auto& fs = data.schema()[f];
        js << "  {\"name\": \"" << fs.name << "\", \"kind\": \"" << kind_name(fs.kind) << "\"";
        if (fs.kind == FeatureKind::continuous)
            js << ", \"min\": " << io::format_double(*fs.min)
               << ", \"max\": " << io::format_double(*fs.max);
        if (fs.kind == FeatureKind::cyclic)
            js << ", \"period\": " << io::format_double(fs.period);
        js << "}" << (f + 1 < data.n_features() ? "," : "") << "\n";
    }
    js << "]\n";
    io::write_text_file((dir / (name + ".schema.json")).string(), js.str());
}

} // namespace chilli
