#pragma once

#include <cstdint>
#include <string>

#include "chilli/schema.hpp"

namespace chilli {

// Built-in synthetic regression benchmarks:
//   sinusoid  - v1 cyclic (period 1), v2 continuous;
//               y = sin(2*pi*v1) + 0.2*v2 + noise
//   piecewise - v1, v2 continuous; y piecewise-linear in v1 plus 0.3*v2
//   linear    - v2 continuous, a smooth wave of a latent phase, carrying a
//               globally linear signal; v1 cyclic, a jittered view of the
//               same phase; v3 continuous with a short-wavelength nonlinear
//               effect; y = 2.6*(v2-0.5) + 0.4*sin(8*pi*v3) + noise. Dropping the
//               v2 column reroutes its signal through v1.
Dataset generate_benchmark(const std::string& name, std::size_t rows, std::uint64_t seed);

bool is_benchmark_name(const std::string& name);

// Writes <dir>/<name>.csv and <dir>/<name>.schema.json.
void write_benchmark_files(const Dataset& data, const std::string& name,
                           const std::string& out_dir);

} // namespace chilli
