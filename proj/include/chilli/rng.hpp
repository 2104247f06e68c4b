#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

namespace chilli::rng {

// splitmix64 step (Steele, Lea, Flood 2014). Used both as the generator and
// as the mixing function that derives per-index substreams, so that results
// are reproducible byte-for-byte and independent of how work is partitioned
// across threads.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

class Stream {
public:
    explicit Stream(std::uint64_t seed) : state_(seed) {
        // burn one step so seed 0 does not start at the weak all-zero state
        (void)splitmix64(state_);
    }

    // Substream for work item `index` under `master`. Distinct indices give
    // statistically independent streams.
    static Stream substream(std::uint64_t master, std::uint64_t index) {
        std::uint64_t s = master;
        std::uint64_t a = splitmix64(s);
        std::uint64_t t = index + 0x632BE59BD9B4E019ULL;
        std::uint64_t b = splitmix64(t);
        return Stream(a ^ b);
    }

    std::uint64_t next_u64() { return splitmix64(state_); }

    // uniform on [0, 1) with 53 random bits
    double uniform01() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    // standard normal via Box-Muller (cosine branch)
    double normal() {
        double u1 = uniform01();
        double u2 = uniform01();
        double r = std::sqrt(-2.0 * std::log1p(-u1)); // log(1-u1), u1 < 1
        return r * std::cos(6.283185307179586 * u2);
    }

    std::size_t uniform_index(std::size_t n) {
        // n is tiny relative to 2^64; modulo bias is negligible but we avoid
        // it anyway with rejection on the last partial block.
        std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t v;
        do {
            v = next_u64();
        } while (v >= limit);
        return static_cast<std::size_t>(v % n);
    }

private:
    std::uint64_t state_;
};

// Index of the first entry with cumulative weight exceeding u * total.
// `cumulative` must be nondecreasing with a positive final entry.
inline std::size_t sample_cdf(Stream& stream, std::span<const double> cumulative) {
    double u = stream.uniform01() * cumulative.back();
    std::size_t lo = 0, hi = cumulative.size() - 1;
    while (lo < hi) {
        std::size_t mid = (lo + hi) / 2;
        if (cumulative[mid] <= u)
            lo = mid + 1;
        else
            hi = mid;
    }
    return lo;
}

// k distinct indices drawn uniformly from [0, population), returned in
// ascending order. Partial Fisher-Yates over an index array.
inline std::vector<std::size_t> sample_without_replacement(Stream& stream,
                                                           std::size_t population,
                                                           std::size_t k) {
    std::vector<std::size_t> idx(population);
    for (std::size_t i = 0; i < population; ++i) idx[i] = i;
    for (std::size_t i = 0; i < k && i + 1 < population; ++i) {
        std::size_t j = i + stream.uniform_index(population - i);
        std::swap(idx[i], idx[j]);
    }
    idx.resize(k);
    std::sort(idx.begin(), idx.end());
    return idx;
}

} // namespace chilli::rng
