#include <doctest.h>

#include <cstring>
#include <vector>

#include "chilli/rng.hpp"
#include "chilli/simd/kernels.hpp"

using namespace chilli;

namespace {

std::vector<double> random_values(rng::Stream& s, std::size_t n, double scale) {
    std::vector<double> v(n);
    for (auto& x : v) x = (s.uniform01() - 0.5) * scale;
    return v;
}

bool bitwise_equal(const std::vector<double>& a, const std::vector<double>& b) {
    return a.size() == b.size() &&
           (a.empty() || std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0);
}

// every length that exercises both the vector body and the scalar tail
const std::size_t kSizes[] = {0, 1, 2, 3, 4, 5, 7, 8, 15, 16, 17, 1000, 1003};

} // namespace

TEST_CASE("avx2 kernels match the scalar reference bit for bit") {
    const simd::Kernels* avx2 = simd::avx2_kernels();
    if (avx2 == nullptr) {
        MESSAGE("AVX2 variant not built on this platform; scalar-only");
        return;
    }
    const simd::Kernels& ref = simd::scalar_kernels();
    rng::Stream s(2026);

    for (std::size_t n : kSizes) {
        auto a = random_values(s, n, 6.0);
        auto b = random_values(s, n, 6.0);
        auto w = random_values(s, n, 2.0);
        double scalar = s.uniform01() * 2.0 - 0.5;
        double positive = s.uniform01() + 0.05;

        std::vector<double> out_ref(n), out_simd(n);

        ref.abs_diff_clamp1(a.data(), scalar, out_ref.data(), n);
        avx2->abs_diff_clamp1(a.data(), scalar, out_simd.data(), n);
        CHECK(bitwise_equal(out_ref, out_simd));

        // phases in [0,1)
        std::vector<double> phases(n);
        for (auto& p : phases) p = s.uniform01();
        double phase0 = s.uniform01();
        ref.cyclic_arc_unit(phases.data(), phase0, out_ref.data(), n);
        avx2->cyclic_arc_unit(phases.data(), phase0, out_simd.data(), n);
        CHECK(bitwise_equal(out_ref, out_simd));

        std::vector<double> cats(n);
        for (auto& c : cats) c = static_cast<double>(s.uniform_index(3));
        ref.indicator_neq(cats.data(), 1.0, out_ref.data(), n);
        avx2->indicator_neq(cats.data(), 1.0, out_simd.data(), n);
        CHECK(bitwise_equal(out_ref, out_simd));

        auto acc_ref = w;
        auto acc_simd = w;
        ref.add_inplace(acc_ref.data(), a.data(), n);
        avx2->add_inplace(acc_simd.data(), a.data(), n);
        CHECK(bitwise_equal(acc_ref, acc_simd));

        acc_ref = w;
        acc_simd = w;
        ref.div_inplace(acc_ref.data(), positive, n);
        avx2->div_inplace(acc_simd.data(), positive, n);
        CHECK(bitwise_equal(acc_ref, acc_simd));

        acc_ref = w;
        acc_simd = w;
        ref.sq_diff_add(a.data(), scalar, acc_ref.data(), n);
        avx2->sq_diff_add(a.data(), scalar, acc_simd.data(), n);
        CHECK(bitwise_equal(acc_ref, acc_simd));

        ref.exp_neg_sq_over(a.data(), positive, out_ref.data(), n);
        avx2->exp_neg_sq_over(a.data(), positive, out_simd.data(), n);
        CHECK(bitwise_equal(out_ref, out_simd));

        ref.exp_neg_scaled(w.data(), positive, out_ref.data(), n);
        avx2->exp_neg_scaled(w.data(), positive, out_simd.data(), n);
        CHECK(bitwise_equal(out_ref, out_simd));

        ref.mul3(w.data(), a.data(), b.data(), out_ref.data(), n);
        avx2->mul3(w.data(), a.data(), b.data(), out_simd.data(), n);
        CHECK(bitwise_equal(out_ref, out_simd));
    }
}

TEST_CASE("dispatch reports a usable level") {
    simd::Level level = simd::active_level();
    CHECK((level == simd::Level::scalar || level == simd::Level::avx2));
    const simd::Kernels& k = simd::active();
    double in[3] = {0.25, 0.5, 0.75};
    double out[3];
    k.abs_diff_clamp1(in, 0.5, out, 3);
    CHECK(out[0] == 0.25);
    CHECK(out[1] == 0.0);
    CHECK(out[2] == 0.25);
    MESSAGE("active simd level: ", simd::level_name(level));
}
