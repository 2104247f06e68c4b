#include "chilli/simd/kernels.hpp"

#include <cstdlib>
#include <string>

#include "chilli/error.hpp"

namespace chilli::simd {
namespace {

bool cpu_has_avx2() {
#if defined(__x86_64__) || defined(_M_X64)
    return __builtin_cpu_supports("avx2");
#else
    return false;
#endif
}

Level select_level() {
    if (const char* env = std::getenv("CHILLI_SIMD")) {
        std::string want(env);
        if (want == "scalar") return Level::scalar;
        if (want == "avx2") {
            if (avx2_kernels() == nullptr || !cpu_has_avx2())
                fail("usage", "CHILLI_SIMD=avx2 requested but AVX2 is unavailable");
            return Level::avx2;
        }
        fail("usage", "unknown CHILLI_SIMD value '" + want + "' (expected scalar or avx2)");
    }
    if (avx2_kernels() != nullptr && cpu_has_avx2()) return Level::avx2;
    return Level::scalar;
}

} // namespace

const char* level_name(Level level) {
    switch (level) {
        case Level::scalar: return "scalar";
        case Level::avx2: return "avx2";
    }
    return "?";
}

Level active_level() {
    static const Level level = select_level();
    return level;
}

const Kernels& active() {
    static const Kernels& table =
        active_level() == Level::avx2 ? *avx2_kernels() : scalar_kernels();
    return table;
}

} // namespace chilli::simd
