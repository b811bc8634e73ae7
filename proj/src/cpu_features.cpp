#include "freepot/cpu_features.hpp"

namespace freepot::simd {

bool cpu_supports_avx2() {
#if defined(__x86_64__) || defined(__i386__)
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

bool cpu_supports_neon() {
#if defined(__aarch64__) || defined(__ARM_NEON)
    return true;
#else
    return false;
#endif
}

const char* active_backend() {
    if (cpu_supports_avx2()) return "avx2";
    if (cpu_supports_neon()) return "neon";
    return "scalar";
}

}  // namespace freepot::simd
