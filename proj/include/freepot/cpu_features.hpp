#pragma once

namespace freepot::simd {

bool cpu_supports_avx2();
bool cpu_supports_neon();

// Name of the kernel backend the dispatcher settles on ("avx2", "neon", "scalar").
const char* active_backend();

}  // namespace freepot::simd
