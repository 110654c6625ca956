#include "hyperwalk/kernels.hpp"

#include <cstdlib>
#include <cstring>
#include <stdexcept>

namespace hyperwalk::kernels {

#if defined(HYPERWALK_HAVE_AVX2)
const Backend* avx2_backend_table();  // defined in kernels_avx2.cpp
#endif

const Backend* avx2() {
#if defined(HYPERWALK_HAVE_AVX2)
    if (__builtin_cpu_supports("avx2")) return avx2_backend_table();
#endif
    return nullptr;
}

namespace {

const Backend& select() {
    const char* env = std::getenv("HYPERWALK_KERNELS");
    if (env && std::strcmp(env, "scalar") == 0) return scalar();
    if (env && std::strcmp(env, "avx2") == 0) {
        const Backend* b = avx2();
        if (!b) throw std::runtime_error("HYPERWALK_KERNELS=avx2 but AVX2 is unavailable");
        return *b;
    }
    const Backend* b = avx2();
    return b ? *b : scalar();
}

}  // namespace

const Backend& active() {
    static const Backend& chosen = select();
    return chosen;
}

}  // namespace hyperwalk::kernels
