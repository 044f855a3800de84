#include "qwalk/kernels.hpp"

namespace qwalk::kernels {

#if defined(__x86_64__) || defined(_M_X64)
// Defined in kernels_avx2.cpp (built with -mavx2 on x86-64 targets).
const Ops* avx2_table();
#else
static const Ops* avx2_table() { return nullptr; }
#endif

const Ops* avx2() {
#if defined(__x86_64__) || defined(_M_X64)
    if (!__builtin_cpu_supports("avx2")) return nullptr;
    return avx2_table();
#else
    return avx2_table();
#endif
}

namespace {
const Ops* forced = nullptr;
}

void force(const Ops* ops) { forced = ops; }

const Ops& active() {
    if (forced) return *forced;
    if (const Ops* v = avx2()) return *v;
    return scalar();
}

}  // namespace qwalk::kernels
