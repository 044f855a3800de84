// AVX2 variants of the stepping kernels. Compiled with -mavx2 in this
// translation unit only; callers reach them through the runtime-dispatched
// table in kernels.cpp. No FMA: every lane operation mirrors the scalar
// arithmetic exactly, so results are bit-identical to kernels_scalar.cpp.

#include "qwalk/kernels.hpp"

#if defined(__AVX2__)

#include <immintrin.h>

namespace qwalk::kernels {

namespace {

void scale_span_avx2(c64* a, std::size_t n, double s) {
    double* d = reinterpret_cast<double*>(a);
    std::size_t nd = 2 * n;
    __m256d vs = _mm256_set1_pd(s);
    std::size_t i = 0;
    for (; i + 4 <= nd; i += 4) {
        _mm256_storeu_pd(d + i, _mm256_mul_pd(_mm256_loadu_pd(d + i), vs));
    }
    for (; i < nd; ++i) d[i] *= s;
}

void scale_alternate_avx2(c64* a, std::size_t n, std::size_t phase, double s) {
    // One 256-bit register covers exactly one even- and one odd-indexed
    // complex, so the mask pattern is constant across the span. Multiplying
    // the kept lanes by 1.0 is an exact identity.
    double* d = reinterpret_cast<double*>(a);
    std::size_t nd = 2 * n;
    __m256d vs = (phase == 0) ? _mm256_setr_pd(s, s, 1.0, 1.0) : _mm256_setr_pd(1.0, 1.0, s, s);
    std::size_t i = 0;
    for (; i + 4 <= nd; i += 4) {
        _mm256_storeu_pd(d + i, _mm256_mul_pd(_mm256_loadu_pd(d + i), vs));
    }
    if (i < nd && ((n - 1) & 1) == phase) {
        d[i] *= s;
        d[i + 1] *= s;
    }
}

void mix_rows_avx2(c64* r0, c64* r1, std::size_t n, double s) {
    double* d0 = reinterpret_cast<double*>(r0);
    double* d1 = reinterpret_cast<double*>(r1);
    std::size_t nd = 2 * n;
    __m256d vs = _mm256_set1_pd(s);
    std::size_t i = 0;
    for (; i + 4 <= nd; i += 4) {
        __m256d a = _mm256_loadu_pd(d0 + i);
        __m256d b = _mm256_loadu_pd(d1 + i);
        _mm256_storeu_pd(d0 + i, _mm256_mul_pd(_mm256_sub_pd(b, a), vs));
        _mm256_storeu_pd(d1 + i, _mm256_mul_pd(_mm256_add_pd(a, b), vs));
    }
    for (; i < nd; i += 2) {
        c64 a{d0[i], d0[i + 1]};
        c64 b{d1[i], d1[i + 1]};
        c64 lo = (b - a) * s;
        c64 hi = (a + b) * s;
        d0[i] = lo.real();
        d0[i + 1] = lo.imag();
        d1[i] = hi.real();
        d1[i + 1] = hi.imag();
    }
}

void mix_col_pairs_avx2(c64* row, std::size_t n_pairs, double s) {
    // Each register holds one pair [ur, ui, vr, vi]. The swapped register is
    // [vr, vi, ur, ui]; XORing the sign bit into the low half of the original
    // gives [-ur, -ui, vr, vi]; their sum is [(v-u), (u+v)] which matches the
    // scalar (v - u) and (u + v) bit-for-bit (IEEE a-b == a+(-b)).
    double* d = reinterpret_cast<double*>(row);
    __m256d vs = _mm256_set1_pd(s);
    __m256d flip_lo = _mm256_setr_pd(-0.0, -0.0, 0.0, 0.0);
    for (std::size_t k = 0; k < n_pairs; ++k) {
        __m256d x = _mm256_loadu_pd(d + 4 * k);
        __m256d swapped = _mm256_permute4x64_pd(x, _MM_SHUFFLE(1, 0, 3, 2));
        __m256d sum = _mm256_add_pd(swapped, _mm256_xor_pd(x, flip_lo));
        _mm256_storeu_pd(d + 4 * k, _mm256_mul_pd(sum, vs));
    }
}

}  // namespace

const Ops* avx2_table() {
    static constexpr Ops ops{
        "avx2",
        scale_span_avx2,
        scale_alternate_avx2,
        mix_rows_avx2,
        mix_col_pairs_avx2,
    };
    return &ops;
}

}  // namespace qwalk::kernels

#else

namespace qwalk::kernels {
const Ops* avx2_table() { return nullptr; }
}  // namespace qwalk::kernels

#endif
