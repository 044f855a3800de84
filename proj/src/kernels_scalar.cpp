#include "qwalk/kernels.hpp"

namespace qwalk::kernels {

namespace {

void scale_span_scalar(c64* a, std::size_t n, double s) {
    for (std::size_t i = 0; i < n; ++i) a[i] *= s;
}

void scale_alternate_scalar(c64* a, std::size_t n, std::size_t phase, double s) {
    for (std::size_t i = phase; i < n; i += 2) a[i] *= s;
}

void mix_rows_scalar(c64* r0, c64* r1, std::size_t n, double s) {
    for (std::size_t i = 0; i < n; ++i) {
        c64 a = r0[i];
        c64 b = r1[i];
        r0[i] = (b - a) * s;
        r1[i] = (a + b) * s;
    }
}

void mix_col_pairs_scalar(c64* row, std::size_t n_pairs, double s) {
    for (std::size_t k = 0; k < n_pairs; ++k) {
        c64 u = row[2 * k];
        c64 v = row[2 * k + 1];
        row[2 * k] = (v - u) * s;
        row[2 * k + 1] = (u + v) * s;
    }
}

}  // namespace

const Ops& scalar() {
    static constexpr Ops ops{
        "scalar",
        scale_span_scalar,
        scale_alternate_scalar,
        mix_rows_scalar,
        mix_col_pairs_scalar,
    };
    return ops;
}

}  // namespace qwalk::kernels
