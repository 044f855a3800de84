#pragma once

#include <complex>
#include <cstddef>

namespace qwalk::kernels {

using c64 = std::complex<double>;

/// One dispatchable set of streaming kernels over interleaved complex doubles.
/// These are the hot loops of density-matrix stepping: real scaling (trace
/// renormalization and dephasing masks) and the paired-row/paired-column coin
/// mixing. Every variant must produce bit-identical output to `scalar()`;
/// the build disables FP contraction and the vector variants avoid FMA so the
/// lanewise arithmetic matches the scalar loops exactly.
struct Ops {
    const char* name;
    /// a[i] *= s for i in [0, n).
    void (*scale_span)(c64* a, std::size_t n, double s);
    /// a[i] *= s for i in [0, n) with i % 2 == phase (phase is 0 or 1).
    void (*scale_alternate)(c64* a, std::size_t n, std::size_t phase, double s);
    /// Elementwise over two rows: (r0[i], r1[i]) <- ((r1[i]-r0[i])*s, (r0[i]+r1[i])*s).
    void (*mix_rows)(c64* r0, c64* r1, std::size_t n, double s);
    /// Adjacent pairs within one row: (u, v) = (row[2k], row[2k+1]) <- ((v-u)*s, (u+v)*s).
    void (*mix_col_pairs)(c64* row, std::size_t n_pairs, double s);
};

/// Reference implementation; always available.
const Ops& scalar();

/// AVX2 variant, or nullptr when the build target or running CPU lacks AVX2.
const Ops* avx2();

/// Kernel set used by the walk engine: AVX2 when available, otherwise scalar,
/// unless overridden by force().
const Ops& active();

/// Test hook: pin the active set (nullptr restores automatic selection).
/// Not safe to call while walks are running on other threads.
void force(const Ops* ops);

}  // namespace qwalk::kernels
