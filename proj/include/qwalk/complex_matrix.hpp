#pragma once

#include <complex>
#include <cstdint>
#include <vector>

namespace qwalk {

using c64 = std::complex<double>;

/// Dense square complex matrix, row-major with the column index fastest.
/// Dimensions stay small enough at desk scale (d <= ~2000) that dense storage
/// is simpler and fast enough; sparse operator *application* lives in the walk
/// engine, not here.
struct ComplexMatrix {
    int64_t dim = 0;
    std::vector<c64> a;

    ComplexMatrix() = default;
    explicit ComplexMatrix(int64_t d) : dim(d), a(static_cast<size_t>(d) * d) {}

    static ComplexMatrix identity(int64_t d);

    c64& at(int64_t i, int64_t j) { return a[static_cast<size_t>(i) * dim + j]; }
    const c64& at(int64_t i, int64_t j) const { return a[static_cast<size_t>(i) * dim + j]; }
    c64* row(int64_t i) { return a.data() + static_cast<size_t>(i) * dim; }
    const c64* row(int64_t i) const { return a.data() + static_cast<size_t>(i) * dim; }

    c64 trace() const;

    /// max |a[i][j] - conj(a[j][i])|; +inf if any entry is non-finite.
    double hermiticity_error() const;

    bool is_finite() const;
};

/// Eigenvalues of a Hermitian matrix, sorted ascending.
struct RealSpectrum {
    std::vector<double> values;
};

/// All dim real eigenvalues of a Hermitian matrix (eigenvalues only; the
/// callers need spectra, never eigenvectors). Deterministic: identical input
/// bytes produce identical output.
///
/// Throws NotHermitian when max |m[i][j] - conj(m[j][i])| > 1e-10, and
/// ConvergenceFailure when the solver fails or the eigenvalue sum drifts from
/// trace(m) by more than 1e-9 * dim.
RealSpectrum hermitian_eigenvalues(const ComplexMatrix& m);

/// u * m * u^dag. The caller guarantees u is unitary (within 1e-10); only the
/// dimensions are checked here. Throws DimensionMismatch.
ComplexMatrix conjugate_by(const ComplexMatrix& u, const ComplexMatrix& m);

}  // namespace qwalk
