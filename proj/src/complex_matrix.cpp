#include "qwalk/complex_matrix.hpp"

#include <Eigen/Dense>
#include <cmath>

#include "qwalk/errors.hpp"

namespace qwalk {

namespace {

using EigenMap = Eigen::Map<
    const Eigen::Matrix<c64, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>;

constexpr double kHermTol = 1e-10;

}  // namespace

ComplexMatrix ComplexMatrix::identity(int64_t d) {
    ComplexMatrix m(d);
    for (int64_t i = 0; i < d; ++i) m.at(i, i) = 1.0;
    return m;
}

c64 ComplexMatrix::trace() const {
    c64 t = 0.0;
    for (int64_t i = 0; i < dim; ++i) t += at(i, i);
    return t;
}

double ComplexMatrix::hermiticity_error() const {
    double worst = 0.0;
    for (int64_t i = 0; i < dim; ++i) {
        for (int64_t j = i; j < dim; ++j) {
            c64 d = at(i, j) - std::conj(at(j, i));
            double m = std::abs(d);
            if (!std::isfinite(m)) return INFINITY;
            if (m > worst) worst = m;
        }
    }
    return worst;
}

bool ComplexMatrix::is_finite() const {
    for (const c64& z : a) {
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
    }
    return true;
}

RealSpectrum hermitian_eigenvalues(const ComplexMatrix& m) {
    if (m.dim < 1) throw NotHermitian("empty matrix has no spectrum");
    double herm = m.hermiticity_error();
    if (!(herm <= kHermTol)) {
        throw NotHermitian("matrix is not Hermitian: max deviation " + std::to_string(herm));
    }

    EigenMap mapped(m.a.data(), m.dim, m.dim);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(mapped, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) {
        throw ConvergenceFailure("eigenvalue iteration did not converge");
    }

    RealSpectrum spectrum;
    spectrum.values.assign(solver.eigenvalues().data(),
                           solver.eigenvalues().data() + m.dim);

    double sum = 0.0;
    for (double v : spectrum.values) sum += v;
    double tr = m.trace().real();
    if (!(std::abs(sum - tr) <= 1e-9 * static_cast<double>(m.dim))) {
        throw ConvergenceFailure("eigenvalue sum drifted from trace by " +
                                 std::to_string(std::abs(sum - tr)));
    }
    return spectrum;
}

ComplexMatrix conjugate_by(const ComplexMatrix& u, const ComplexMatrix& m) {
    if (u.dim != m.dim) {
        throw DimensionMismatch("conjugate_by: " + std::to_string(u.dim) + " vs " +
                                std::to_string(m.dim));
    }
    EigenMap mu(u.a.data(), u.dim, u.dim);
    EigenMap mm(m.a.data(), m.dim, m.dim);
    Eigen::MatrixXcd out = mu * mm * mu.adjoint();

    ComplexMatrix result(m.dim);
    for (int64_t i = 0; i < m.dim; ++i) {
        for (int64_t j = 0; j < m.dim; ++j) result.at(i, j) = out(i, j);
    }
    return result;
}

}  // namespace qwalk
