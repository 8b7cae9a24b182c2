#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "qsc/errors.hpp"
#include "qsc/matrix.hpp"

namespace qsc {

// Eigensystem of a Hermitian matrix: real eigenvalues in ascending order,
// eigenvectors as the matching columns of a unitary matrix.
struct EigenDecomposition {
    std::vector<double> eigenvalues;
    ComplexMatrix eigenvectors;

    ComplexMatrix reconstruct() const {
        const std::size_t d = eigenvalues.size();
        ComplexMatrix scaled = eigenvectors;
        for (std::size_t j = 0; j < d; ++j)
            for (std::size_t i = 0; i < d; ++i) scaled(i, j) *= eigenvalues[j];
        return scaled * eigenvectors.adjoint();
    }
};

namespace detail {

// One cyclic sweep of complex Jacobi rotations. Each (p,q) entry is zeroed by
// a phase rotation that makes it real followed by a classic 2x2 rotation.
inline void jacobi_sweep(ComplexMatrix& a, ComplexMatrix& v) {
    const std::size_t d = a.rows();
    for (std::size_t p = 0; p < d; ++p) {
        for (std::size_t q = p + 1; q < d; ++q) {
            const Complex apq = a(p, q);
            const double mag = std::abs(apq);
            if (mag < 1e-300) continue;
            const Complex phase = apq / mag;  // e^{i arg(apq)}
            const double app = a(p, p).real();
            const double aqq = a(q, q).real();
            const double tau = (aqq - app) / (2.0 * mag);
            const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
            const double c = 1.0 / std::sqrt(1.0 + t * t);
            const double s = t * c;
            // Plane rotation U = diag(1, conj(phase)) applied after a real
            // rotation: U_pp = c, U_pq = s, U_qp = -s*conj(phase),
            // U_qq = c*conj(phase). Apply a <- u^dagger a u, v <- v u.
            const Complex cq = c * std::conj(phase);
            const Complex sq = s * std::conj(phase);
            for (std::size_t i = 0; i < d; ++i) {
                const Complex aip = a(i, p);
                const Complex aiq = a(i, q);
                a(i, p) = c * aip - sq * aiq;
                a(i, q) = s * aip + cq * aiq;
            }
            for (std::size_t j = 0; j < d; ++j) {
                const Complex apj = a(p, j);
                const Complex aqj = a(q, j);
                a(p, j) = c * apj - std::conj(sq) * aqj;
                a(q, j) = s * apj + std::conj(cq) * aqj;
            }
            for (std::size_t i = 0; i < d; ++i) {
                const Complex vip = v(i, p);
                const Complex viq = v(i, q);
                v(i, p) = c * vip - sq * viq;
                v(i, q) = s * vip + cq * viq;
            }
            // Rotations leave roundoff dust on the target entry; pin it.
            a(p, q) = Complex(0.0, 0.0);
            a(q, p) = Complex(0.0, 0.0);
        }
    }
}

inline double off_diagonal_mass(const ComplexMatrix& a) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            if (i != j) s += std::norm(a(i, j));
    return std::sqrt(s);
}

}  // namespace detail

// Cyclic Jacobi eigensolver. Deterministic: fixed sweep order, fixed
// convergence threshold (off-diagonal Frobenius mass <= 1e-12), 100-sweep cap.
inline EigenDecomposition hermitian_eigen(const ComplexMatrix& a) {
    if (!a.is_square()) throw DimensionMismatch("hermitian_eigen: non-square input");
    if (!a.all_finite()) throw NotHermitian("hermitian_eigen: non-finite entries");
    if (a.hermitian_deviation() > 1e-9)
        throw NotHermitian("hermitian_eigen: max |a - a^dagger| exceeds 1e-9");

    const std::size_t d = a.rows();
    ComplexMatrix work = a.symmetrized();
    ComplexMatrix vecs = ComplexMatrix::identity(d);
    const double threshold = 1e-12 * std::max(1.0, work.frobenius_norm());
    for (int sweep = 0; sweep < 100; ++sweep) {
        if (detail::off_diagonal_mass(work) <= threshold) break;
        detail::jacobi_sweep(work, vecs);
    }

    std::vector<std::size_t> order(d);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
        return work(i, i).real() < work(j, j).real();
    });

    EigenDecomposition out;
    out.eigenvalues.resize(d);
    out.eigenvectors = ComplexMatrix(d, d);
    for (std::size_t j = 0; j < d; ++j) {
        out.eigenvalues[j] = work(order[j], order[j]).real();
        for (std::size_t i = 0; i < d; ++i) out.eigenvectors(i, j) = vecs(i, order[j]);
    }
    return out;
}

// Sum of absolute eigenvalues of a Hermitian matrix.
inline double trace_norm(const ComplexMatrix& a) {
    const EigenDecomposition eig = hermitian_eigen(a);
    double s = 0.0;
    for (double lambda : eig.eigenvalues) s += std::abs(lambda);
    return s;
}

namespace detail {

// V f(lambda) V^dagger from a decomposition.
inline ComplexMatrix rebuild(const EigenDecomposition& eig, const std::vector<double>& f) {
    const std::size_t d = eig.eigenvalues.size();
    ComplexMatrix scaled = eig.eigenvectors;
    for (std::size_t j = 0; j < d; ++j)
        for (std::size_t i = 0; i < d; ++i) scaled(i, j) *= f[j];
    return scaled * eig.eigenvectors.adjoint();
}

}  // namespace detail

// Principal square root of a PSD matrix. Eigenvalues in [-1e-6, 0) are
// clamped to zero (roundoff), anything lower is a genuine violation.
inline ComplexMatrix matrix_sqrt(const ComplexMatrix& a) {
    const EigenDecomposition eig = hermitian_eigen(a);
    std::vector<double> f(eig.eigenvalues.size());
    for (std::size_t i = 0; i < f.size(); ++i) {
        double lambda = eig.eigenvalues[i];
        if (lambda < -1e-6)
            throw NotPsd("matrix_sqrt: eigenvalue below -1e-6");
        if (lambda < 0.0) lambda = 0.0;
        f[i] = std::sqrt(lambda);
    }
    return detail::rebuild(eig, f);
}

// Pseudo-inverse square root: lambda <= rank_tolerance maps to 0, otherwise
// lambda^{-1/2}. r * a * r is then the projector onto the support of a.
inline ComplexMatrix pinv_sqrt(const ComplexMatrix& a, double rank_tolerance = 1e-12) {
    const EigenDecomposition eig = hermitian_eigen(a);
    std::vector<double> f(eig.eigenvalues.size());
    for (std::size_t i = 0; i < f.size(); ++i) {
        const double lambda = eig.eigenvalues[i];
        if (lambda < -1e-6)
            throw NotPsd("pinv_sqrt: eigenvalue below -1e-6");
        f[i] = lambda <= rank_tolerance ? 0.0 : 1.0 / std::sqrt(lambda);
    }
    return detail::rebuild(eig, f);
}

}  // namespace qsc
