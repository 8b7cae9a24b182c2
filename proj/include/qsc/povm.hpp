#pragma once

#include <string>
#include <vector>

#include "qsc/errors.hpp"
#include "qsc/linalg.hpp"
#include "qsc/matrix.hpp"

namespace qsc {

// Positive operator-valued measure with one class id per element.
struct Povm {
    std::vector<ComplexMatrix> elements;
    std::vector<int> outcome_labels;

    std::size_t dim() const { return elements.empty() ? 0 : elements.front().rows(); }
    std::size_t outcomes() const { return elements.size(); }

    bool has_label(int label) const {
        for (int l : outcome_labels)
            if (l == label) return true;
        return false;
    }

    // Full invariant check: element shapes, Hermitian positivity within
    // tolerance, completeness within tolerance. Costs one eigensolve per
    // element, so callers invoke it explicitly (constructors in this library
    // produce compliant POVMs by construction).
    void validate(double tolerance = 1e-9) const {
        if (elements.empty()) throw InvalidState("Povm: no elements");
        if (outcome_labels.size() != elements.size())
            throw InvalidState("Povm: label/element count mismatch");
        const std::size_t d = elements.front().rows();
        ComplexMatrix sum(d, d);
        for (const auto& e : elements) {
            if (!e.is_square() || e.rows() != d) throw DimensionMismatch("Povm: element shape");
            if (e.hermitian_deviation() > tolerance)
                throw NotHermitian("Povm: element not Hermitian within tolerance");
            const EigenDecomposition eig = hermitian_eigen(e.symmetrized());
            if (!eig.eigenvalues.empty() && eig.eigenvalues.front() < -tolerance)
                throw NotPsd("Povm: element min eigenvalue below -" + std::to_string(tolerance));
            sum += e;
        }
        if (max_abs_diff(sum, ComplexMatrix::identity(d)) > tolerance)
            throw InvalidState("Povm: elements do not sum to identity within tolerance");
    }
};

}  // namespace qsc
