#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "qsc/errors.hpp"
#include "qsc/linalg.hpp"
#include "qsc/matrix.hpp"
#include "qsc/random.hpp"

namespace qsc {

// Normalized pure state over 2^d amplitudes. Construction renormalizes small
// drift and rejects anything outside `tolerance` of unit norm.
class PureState {
  public:
    explicit PureState(std::vector<Complex> amplitudes, double tolerance = 1e-9)
        : amplitudes_(std::move(amplitudes)) {
        double norm_sq = 0.0;
        for (const auto& a : amplitudes_) {
            if (!std::isfinite(a.real()) || !std::isfinite(a.imag()))
                throw InvalidState("PureState: non-finite amplitude");
            norm_sq += std::norm(a);
        }
        const double norm = std::sqrt(norm_sq);
        if (std::abs(norm - 1.0) > tolerance)
            throw InvalidState("PureState: norm " + std::to_string(norm) +
                               " outside tolerance " + std::to_string(tolerance));
        for (auto& a : amplitudes_) a /= norm;
    }

    static PureState basis_state(std::size_t dim, std::size_t index) {
        std::vector<Complex> v(dim, Complex(0.0, 0.0));
        v.at(index) = 1.0;
        return PureState(std::move(v));
    }

    std::size_t dim() const { return amplitudes_.size(); }
    const std::vector<Complex>& amplitudes() const { return amplitudes_; }

    ComplexMatrix projector() const { return outer_product(amplitudes_); }

  private:
    std::vector<Complex> amplitudes_;
};

// Hermitian, unit-trace matrix. PSD-ness requires an eigensolve, so the
// constructor checks the cheap invariants and validate_psd() does the rest.
class DensityMatrix {
  public:
    explicit DensityMatrix(ComplexMatrix m) : matrix_(std::move(m)) {
        if (!matrix_.is_square()) throw DimensionMismatch("DensityMatrix: non-square");
        if (!matrix_.all_finite()) throw InvalidState("DensityMatrix: non-finite entries");
        if (matrix_.hermitian_deviation() > 1e-9)
            throw NotHermitian("DensityMatrix: not Hermitian within 1e-9");
        if (std::abs(matrix_.trace() - Complex(1.0, 0.0)) > 1e-9)
            throw InvalidState("DensityMatrix: trace differs from 1 by more than 1e-9");
    }

    explicit DensityMatrix(const PureState& psi) : matrix_(psi.projector()) {}

    std::size_t dim() const { return matrix_.rows(); }
    const ComplexMatrix& matrix() const { return matrix_; }

    void validate_psd(double tolerance = 1e-9) const {
        const EigenDecomposition eig = hermitian_eigen(matrix_.symmetrized());
        if (!eig.eigenvalues.empty() && eig.eigenvalues.front() < -tolerance)
            throw NotPsd("DensityMatrix: min eigenvalue below -" + std::to_string(tolerance));
    }

  private:
    ComplexMatrix matrix_;
};

// (state, class id, non-negative weight). Binary tasks use labels {-1,+1},
// multiclass tasks {1..k}.
struct LabeledState {
    PureState state;
    int label;
    double weight;

    LabeledState(PureState s, int l, double w) : state(std::move(s)), label(l), weight(w) {
        if (!(w >= 0.0) || !std::isfinite(w))
            throw InvalidState("LabeledState: weight must be finite and >= 0");
    }
};

// How many copies of each training state the learner may consume.
struct CopyBudget {
    bool classical = true;
    long long copies = 0;  // meaningful only when !classical

    static CopyBudget classical_budget() { return {true, 0}; }
    static CopyBudget finite(long long s) {
        if (s < 1) throw InvalidConfig("declared_copies must be >= 1");
        return {false, s};
    }
};

class QuantumDataset {
  public:
    QuantumDataset(std::vector<LabeledState> items, std::vector<int> label_set,
                   CopyBudget declared_copies,
                   std::vector<std::size_t> source_indices = {})
        : items_(std::move(items)),
          label_set_(std::move(label_set)),
          declared_copies_(declared_copies),
          source_indices_(std::move(source_indices)) {
        if (items_.empty()) throw InvalidState("QuantumDataset: needs at least one item");
        if (label_set_.empty()) throw InvalidLabel("QuantumDataset: empty label set");
        const std::size_t d = items_.front().state.dim();
        for (const auto& it : items_) {
            if (it.state.dim() != d) throw DimensionMismatch("QuantumDataset: mixed dimensions");
            if (std::find(label_set_.begin(), label_set_.end(), it.label) == label_set_.end())
                throw InvalidLabel("QuantumDataset: label " + std::to_string(it.label) +
                                   " not in label set");
        }
        if (source_indices_.empty()) {
            source_indices_.resize(items_.size());
            std::iota(source_indices_.begin(), source_indices_.end(), std::size_t{0});
        } else if (source_indices_.size() != items_.size()) {
            throw InvalidState("QuantumDataset: source index count mismatch");
        }
    }

    std::size_t size() const { return items_.size(); }
    std::size_t dim() const { return items_.front().state.dim(); }
    const std::vector<LabeledState>& items() const { return items_; }
    const LabeledState& item(std::size_t i) const { return items_.at(i); }
    const std::vector<int>& label_set() const { return label_set_; }
    const CopyBudget& declared_copies() const { return declared_copies_; }

    // Ledger identity of item i in the originating dataset; derived datasets
    // (relabelings, resamples) keep pointing at the original rows.
    std::size_t source_index(std::size_t i) const { return source_indices_.at(i); }
    const std::vector<std::size_t>& source_indices() const { return source_indices_; }

    double total_weight() const {
        double s = 0.0;
        for (const auto& it : items_) s += it.weight;
        return s;
    }

    // Weights normalized to a distribution (p_i = w_i / sum_j w_j).
    std::vector<double> normalized_weights() const {
        const double total = total_weight();
        if (total <= 0.0) throw AllZeroWeights("QuantumDataset: all weights are zero");
        std::vector<double> p(items_.size());
        for (std::size_t i = 0; i < items_.size(); ++i) p[i] = items_[i].weight / total;
        return p;
    }

    // A dataset is `standard` when every weight equals 1/n.
    bool is_standard() const {
        const double inv_n = 1.0 / static_cast<double>(items_.size());
        for (const auto& it : items_)
            if (std::abs(it.weight - inv_n) > 1e-12) return false;
        return true;
    }

  private:
    std::vector<LabeledState> items_;
    std::vector<int> label_set_;
    CopyBudget declared_copies_;
    std::vector<std::size_t> source_indices_;
};

inline Complex overlap(const PureState& a, const PureState& b) {
    if (a.dim() != b.dim()) throw DimensionMismatch("overlap: dimensions differ");
    Complex s(0.0, 0.0);
    for (std::size_t i = 0; i < a.dim(); ++i)
        s += std::conj(a.amplitudes()[i]) * b.amplitudes()[i];
    return s;
}

// Squared overlap |<a|b>|^2. The amplitude-overlap variant is overlap().
inline double fidelity(const PureState& a, const PureState& b) {
    const double f = std::norm(overlap(a, b));
    return std::clamp(f, 0.0, 1.0);
}

// Plain L2 distance between amplitude vectors; sensitive to global phase,
// range [0, 2].
inline double euclidean_distance(const PureState& a, const PureState& b) {
    if (a.dim() != b.dim()) throw DimensionMismatch("euclidean_distance: dimensions differ");
    double s = 0.0;
    for (std::size_t i = 0; i < a.dim(); ++i)
        s += std::norm(a.amplitudes()[i] - b.amplitudes()[i]);
    return std::sqrt(s);
}

struct ClassMixture {
    DensityMatrix state;
    double prior;
};

// Weight-proportional mixture of one class's projectors plus the class prior
// under normalized weights.
inline ClassMixture class_mixture(const QuantumDataset& ds, int label) {
    const std::vector<double> p = ds.normalized_weights();
    double class_mass = 0.0;
    bool seen = false;
    ComplexMatrix accum(ds.dim(), ds.dim());
    for (std::size_t i = 0; i < ds.size(); ++i) {
        if (ds.item(i).label != label) continue;
        seen = true;
        class_mass += p[i];
        accum += p[i] * ds.item(i).state.projector();
    }
    if (!seen) throw EmptyClass("class_mixture: no item carries label " + std::to_string(label));
    if (class_mass <= 0.0) {
        // All-zero-weight class: the mixture is undefined; hand back the
        // maximally mixed state, which the zero prior cancels downstream.
        const double inv_d = 1.0 / static_cast<double>(ds.dim());
        return {DensityMatrix(inv_d * ComplexMatrix::identity(ds.dim())), 0.0};
    }
    accum *= Complex(1.0 / class_mass, 0.0);
    return {DensityMatrix(accum.symmetrized()), class_mass};
}

// Haar-distributed pure state: normalized vector of i.i.d. complex Gaussians.
inline PureState haar_random_state(int d_qubits, RandomSource& rng) {
    if (d_qubits < 1 || d_qubits > 10)
        throw InvalidConfig("haar_random_state: d_qubits must be in [1, 10]");
    const std::size_t dim = std::size_t{1} << d_qubits;
    std::vector<Complex> v(dim);
    double norm_sq = 0.0;
    for (auto& a : v) {
        a = Complex(rng.gaussian(), rng.gaussian());
        norm_sq += std::norm(a);
    }
    const double norm = std::sqrt(norm_sq);
    for (auto& a : v) a /= norm;
    return PureState(std::move(v));
}

}  // namespace qsc
