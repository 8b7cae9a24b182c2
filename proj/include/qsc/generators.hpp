#pragma once

// Dataset and ensemble constructors shared by the CLI, the audits and the
// tests: Haar states in arbitrary dimension, random unitaries, and the named
// presets (zero/plus, trine, mutually unbiased bases, twin pairs, entangled
// vs separable).

#include <bit>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "qsc/errors.hpp"
#include "qsc/matrix.hpp"
#include "qsc/random.hpp"
#include "qsc/states.hpp"

namespace qsc {

// Haar state of any dimension >= 2 (normalized complex Gaussian vector).
// haar_random_state in states.hpp is the qubit-count flavour of the same.
inline PureState haar_state_dim(std::size_t dim, RandomSource& rng) {
    if (dim < 2) throw InvalidConfig("haar_state_dim: dim must be >= 2");
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

// Haar unitary: Ginibre matrix orthonormalized column by column. Modified
// Gram-Schmidt keeps the implicit R diagonal positive, which is exactly the
// convention under which Q is Haar distributed.
inline ComplexMatrix random_unitary(std::size_t dim, RandomSource& rng) {
    if (dim < 1) throw InvalidConfig("random_unitary: dim must be >= 1");
    std::vector<std::vector<Complex>> cols(dim, std::vector<Complex>(dim));
    for (auto& c : cols)
        for (auto& a : c) a = Complex(rng.gaussian(), rng.gaussian());
    for (std::size_t j = 0; j < dim; ++j) {
        for (std::size_t i = 0; i < j; ++i) {
            Complex r(0.0, 0.0);
            for (std::size_t t = 0; t < dim; ++t) r += std::conj(cols[i][t]) * cols[j][t];
            for (std::size_t t = 0; t < dim; ++t) cols[j][t] -= r * cols[i][t];
        }
        double norm_sq = 0.0;
        for (const auto& a : cols[j]) norm_sq += std::norm(a);
        if (norm_sq < 1e-24)
            throw NumericalBreakdown("random_unitary: degenerate Gaussian draw");
        const double inv = 1.0 / std::sqrt(norm_sq);
        for (auto& a : cols[j]) a *= inv;
    }
    ComplexMatrix u(dim, dim);
    for (std::size_t r = 0; r < dim; ++r)
        for (std::size_t c = 0; c < dim; ++c) u(r, c) = cols[c][r];
    return u;
}

// Uniform draw from the probability simplex (exponential spacings).
inline std::vector<double> random_priors(std::size_t n, RandomSource& rng) {
    if (n == 0) throw InvalidConfig("random_priors: n must be >= 1");
    std::vector<double> p(n);
    double total = 0.0;
    for (auto& v : p) {
        v = -std::log(1.0 - rng.uniform());
        total += v;
    }
    for (auto& v : p) v /= total;
    return p;
}

// {|0>, |+>} with equal weights; the standard nonorthogonal warm-up pair.
inline QuantumDataset zero_plus_dataset() {
    const double r = 1.0 / std::sqrt(2.0);
    std::vector<LabeledState> items;
    items.emplace_back(PureState::basis_state(2, 0), -1, 0.5);
    items.emplace_back(PureState(std::vector<Complex>{r, r}), +1, 0.5);
    return QuantumDataset(std::move(items), {-1, +1}, CopyBudget::classical_budget());
}

// Three real qubit states 120 degrees apart on the Bloch equator; pairwise
// fidelity 1/4.
inline std::vector<PureState> trine_states() {
    std::vector<PureState> out;
    for (int j = 0; j < 3; ++j) {
        const double a = M_PI * j / 3.0;
        out.push_back(PureState(std::vector<Complex>{std::cos(a), std::sin(a)}));
    }
    return out;
}

inline QuantumDataset trine_dataset() {
    std::vector<LabeledState> items;
    int label = 1;
    for (const PureState& s : trine_states()) items.emplace_back(s, label++, 1.0 / 3.0);
    return QuantumDataset(std::move(items), {1, 2, 3}, CopyBudget::classical_budget());
}

// First k computational basis states, one class each.
inline QuantumDataset basis_dataset(std::size_t dim, std::size_t k) {
    if (k < 1 || k > dim) throw InvalidConfig("basis_dataset: need 1 <= k <= dim");
    std::vector<LabeledState> items;
    std::vector<int> labels;
    for (std::size_t i = 0; i < k; ++i) {
        items.emplace_back(PureState::basis_state(dim, i), static_cast<int>(i) + 1,
                           1.0 / static_cast<double>(k));
        labels.push_back(static_cast<int>(i) + 1);
    }
    return QuantumDataset(std::move(items), std::move(labels), CopyBudget::classical_budget());
}

// n Haar states with alternating labels -1,+1 and i.i.d. uniform weights in
// [w_lo, w_hi]. w_lo = w_hi pins every weight to that constant.
inline QuantumDataset haar_binary_dataset(int d_qubits, std::size_t n, RandomSource& rng,
                                          double w_lo = 1.0, double w_hi = 1.0,
                                          CopyBudget budget = CopyBudget::classical_budget()) {
    if (n < 2) throw InvalidConfig("haar_binary_dataset: need n >= 2");
    if (!(w_lo >= 0.0) || w_hi < w_lo)
        throw InvalidConfig("haar_binary_dataset: need 0 <= w_lo <= w_hi");
    std::vector<LabeledState> items;
    items.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double w = w_lo == w_hi ? w_lo : rng.uniform(w_lo, w_hi);
        items.emplace_back(haar_random_state(d_qubits, rng), i % 2 == 0 ? -1 : +1, w);
    }
    return QuantumDataset(std::move(items), {-1, +1}, budget);
}

// n Haar states cycling through k classes labeled 1..k, uniform weights.
inline QuantumDataset haar_multiclass_dataset(int d_qubits, std::size_t n, std::size_t k,
                                              RandomSource& rng,
                                              CopyBudget budget = CopyBudget::classical_budget()) {
    if (k < 1 || n < k) throw InvalidConfig("haar_multiclass_dataset: need n >= k >= 1");
    std::vector<LabeledState> items;
    std::vector<int> labels;
    for (std::size_t j = 0; j < k; ++j) labels.push_back(static_cast<int>(j) + 1);
    for (std::size_t i = 0; i < n; ++i)
        items.emplace_back(haar_random_state(d_qubits, rng), static_cast<int>(i % k) + 1,
                           1.0 / static_cast<double>(n));
    return QuantumDataset(std::move(items), std::move(labels), budget);
}

// k singleton classes built from a random orthonormal frame in twin pairs:
// each pair is (u, sqrt(phi) u + sqrt(1-phi) e^{i theta} v) with orthonormal
// u, v, phi ~ U(0.3, 0.7). Pairs overlap moderately with each other and with
// nothing else, which keeps per-node errors meaningful at every tree level.
inline QuantumDataset twin_pair_dataset(std::size_t k, std::size_t dim, RandomSource& rng) {
    if (k < 2 || dim < k) throw InvalidConfig("twin_pair_dataset: need dim >= k >= 2");
    const ComplexMatrix u = random_unitary(dim, rng);
    const auto column = [&](std::size_t c) {
        std::vector<Complex> v(dim);
        for (std::size_t r = 0; r < dim; ++r) v[r] = u(r, c);
        return v;
    };
    std::vector<LabeledState> items;
    std::vector<int> labels;
    const double w = 1.0 / static_cast<double>(k);
    const std::size_t pairs = k / 2;
    for (std::size_t j = 0; j < pairs; ++j) {
        const std::vector<Complex> a = column(2 * j);
        const std::vector<Complex> b = column(2 * j + 1);
        const double phi = rng.uniform(0.3, 0.7);
        const Complex rot = std::polar(std::sqrt(1.0 - phi), rng.uniform(0.0, 2.0 * M_PI));
        std::vector<Complex> twin(dim);
        for (std::size_t r = 0; r < dim; ++r) twin[r] = std::sqrt(phi) * a[r] + rot * b[r];
        items.emplace_back(PureState(a), static_cast<int>(items.size()) + 1, w);
        items.emplace_back(PureState(std::move(twin)), static_cast<int>(items.size()) + 1, w);
    }
    if (k % 2 == 1)
        items.emplace_back(PureState(column(2 * pairs)), static_cast<int>(items.size()) + 1, w);
    for (std::size_t i = 0; i < k; ++i) labels.push_back(static_cast<int>(i) + 1);
    return QuantumDataset(std::move(items), std::move(labels), CopyBudget::classical_budget());
}

// Eight dim-4 states from two mutually unbiased bases (computational and
// H (x) H). Every cross-basis fidelity is exactly 1/4, every within-basis
// fidelity 0, yet no measurement identifies the index with probability
// above 1/2: low pairwise fidelity does not imply distinguishability.
inline QuantumDataset mub_witness_dataset() {
    std::vector<LabeledState> items;
    std::vector<int> labels;
    for (std::size_t i = 0; i < 4; ++i)
        items.emplace_back(PureState::basis_state(4, i), static_cast<int>(i) + 1, 0.125);
    for (unsigned i = 0; i < 4; ++i) {
        std::vector<Complex> v(4);
        for (unsigned j = 0; j < 4; ++j)
            v[j] = std::popcount(i & j) % 2 == 0 ? 0.5 : -0.5;
        items.emplace_back(PureState(std::move(v)), static_cast<int>(i) + 5, 0.125);
    }
    for (int i = 1; i <= 8; ++i) labels.push_back(i);
    return QuantumDataset(std::move(items), std::move(labels), CopyBudget::classical_budget());
}

// Entanglement entropy (bits) of a two-qubit pure state: von Neumann entropy
// of the first qubit's reduced density matrix.
inline double entanglement_entropy(const PureState& psi) {
    if (psi.dim() != 4) throw InvalidConfig("entanglement_entropy: needs a two-qubit state");
    const auto& a = psi.amplitudes();
    const double r00 = std::norm(a[0]) + std::norm(a[1]);
    const double r11 = std::norm(a[2]) + std::norm(a[3]);
    const Complex r01 = a[0] * std::conj(a[2]) + a[1] * std::conj(a[3]);
    const double half_tr = (r00 + r11) / 2.0;
    const double disc = std::sqrt(std::max(half_tr * half_tr - (r00 * r11 - std::norm(r01)), 0.0));
    const auto h = [](double x) { return x > 1e-15 ? -x * std::log2(x) : 0.0; };
    return h(std::clamp(half_tr + disc, 0.0, 1.0)) + h(std::clamp(half_tr - disc, 0.0, 1.0));
}

// Binary two-qubit preset: class -1 holds product states, class +1 holds
// entangled states (reduced entropy above 0.1 bits, redrawn until so).
inline QuantumDataset entangled_vs_separable_dataset(std::size_t n, RandomSource& rng) {
    if (n < 2 || n % 2 != 0)
        throw InvalidConfig("entangled_vs_separable_dataset: need an even n >= 2");
    std::vector<LabeledState> items;
    for (std::size_t i = 0; i < n / 2; ++i) {
        const PureState a = haar_state_dim(2, rng);
        const PureState b = haar_state_dim(2, rng);
        std::vector<Complex> v(4);
        for (std::size_t x = 0; x < 2; ++x)
            for (std::size_t y = 0; y < 2; ++y)
                v[2 * x + y] = a.amplitudes()[x] * b.amplitudes()[y];
        items.emplace_back(PureState(std::move(v)), -1, 1.0 / static_cast<double>(n));
    }
    for (std::size_t i = 0; i < n / 2; ++i) {
        for (int attempt = 0;; ++attempt) {
            PureState psi = haar_state_dim(4, rng);
            if (entanglement_entropy(psi) > 0.1) {
                items.emplace_back(std::move(psi), +1, 1.0 / static_cast<double>(n));
                break;
            }
            if (attempt >= 1000)
                throw NumericalBreakdown(
                    "entangled_vs_separable_dataset: no entangled draw in 1000 tries");
        }
    }
    return QuantumDataset(std::move(items), {-1, +1}, CopyBudget::classical_budget());
}

}  // namespace qsc
