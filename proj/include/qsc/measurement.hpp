#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <string>
#include <vector>

#include "qsc/errors.hpp"
#include "qsc/ledger.hpp"
#include "qsc/linalg.hpp"
#include "qsc/matrix.hpp"
#include "qsc/povm.hpp"
#include "qsc/random.hpp"
#include "qsc/states.hpp"

namespace qsc {

// Optimal two-outcome measurement: Pi_plus projects onto the strictly
// positive eigenspace of delta = p_plus*rho_plus - p_minus*rho_minus.
// Eigenvectors with |lambda| <= 1e-10 go to Pi_minus (fixed tie-break, any
// assignment is optimal). Outcomes are labeled {-1, +1}.
inline Povm helstrom_binary(const DensityMatrix& rho_minus, const DensityMatrix& rho_plus,
                            double p_minus, double p_plus) {
    if (rho_minus.dim() != rho_plus.dim())
        throw DimensionMismatch("helstrom_binary: state dimensions differ");
    if (!(p_minus >= 0.0) || !(p_plus >= 0.0) || std::abs(p_minus + p_plus - 1.0) > 1e-9)
        throw InvalidPrior("helstrom_binary: priors must be >= 0 and sum to 1 within 1e-9");

    const std::size_t d = rho_minus.dim();
    ComplexMatrix delta = p_plus * rho_plus.matrix() - p_minus * rho_minus.matrix();
    const EigenDecomposition eig = hermitian_eigen(delta.symmetrized());

    ComplexMatrix pi_plus(d, d);
    for (std::size_t j = 0; j < d; ++j) {
        if (eig.eigenvalues[j] <= 1e-10) continue;
        std::vector<Complex> col(d);
        for (std::size_t i = 0; i < d; ++i) col[i] = eig.eigenvectors(i, j);
        pi_plus += outer_product(col);
    }
    pi_plus = pi_plus.symmetrized();
    ComplexMatrix pi_minus = ComplexMatrix::identity(d) - pi_plus;
    return Povm{{std::move(pi_minus), std::move(pi_plus)}, {-1, +1}};
}

// Half of one minus the trace distance: the exact optimal error for the
// binary ensemble.
inline double helstrom_error(const DensityMatrix& rho_minus, const DensityMatrix& rho_plus,
                             double p_minus, double p_plus) {
    if (rho_minus.dim() != rho_plus.dim())
        throw DimensionMismatch("helstrom_error: state dimensions differ");
    ComplexMatrix delta = p_minus * rho_minus.matrix() - p_plus * rho_plus.matrix();
    return 0.5 - 0.5 * trace_norm(delta.symmetrized());
}

// Weighted binary task: fold normalized weights into per-class mixtures and
// priors, then delegate. Minimizes sum_i w_i * P(f(psi_i) != y_i) over POVMs
// (up to the weight normalization).
inline Povm helstrom_weighted(const QuantumDataset& ds) {
    bool has_minus = false, has_plus = false;
    for (const auto& it : ds.items()) {
        if (it.label == -1) has_minus = true;
        else if (it.label == +1) has_plus = true;
        else throw InvalidLabel("helstrom_weighted: labels must be -1/+1");
    }
    if (!has_minus || !has_plus)
        throw EmptyClass("helstrom_weighted: both classes need at least one item");
    const ClassMixture minus = class_mixture(ds, -1);
    const ClassMixture plus = class_mixture(ds, +1);
    return helstrom_binary(minus.state, plus.state, minus.prior, plus.prior);
}

// Exact weighted error of a binary POVM: sum_i p_i * P(wrong), p_i normalized.
inline double weighted_error(const Povm& povm, const QuantumDataset& ds) {
    return error_rate(povm, ds);
}

// Pretty Good Measurement: E_i = rho^{-1/2} (p_i rho_i) rho^{-1/2} with the
// inverse square root taken on the support of rho = sum_i p_i rho_i. The
// support-deficiency residual I - sum E_i is added to the largest-prior
// element (ties toward the lowest class id) so completeness holds exactly.
inline Povm pgm(const std::vector<DensityMatrix>& states, const std::vector<double>& priors,
                std::vector<int> labels = {}) {
    if (states.empty()) throw InvalidPrior("pgm: empty ensemble");
    if (priors.size() != states.size()) throw InvalidPrior("pgm: prior count mismatch");
    const std::size_t d = states.front().dim();
    for (const auto& s : states)
        if (s.dim() != d) throw DimensionMismatch("pgm: state dimensions differ");
    double total = 0.0;
    for (double p : priors) {
        if (!(p >= 0.0)) throw InvalidPrior("pgm: negative prior");
        total += p;
    }
    if (std::abs(total - 1.0) > 1e-9) throw InvalidPrior("pgm: priors must sum to 1 within 1e-9");
    if (labels.empty()) {
        labels.resize(states.size());
        for (std::size_t i = 0; i < labels.size(); ++i) labels[i] = static_cast<int>(i + 1);
    } else if (labels.size() != states.size()) {
        throw InvalidLabel("pgm: label count mismatch");
    }

    ComplexMatrix rho(d, d);
    for (std::size_t i = 0; i < states.size(); ++i) rho += priors[i] * states[i].matrix();
    const ComplexMatrix root = pinv_sqrt(rho.symmetrized());

    Povm out;
    out.outcome_labels = labels;
    out.elements.reserve(states.size());
    ComplexMatrix sum(d, d);
    for (std::size_t i = 0; i < states.size(); ++i) {
        ComplexMatrix e = (root * (priors[i] * states[i].matrix()) * root).symmetrized();
        sum += e;
        out.elements.push_back(std::move(e));
    }
    ComplexMatrix residual = ComplexMatrix::identity(d) - sum;
    std::size_t target = 0;
    for (std::size_t i = 1; i < states.size(); ++i) {
        if (priors[i] > priors[target] ||
            (priors[i] == priors[target] && labels[i] < labels[target]))
            target = i;
    }
    out.elements[target] = (out.elements[target] + residual).symmetrized();
    return out;
}

// Exact error of a POVM against an ensemble of density matrices with priors,
// matching outcome index i to ensemble member i.
inline double ensemble_error(const Povm& povm, const std::vector<DensityMatrix>& states,
                             const std::vector<double>& priors) {
    if (povm.outcomes() != states.size() || priors.size() != states.size())
        throw DimensionMismatch("ensemble_error: size mismatch");
    double success = 0.0;
    for (std::size_t i = 0; i < states.size(); ++i)
        success += priors[i] * std::real(trace_of_product(povm.elements[i], states[i].matrix()));
    return std::clamp(1.0 - success, 0.0, 1.0);
}

// Samples one measurement outcome, consuming one copy from the given slot.
// Probabilities are clipped to [0,1]; a total within 1e-6 of 1 is
// renormalized, anything worse is a hard error.
inline int measure(const Povm& povm, const DensityMatrix& state, RandomSource& rng,
                   CopyLedger& ledger, CopySlot slot = CopySlot::unknown()) {
    if (povm.dim() != state.dim()) throw DimensionMismatch("measure: dimensions differ");
    std::vector<double> probs(povm.outcomes());
    double total = 0.0;
    for (std::size_t o = 0; o < povm.outcomes(); ++o) {
        probs[o] = std::clamp(
            std::real(trace_of_product(povm.elements[o], state.matrix())), 0.0, 1.0);
        total += probs[o];
    }
    if (std::abs(total - 1.0) > 1e-6)
        throw NumericalBreakdown("measure: outcome probabilities sum to " + std::to_string(total));
    for (auto& p : probs) p /= total;

    ledger.consume(slot, 1);
    const double u = rng.uniform();
    double cum = 0.0;
    for (std::size_t o = 0; o < povm.outcomes(); ++o) {
        cum += probs[o];
        if (u < cum) return povm.outcome_labels[o];
    }
    return povm.outcome_labels.back();  // u landed in roundoff dust past the last edge
}

// Repeats a binary measurement on fresh copies and returns the majority
// label. Copies must be odd so the vote cannot tie.
inline int majority_repeat(const Povm& povm, const DensityMatrix& state, long long copies,
                           RandomSource& rng, CopyLedger& ledger,
                           CopySlot slot = CopySlot::unknown()) {
    if (povm.outcomes() != 2) throw InvalidConfig("majority_repeat: POVM must be binary");
    if (copies < 1 || copies % 2 == 0)
        throw InvalidConfig("majority_repeat: copies must be odd and >= 1");
    long long first = 0;
    for (long long i = 0; i < copies; ++i)
        if (measure(povm, state, rng, ledger, slot) == povm.outcome_labels[0]) ++first;
    return first * 2 > copies ? povm.outcome_labels[0] : povm.outcome_labels[1];
}

enum class OracleVersion { V1_CLASSICAL, V2_BUDGETED };

// Stand-in for a trained Helstrom learner: both versions return the
// exact weighted Helstrom POVM; V2 additionally debits t_bin copies of every
// training state per call. Swap in an approximate learner here if one exists.
struct HelstromOracle {
    OracleVersion version = OracleVersion::V1_CLASSICAL;
    long long t_bin = 1;

    static HelstromOracle v1() { return {OracleVersion::V1_CLASSICAL, 0}; }
    static HelstromOracle v2(long long t_bin) {
        if (t_bin < 1) throw InvalidConfig("HelstromOracle: t_bin must be >= 1");
        return {OracleVersion::V2_BUDGETED, t_bin};
    }
};

inline Povm oracle_call(const HelstromOracle& oracle, const QuantumDataset& ds,
                        CopyLedger& ledger) {
    if (oracle.version == OracleVersion::V2_BUDGETED) {
        for (std::size_t i = 0; i < ds.size(); ++i) {
            if (!ledger.can_consume_training(ds.source_index(i), oracle.t_bin))
                throw BudgetExhausted(
                    "oracle_call: t_bin exceeds remaining budget for state " +
                        std::to_string(ds.source_index(i)),
                    static_cast<long long>(ds.source_index(i)));
        }
        for (std::size_t i = 0; i < ds.size(); ++i)
            ledger.consume_training(ds.source_index(i), oracle.t_bin);
    }
    return helstrom_weighted(ds);
}

}  // namespace qsc
