#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "qsc/errors.hpp"
#include "qsc/povm.hpp"
#include "qsc/states.hpp"

namespace qsc {

enum class LearningMode { CLASSICAL, FINITE };

// Identifies which copy counter a measurement draws from: a training state
// (by its source index in the originating dataset) or the unknown state.
struct CopySlot {
    bool is_unknown;
    std::size_t training_index;

    static CopySlot unknown() { return {true, 0}; }
    static CopySlot training(std::size_t index) { return {false, index}; }
};

// Copy accounting for one experiment. Training counters are per original
// state; in CLASSICAL mode training consumption is recorded as zero cost.
// Classification always consumes real copies of the unknown state.
class CopyLedger {
  public:
    CopyLedger(LearningMode mode, std::size_t n_states, long long budget_s = 0)
        : mode_(mode), budget_s_(budget_s), per_training_state_(n_states, 0) {
        if (mode == LearningMode::FINITE && budget_s < 1)
            throw InvalidConfig("CopyLedger: FINITE mode needs budget >= 1");
    }

    static CopyLedger for_dataset(const QuantumDataset& ds) {
        const CopyBudget& b = ds.declared_copies();
        return b.classical ? CopyLedger(LearningMode::CLASSICAL, ds.size())
                           : CopyLedger(LearningMode::FINITE, ds.size(), b.copies);
    }

    LearningMode mode() const { return mode_; }
    long long budget() const { return budget_s_; }
    std::size_t tracked_states() const { return per_training_state_.size(); }

    bool can_consume_training(std::size_t index, long long count) const {
        if (mode_ == LearningMode::CLASSICAL) return true;
        if (index >= per_training_state_.size()) return false;
        return per_training_state_[index] + count <= budget_s_;
    }

    void consume_training(std::size_t index, long long count) {
        if (count < 0) throw InvalidRange("consume_training: negative count");
        if (mode_ == LearningMode::CLASSICAL) return;  // recorded as zero cost
        if (index >= per_training_state_.size())
            throw InvalidRange("consume_training: state index out of range");
        if (per_training_state_[index] + count > budget_s_)
            throw BudgetExhausted("training budget exhausted for state " + std::to_string(index),
                                  static_cast<long long>(index));
        per_training_state_[index] += count;
    }

    void consume_unknown(long long count) {
        if (count < 0) throw InvalidRange("consume_unknown: negative count");
        if (unknown_budget_ && unknown_consumed_ + count > *unknown_budget_)
            throw BudgetExhausted("unknown-state copy budget exhausted");
        unknown_consumed_ += count;
    }

    bool can_consume(const CopySlot& slot, long long count) const {
        if (slot.is_unknown)
            return !unknown_budget_ || unknown_consumed_ + count <= *unknown_budget_;
        return can_consume_training(slot.training_index, count);
    }

    void consume(const CopySlot& slot, long long count) {
        if (slot.is_unknown)
            consume_unknown(count);
        else
            consume_training(slot.training_index, count);
    }

    void set_unknown_budget(long long budget) { unknown_budget_ = budget; }

    long long training_consumed(std::size_t index) const {
        return per_training_state_.at(index);
    }
    long long max_training_consumed() const {
        long long m = 0;
        for (long long v : per_training_state_) m = std::max(m, v);
        return m;
    }
    long long total_training_consumed() const {
        long long s = 0;
        for (long long v : per_training_state_) s += v;
        return s;
    }
    long long unknown_consumed() const { return unknown_consumed_; }

    // Parallel evaluation trials each own a ledger; classification counters
    // merge by summation afterward.
    void absorb_unknown(const CopyLedger& other) { unknown_consumed_ += other.unknown_consumed_; }

  private:
    LearningMode mode_;
    long long budget_s_;
    std::vector<long long> per_training_state_;
    long long unknown_consumed_ = 0;
    std::optional<long long> unknown_budget_;
};

// Symbolic cost class plus the integers actually measured by the ledger.
struct CostReport {
    std::string task;
    std::string training_cost_symbolic;
    long long training_cost_measured = 0;
    std::string classification_cost_symbolic;
    long long classification_cost_measured = 0;
};

// Exact training error of a classifier POVM on a dataset: sum of normalized
// weights of each item times its misclassification probability. No sampling.
inline double error_rate(const Povm& povm, const QuantumDataset& ds) {
    if (povm.dim() != ds.dim()) throw DimensionMismatch("error_rate: POVM/dataset dimensions");
    const std::vector<double> p = ds.normalized_weights();
    for (int label : ds.label_set())
        if (!povm.has_label(label))
            throw LabelMismatch("error_rate: dataset label " + std::to_string(label) +
                                " missing from POVM outcomes");
    double err = 0.0;
    for (std::size_t i = 0; i < ds.size(); ++i) {
        double correct = 0.0;
        for (std::size_t o = 0; o < povm.outcomes(); ++o) {
            if (povm.outcome_labels[o] != ds.item(i).label) continue;
            correct += std::real(quadratic_form(povm.elements[o], ds.item(i).state.amplitudes()));
        }
        err += p[i] * (1.0 - std::clamp(correct, 0.0, 1.0));
    }
    return std::clamp(err, 0.0, 1.0);
}

// error - optimal_error, clamped at zero for eigensolver-sized negatives. A
// deficit beyond 1e-6 means the supplied optimum was not actually optimal.
inline double regret(double error, double optimal_error) {
    if (error < optimal_error - 1e-6)
        throw InvalidRange("regret: error below claimed optimum by more than 1e-6");
    return std::max(0.0, error - optimal_error);
}

}  // namespace qsc
