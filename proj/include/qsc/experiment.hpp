#pragma once

// Deterministic Monte Carlo evaluation (the demon protocol: a source picks a
// class by prior, hands over one copy of a state from it, the classifier
// answers) plus the cost-table and bound-audit drivers behind the CLI.
// Trials use per-index RandomSource substreams and private ledgers, so the
// result is identical no matter how many worker threads run them.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <cstdio>
#include <exception>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "qsc/bounds.hpp"
#include "qsc/errors.hpp"
#include "qsc/generators.hpp"
#include "qsc/ledger.hpp"
#include "qsc/measurement.hpp"
#include "qsc/random.hpp"
#include "qsc/reductions.hpp"
#include "qsc/states.hpp"
#include "qsc/swap_test.hpp"

namespace qsc {

// BY_WEIGHT draws items proportionally to normalized weight, making the
// empirical error estimate the weighted error. CLASS_UNIFORM draws a class
// by its weight mass, then one of its items uniformly; the two coincide
// whenever weights are uniform within each class.
enum class DrawMode { BY_WEIGHT, CLASS_UNIFORM };

struct TrialRecord {
    std::size_t item = 0;
    int true_label = 0;
    int predicted = 0;
};

struct EvaluationResult {
    long long trials = 0;
    long long wrong = 0;
    long long unknown_copies = 0;
    std::vector<TrialRecord> records;  // filled only when asked

    double empirical_error() const {
        return trials == 0 ? 0.0 : static_cast<double>(wrong) / static_cast<double>(trials);
    }
    double standard_error() const {
        if (trials == 0) return 0.0;
        const double e = empirical_error();
        return std::sqrt(std::max(e * (1.0 - e), 0.0) / static_cast<double>(trials));
    }
};

namespace detail {

inline std::size_t pick_by_mass(const std::vector<double>& mass, RandomSource& rng) {
    double total = 0.0;
    for (double m : mass) total += m;
    const double u = rng.uniform() * total;
    double cum = 0.0;
    std::size_t last_positive = 0;
    for (std::size_t i = 0; i < mass.size(); ++i) {
        if (mass[i] <= 0.0) continue;
        last_positive = i;
        cum += mass[i];
        if (u < cum) return i;
    }
    return last_positive;  // roundoff spill lands on the last carrying index
}

}  // namespace detail

// classify: int(const PureState& state, RandomSource& trial_rng, CopyLedger& trial_ledger).
// Each trial gets substream(trial_index) of `base` and a fresh copy of
// `ledger_template`; unknown-copy counts are merged into the result.
template <typename Classify>
inline EvaluationResult evaluate_trials(const QuantumDataset& ds, long long n_trials,
                                        const RandomSource& base,
                                        const CopyLedger& ledger_template, Classify&& classify,
                                        DrawMode draw = DrawMode::BY_WEIGHT,
                                        bool keep_records = false, unsigned threads = 1) {
    if (n_trials < 0) throw InvalidConfig("evaluate_trials: negative trial count");
    const std::vector<double> weights = ds.normalized_weights();
    const std::vector<int>& labels = ds.label_set();
    std::vector<double> class_mass(labels.size(), 0.0);
    std::vector<std::vector<std::size_t>> class_items(labels.size());
    for (std::size_t i = 0; i < ds.size(); ++i) {
        const auto at = std::find(labels.begin(), labels.end(), ds.item(i).label);
        const std::size_t j = static_cast<std::size_t>(at - labels.begin());
        class_mass[j] += weights[i];
        class_items[j].push_back(i);
    }

    EvaluationResult result;
    result.trials = n_trials;
    if (keep_records) result.records.resize(static_cast<std::size_t>(n_trials));

    const unsigned workers =
        std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<long long>(
                                                     1, n_trials))));
    std::vector<long long> wrong(workers, 0);
    std::vector<long long> copies(workers, 0);
    std::vector<std::exception_ptr> failures(workers);

    const auto run_range = [&](unsigned w, long long lo, long long hi) {
        try {
            for (long long t = lo; t < hi; ++t) {
                RandomSource trial_rng = base.substream(static_cast<std::uint64_t>(t));
                CopyLedger trial_ledger = ledger_template;
                std::size_t item = 0;
                if (draw == DrawMode::BY_WEIGHT) {
                    item = detail::pick_by_mass(weights, trial_rng);
                } else {
                    const std::size_t cls = detail::pick_by_mass(class_mass, trial_rng);
                    item = class_items[cls][trial_rng.uniform_index(class_items[cls].size())];
                }
                const LabeledState& it = ds.item(item);
                const int predicted = classify(it.state, trial_rng, trial_ledger);
                if (predicted != it.label) ++wrong[w];
                copies[w] += trial_ledger.unknown_consumed();
                if (keep_records)
                    result.records[static_cast<std::size_t>(t)] = {item, it.label, predicted};
            }
        } catch (...) {
            failures[w] = std::current_exception();
        }
    };

    if (workers == 1) {
        run_range(0, 0, n_trials);
    } else {
        std::vector<std::thread> pool;
        const long long chunk = (n_trials + workers - 1) / workers;
        for (unsigned w = 0; w < workers; ++w) {
            const long long lo = static_cast<long long>(w) * chunk;
            const long long hi = std::min(n_trials, lo + chunk);
            if (lo >= hi) break;
            pool.emplace_back(run_range, w, lo, hi);
        }
        for (auto& th : pool) th.join();
    }
    for (const auto& f : failures)
        if (f) std::rethrow_exception(f);
    for (unsigned w = 0; w < workers; ++w) {
        result.wrong += wrong[w];
        result.unknown_copies += copies[w];
    }
    return result;
}

// ---- cost table ----

struct CostTableConfig {
    std::uint64_t seed = 1;
    long long t_bin = 3;
    long long T = 7;
    long long e = 50;
    std::size_t k = 4;  // classes for the multiclass rows
    std::size_t n = 8;  // states for the identification / bound rows
};

// One row per learning task; every measured number comes out of a fresh
// ledger driving the real implementation at the configured constants.
inline std::vector<CostReport> build_cost_table(const CostTableConfig& cfg) {
    if (cfg.t_bin < 1 || cfg.T < 1 || cfg.e < 1 || cfg.k < 2 || cfg.n < 2)
        throw InvalidConfig("build_cost_table: all constants must be positive, k,n >= 2");
    std::vector<CostReport> rows;
    const RandomSource base(cfg.seed);
    const HelstromOracle oracle = HelstromOracle::v2(cfg.t_bin);
    const long long depth = static_cast<long long>(
        std::ceil(std::log2(static_cast<double>(cfg.k))));

    {  // binary
        RandomSource rng = base.substream(0);
        const QuantumDataset ds = haar_binary_dataset(1, 2, rng, 1.0, 1.0,
                                                      CopyBudget::finite(cfg.t_bin));
        CopyLedger ledger = CopyLedger::for_dataset(ds);
        const Povm f = oracle_call(oracle, ds, ledger);
        measure(f, DensityMatrix(ds.item(0).state), rng, ledger);
        rows.push_back({"binary", "t_bin", ledger.max_training_consumed(), "1",
                        ledger.unknown_consumed()});
    }
    {  // weighted binary via the oracle directly
        RandomSource rng = base.substream(1);
        const QuantumDataset ds = haar_binary_dataset(1, 6, rng, 0.2, 1.0,
                                                      CopyBudget::finite(cfg.t_bin));
        CopyLedger ledger = CopyLedger::for_dataset(ds);
        const Povm f = oracle_call(oracle, ds, ledger);
        measure(f, DensityMatrix(ds.item(0).state), rng, ledger);
        rows.push_back({"weighted_helstrom", "t_bin", ledger.max_training_consumed(), "1",
                        ledger.unknown_consumed()});
    }
    {  // costing
        RandomSource rng = base.substream(2);
        const QuantumDataset ds = haar_binary_dataset(1, 6, rng, 0.2, 1.0,
                                                      CopyBudget::finite(cfg.T * cfg.t_bin));
        CopyLedger ledger = CopyLedger::for_dataset(ds);
        const AggregatedClassifier agg = costing_train(ds, cfg.T, oracle, rng, ledger);
        costing_classify(agg, DensityMatrix(ds.item(0).state), rng, ledger);
        rows.push_back({"costing", "T*t_bin", ledger.max_training_consumed(), "T",
                        ledger.unknown_consumed()});
    }
    {  // identification by repeated swap tests
        RandomSource rng = base.substream(3);
        const QuantumDataset ds =
            haar_multiclass_dataset(2, cfg.n, cfg.n, rng, CopyBudget::finite(cfg.e));
        CopyLedger ledger = CopyLedger::for_dataset(ds);
        classify_via_identification(ds.item(0).state, ds, cfg.e, 1, rng, ledger);
        rows.push_back({"identification_cswap", "e", ledger.max_training_consumed(), "e*n",
                        ledger.unknown_consumed()});
    }
    {  // one against all
        RandomSource rng = base.substream(4);
        const QuantumDataset ds = haar_multiclass_dataset(
            2, 2 * cfg.k, cfg.k, rng, CopyBudget::finite(cfg.k * cfg.t_bin));
        CopyLedger ledger = CopyLedger::for_dataset(ds);
        const OneVsAllClassifier cls = one_vs_all_train(ds, oracle, ledger);
        one_vs_all_classify(cls, DensityMatrix(ds.item(0).state), rng, ledger);
        rows.push_back({"one_vs_all", "k*t_bin", ledger.max_training_consumed(), "k",
                        ledger.unknown_consumed()});
    }
    {  // balanced discrimination tree
        RandomSource rng = base.substream(5);
        const QuantumDataset ds = haar_multiclass_dataset(
            2, 2 * cfg.k, cfg.k, rng, CopyBudget::finite(cfg.t_bin * depth));
        CopyLedger ledger = CopyLedger::for_dataset(ds);
        const TreeClassifier tree =
            tree_train(ds, oracle, SplitRule::RANDOM_BALANCED, rng, ledger);
        tree_classify(tree, DensityMatrix(ds.item(0).state), rng, ledger);
        rows.push_back({"tree", "t_bin*ceil(log2 k)", ledger.max_training_consumed(),
                        "ceil(log2 k)", ledger.unknown_consumed()});
    }
    {  // pretty good measurement from classical descriptions
        RandomSource rng = base.substream(6);
        const QuantumDataset ds = haar_multiclass_dataset(2, cfg.k, cfg.k, rng);
        CopyLedger ledger = CopyLedger::for_dataset(ds);
        std::vector<DensityMatrix> states;
        std::vector<double> priors;
        for (int label : ds.label_set()) {
            const ClassMixture m = class_mixture(ds, label);
            states.push_back(m.state);
            priors.push_back(m.prior);
        }
        const Povm f = pgm(states, priors, ds.label_set());
        measure(f, DensityMatrix(ds.item(0).state), rng, ledger);
        rows.push_back({"pgm", "classical", ledger.max_training_consumed(), "1",
                        ledger.unknown_consumed()});
    }
    {  // PGM error bound from a sampled similarity matrix
        RandomSource rng = base.substream(7);
        const QuantumDataset ds =
            haar_multiclass_dataset(2, cfg.n, cfg.n, rng,
                                    CopyBudget::finite(cfg.e * (static_cast<long long>(cfg.n) - 1)));
        CopyLedger ledger = CopyLedger::for_dataset(ds);
        similarity_matrix(ds, cfg.e, rng, ledger);
        rows.push_back({"pgm_bound", "e*(n-1)", ledger.max_training_consumed(),
                        "not applicable", ledger.unknown_consumed()});
    }
    return rows;
}

// ---- bound audit corpus ----

// n_ensembles random equiprobable pure ensembles (2..6 states, dimension 2
// or 3) plus the two-basis low-fidelity witness. e = 0 audits with exact
// fidelities, e > 0 with sampled ones.
inline std::vector<BoundReport> run_audit_corpus(std::size_t n_ensembles, std::uint64_t seed,
                                                 long long e = 0) {
    std::vector<BoundReport> all;
    const RandomSource base(seed);
    for (std::size_t t = 0; t < n_ensembles; ++t) {
        RandomSource rng = base.substream(t);
        const std::size_t n = 2 + rng.uniform_index(5);
        const std::size_t dim = 2 + rng.uniform_index(2);
        std::vector<LabeledState> items;
        std::vector<int> labels;
        for (std::size_t i = 0; i < n; ++i) {
            items.emplace_back(haar_state_dim(dim, rng), static_cast<int>(i) + 1, 1.0);
            labels.push_back(static_cast<int>(i) + 1);
        }
        const QuantumDataset ds(std::move(items), std::move(labels),
                                CopyBudget::classical_budget());
        CopyLedger ledger = CopyLedger::for_dataset(ds);
        char id[32];
        std::snprintf(id, sizeof(id), "random_%03zu", t);
        const auto reports = audit_bounds(ds, e, rng, ledger, id);
        all.insert(all.end(), reports.begin(), reports.end());
    }
    {
        const QuantumDataset ds = mub_witness_dataset();
        CopyLedger ledger = CopyLedger::for_dataset(ds);
        RandomSource rng = base.substream(n_ensembles);
        const auto reports = audit_bounds(ds, e, rng, ledger, "mub_witness");
        all.insert(all.end(), reports.begin(), reports.end());
    }
    return all;
}

}  // namespace qsc
