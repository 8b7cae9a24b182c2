#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "qsc/qsc.hpp"

using qsc::CopyLedger;
using qsc::DensityMatrix;
using qsc::DrawMode;
using qsc::EvaluationResult;
using qsc::LabeledState;
using qsc::Povm;
using qsc::PureState;
using qsc::QuantumDataset;
using qsc::RandomSource;

namespace {

using Complex = qsc::Complex;

// |0> with weight 0.5 in class -1; |1> (0.4) and |+> (0.1) share class +1,
// so the two draw modes give item 2 different visit rates
QuantumDataset lopsided_dataset() {
    const Complex h = 1.0 / std::sqrt(2.0);
    std::vector<LabeledState> items;
    items.emplace_back(PureState::basis_state(2, 0), -1, 0.5);
    items.emplace_back(PureState::basis_state(2, 1), +1, 0.4);
    items.emplace_back(PureState({h, h}), +1, 0.1);
    return QuantumDataset(std::move(items), {-1, 1}, qsc::CopyBudget::classical_budget());
}

}  // namespace

TEST_CASE("evaluation is identical across worker counts") {
    const QuantumDataset ds = qsc::zero_plus_dataset();
    const Povm f = qsc::helstrom_weighted(ds);
    const RandomSource base(701);
    const CopyLedger tpl = CopyLedger::for_dataset(ds);
    const auto classify = [&f](const PureState& s, RandomSource& rng, CopyLedger& ledger) {
        return qsc::measure(f, DensityMatrix(s), rng, ledger);
    };

    const EvaluationResult one =
        qsc::evaluate_trials(ds, 4000, base, tpl, classify, DrawMode::BY_WEIGHT, true, 1);
    const EvaluationResult four =
        qsc::evaluate_trials(ds, 4000, base, tpl, classify, DrawMode::BY_WEIGHT, true, 4);

    REQUIRE(one.trials == four.trials);
    REQUIRE(one.wrong == four.wrong);
    REQUIRE(one.unknown_copies == four.unknown_copies);
    REQUIRE(one.records.size() == four.records.size());
    for (std::size_t t = 0; t < one.records.size(); ++t) {
        REQUIRE(one.records[t].item == four.records[t].item);
        REQUIRE(one.records[t].true_label == four.records[t].true_label);
        REQUIRE(one.records[t].predicted == four.records[t].predicted);
    }
}

TEST_CASE("weighted draws reproduce the exact weighted error") {
    const QuantumDataset ds = qsc::zero_plus_dataset();
    const Povm f = qsc::helstrom_weighted(ds);
    const double exact = qsc::weighted_error(f, ds);
    const RandomSource base(703);
    const CopyLedger tpl = CopyLedger::for_dataset(ds);

    const EvaluationResult r = qsc::evaluate_trials(
        ds, 20000, base, tpl,
        [&f](const PureState& s, RandomSource& rng, CopyLedger& ledger) {
            return qsc::measure(f, DensityMatrix(s), rng, ledger);
        });
    REQUIRE(r.unknown_copies == 20000);  // one copy per trial
    const double se = std::max(r.standard_error(), 1e-6);
    REQUIRE(std::abs(r.empirical_error() - exact) < 4.0 * se);
}

TEST_CASE("draw modes differ on uneven within-class weights") {
    const QuantumDataset ds = lopsided_dataset();
    const RandomSource base(705);
    const CopyLedger tpl = CopyLedger::for_dataset(ds);
    const auto ignore = [](const PureState&, RandomSource&, CopyLedger&) { return 0; };
    const long long N = 40000;

    const auto frequency_of_item_2 = [&](DrawMode mode) {
        const EvaluationResult r =
            qsc::evaluate_trials(ds, N, base, tpl, ignore, mode, true, 1);
        long long hits = 0;
        for (const auto& rec : r.records)
            if (rec.item == 2) ++hits;
        return static_cast<double>(hits) / static_cast<double>(N);
    };

    // item 2 carries weight 0.1 but is one of two uniform picks inside a
    // class of mass 0.5, so the class-uniform rate is 0.25
    REQUIRE_THAT(frequency_of_item_2(DrawMode::BY_WEIGHT),
                 Catch::Matchers::WithinAbs(0.10, 0.01));
    REQUIRE_THAT(frequency_of_item_2(DrawMode::CLASS_UNIFORM),
                 Catch::Matchers::WithinAbs(0.25, 0.012));
}

TEST_CASE("trial bookkeeping and validation") {
    const QuantumDataset ds = qsc::zero_plus_dataset();
    const RandomSource base(707);
    const CopyLedger tpl = CopyLedger::for_dataset(ds);

    REQUIRE_THROWS_AS(
        qsc::evaluate_trials(ds, -1, base, tpl,
                             [](const PureState&, RandomSource&, CopyLedger&) { return 0; }),
        qsc::InvalidConfig);

    // errors raised inside a worker surface to the caller
    REQUIRE_THROWS_AS(
        qsc::evaluate_trials(
            ds, 64, base, tpl,
            [](const PureState&, RandomSource&, CopyLedger&) -> int {
                throw qsc::NumericalBreakdown("boom");
            },
            DrawMode::BY_WEIGHT, false, 4),
        qsc::NumericalBreakdown);

    // unknown-copy counts from every trial ledger are merged
    const EvaluationResult r = qsc::evaluate_trials(
        ds, 100, base, tpl, [](const PureState&, RandomSource&, CopyLedger& ledger) {
            ledger.consume_unknown(3);
            return -1;
        });
    REQUIRE(r.unknown_copies == 300);

    const EvaluationResult empty = qsc::evaluate_trials(
        ds, 0, base, tpl, [](const PureState&, RandomSource&, CopyLedger&) { return 0; });
    REQUIRE(empty.trials == 0);
    REQUIRE(empty.empirical_error() == 0.0);
    REQUIRE(empty.standard_error() == 0.0);
}

TEST_CASE("cost table rows match the ledger arithmetic") {
    qsc::CostTableConfig cfg;
    cfg.seed = 11;
    cfg.t_bin = 3;
    cfg.T = 7;
    cfg.e = 50;
    cfg.k = 4;
    cfg.n = 8;
    const std::vector<qsc::CostReport> rows = qsc::build_cost_table(cfg);

    REQUIRE(rows.size() == 8);
    const std::vector<std::string> tasks{"binary",         "weighted_helstrom", "costing",
                                         "identification_cswap", "one_vs_all", "tree",
                                         "pgm",            "pgm_bound"};
    for (std::size_t i = 0; i < rows.size(); ++i) REQUIRE(rows[i].task == tasks[i]);

    const auto row = [&](const std::string& task) -> const qsc::CostReport& {
        for (const auto& r : rows)
            if (r.task == task) return r;
        throw std::runtime_error("missing row");
    };

    REQUIRE(row("binary").training_cost_measured == cfg.t_bin);
    REQUIRE(row("binary").classification_cost_measured == 1);
    REQUIRE(row("weighted_helstrom").training_cost_measured == cfg.t_bin);
    REQUIRE(row("costing").training_cost_measured == cfg.T * cfg.t_bin);
    REQUIRE(row("costing").classification_cost_measured == cfg.T);
    REQUIRE(row("identification_cswap").training_cost_measured == cfg.e);
    REQUIRE(row("identification_cswap").classification_cost_measured ==
            cfg.e * static_cast<long long>(cfg.n));
    REQUIRE(row("one_vs_all").training_cost_measured ==
            static_cast<long long>(cfg.k) * cfg.t_bin);
    REQUIRE(row("one_vs_all").classification_cost_measured == static_cast<long long>(cfg.k));
    REQUIRE(row("tree").training_cost_measured == cfg.t_bin * 2);  // ceil(log2 4)
    REQUIRE(row("tree").classification_cost_measured == 2);
    REQUIRE(row("pgm").training_cost_measured == 0);
    REQUIRE(row("pgm").classification_cost_measured == 1);
    REQUIRE(row("pgm_bound").training_cost_measured ==
            cfg.e * (static_cast<long long>(cfg.n) - 1));
    REQUIRE(row("pgm_bound").classification_cost_measured == 0);

    REQUIRE_THROWS_AS(qsc::build_cost_table({11, 0, 7, 50, 4, 8}), qsc::InvalidConfig);
}

TEST_CASE("audit corpus covers every ensemble plus the witness") {
    const std::vector<qsc::BoundReport> rows = qsc::run_audit_corpus(12, 31);
    std::vector<std::string> ids;
    bool witness = false;
    for (const auto& r : rows) {
        if (ids.empty() || ids.back() != r.ensemble_id) ids.push_back(r.ensemble_id);
        if (r.ensemble_id == "mub_witness") witness = true;
        if (r.bound_name == "row_sum_fidelity_upper") REQUIRE(r.holds);
        if (r.bound_name == "pairwise_product_lower" && r.interpretation == "strict")
            REQUIRE(r.holds);
        if (r.bound_name == "best_guess_upper") REQUIRE(r.holds);
    }
    REQUIRE(ids.size() == 13);
    REQUIRE(witness);
    REQUIRE(ids[0] == "random_000");
    // every ensemble yields at least the six always-on reports
    REQUIRE(rows.size() >= 13 * 6);
}
