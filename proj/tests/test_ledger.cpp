#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "qsc/generators.hpp"
#include "qsc/ledger.hpp"
#include "qsc/measurement.hpp"

using qsc::CopyLedger;
using qsc::CopySlot;
using qsc::LearningMode;

TEST_CASE("classical ledgers record training as zero cost") {
    CopyLedger ledger(LearningMode::CLASSICAL, 3);
    ledger.consume_training(0, 100);
    ledger.consume_training(2, 5);
    REQUIRE(ledger.total_training_consumed() == 0);
    REQUIRE(ledger.max_training_consumed() == 0);
    REQUIRE(ledger.can_consume_training(0, 1'000'000));
}

TEST_CASE("finite ledgers enforce per-state budgets") {
    CopyLedger ledger(LearningMode::FINITE, 2, 5);
    ledger.consume_training(0, 3);
    REQUIRE(ledger.training_consumed(0) == 3);
    REQUIRE(ledger.can_consume_training(0, 2));
    REQUIRE_FALSE(ledger.can_consume_training(0, 3));
    // budgets are per state: state 1 is untouched
    REQUIRE(ledger.can_consume_training(1, 5));

    try {
        ledger.consume_training(0, 3);
        FAIL("expected BudgetExhausted");
    } catch (const qsc::BudgetExhausted& e) {
        REQUIRE(e.state_index == 0);
    }
    // the failed consume left the counter unchanged
    REQUIRE(ledger.training_consumed(0) == 3);
}

TEST_CASE("finite mode needs a positive budget and valid indices") {
    REQUIRE_THROWS_AS(CopyLedger(LearningMode::FINITE, 2, 0), qsc::InvalidConfig);
    CopyLedger ledger(LearningMode::FINITE, 2, 5);
    REQUIRE_THROWS_AS(ledger.consume_training(7, 1), qsc::InvalidRange);
    REQUIRE_THROWS_AS(ledger.consume_training(0, -1), qsc::InvalidRange);
}

TEST_CASE("unknown copies count in every mode and obey optional caps") {
    CopyLedger ledger(LearningMode::CLASSICAL, 1);
    ledger.consume_unknown(4);
    REQUIRE(ledger.unknown_consumed() == 4);
    ledger.set_unknown_budget(6);
    ledger.consume_unknown(2);
    REQUIRE_THROWS_AS(ledger.consume_unknown(1), qsc::BudgetExhausted);
    REQUIRE(ledger.unknown_consumed() == 6);
}

TEST_CASE("slots route consumption to the right counter") {
    CopyLedger ledger(LearningMode::FINITE, 2, 10);
    ledger.consume(CopySlot::training(1), 4);
    ledger.consume(CopySlot::unknown(), 3);
    REQUIRE(ledger.training_consumed(1) == 4);
    REQUIRE(ledger.training_consumed(0) == 0);
    REQUIRE(ledger.unknown_consumed() == 3);
    REQUIRE(ledger.can_consume(CopySlot::training(1), 6));
    REQUIRE_FALSE(ledger.can_consume(CopySlot::training(1), 7));
}

TEST_CASE("for_dataset mirrors the declared budget") {
    const qsc::QuantumDataset classical = qsc::zero_plus_dataset();
    REQUIRE(CopyLedger::for_dataset(classical).mode() == LearningMode::CLASSICAL);

    qsc::RandomSource rng(5);
    const qsc::QuantumDataset finite =
        qsc::haar_binary_dataset(1, 4, rng, 1.0, 1.0, qsc::CopyBudget::finite(9));
    CopyLedger ledger = CopyLedger::for_dataset(finite);
    REQUIRE(ledger.mode() == LearningMode::FINITE);
    REQUIRE(ledger.budget() == 9);
    REQUIRE(ledger.tracked_states() == 4);
}

TEST_CASE("absorb_unknown merges classification counters") {
    CopyLedger a(LearningMode::CLASSICAL, 1);
    CopyLedger b(LearningMode::CLASSICAL, 1);
    a.consume_unknown(2);
    b.consume_unknown(5);
    a.absorb_unknown(b);
    REQUIRE(a.unknown_consumed() == 7);
}

TEST_CASE("error_rate reproduces a hand-computed weighted error") {
    // POVM that always answers +1: every -1 item is wrong, so the error is
    // the -1 share of the total weight.
    qsc::Povm always_plus{{qsc::ComplexMatrix(2, 2), qsc::ComplexMatrix::identity(2)},
                          {-1, +1}};
    std::vector<qsc::LabeledState> items;
    items.emplace_back(qsc::PureState::basis_state(2, 0), -1, 1.0);
    items.emplace_back(qsc::PureState::basis_state(2, 1), +1, 3.0);
    const qsc::QuantumDataset ds(std::move(items), {-1, +1},
                                 qsc::CopyBudget::classical_budget());
    REQUIRE_THAT(qsc::error_rate(always_plus, ds), Catch::Matchers::WithinAbs(0.25, 1e-12));
}

TEST_CASE("regret is error minus optimum, clamped against solver noise") {
    REQUIRE_THAT(qsc::regret(0.3, 0.1), Catch::Matchers::WithinAbs(0.2, 1e-15));
    REQUIRE(qsc::regret(0.1, 0.1 + 1e-9) == 0.0);
    REQUIRE_THROWS_AS(qsc::regret(0.1, 0.2), qsc::InvalidRange);
}
