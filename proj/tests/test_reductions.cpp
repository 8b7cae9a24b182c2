#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "qsc/generators.hpp"
#include "qsc/reductions.hpp"
#include "support/oracles.hpp"

using qsc::AggregatedClassifier;
using qsc::Complex;
using qsc::ComplexMatrix;
using qsc::CopyBudget;
using qsc::CopyLedger;
using qsc::DensityMatrix;
using qsc::HelstromOracle;
using qsc::LabeledState;
using qsc::LearningMode;
using qsc::OneVsAllClassifier;
using qsc::Povm;
using qsc::PureState;
using qsc::QuantumDataset;
using qsc::RandomSource;
using qsc::ResampleMode;
using qsc::SplitRule;
using qsc::TreeClassifier;

namespace {

QuantumDataset weighted_pair(double w_minus, double w_plus) {
    std::vector<LabeledState> items;
    items.emplace_back(PureState::basis_state(2, 0), -1, w_minus);
    items.emplace_back(
        PureState(std::vector<Complex>{1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0)}), +1, w_plus);
    return QuantumDataset(std::move(items), {-1, +1}, CopyBudget::classical_budget());
}

Povm always(int label) {
    // two-outcome POVM that answers `label` with certainty
    ComplexMatrix zero(2, 2);
    ComplexMatrix id = ComplexMatrix::identity(2);
    if (label == -1) return Povm{{id, zero}, {-1, +1}};
    return Povm{{zero, id}, {-1, +1}};
}

// Independent recomputation of the tree error: push the full outcome
// distribution through the node list (children always follow parents) and
// collect the mass arriving at the correct leaf.
double tree_error_by_leaf_mass(const TreeClassifier& tree, const QuantumDataset& ds) {
    const std::vector<double> w = ds.normalized_weights();
    double err = 0.0;
    for (std::size_t i = 0; i < ds.size(); ++i) {
        const auto& item = ds.item(i);
        std::vector<double> mass(tree.nodes.size(), 0.0);
        mass[0] = 1.0;
        double correct = 0.0;
        for (std::size_t idx = 0; idx < tree.nodes.size(); ++idx) {
            if (mass[idx] == 0.0) continue;
            const qsc::TreeNode& node = tree.nodes[idx];
            if (node.is_leaf()) {
                if (node.classes.front() == item.label) correct += mass[idx];
                continue;
            }
            double p_left = 0.0, p_right = 0.0;
            for (std::size_t o = 0; o < node.povm.outcomes(); ++o) {
                const double q = std::real(
                    qsc::quadratic_form(node.povm.elements[o], item.state.amplitudes()));
                if (node.povm.outcome_labels[o] == -1) p_left += q;
                else p_right += q;
            }
            mass[static_cast<std::size_t>(node.left)] += mass[idx] * p_left;
            mass[static_cast<std::size_t>(node.right)] += mass[idx] * p_right;
        }
        err += w[i] * (1.0 - correct);
    }
    return err;
}

}  // namespace

TEST_CASE("rejection sampling keeps certain items and drops zero weights") {
    std::vector<LabeledState> items;
    items.emplace_back(PureState::basis_state(2, 0), -1, 0.8);
    items.emplace_back(PureState::basis_state(2, 1), +1, 0.8);
    items.emplace_back(PureState::basis_state(2, 0), -1, 0.0);
    const QuantumDataset ds(std::move(items), {-1, +1}, CopyBudget::classical_budget());
    RandomSource rng(401);
    CopyLedger ledger(LearningMode::CLASSICAL, 3);
    for (int rep = 0; rep < 20; ++rep) {
        const QuantumDataset out = qsc::rejection_sampling(ds, 0.8, rng, ledger);
        REQUIRE(out.size() == 2);  // w=c items always survive, w=0 never does
        REQUIRE(out.is_standard());
        REQUIRE(out.source_index(0) == 0);
        REQUIRE(out.source_index(1) == 1);
    }
}

TEST_CASE("rejection sampling keep rate tracks w/c") {
    const QuantumDataset ds = weighted_pair(0.25, 1.0);
    RandomSource rng(403);
    CopyLedger ledger(LearningMode::CLASSICAL, 2);
    int kept_minus = 0;
    const int reps = 4000;
    for (int rep = 0; rep < reps; ++rep) {
        const QuantumDataset out = qsc::rejection_sampling(ds, 1.0, rng, ledger);
        for (std::size_t i = 0; i < out.size(); ++i)
            if (out.item(i).label == -1) ++kept_minus;
    }
    // keep probability 0.25, sd ~ 0.0068 over 4000 draws
    REQUIRE_THAT(static_cast<double>(kept_minus) / reps,
                 Catch::Matchers::WithinAbs(0.25, 0.025));
}

TEST_CASE("rejection sampling validates the constant and the draw") {
    const QuantumDataset ds = weighted_pair(0.5, 1.0);
    RandomSource rng(405);
    CopyLedger ledger(LearningMode::CLASSICAL, 2);
    REQUIRE_THROWS_AS(qsc::rejection_sampling(ds, 0.8, rng, ledger), qsc::InvalidConstant);
    REQUIRE_THROWS_AS(qsc::rejection_sampling(ds, 0.0, rng, ledger), qsc::InvalidConstant);
    REQUIRE_THROWS_AS(qsc::rejection_sampling(ds, -1.0, rng, ledger), qsc::InvalidConstant);

    // vanishing keep probabilities leave nothing within the retry allowance
    const QuantumDataset tiny = weighted_pair(1e-9, 1e-9);
    REQUIRE_THROWS_AS(qsc::rejection_sampling(tiny, 1.0, rng, ledger),
                      qsc::DegenerateDataset);
}

TEST_CASE("exact-mode costing reproduces the weighted optimum") {
    RandomSource rng(407);
    const QuantumDataset ds = qsc::haar_binary_dataset(1, 6, rng, 0.2, 1.0);
    CopyLedger ledger = CopyLedger::for_dataset(ds);
    RandomSource train(409);
    const Povm direct = qsc::helstrom_weighted(ds);
    const double want = qsc::weighted_error(direct, ds);

    // T=1: the majority of one vote is that vote
    const AggregatedClassifier single = qsc::costing_train(ds, 1, HelstromOracle::v1(), train,
                                                           ledger, ResampleMode::EXACT);
    REQUIRE(single.rounds() == 1);
    REQUIRE_THAT(qsc::aggregated_exact_error(single, ds),
                 Catch::Matchers::WithinAbs(want, 1e-12));

    // every EXACT constituent is the same optimum; votes stay independent,
    // so the T=5 majority amplifies per the binomial tail
    const AggregatedClassifier agg = qsc::costing_train(ds, 5, HelstromOracle::v1(), train,
                                                        ledger, ResampleMode::EXACT);
    REQUIRE_THAT(qsc::constituent_mean_error(agg, ds),
                 Catch::Matchers::WithinAbs(want, 1e-12));
    const std::vector<double> w = ds.normalized_weights();
    double amplified = 0.0;
    for (std::size_t i = 0; i < ds.size(); ++i) {
        double correct = 0.0;
        for (std::size_t o = 0; o < 2; ++o)
            if (direct.outcome_labels[o] == ds.item(i).label)
                correct += std::real(
                    qsc::quadratic_form(direct.elements[o], ds.item(i).state.amplitudes()));
        amplified += w[i] * oracles::majority_error(5, 1.0 - correct, false);
    }
    REQUIRE_THAT(qsc::aggregated_exact_error(agg, ds),
                 Catch::Matchers::WithinAbs(amplified, 1e-12));
}

TEST_CASE("even aggregates break exact-error ties toward -1") {
    const QuantumDataset ds = weighted_pair(0.3, 0.7);
    const AggregatedClassifier agg{{always(+1), always(-1)}};
    // every item splits its two votes 1-1, so the tie rule decides everything:
    // -1 items are always right, +1 items always wrong
    REQUIRE_THAT(qsc::aggregated_exact_error(agg, ds),
                 Catch::Matchers::WithinAbs(0.7, 1e-12));
}

TEST_CASE("costing under v2 charges exactly T*t_bin per state") {
    RandomSource rng(411);
    const QuantumDataset ds =
        qsc::haar_binary_dataset(1, 6, rng, 0.5, 1.0, CopyBudget::finite(100));
    CopyLedger ledger = CopyLedger::for_dataset(ds);
    RandomSource train(413);
    const long long T = 5, t_bin = 2;
    (void)qsc::costing_train(ds, T, HelstromOracle::v2(t_bin), train, ledger);
    for (std::size_t i = 0; i < ds.size(); ++i)
        REQUIRE(ledger.training_consumed(i) == T * t_bin);
}

TEST_CASE("costing pre-checks each round so failures charge nothing") {
    RandomSource rng(415);
    const QuantumDataset ds =
        qsc::haar_binary_dataset(1, 4, rng, 1.0, 1.0, CopyBudget::finite(3));
    CopyLedger ledger = CopyLedger::for_dataset(ds);
    RandomSource train(417);
    // round 0 fits (2 per state), round 1 would need 4 > 3: throw, keep 2
    REQUIRE_THROWS_AS(qsc::costing_train(ds, 2, HelstromOracle::v2(2), train, ledger),
                      qsc::BudgetExhausted);
    for (std::size_t i = 0; i < ds.size(); ++i) REQUIRE(ledger.training_consumed(i) == 2);
}

TEST_CASE("costing gives up after 100 single-class draws") {
    const QuantumDataset ds = weighted_pair(1.0, 0.0);  // +1 can never be drawn
    CopyLedger ledger(LearningMode::CLASSICAL, 2);
    RandomSource train(419);
    REQUIRE_THROWS_AS(qsc::costing_train(ds, 1, HelstromOracle::v1(), train, ledger),
                      qsc::DegenerateDataset);
}

TEST_CASE("costing validates T and c") {
    const QuantumDataset ds = weighted_pair(1.0, 1.0);
    CopyLedger ledger(LearningMode::CLASSICAL, 2);
    RandomSource train(421);
    REQUIRE_THROWS_AS(qsc::costing_train(ds, 0, HelstromOracle::v1(), train, ledger),
                      qsc::InvalidConfig);
    REQUIRE_THROWS_AS(qsc::costing_train(ds, 3, HelstromOracle::v1(), train, ledger,
                                         ResampleMode::SAMPLED, 0.5),
                      qsc::InvalidConstant);
}

TEST_CASE("costing_classify takes the majority and breaks even ties to -1") {
    CopyLedger ledger(LearningMode::CLASSICAL, 1);
    RandomSource rng(423);
    const DensityMatrix state{PureState::basis_state(2, 0)};

    AggregatedClassifier plus_agg{{always(+1), always(+1), always(-1)}};
    REQUIRE(qsc::costing_classify(plus_agg, state, rng, ledger) == +1);

    AggregatedClassifier tied{{always(+1), always(-1)}};
    REQUIRE(qsc::costing_classify(tied, state, rng, ledger) == -1);

    AggregatedClassifier empty;
    REQUIRE_THROWS_AS(qsc::costing_classify(empty, state, rng, ledger), qsc::InvalidConfig);
    // each vote consumed one fresh copy of the unknown
    REQUIRE(ledger.unknown_consumed() == 5);
}

TEST_CASE("aggregated exact error matches exhaustive vote enumeration") {
    RandomSource rng(425);
    const QuantumDataset ds = qsc::haar_binary_dataset(1, 4, rng, 0.3, 1.0);
    CopyLedger ledger = CopyLedger::for_dataset(ds);
    RandomSource train(427);
    const AggregatedClassifier agg =
        qsc::costing_train(ds, 3, HelstromOracle::v1(), train, ledger);

    // enumerate all 2^3 vote patterns per item
    const std::vector<double> w = ds.normalized_weights();
    double want = 0.0;
    for (std::size_t i = 0; i < ds.size(); ++i) {
        const auto& item = ds.item(i);
        std::vector<double> q;  // per-classifier wrong probability
        for (const Povm& f : agg.classifiers) {
            double correct = 0.0;
            for (std::size_t o = 0; o < 2; ++o)
                if (f.outcome_labels[o] == item.label)
                    correct +=
                        std::real(qsc::quadratic_form(f.elements[o], item.state.amplitudes()));
            q.push_back(1.0 - correct);
        }
        double wrong_mass = 0.0;
        for (int pattern = 0; pattern < 8; ++pattern) {
            double prob = 1.0;
            int wrong_votes = 0;
            for (int f = 0; f < 3; ++f) {
                const bool wrong = (pattern >> f) & 1;
                prob *= wrong ? q[f] : 1.0 - q[f];
                wrong_votes += wrong ? 1 : 0;
            }
            if (wrong_votes >= 2) wrong_mass += prob;
        }
        want += w[i] * wrong_mass;
    }
    REQUIRE_THAT(qsc::aggregated_exact_error(agg, ds),
                 Catch::Matchers::WithinAbs(want, 1e-12));
}

TEST_CASE("one-vs-all on two classes degenerates to the plain binary POVM") {
    RandomSource rng(429);
    const QuantumDataset ds = qsc::haar_binary_dataset(1, 6, rng, 0.4, 1.0);
    CopyLedger ledger = CopyLedger::for_dataset(ds);
    const OneVsAllClassifier cls = qsc::one_vs_all_train(ds, HelstromOracle::v1(), ledger);
    REQUIRE(cls.per_class.size() == 2);
    const Povm direct = qsc::helstrom_weighted(ds);
    // the -1 discriminator sees the identical relabeled problem
    REQUIRE(cls.per_class[0].first == -1);
    for (std::size_t o = 0; o < 2; ++o)
        REQUIRE(qsc::max_abs_diff(cls.per_class[0].second.elements[o], direct.elements[o]) <
                1e-12);
}

TEST_CASE("one-vs-all is perfect on orthogonal singleton classes") {
    const QuantumDataset ds = qsc::basis_dataset(3, 3);
    CopyLedger ledger = CopyLedger::for_dataset(ds);
    const OneVsAllClassifier cls = qsc::one_vs_all_train(ds, HelstromOracle::v1(), ledger);
    REQUIRE_THAT(qsc::one_vs_all_exact_error(cls, ds), Catch::Matchers::WithinAbs(0.0, 1e-10));
    const std::vector<double> node_errors = qsc::one_vs_all_binary_errors(cls, ds);
    REQUIRE(node_errors.size() == 3);
    for (double e : node_errors) REQUIRE_THAT(e, Catch::Matchers::WithinAbs(0.0, 1e-10));

    RandomSource rng(431);
    for (std::size_t i = 0; i < 3; ++i)
        REQUIRE(qsc::one_vs_all_classify(cls, DensityMatrix(ds.item(i).state), rng, ledger) ==
                ds.item(i).label);
}

TEST_CASE("blind one-vs-all discriminators guess uniformly") {
    // every discriminator flips a fair coin: by symmetry accuracy must be 1/k
    OneVsAllClassifier cls;
    const ComplexMatrix half = 0.5 * ComplexMatrix::identity(2);
    for (int label = 1; label <= 4; ++label)
        cls.per_class.emplace_back(label, Povm{{half, half}, {-1, +1}});
    std::vector<LabeledState> items;
    for (int label = 1; label <= 4; ++label)
        items.emplace_back(PureState::basis_state(2, label % 2), label, 0.25);
    const QuantumDataset ds(std::move(items), {1, 2, 3, 4}, CopyBudget::classical_budget());
    REQUIRE_THAT(qsc::one_vs_all_exact_error(cls, ds),
                 Catch::Matchers::WithinAbs(0.75, 1e-12));
}

TEST_CASE("one-vs-all exact error matches Monte Carlo") {
    RandomSource rng(433);
    const QuantumDataset ds = qsc::haar_multiclass_dataset(1, 6, 3, rng);
    CopyLedger ledger = CopyLedger::for_dataset(ds);
    const OneVsAllClassifier cls = qsc::one_vs_all_train(ds, HelstromOracle::v1(), ledger);
    const double exact = qsc::one_vs_all_exact_error(cls, ds);

    const std::vector<double> w = ds.normalized_weights();
    RandomSource mc(435);
    const int trials = 20000;
    int wrong = 0;
    for (int t = 0; t < trials; ++t) {
        // items are equiprobable here, so a flat index draw is the weight draw
        const std::size_t i = mc.uniform_index(ds.size());
        const int got =
            qsc::one_vs_all_classify(cls, DensityMatrix(ds.item(i).state), mc, ledger);
        if (got != ds.item(i).label) ++wrong;
    }
    const double se = std::sqrt(exact * (1.0 - exact) / trials);
    REQUIRE_THAT(static_cast<double>(wrong) / trials,
                 Catch::Matchers::WithinAbs(exact, 3.5 * se + 1e-4));
}

TEST_CASE("one-vs-all charges k*t_bin per state and validates classes") {
    RandomSource rng(437);
    const QuantumDataset ds =
        qsc::haar_multiclass_dataset(1, 8, 4, rng, CopyBudget::finite(100));
    CopyLedger ledger = CopyLedger::for_dataset(ds);
    (void)qsc::one_vs_all_train(ds, HelstromOracle::v2(3), ledger);
    for (std::size_t i = 0; i < ds.size(); ++i)
        REQUIRE(ledger.training_consumed(i) == 4 * 3);

    std::vector<LabeledState> single;
    single.emplace_back(PureState::basis_state(2, 0), 1, 1.0);
    const QuantumDataset one_class(single, {1}, CopyBudget::classical_budget());
    CopyLedger l2(LearningMode::CLASSICAL, 1);
    REQUIRE_THROWS_AS(qsc::one_vs_all_train(one_class, HelstromOracle::v1(), l2),
                      qsc::InvalidConfig);

    std::vector<LabeledState> hollow;
    hollow.emplace_back(PureState::basis_state(2, 0), 1, 1.0);
    hollow.emplace_back(PureState::basis_state(2, 1), 2, 1.0);
    const QuantumDataset empty_class(hollow, {1, 2, 3}, CopyBudget::classical_budget());
    CopyLedger l3(LearningMode::CLASSICAL, 2);
    REQUIRE_THROWS_AS(qsc::one_vs_all_train(empty_class, HelstromOracle::v1(), l3),
                      qsc::EmptyClass);
}

TEST_CASE("one-vs-all exact error demands a discriminator per label") {
    OneVsAllClassifier cls;
    cls.per_class.emplace_back(1, always(-1));
    std::vector<LabeledState> items;
    items.emplace_back(PureState::basis_state(2, 0), 1, 0.5);
    items.emplace_back(PureState::basis_state(2, 1), 2, 0.5);
    const QuantumDataset ds(std::move(items), {1, 2}, CopyBudget::classical_budget());
    REQUIRE_THROWS_AS(qsc::one_vs_all_exact_error(cls, ds), qsc::LabelMismatch);
}

TEST_CASE("single-class trees are bare leaves") {
    std::vector<LabeledState> items;
    items.emplace_back(PureState::basis_state(2, 0), 7, 1.0);
    const QuantumDataset ds(std::move(items), {7}, CopyBudget::classical_budget());
    CopyLedger ledger(LearningMode::CLASSICAL, 1);
    RandomSource rng(439);
    const TreeClassifier tree =
        qsc::tree_train(ds, HelstromOracle::v1(), SplitRule::RANDOM_BALANCED, rng, ledger);
    REQUIRE(tree.nodes.size() == 1);
    REQUIRE(tree.depth() == 0);
    REQUIRE(tree.internal_count() == 0);
    RandomSource mc(441);
    REQUIRE(qsc::tree_classify(tree, DensityMatrix(ds.item(0).state), mc, ledger) == 7);
    REQUIRE(ledger.unknown_consumed() == 0);  // a leaf costs nothing to answer
}

TEST_CASE("balanced trees on orthogonal classes are exact and shaped right") {
    const QuantumDataset ds = qsc::basis_dataset(8, 8);
    CopyLedger ledger = CopyLedger::for_dataset(ds);
    RandomSource rng(443);
    const TreeClassifier tree =
        qsc::tree_train(ds, HelstromOracle::v1(), SplitRule::RANDOM_BALANCED, rng, ledger);
    REQUIRE(tree.depth() == 3);
    REQUIRE(tree.internal_count() == 7);
    REQUIRE(tree.nodes.size() == 15);
    REQUIRE_THAT(qsc::tree_exact_error(tree, ds), Catch::Matchers::WithinAbs(0.0, 1e-10));
    const std::vector<double> node_errors = qsc::tree_node_errors(tree, ds);
    REQUIRE(node_errors.size() == 7);
    for (double e : node_errors) REQUIRE_THAT(e, Catch::Matchers::WithinAbs(0.0, 1e-10));

    RandomSource mc(445);
    for (std::size_t i = 0; i < 8; ++i) {
        const long long before = ledger.unknown_consumed();
        REQUIRE(qsc::tree_classify(tree, DensityMatrix(ds.item(i).state), mc, ledger) ==
                ds.item(i).label);
        REQUIRE(ledger.unknown_consumed() - before == 3);  // one copy per level
    }
}

TEST_CASE("trees charge t_bin per state per level") {
    RandomSource rng(447);
    const QuantumDataset four =
        qsc::haar_multiclass_dataset(2, 8, 4, rng, CopyBudget::finite(50));
    CopyLedger ledger = CopyLedger::for_dataset(four);
    RandomSource train(449);
    (void)qsc::tree_train(four, HelstromOracle::v2(3), SplitRule::RANDOM_BALANCED, train,
                          ledger);
    // k=4 balanced: every state sits in the root plus exactly one depth-1 node
    for (std::size_t i = 0; i < four.size(); ++i)
        REQUIRE(ledger.training_consumed(i) == 2 * 3);

    RandomSource rng2(451);
    const QuantumDataset five = qsc::haar_multiclass_dataset(2, 10, 5, rng2);
    CopyLedger l5 = CopyLedger::for_dataset(five);
    RandomSource train2(453);
    const TreeClassifier tree =
        qsc::tree_train(five, HelstromOracle::v1(), SplitRule::RANDOM_BALANCED, train2, l5);
    REQUIRE(tree.depth() == 3);  // ceil(log2 5)
    REQUIRE(tree.internal_count() == 4);
}

TEST_CASE("tree exact error agrees with full leaf-mass enumeration") {
    RandomSource rng(455);
    for (int trial = 0; trial < 10; ++trial) {
        const QuantumDataset ds = qsc::haar_multiclass_dataset(1, 10, 5, rng);
        CopyLedger ledger = CopyLedger::for_dataset(ds);
        RandomSource train(457 + trial);
        const TreeClassifier tree = qsc::tree_train(ds, HelstromOracle::v1(),
                                                    SplitRule::RANDOM_BALANCED, train, ledger);
        REQUIRE_THAT(qsc::tree_exact_error(tree, ds),
                     Catch::Matchers::WithinAbs(tree_error_by_leaf_mass(tree, ds), 1e-12));
    }
}

TEST_CASE("tree exact error matches Monte Carlo") {
    RandomSource rng(459);
    const QuantumDataset ds = qsc::haar_multiclass_dataset(1, 8, 4, rng);
    CopyLedger ledger = CopyLedger::for_dataset(ds);
    RandomSource train(461);
    const TreeClassifier tree =
        qsc::tree_train(ds, HelstromOracle::v1(), SplitRule::RANDOM_BALANCED, train, ledger);
    const double exact = qsc::tree_exact_error(tree, ds);

    RandomSource mc(463);
    const int trials = 20000;
    int wrong = 0;
    for (int t = 0; t < trials; ++t) {
        const std::size_t i = mc.uniform_index(ds.size());
        if (qsc::tree_classify(tree, DensityMatrix(ds.item(i).state), mc, ledger) !=
            ds.item(i).label)
            ++wrong;
    }
    const double se = std::sqrt(std::max(exact * (1.0 - exact), 1e-9) / trials);
    REQUIRE_THAT(static_cast<double>(wrong) / trials,
                 Catch::Matchers::WithinAbs(exact, 3.5 * se + 1e-4));
}

TEST_CASE("max-trace splits pull the far clusters apart at the root") {
    // classes 1,2 hug |0>, classes 3,4 hug |1>; the best balanced bipartition
    // is {1,2} vs {3,4}
    const double eps = 0.05;
    const double r = std::sqrt(1.0 - eps * eps);
    std::vector<LabeledState> items;
    items.emplace_back(PureState(std::vector<Complex>{r, eps}), 1, 0.25);
    items.emplace_back(PureState(std::vector<Complex>{r, -eps}), 2, 0.25);
    items.emplace_back(PureState(std::vector<Complex>{eps, r}), 3, 0.25);
    items.emplace_back(PureState(std::vector<Complex>{-eps, r}), 4, 0.25);
    const QuantumDataset ds(std::move(items), {1, 2, 3, 4}, CopyBudget::classical_budget());
    CopyLedger ledger = CopyLedger::for_dataset(ds);
    RandomSource rng(465);
    const TreeClassifier tree =
        qsc::tree_train(ds, HelstromOracle::v1(), SplitRule::MAX_TRACE_DISTANCE, rng, ledger);
    REQUIRE(tree.nodes[0].left_classes == std::vector<int>{1, 2});
    REQUIRE(tree.nodes[0].right_classes == std::vector<int>{3, 4});
}

TEST_CASE("max-trace splitting needs classical descriptions") {
    RandomSource rng(467);
    const QuantumDataset ds =
        qsc::haar_multiclass_dataset(1, 4, 4, rng, CopyBudget::finite(10));
    CopyLedger ledger = CopyLedger::for_dataset(ds);
    RandomSource train(469);
    REQUIRE_THROWS_AS(qsc::tree_train(ds, HelstromOracle::v2(1),
                                      SplitRule::MAX_TRACE_DISTANCE, train, ledger),
                      qsc::InvalidConfig);
}

TEST_CASE("tree training rejects empty classes") {
    std::vector<LabeledState> items;
    items.emplace_back(PureState::basis_state(2, 0), 1, 1.0);
    items.emplace_back(PureState::basis_state(2, 1), 2, 1.0);
    const QuantumDataset ds(std::move(items), {1, 2, 3}, CopyBudget::classical_budget());
    CopyLedger ledger(LearningMode::CLASSICAL, 2);
    RandomSource rng(471);
    REQUIRE_THROWS_AS(
        qsc::tree_train(ds, HelstromOracle::v1(), SplitRule::RANDOM_BALANCED, rng, ledger),
        qsc::EmptyClass);
}

TEST_CASE("identify_state recovers indices of distinguishable states") {
    const QuantumDataset ds = qsc::basis_dataset(4, 4);
    CopyLedger ledger = CopyLedger::for_dataset(ds);
    RandomSource rng(473);
    for (std::size_t i = 0; i < 4; ++i) {
        const long long before = ledger.unknown_consumed();
        REQUIRE(qsc::identify_state(ds.item(i).state, ds, HelstromOracle::v1(), rng, ledger) ==
                i);
        REQUIRE(ledger.unknown_consumed() - before == 2);  // ceil(log2 4)
    }
}

TEST_CASE("identify_state refuses duplicate states") {
    std::vector<LabeledState> items;
    items.emplace_back(PureState::basis_state(2, 0), 1, 0.5);
    items.emplace_back(PureState::basis_state(2, 0), 2, 0.5);
    const QuantumDataset ds(std::move(items), {1, 2}, CopyBudget::classical_budget());
    CopyLedger ledger(LearningMode::CLASSICAL, 2);
    RandomSource rng(475);
    REQUIRE_THROWS_AS(
        qsc::identify_state(ds.item(0).state, ds, HelstromOracle::v1(), rng, ledger),
        qsc::DuplicateStates);
}

TEST_CASE("trees are reproducible from the training stream") {
    RandomSource rng(477);
    const QuantumDataset ds = qsc::haar_multiclass_dataset(1, 12, 6, rng);
    CopyLedger l1 = CopyLedger::for_dataset(ds);
    CopyLedger l2 = CopyLedger::for_dataset(ds);
    RandomSource t1(479), t2(479);
    const TreeClassifier a =
        qsc::tree_train(ds, HelstromOracle::v1(), SplitRule::RANDOM_BALANCED, t1, l1);
    const TreeClassifier b =
        qsc::tree_train(ds, HelstromOracle::v1(), SplitRule::RANDOM_BALANCED, t2, l2);
    REQUIRE(a.nodes.size() == b.nodes.size());
    for (std::size_t i = 0; i < a.nodes.size(); ++i) {
        REQUIRE(a.nodes[i].classes == b.nodes[i].classes);
        REQUIRE(a.nodes[i].left == b.nodes[i].left);
        REQUIRE(a.nodes[i].right == b.nodes[i].right);
    }
}
