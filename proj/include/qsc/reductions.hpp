#pragma once

// Learning reductions built on the binary Helstrom oracle: costing
// (rejection sampling + majority aggregation), one-against-all, and a binary
// tree of discriminators. Every copy a trainer or classifier spends is routed
// through the shared CopyLedger.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "qsc/errors.hpp"
#include "qsc/ledger.hpp"
#include "qsc/linalg.hpp"
#include "qsc/matrix.hpp"
#include "qsc/measurement.hpp"
#include "qsc/povm.hpp"
#include "qsc/random.hpp"
#include "qsc/states.hpp"

namespace qsc {

enum class ResampleMode { SAMPLED, EXACT };
enum class SplitRule { RANDOM_BALANCED, MAX_TRACE_DISTANCE };

// T binary classifiers combined by majority vote (ties go to -1).
struct AggregatedClassifier {
    std::vector<Povm> classifiers;

    std::size_t rounds() const { return classifiers.size(); }
};

// One "this class vs the rest" discriminator per class.
struct OneVsAllClassifier {
    std::vector<std::pair<int, Povm>> per_class;

    std::size_t classes() const { return per_class.size(); }
};

// Node of the discrimination tree. Leaves carry a single class and no POVM;
// internal nodes send outcome -1 left and +1 right.
struct TreeNode {
    std::vector<int> classes;  // classes reaching this node, sorted
    Povm povm;                 // internal nodes only, labels {-1,+1}
    std::vector<int> left_classes;
    std::vector<int> right_classes;
    int left = -1;   // child indices into TreeClassifier::nodes, -1 for leaves
    int right = -1;

    bool is_leaf() const { return left < 0; }
};

struct TreeClassifier {
    std::vector<TreeNode> nodes;  // nodes[0] is the root, children follow pre-order

    // Measurements on the longest root-to-leaf path.
    int depth() const { return nodes.empty() ? 0 : depth_below(0); }

    std::size_t internal_count() const {
        std::size_t n = 0;
        for (const auto& node : nodes)
            if (!node.is_leaf()) ++n;
        return n;
    }

  private:
    int depth_below(std::size_t at) const {
        const TreeNode& n = nodes.at(at);
        if (n.is_leaf()) return 0;
        return 1 + std::max(depth_below(static_cast<std::size_t>(n.left)),
                            depth_below(static_cast<std::size_t>(n.right)));
    }
};

namespace detail {

// Restriction of a dataset to the given item indices. Survivors keep their
// ledger identity through source indices; uniform_weights resets each weight
// to 1/m.
inline QuantumDataset subset_dataset(const QuantumDataset& ds,
                                     const std::vector<std::size_t>& keep,
                                     bool uniform_weights) {
    std::vector<LabeledState> items;
    std::vector<std::size_t> sources;
    items.reserve(keep.size());
    sources.reserve(keep.size());
    const double w = 1.0 / static_cast<double>(keep.size());
    for (std::size_t i : keep) {
        const LabeledState& it = ds.item(i);
        items.emplace_back(it.state, it.label, uniform_weights ? w : it.weight);
        sources.push_back(ds.source_index(i));
    }
    return QuantumDataset(std::move(items), ds.label_set(), ds.declared_copies(),
                          std::move(sources));
}

inline std::vector<std::size_t> rejection_indices(const QuantumDataset& ds, double c,
                                                  RandomSource& rng) {
    std::vector<std::size_t> kept;
    for (std::size_t i = 0; i < ds.size(); ++i)
        if (rng.bernoulli(ds.item(i).weight / c)) kept.push_back(i);
    return kept;
}

inline std::size_t distinct_labels(const QuantumDataset& ds,
                                   const std::vector<std::size_t>& kept) {
    std::vector<int> seen;
    for (std::size_t i : kept) {
        const int y = ds.item(i).label;
        if (std::find(seen.begin(), seen.end(), y) == seen.end()) seen.push_back(y);
    }
    return seen.size();
}

inline double max_weight(const QuantumDataset& ds) {
    double m = 0.0;
    for (const auto& it : ds.items()) m = std::max(m, it.weight);
    return m;
}

// Relabels to {-1,+1}: the target class becomes -1 (the "click" outcome),
// everything else +1.
inline QuantumDataset one_vs_rest_dataset(const QuantumDataset& ds, int target) {
    std::vector<LabeledState> items;
    items.reserve(ds.size());
    for (const auto& it : ds.items())
        items.emplace_back(it.state, it.label == target ? -1 : +1, it.weight);
    return QuantumDataset(std::move(items), {-1, +1}, ds.declared_copies(),
                          ds.source_indices());
}

inline std::vector<std::size_t> indices_with_labels(const QuantumDataset& ds,
                                                    const std::vector<int>& classes) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < ds.size(); ++i)
        if (std::binary_search(classes.begin(), classes.end(), ds.item(i).label))
            out.push_back(i);
    return out;
}

// Binary relabeling of one tree node's items: classes in `left` (sorted) map
// to -1, the rest to +1. Weights stay raw; downstream normalization happens
// over the node's items only, which is exactly the renormalized-prior rule.
inline QuantumDataset two_sided_dataset(const QuantumDataset& ds, const std::vector<int>& left,
                                        const std::vector<std::size_t>& node_items) {
    std::vector<LabeledState> items;
    std::vector<std::size_t> sources;
    items.reserve(node_items.size());
    sources.reserve(node_items.size());
    for (std::size_t i : node_items) {
        const LabeledState& it = ds.item(i);
        const int side = std::binary_search(left.begin(), left.end(), it.label) ? -1 : +1;
        items.emplace_back(it.state, side, it.weight);
        sources.push_back(ds.source_index(i));
    }
    return QuantumDataset(std::move(items), {-1, +1}, ds.declared_copies(),
                          std::move(sources));
}

inline double split_trace_distance(const QuantumDataset& two_sided) {
    const ClassMixture a = class_mixture(two_sided, -1);
    const ClassMixture b = class_mixture(two_sided, +1);
    return trace_norm(a.prior * a.state.matrix() - b.prior * b.state.matrix());
}

// Lexicographic advance over size-r subsets of {0..k-1}; false when done.
inline bool next_combination(std::vector<std::size_t>& pick, std::size_t k) {
    const std::size_t r = pick.size();
    for (std::size_t i = r; i-- > 0;) {
        if (pick[i] < i + k - r) {
            ++pick[i];
            for (std::size_t j = i + 1; j < r; ++j) pick[j] = pick[j - 1] + 1;
            return true;
        }
    }
    return false;
}

// Balanced bipartition maximizing the weighted trace distance between the two
// side mixtures. Exhaustive for k <= 12, greedy pair-swap improvement above.
inline std::vector<int> best_trace_split(const QuantumDataset& ds, const std::vector<int>& classes,
                                         const std::vector<std::size_t>& node_items) {
    const std::size_t k = classes.size();
    const std::size_t r = (k + 1) / 2;
    const auto score = [&](const std::vector<int>& left) {
        return split_trace_distance(two_sided_dataset(ds, left, node_items));
    };

    if (k <= 12) {
        std::vector<std::size_t> pick(r);
        for (std::size_t i = 0; i < r; ++i) pick[i] = i;
        std::vector<int> best;
        double best_d = -1.0;
        do {
            if (k % 2 == 0 && pick[0] != 0) break;  // complements repeat once k is even
            std::vector<int> left(r);
            for (std::size_t i = 0; i < r; ++i) left[i] = classes[pick[i]];
            const double d = score(left);
            if (d > best_d) {
                best_d = d;
                best = std::move(left);
            }
        } while (next_combination(pick, k));
        return best;
    }

    // greedy: start from the sorted-order halves, swap while it helps
    std::vector<int> left(classes.begin(), classes.begin() + static_cast<long>(r));
    std::vector<int> right(classes.begin() + static_cast<long>(r), classes.end());
    double current = score(left);
    for (int pass = 0; pass < 100; ++pass) {
        double best_gain = 1e-12;
        std::size_t best_i = 0, best_j = 0;
        for (std::size_t i = 0; i < left.size(); ++i) {
            for (std::size_t j = 0; j < right.size(); ++j) {
                std::vector<int> trial = left;
                trial[i] = right[j];
                std::sort(trial.begin(), trial.end());
                const double d = score(trial);
                if (d - current > best_gain) {
                    best_gain = d - current;
                    best_i = i;
                    best_j = j;
                }
            }
        }
        if (best_gain <= 1e-12) break;
        std::swap(left[best_i], right[best_j]);
        std::sort(left.begin(), left.end());
        std::sort(right.begin(), right.end());
        current = score(left);
    }
    return left;
}

}  // namespace detail

// Keeps each item independently with probability weight/c and re-weights the
// survivors to uniform. Rejected copies are put aside for later rounds, so
// the ledger is deliberately untouched here; whoever trains on the survivors
// pays for them.
inline QuantumDataset rejection_sampling(const QuantumDataset& ds, double c, RandomSource& rng,
                                         CopyLedger& /*put aside, not spent*/) {
    if (!(c > 0.0) || c < detail::max_weight(ds) - 1e-15)
        throw InvalidConstant("rejection_sampling: c must be positive and >= max weight");
    const std::vector<std::size_t> kept = detail::rejection_indices(ds, c, rng);
    if (kept.empty())
        throw DegenerateDataset("rejection_sampling: no items survived the draw");
    return detail::subset_dataset(ds, kept, /*uniform_weights=*/true);
}

// T rounds of rejection sampling, each feeding the binary oracle. EXACT mode
// skips the coin flips and trains every round on the original weighted data
// (the infinite-sample limit of the same reduction). Each round reserves
// t_bin copies of every training state under V2: the oracle debits the
// survivors, the put-aside complement is debited here, so the ledger lands on
// exactly T*t_bin per state. Draws that miss a class are redone without extra
// charge, up to 100 attempts.
inline AggregatedClassifier costing_train(const QuantumDataset& ds, long long T,
                                          const HelstromOracle& oracle, RandomSource& rng,
                                          CopyLedger& ledger,
                                          ResampleMode mode = ResampleMode::SAMPLED,
                                          double c = 0.0) {
    if (T < 1) throw InvalidConfig("costing_train: T must be >= 1");
    const double max_w = detail::max_weight(ds);
    if (c <= 0.0) c = max_w;
    if (c < max_w - 1e-15)
        throw InvalidConstant("costing_train: c must be >= max weight");

    AggregatedClassifier agg;
    agg.classifiers.reserve(static_cast<std::size_t>(T));
    for (long long round = 0; round < T; ++round) {
        if (oracle.version == OracleVersion::V2_BUDGETED) {
            // reserve the whole round before touching anything
            for (std::size_t i = 0; i < ds.size(); ++i)
                if (!ledger.can_consume_training(ds.source_index(i), oracle.t_bin))
                    throw BudgetExhausted(
                        "costing_train: budget exhausted for state " +
                            std::to_string(ds.source_index(i)),
                        static_cast<long long>(ds.source_index(i)));
        }

        if (mode == ResampleMode::EXACT) {
            agg.classifiers.push_back(oracle_call(oracle, ds, ledger));
            continue;
        }

        std::vector<std::size_t> kept;
        for (int attempt = 0;; ++attempt) {
            if (attempt >= 100)
                throw DegenerateDataset(
                    "costing_train: 100 consecutive resamples missed a class");
            kept = detail::rejection_indices(ds, c, rng);
            if (!kept.empty() && detail::distinct_labels(ds, kept) >= 2) break;
        }
        const QuantumDataset sub = detail::subset_dataset(ds, kept, /*uniform_weights=*/true);
        agg.classifiers.push_back(oracle_call(oracle, sub, ledger));

        if (oracle.version == OracleVersion::V2_BUDGETED) {
            // the round drew t_bin copies of every state; charge the put-aside rest
            std::vector<bool> in_round(ds.size(), false);
            for (std::size_t i : kept) in_round[i] = true;
            for (std::size_t i = 0; i < ds.size(); ++i)
                if (!in_round[i]) ledger.consume_training(ds.source_index(i), oracle.t_bin);
        }
    }
    return agg;
}

// Majority of T fresh single-copy measurements; an even-T tie returns -1.
inline int costing_classify(const AggregatedClassifier& agg, const DensityMatrix& unknown,
                            RandomSource& rng, CopyLedger& ledger) {
    if (agg.classifiers.empty()) throw InvalidConfig("costing_classify: no classifiers");
    long long plus = 0, minus = 0;
    for (const Povm& f : agg.classifiers)
        (measure(f, unknown, rng, ledger) == +1 ? plus : minus)++;
    return plus > minus ? +1 : -1;
}

// Trains one "class j vs rest" Helstrom discriminator per class, in label-set
// order. Costs k*t_bin per state under V2.
inline OneVsAllClassifier one_vs_all_train(const QuantumDataset& ds,
                                           const HelstromOracle& oracle, CopyLedger& ledger) {
    if (ds.label_set().size() < 2)
        throw InvalidConfig("one_vs_all_train: needs at least two classes");
    for (int label : ds.label_set()) {
        bool seen = false;
        for (const auto& it : ds.items())
            if (it.label == label) { seen = true; break; }
        if (!seen)
            throw EmptyClass("one_vs_all_train: class " + std::to_string(label) + " is empty");
    }
    OneVsAllClassifier cls;
    cls.per_class.reserve(ds.label_set().size());
    for (int label : ds.label_set())
        cls.per_class.emplace_back(label,
                                   oracle_call(oracle, detail::one_vs_rest_dataset(ds, label),
                                               ledger));
    return cls;
}

// Runs every discriminator on its own fresh copy. Outcome -1 is a click.
// One click wins outright, several clicks pick uniformly among the clickers,
// none picks uniformly among all classes. Costs k copies of the unknown.
inline int one_vs_all_classify(const OneVsAllClassifier& cls, const DensityMatrix& unknown,
                               RandomSource& rng, CopyLedger& ledger) {
    if (cls.per_class.empty()) throw InvalidConfig("one_vs_all_classify: no classifiers");
    std::vector<int> clicked;
    for (const auto& [label, povm] : cls.per_class)
        if (measure(povm, unknown, rng, ledger) == -1) clicked.push_back(label);
    if (clicked.size() == 1) return clicked.front();
    if (clicked.size() > 1) return clicked[rng.uniform_index(clicked.size())];
    return cls.per_class[rng.uniform_index(cls.per_class.size())].first;
}

// Recursive balanced-split tree construction. Each node's binary subproblem
// uses the node's items with weights renormalized among themselves; the
// oracle is called once per internal node, which puts the V2 cost at t_bin
// per state per level.
inline TreeClassifier tree_train(const QuantumDataset& ds, const HelstromOracle& oracle,
                                 SplitRule split_rule, RandomSource& rng, CopyLedger& ledger) {
    for (int label : ds.label_set()) {
        bool seen = false;
        for (const auto& it : ds.items())
            if (it.label == label) { seen = true; break; }
        if (!seen) throw EmptyClass("tree_train: class " + std::to_string(label) + " is empty");
    }
    if (split_rule == SplitRule::MAX_TRACE_DISTANCE && ledger.mode() != LearningMode::CLASSICAL)
        throw InvalidConfig(
            "tree_train: MAX_TRACE_DISTANCE scores candidate splits from the class "
            "descriptions and is only available in CLASSICAL mode");

    TreeClassifier tree;
    std::vector<int> all_classes = ds.label_set();
    std::sort(all_classes.begin(), all_classes.end());

    const auto build = [&](const auto& self, std::vector<int> classes) -> int {
        const int idx = static_cast<int>(tree.nodes.size());
        tree.nodes.emplace_back();
        tree.nodes[idx].classes = classes;
        if (classes.size() == 1) return idx;

        const std::vector<std::size_t> node_items = detail::indices_with_labels(ds, classes);
        std::vector<int> left;
        if (split_rule == SplitRule::RANDOM_BALANCED) {
            std::vector<int> order = classes;
            rng.shuffle(order);
            left.assign(order.begin(), order.begin() + static_cast<long>((order.size() + 1) / 2));
            std::sort(left.begin(), left.end());
        } else {
            left = detail::best_trace_split(ds, classes, node_items);
        }
        std::vector<int> right;
        for (int y : classes)
            if (!std::binary_search(left.begin(), left.end(), y)) right.push_back(y);

        const Povm povm =
            oracle_call(oracle, detail::two_sided_dataset(ds, left, node_items), ledger);
        const int l = self(self, left);
        const int r = self(self, std::move(right));
        // assign through the index: the vector may have grown during recursion
        tree.nodes[idx].povm = povm;
        tree.nodes[idx].left_classes = std::move(left);
        tree.nodes[idx].right_classes = tree.nodes[static_cast<std::size_t>(r)].classes;
        tree.nodes[idx].left = l;
        tree.nodes[idx].right = r;
        return idx;
    };
    build(build, std::move(all_classes));
    return tree;
}

// Root-to-leaf walk, one fresh copy per internal node.
inline int tree_classify(const TreeClassifier& tree, const DensityMatrix& unknown,
                         RandomSource& rng, CopyLedger& ledger) {
    if (tree.nodes.empty()) throw InvalidConfig("tree_classify: empty tree");
    std::size_t at = 0;
    while (!tree.nodes[at].is_leaf()) {
        const TreeNode& node = tree.nodes[at];
        const int y = measure(node.povm, unknown, rng, ledger);
        at = static_cast<std::size_t>(y == -1 ? node.left : node.right);
    }
    return tree.nodes[at].classes.front();
}

// Gives every item its own class and runs the tree reduction, so recovering
// an index costs ceil(log2 n) copies of the unknown.
inline std::size_t identify_state(const PureState& unknown, const QuantumDataset& ds,
                                  const HelstromOracle& oracle, RandomSource& rng,
                                  CopyLedger& ledger) {
    for (std::size_t i = 0; i < ds.size(); ++i)
        for (std::size_t j = i + 1; j < ds.size(); ++j)
            if (fidelity(ds.item(i).state, ds.item(j).state) >= 1.0 - 1e-12)
                throw DuplicateStates("identify_state: items " + std::to_string(i) + " and " +
                                      std::to_string(j) + " coincide");
    std::vector<LabeledState> items;
    std::vector<int> labels(ds.size());
    items.reserve(ds.size());
    for (std::size_t i = 0; i < ds.size(); ++i) {
        items.emplace_back(ds.item(i).state, static_cast<int>(i) + 1, ds.item(i).weight);
        labels[i] = static_cast<int>(i) + 1;
    }
    const QuantumDataset id_ds(std::move(items), std::move(labels), ds.declared_copies(),
                               ds.source_indices());
    const TreeClassifier tree = tree_train(id_ds, oracle, SplitRule::RANDOM_BALANCED, rng, ledger);
    const int label = tree_classify(tree, DensityMatrix(unknown), rng, ledger);
    return static_cast<std::size_t>(label - 1);
}

// ---- exact error evaluation (no sampling, no ledger) ----

// Exact weighted error of the majority vote. Per item, the wrong-vote count
// is a sum of independent Bernoullis, one per classifier; convolve and sum
// the losing tail. Even-round ties predict -1.
inline double aggregated_exact_error(const AggregatedClassifier& agg, const QuantumDataset& ds) {
    if (agg.classifiers.empty()) throw InvalidConfig("aggregated_exact_error: no classifiers");
    const std::vector<double> p = ds.normalized_weights();
    const long long T = static_cast<long long>(agg.classifiers.size());
    double err = 0.0;
    for (std::size_t i = 0; i < ds.size(); ++i) {
        const LabeledState& it = ds.item(i);
        std::vector<double> dist{1.0};  // distribution of the wrong-vote count
        for (const Povm& f : agg.classifiers) {
            double correct = 0.0;
            for (std::size_t o = 0; o < f.outcomes(); ++o)
                if (f.outcome_labels[o] == it.label)
                    correct += std::real(quadratic_form(f.elements[o], it.state.amplitudes()));
            const double q = 1.0 - std::clamp(correct, 0.0, 1.0);
            std::vector<double> next(dist.size() + 1, 0.0);
            for (std::size_t w = 0; w < dist.size(); ++w) {
                next[w] += dist[w] * (1.0 - q);
                next[w + 1] += dist[w] * q;
            }
            dist = std::move(next);
        }
        double wrong = 0.0;
        for (long long w = 0; w <= T; ++w)
            if (2 * w > T) wrong += dist[static_cast<std::size_t>(w)];
        if (T % 2 == 0 && it.label == +1) wrong += dist[static_cast<std::size_t>(T / 2)];
        err += p[i] * wrong;
    }
    return std::clamp(err, 0.0, 1.0);
}

// Average exact weighted error of the aggregate's constituents.
inline double constituent_mean_error(const AggregatedClassifier& agg, const QuantumDataset& ds) {
    if (agg.classifiers.empty()) throw InvalidConfig("constituent_mean_error: no classifiers");
    double s = 0.0;
    for (const Povm& f : agg.classifiers) s += error_rate(f, ds);
    return s / static_cast<double>(agg.classifiers.size());
}

// Exact weighted error of the click protocol. Per item: the true-class
// discriminator clicks with probability q_true, each rival independently
// with its own rate; the count of rival clicks is Poisson-binomial, and the
// uniform tie-break contributes 1/(c+1) per rival count c.
inline double one_vs_all_exact_error(const OneVsAllClassifier& cls, const QuantumDataset& ds) {
    if (cls.per_class.empty()) throw InvalidConfig("one_vs_all_exact_error: no classifiers");
    const std::vector<double> p = ds.normalized_weights();
    const double k = static_cast<double>(cls.per_class.size());
    double err = 0.0;
    for (std::size_t i = 0; i < ds.size(); ++i) {
        const LabeledState& it = ds.item(i);
        double q_true = -1.0;
        std::vector<double> dist{1.0};  // distribution of the rival click count
        for (const auto& [label, povm] : cls.per_class) {
            double click = 0.0;
            for (std::size_t o = 0; o < povm.outcomes(); ++o)
                if (povm.outcome_labels[o] == -1)
                    click += std::real(quadratic_form(povm.elements[o], it.state.amplitudes()));
            click = std::clamp(click, 0.0, 1.0);
            if (label == it.label) {
                q_true = click;
                continue;
            }
            std::vector<double> next(dist.size() + 1, 0.0);
            for (std::size_t c = 0; c < dist.size(); ++c) {
                next[c] += dist[c] * (1.0 - click);
                next[c + 1] += dist[c] * click;
            }
            dist = std::move(next);
        }
        if (q_true < 0.0)
            throw LabelMismatch("one_vs_all_exact_error: item label " +
                                std::to_string(it.label) + " has no discriminator");
        double correct = (1.0 - q_true) * dist[0] / k;
        for (std::size_t c = 0; c < dist.size(); ++c)
            correct += q_true * dist[c] / static_cast<double>(c + 1);
        err += p[i] * (1.0 - std::clamp(correct, 0.0, 1.0));
    }
    return std::clamp(err, 0.0, 1.0);
}

// Exact weighted error of the tree walk: multiply branch probabilities along
// each item's unique correct path.
inline double tree_exact_error(const TreeClassifier& tree, const QuantumDataset& ds) {
    if (tree.nodes.empty()) throw InvalidConfig("tree_exact_error: empty tree");
    const std::vector<double> p = ds.normalized_weights();
    double err = 0.0;
    for (std::size_t i = 0; i < ds.size(); ++i) {
        const LabeledState& it = ds.item(i);
        double correct = 0.0;
        if (std::find(tree.nodes[0].classes.begin(), tree.nodes[0].classes.end(), it.label) !=
            tree.nodes[0].classes.end()) {
            correct = 1.0;
            std::size_t at = 0;
            while (!tree.nodes[at].is_leaf()) {
                const TreeNode& node = tree.nodes[at];
                const bool go_left = std::binary_search(node.left_classes.begin(),
                                                        node.left_classes.end(), it.label);
                const int want = go_left ? -1 : +1;
                double branch = 0.0;
                for (std::size_t o = 0; o < node.povm.outcomes(); ++o)
                    if (node.povm.outcome_labels[o] == want)
                        branch += std::real(
                            quadratic_form(node.povm.elements[o], it.state.amplitudes()));
                correct *= std::clamp(branch, 0.0, 1.0);
                at = static_cast<std::size_t>(go_left ? node.left : node.right);
            }
        }
        err += p[i] * (1.0 - correct);
    }
    return std::clamp(err, 0.0, 1.0);
}

// Exact weighted error of each internal node's own binary subproblem,
// pre-order. The mean of these is the per-node error the depth-times-error
// audit compares against.
inline std::vector<double> tree_node_errors(const TreeClassifier& tree, const QuantumDataset& ds) {
    std::vector<double> out;
    for (const TreeNode& node : tree.nodes) {
        if (node.is_leaf()) continue;
        const std::vector<std::size_t> node_items = detail::indices_with_labels(ds, node.classes);
        out.push_back(error_rate(node.povm,
                                 detail::two_sided_dataset(ds, node.left_classes, node_items)));
    }
    return out;
}

// Exact binary error of each per-class discriminator on its own relabeled
// problem, in per_class order.
inline std::vector<double> one_vs_all_binary_errors(const OneVsAllClassifier& cls,
                                                    const QuantumDataset& ds) {
    std::vector<double> out;
    out.reserve(cls.per_class.size());
    for (const auto& [label, povm] : cls.per_class)
        out.push_back(error_rate(povm, detail::one_vs_rest_dataset(ds, label)));
    return out;
}

}  // namespace qsc
