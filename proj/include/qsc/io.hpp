#pragma once

// On-disk formats: dataset / POVM / classifier-bundle JSON, similarity
// matrices as CSV or JSON, cost and bound reports as CSV. Output is
// deterministic byte for byte; nothing here writes timestamps.

#include <charconv>
#include <cmath>
#include <cstddef>
#include <fstream>
#include <sstream>
#include <string>
#include <system_error>
#include <vector>

#include "json.hpp"

#include "qsc/bounds.hpp"
#include "qsc/errors.hpp"
#include "qsc/ledger.hpp"
#include "qsc/matrix.hpp"
#include "qsc/povm.hpp"
#include "qsc/reductions.hpp"
#include "qsc/states.hpp"
#include "qsc/swap_test.hpp"

namespace qsc {

inline std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open " + path + " for writing");
    out << content;
    out.flush();
    if (!out) throw IoError("short write to " + path);
}

// Shortest representation that parses back to the same double.
inline std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    if (res.ec != std::errc())
        throw NumericalBreakdown("format_double: value does not fit");
    return std::string(buf, res.ptr);
}

inline double parse_double(const std::string& text) {
    try {
        std::size_t used = 0;
        const double v = std::stod(text, &used);
        if (used == 0) throw InvalidConfig("parse_double: empty field");
        return v;
    } catch (const std::exception&) {
        throw IoError("not a number: '" + text + "'");
    }
}

namespace detail {

inline nlohmann::json complex_to_json(const Complex& z) {
    return nlohmann::json::array({z.real(), z.imag()});
}

inline Complex complex_from_json(const nlohmann::json& j) {
    // amplitudes may arrive as [re, im] of numbers or of decimal strings
    const auto part = [](const nlohmann::json& v) {
        return v.is_string() ? parse_double(v.get<std::string>()) : v.get<double>();
    };
    if (!j.is_array() || j.size() != 2)
        throw IoError("complex entries must be [re, im] pairs");
    return {part(j[0]), part(j[1])};
}

inline nlohmann::json matrix_to_json(const ComplexMatrix& m) {
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) {
        nlohmann::json row = nlohmann::json::array();
        for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(complex_to_json(m(r, c)));
        rows.push_back(std::move(row));
    }
    return rows;
}

inline ComplexMatrix matrix_from_json(const nlohmann::json& j) {
    if (!j.is_array() || j.empty()) throw IoError("matrix JSON must be a non-empty array");
    const std::size_t rows = j.size();
    const std::size_t cols = j[0].size();
    ComplexMatrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r) {
        if (j[r].size() != cols) throw IoError("ragged matrix JSON");
        for (std::size_t c = 0; c < cols; ++c) m(r, c) = complex_from_json(j[r][c]);
    }
    return m;
}

}  // namespace detail

// ---- datasets ----

inline nlohmann::json dataset_to_json(const QuantumDataset& ds) {
    std::size_t d = 0;
    while ((std::size_t{1} << d) < ds.dim()) ++d;
    if ((std::size_t{1} << d) != ds.dim())
        throw InvalidConfig("dataset files describe qubit registers; dimension " +
                            std::to_string(ds.dim()) + " is not a power of two");
    nlohmann::json j;
    j["qubits"] = d;
    j["labels"] = ds.label_set();
    if (ds.declared_copies().classical)
        j["declared_copies"] = "classical";
    else
        j["declared_copies"] = ds.declared_copies().copies;
    nlohmann::json items = nlohmann::json::array();
    for (const auto& it : ds.items()) {
        nlohmann::json amps = nlohmann::json::array();
        for (const Complex& a : it.state.amplitudes()) amps.push_back(detail::complex_to_json(a));
        items.push_back({{"label", it.label}, {"weight", it.weight}, {"amplitudes", amps}});
    }
    j["items"] = std::move(items);
    return j;
}

inline QuantumDataset dataset_from_json(const nlohmann::json& j) {
    try {
        const std::size_t dim = std::size_t{1} << j.at("qubits").get<std::size_t>();
        const std::vector<int> labels = j.at("labels").get<std::vector<int>>();
        CopyBudget budget = CopyBudget::classical_budget();
        if (!(j.at("declared_copies").is_string() &&
              j.at("declared_copies").get<std::string>() == "classical"))
            budget = CopyBudget::finite(j.at("declared_copies").get<long long>());
        std::vector<LabeledState> items;
        for (const auto& item : j.at("items")) {
            std::vector<Complex> amps;
            for (const auto& a : item.at("amplitudes"))
                amps.push_back(detail::complex_from_json(a));
            if (amps.size() != dim)
                throw InvalidState("dataset item has " + std::to_string(amps.size()) +
                                   " amplitudes, expected " + std::to_string(dim));
            // the file may carry rounded amplitudes; renormalize within 1e-6,
            // reject anything further off
            items.emplace_back(PureState(std::move(amps), 1e-6), item.at("label").get<int>(),
                               item.at("weight").get<double>());
        }
        return QuantumDataset(std::move(items), labels, budget);
    } catch (const nlohmann::json::exception& e) {
        throw IoError(std::string("malformed dataset JSON: ") + e.what());
    }
}

inline void save_dataset(const QuantumDataset& ds, const std::string& path) {
    write_text_file(path, dataset_to_json(ds).dump(2) + "\n");
}

inline QuantumDataset load_dataset(const std::string& path) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(read_text_file(path));
    } catch (const nlohmann::json::exception& e) {
        throw IoError("cannot parse " + path + ": " + e.what());
    }
    return dataset_from_json(j);
}

// ---- POVMs and classifier bundles ----

inline nlohmann::json povm_to_json(const Povm& p) {
    nlohmann::json elements = nlohmann::json::array();
    for (const auto& e : p.elements) elements.push_back(detail::matrix_to_json(e));
    return {{"outcome_labels", p.outcome_labels}, {"elements", elements}};
}

inline Povm povm_from_json(const nlohmann::json& j) {
    try {
        Povm p;
        p.outcome_labels = j.at("outcome_labels").get<std::vector<int>>();
        for (const auto& e : j.at("elements")) p.elements.push_back(detail::matrix_from_json(e));
        return p;
    } catch (const nlohmann::json::exception& e) {
        throw IoError(std::string("malformed POVM JSON: ") + e.what());
    }
}

inline void save_povm(const Povm& p, const std::string& path) {
    write_text_file(path, povm_to_json(p).dump(2) + "\n");
}

inline Povm load_povm(const std::string& path) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(read_text_file(path));
    } catch (const nlohmann::json::exception& e) {
        throw IoError("cannot parse " + path + ": " + e.what());
    }
    return povm_from_json(j);
}

inline nlohmann::json aggregated_to_json(const AggregatedClassifier& agg) {
    nlohmann::json classifiers = nlohmann::json::array();
    for (const auto& f : agg.classifiers) classifiers.push_back(povm_to_json(f));
    return {{"kind", "costing"},
            {"rounds", agg.classifiers.size()},
            {"classifiers", classifiers}};
}

inline AggregatedClassifier aggregated_from_json(const nlohmann::json& j) {
    try {
        if (j.at("kind").get<std::string>() != "costing")
            throw IoError("bundle kind is not 'costing'");
        AggregatedClassifier agg;
        for (const auto& f : j.at("classifiers")) agg.classifiers.push_back(povm_from_json(f));
        return agg;
    } catch (const nlohmann::json::exception& e) {
        throw IoError(std::string("malformed classifier bundle: ") + e.what());
    }
}

inline nlohmann::json one_vs_all_to_json(const OneVsAllClassifier& cls) {
    nlohmann::json per_class = nlohmann::json::array();
    for (const auto& [label, povm] : cls.per_class)
        per_class.push_back({{"label", label}, {"povm", povm_to_json(povm)}});
    return {{"kind", "one_vs_all"}, {"per_class", per_class}};
}

inline OneVsAllClassifier one_vs_all_from_json(const nlohmann::json& j) {
    try {
        if (j.at("kind").get<std::string>() != "one_vs_all")
            throw IoError("bundle kind is not 'one_vs_all'");
        OneVsAllClassifier cls;
        for (const auto& entry : j.at("per_class"))
            cls.per_class.emplace_back(entry.at("label").get<int>(),
                                       povm_from_json(entry.at("povm")));
        return cls;
    } catch (const nlohmann::json::exception& e) {
        throw IoError(std::string("malformed classifier bundle: ") + e.what());
    }
}

inline nlohmann::json tree_to_json(const TreeClassifier& tree) {
    nlohmann::json nodes = nlohmann::json::array();
    for (const TreeNode& n : tree.nodes) {
        nlohmann::json node = {{"classes", n.classes}, {"left", n.left}, {"right", n.right}};
        if (!n.is_leaf()) {
            node["povm"] = povm_to_json(n.povm);
            node["left_classes"] = n.left_classes;
            node["right_classes"] = n.right_classes;
        }
        nodes.push_back(std::move(node));
    }
    return {{"kind", "tree"}, {"nodes", nodes}};
}

inline TreeClassifier tree_from_json(const nlohmann::json& j) {
    try {
        if (j.at("kind").get<std::string>() != "tree") throw IoError("bundle kind is not 'tree'");
        TreeClassifier tree;
        for (const auto& entry : j.at("nodes")) {
            TreeNode n;
            n.classes = entry.at("classes").get<std::vector<int>>();
            n.left = entry.at("left").get<int>();
            n.right = entry.at("right").get<int>();
            if (n.left >= 0) {
                n.povm = povm_from_json(entry.at("povm"));
                n.left_classes = entry.at("left_classes").get<std::vector<int>>();
                n.right_classes = entry.at("right_classes").get<std::vector<int>>();
            }
            tree.nodes.push_back(std::move(n));
        }
        return tree;
    } catch (const nlohmann::json::exception& e) {
        throw IoError(std::string("malformed classifier bundle: ") + e.what());
    }
}

// ---- similarity matrices ----

inline std::string similarity_to_csv(const SimilarityMatrix& s) {
    std::string out;
    for (std::size_t i = 0; i < s.n; ++i) {
        for (std::size_t j = 0; j < s.n; ++j) {
            if (j) out += ',';
            out += format_double(s.at(i, j));
        }
        out += '\n';
    }
    return out;
}

inline SimilarityMatrix similarity_from_csv(const std::string& text, long long repetitions = 0) {
    std::vector<std::vector<double>> rows;
    std::istringstream lines(text);
    std::string line;
    while (std::getline(lines, line)) {
        if (line.empty()) continue;
        std::vector<double> row;
        std::istringstream fields(line);
        std::string field;
        while (std::getline(fields, field, ',')) row.push_back(parse_double(field));
        rows.push_back(std::move(row));
    }
    const std::size_t n = rows.size();
    if (n == 0) throw IoError("similarity CSV is empty");
    for (const auto& r : rows)
        if (r.size() != n) throw IoError("similarity CSV is not square");
    SimilarityMatrix s(n, repetitions);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) s.entries[i * n + j] = rows[i][j];
    for (std::size_t i = 0; i < n; ++i) {
        if (std::abs(s.at(i, i) - 1.0) > 1e-12)
            throw InvalidState("similarity matrix diagonal must be 1");
        for (std::size_t j = 0; j < i; ++j)
            if (std::abs(s.at(i, j) - s.at(j, i)) > 1e-12)
                throw InvalidState("similarity matrix must be symmetric");
    }
    return s;
}

inline nlohmann::json similarity_to_json(const SimilarityMatrix& s) {
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t i = 0; i < s.n; ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (std::size_t j = 0; j < s.n; ++j) row.push_back(s.at(i, j));
        rows.push_back(std::move(row));
    }
    return {{"n", s.n}, {"repetitions", s.repetitions}, {"entries", rows}};
}

inline SimilarityMatrix similarity_from_json(const nlohmann::json& j) {
    try {
        const std::size_t n = j.at("n").get<std::size_t>();
        SimilarityMatrix s(n, j.at("repetitions").get<long long>());
        const auto& rows = j.at("entries");
        if (rows.size() != n) throw IoError("similarity JSON row count mismatch");
        for (std::size_t i = 0; i < n; ++i) {
            if (rows[i].size() != n) throw IoError("similarity JSON column count mismatch");
            for (std::size_t c = 0; c < n; ++c) s.entries[i * n + c] = rows[i][c].get<double>();
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (std::abs(s.at(i, i) - 1.0) > 1e-12)
                throw InvalidState("similarity matrix diagonal must be 1");
            for (std::size_t c = 0; c < i; ++c)
                if (std::abs(s.at(i, c) - s.at(c, i)) > 1e-12)
                    throw InvalidState("similarity matrix must be symmetric");
        }
        return s;
    } catch (const nlohmann::json::exception& e) {
        throw IoError(std::string("malformed similarity JSON: ") + e.what());
    }
}

// ---- report CSVs ----

inline std::string cost_reports_to_csv(const std::vector<CostReport>& rows) {
    std::string out =
        "task,training_cost_symbolic,training_cost_measured,"
        "classification_cost_symbolic,classification_cost_measured\n";
    for (const auto& r : rows) {
        out += r.task + ',' + r.training_cost_symbolic + ',' +
               std::to_string(r.training_cost_measured) + ',' + r.classification_cost_symbolic +
               ',' + std::to_string(r.classification_cost_measured) + '\n';
    }
    return out;
}

inline std::string bound_reports_to_csv(const std::vector<BoundReport>& rows) {
    std::string out = "ensemble_id,bound_name,interpretation,bound_value,exact_error,holds\n";
    for (const auto& r : rows) {
        out += r.ensemble_id + ',' + r.bound_name + ',' + r.interpretation + ',' +
               format_double(r.bound_value) + ',' + format_double(r.exact_error) + ',' +
               (r.holds ? "true" : "false") + '\n';
    }
    return out;
}

inline void save_json(const nlohmann::json& j, const std::string& path) {
    write_text_file(path, j.dump(2) + "\n");
}

}  // namespace qsc
