#include "srheat/json_io.hpp"

#include <cstdio>

#include "srheat/frame_parse.hpp"
#include "srheat/words.hpp"

namespace srheat {

namespace {

nlohmann::json parse_or_fail(const std::string& text, const char* what) {
    nlohmann::json doc = nlohmann::json::parse(text, nullptr, false);
    if (doc.is_discarded()) throw parse_error(std::string(what) + ": not valid JSON");
    return doc;
}

nlohmann::json matrix_to_json(const Eigen::MatrixXd& m) {
    nlohmann::json rows = nlohmann::json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace

StructureConstants parse_structure_json(const std::string& text) {
    if (text == "heisenberg") return StructureConstants::heisenberg();
    nlohmann::json doc = parse_or_fail(text, "structure document");
    if (!doc.is_object()) throw parse_error("structure document: expected a JSON object");
    for (const auto& item : doc.items()) {
        if (item.key() != "n" && item.key() != "matrices")
            throw parse_error("structure document: unknown key \"" + item.key() + "\"");
    }
    if (!doc.contains("n") || !doc["n"].is_number_integer())
        throw parse_error("structure document: \"n\" must be an integer");
    const int n = doc["n"].get<int>();
    if (n < 1) throw parse_error("structure document: \"n\" must be at least 1");
    if (!doc.contains("matrices") || !doc["matrices"].is_array())
        throw parse_error("structure document: \"matrices\" must be an array");

    std::vector<Eigen::MatrixXd> mats;
    int k = 0;
    for (const auto& mat : doc["matrices"]) {
        const std::string where = "structure document: matrices[" + std::to_string(k) + "]";
        if (!mat.is_array() || static_cast<int>(mat.size()) != n)
            throw parse_error(where + " must be an array of " + std::to_string(n) + " rows");
        Eigen::MatrixXd m(n, n);
        for (int i = 0; i < n; ++i) {
            const auto& row = mat[static_cast<std::size_t>(i)];
            if (!row.is_array() || static_cast<int>(row.size()) != n)
                throw parse_error(where + " row " + std::to_string(i) + " must have " +
                                  std::to_string(n) + " numbers");
            for (int j = 0; j < n; ++j) {
                const auto& cell = row[static_cast<std::size_t>(j)];
                if (!cell.is_number())
                    throw parse_error(where + " entry (" + std::to_string(i) + "," +
                                      std::to_string(j) + ") must be a number");
                m(i, j) = cell.get<double>();
            }
        }
        mats.push_back(std::move(m));
        ++k;
    }
    try {
        return StructureConstants(n, std::move(mats));
    } catch (const std::invalid_argument& e) {
        throw parse_error(std::string("structure document: ") + e.what());
    }
}

std::string structure_to_json(const StructureConstants& c) {
    nlohmann::json doc;
    doc["n"] = c.n();
    nlohmann::json mats = nlohmann::json::array();
    for (const auto& m : c.matrices()) mats.push_back(matrix_to_json(m));
    doc["matrices"] = std::move(mats);
    return doc.dump(2) + "\n";
}

nlohmann::json to_json(const FiltrationReport& report) {
    nlohmann::json doc;
    doc["point"] = std::vector<double>(report.point.data(), report.point.data() + report.point.size());
    doc["tol"] = report.tol;
    doc["growth"] = report.growth;
    doc["smallest_retained_sv"] = report.smallest_retained_sv;
    doc["certified"] = report.certified;
    doc["step"] = report.step;
    doc["hausdorff_dim"] = report.hausdorff_dim;
    nlohmann::json words = nlohmann::json::array();
    for (const Word& w : report.hall_words) words.push_back(w);
    doc["hall_words"] = std::move(words);
    doc["basis_matrix"] = matrix_to_json(report.basis_matrix);
    return doc;
}

nlohmann::json to_json(const C0Result& result) {
    nlohmann::json doc;
    doc["value"] = result.value;
    doc["error"] = result.error;
    doc["nu"] = result.nu;
    doc["method"] = result.method;
    return doc;
}

nlohmann::json to_json(const SimEstimate& estimate) {
    nlohmann::json doc;
    doc["value"] = estimate.value;
    doc["std_error"] = estimate.std_error;
    doc["samples"] = estimate.samples;
    doc["substeps"] = estimate.substeps;
    doc["bandwidth"] = std::vector<double>(estimate.bandwidth.data(),
                                           estimate.bandwidth.data() + estimate.bandwidth.size());
    doc["seed"] = estimate.seed;
    return doc;
}

std::string csv_cell(const std::string& raw) {
    if (raw.find_first_of(",\"\r\n") == std::string::npos) return raw;
    std::string quoted = "\"";
    for (char ch : raw) {
        if (ch == '"') quoted += '"';
        quoted += ch;
    }
    quoted += '"';
    return quoted;
}

std::string csv_number(double value) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", value);
    return buf;
}

std::string csv_row(const std::vector<std::string>& cells) {
    std::string line;
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i > 0) line += ',';
        line += csv_cell(cells[i]);
    }
    line += "\r\n";
    return line;
}

}  // namespace srheat
