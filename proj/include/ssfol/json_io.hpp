#pragma once

#include <json.hpp>

#include <Eigen/Dense>

#include "ssfol/geometry.hpp"
#include "ssfol/normed_space.hpp"

namespace ssfol {

using json = nlohmann::json;

inline json matrix_to_json(const Eigen::MatrixXd& M) {
    json rows = json::array();
    for (int i = 0; i < M.rows(); ++i) {
        json row = json::array();
        for (int j = 0; j < M.cols(); ++j) row.push_back(M(i, j));
        rows.push_back(row);
    }
    return rows;
}

inline Eigen::MatrixXd matrix_from_json(const json& j) {
    if (!j.is_array() || j.empty()) throw ConfigError("matrix: expected non-empty array of rows");
    const int rows = int(j.size());
    const int cols = int(j[0].size());
    Eigen::MatrixXd M(rows, cols);
    for (int i = 0; i < rows; ++i) {
        if (int(j[i].size()) != cols) throw ConfigError("matrix: ragged rows");
        for (int c = 0; c < cols; ++c) M(i, c) = j[i][c].get<double>();
    }
    return M;
}

inline json vector_to_json(const Eigen::VectorXd& v) {
    json a = json::array();
    for (int i = 0; i < v.size(); ++i) a.push_back(v[i]);
    return a;
}

inline Eigen::VectorXd vector_from_json(const json& j) {
    Eigen::VectorXd v(j.size());
    for (int i = 0; i < int(j.size()); ++i) v[i] = j[i].get<double>();
    return v;
}

inline json norm_to_json(const NormedSpace& s) {
    json j;
    j["kind"] = to_string(s.kind);
    j["dim"] = s.dim;
    if (s.kind == NormKind::WeightedLp) {
        j["p"] = s.p;
        j["weights"] = vector_to_json(s.weights);
    }
    return j;
}

inline NormedSpace norm_from_json(const json& j) {
    NormedSpace s;
    s.kind = norm_kind_from_string(j.at("kind").get<std::string>());
    s.dim = j.at("dim").get<int>();
    if (s.kind == NormKind::WeightedLp) {
        s.p = j.at("p").get<double>();
        s.weights = vector_from_json(j.at("weights"));
    }
    s.validate();
    return s;
}

inline json subspace_to_json(const Subspace& e) {
    json j;
    j["basis"] = matrix_to_json(e.basis);
    j["vol_const"] = e.vol_const;
    j["vol_const_err"] = e.vol_const_err;
    return j;
}

inline Subspace subspace_from_json(const json& j) {
    Subspace e;
    e.basis = matrix_from_json(j.at("basis"));
    e.vol_const = j.at("vol_const").get<double>();
    e.vol_const_err = j.at("vol_const_err").get<double>();
    return e;
}

/// Rejects keys outside the allowed set; CLI configs are strict.
inline void reject_unknown_keys(const json& j, const std::vector<std::string>& allowed,
                                const std::string& where) {
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool ok = false;
        for (const auto& a : allowed)
            if (it.key() == a) {
                ok = true;
                break;
            }
        if (!ok) throw ConfigError(where + ": unknown key '" + it.key() + "'");
    }
}

} // namespace ssfol
