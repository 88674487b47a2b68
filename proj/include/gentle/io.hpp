#pragma once

#include "hom.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>

namespace gentle {

using json = nlohmann::json;

inline json read_json_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw Error("IOError", "cannot open " + path);
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw Error("ParseError", path + ": " + e.what());
    }
}

template <class T>
T field(const json& j, const char* key, const std::string& context)
{
    if (!j.contains(key)) throw Error("ParseError", context + ": missing field \"" + key + "\"");
    try {
        return j.at(key).get<T>();
    } catch (const json::exception& e) {
        throw Error("ParseError", context + ": field \"" + key + "\": " + e.what());
    }
}

/// {"vertices": n, "arrows": [{"id","from","to"}], "relations": [["a","b"]]} with 1-based vertices.
inline GentleAlgebra algebra_from_json(const json& j)
{
    int n = field<int>(j, "vertices", "algebra");
    std::vector<Arrow> arrows;
    const json& arr = j.contains("arrows") ? j.at("arrows") : json::array();
    for (std::size_t i = 0; i < arr.size(); ++i) {
        std::string ctx = "arrows[" + std::to_string(i) + "]";
        arrows.push_back({field<std::string>(arr[i], "id", ctx), field<int>(arr[i], "from", ctx) - 1,
                          field<int>(arr[i], "to", ctx) - 1});
    }
    Quiver q(n, arrows);
    std::vector<std::pair<int, int>> rels;
    if (j.contains("relations"))
        for (const auto& r : j.at("relations")) {
            if (!r.is_array() || r.size() != 2) throw Error("ParseError", "relation must be a pair of arrow ids");
            rels.push_back({q.index(r[0].get<std::string>()), q.index(r[1].get<std::string>())});
        }
    return validate_gentle(q, rels);
}

inline json algebra_to_json(const GentleAlgebra& A)
{
    json j;
    j["vertices"] = A.n();
    j["arrows"] = json::array();
    for (const auto& a : A.quiver.arrows()) j["arrows"].push_back({{"id", a.id}, {"from", a.s + 1}, {"to", a.t + 1}});
    j["relations"] = json::array();
    for (auto [a, b] : A.relations) j["relations"].push_back({A.quiver.arrow(a).id, A.quiver.arrow(b).id});
    return j;
}

inline GentleAlgebra load_algebra(const std::string& path) { return algebra_from_json(read_json_file(path)); }

inline std::string format_rational(const Q& x) { return x.get_str(); }

/// {"dims": [...], "matrices": {"a": [[...]]}} with entries as integers or "p/q" strings.
inline Representation rep_from_json(const GentleAlgebra& A, const json& j)
{
    Representation M;
    M.dims = field<std::vector<int>>(j, "dims", "module");
    if (static_cast<int>(M.dims.size()) != A.n()) throw Error("ParseError", "module: dims length");
    M = zero_rep(A, M.dims);
    if (j.contains("matrices"))
        for (auto it = j.at("matrices").begin(); it != j.at("matrices").end(); ++it) {
            int a = A.quiver.index(it.key());
            Matrix& X = M.mats[a];
            const json& rows = it.value();
            if (static_cast<int>(rows.size()) != X.rows())
                throw Error("ParseError", "module: row count for arrow " + it.key());
            for (int r = 0; r < X.rows(); ++r) {
                if (static_cast<int>(rows[r].size()) != X.cols())
                    throw Error("ParseError", "module: column count for arrow " + it.key());
                for (int c = 0; c < X.cols(); ++c) {
                    const json& e = rows[r][c];
                    X(r, c) = e.is_string() ? Q(e.get<std::string>()) : Q(e.get<long>());
                    X(r, c).canonicalize();
                }
            }
        }
    check_rep(A, M);
    return M;
}

inline json rep_to_json(const GentleAlgebra& A, const Representation& M)
{
    json j;
    j["dims"] = M.dims;
    j["matrices"] = json::object();
    for (int a = 0; a < A.m(); ++a) {
        json rows = json::array();
        const Matrix& X = M.mats[a];
        for (int r = 0; r < X.rows(); ++r) {
            json row = json::array();
            for (int c = 0; c < X.cols(); ++c) {
                if (X(r, c).get_den() == 1 && X(r, c).get_num().fits_slong_p())
                    row.push_back(X(r, c).get_num().get_si());
                else
                    row.push_back(X(r, c).get_str());
            }
            rows.push_back(row);
        }
        j["matrices"][A.quiver.arrow(a).id] = rows;
    }
    return j;
}

inline std::vector<int> parse_int_list(const std::string& text)
{
    std::vector<int> out;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        try {
            std::size_t used = 0;
            out.push_back(std::stoi(tok, &used));
            if (tok.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument(tok);
        } catch (const std::exception&) {
            throw Error("ParseError", "not an integer list: " + text);
        }
    }
    return out;
}

}  // namespace gentle
