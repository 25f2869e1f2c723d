#include "secrate/jsonio.hpp"

#include <fstream>
#include <utility>
#include <vector>

#include "secrate/errors.hpp"

namespace secrate {
namespace {

nlohmann::json parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open '" + path + "'");
    try {
        return nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw ValueError("invalid JSON in '" + path + "': " + e.what());
    }
}

const nlohmann::json& require_field(const nlohmann::json& spec, const char* key) {
    auto it = spec.find(key);
    if (it == spec.end())
        throw ValueError(std::string("missing JSON field '") + key + "'");
    return *it;
}

std::vector<Alphabet> alphabets_from_json(const nlohmann::json& arr) {
    if (!arr.is_array() || arr.empty())
        throw ValueError("'variables' must be a non-empty array");
    std::vector<Alphabet> vars;
    vars.reserve(arr.size());
    for (const auto& entry : arr) {
        if (!entry.is_object())
            throw ValueError("each variable must be an object with name and size");
        const auto& name = require_field(entry, "name");
        const auto& size = require_field(entry, "size");
        if (!name.is_string() || !size.is_number_integer())
            throw ValueError("variable name must be a string and size an integer");
        vars.push_back({name.get<std::string>(),
                        static_cast<std::size_t>(size.get<long long>())});
    }
    return vars;
}

std::vector<double> table_from_json(const nlohmann::json& arr) {
    if (!arr.is_array()) throw ValueError("'table' must be an array of numbers");
    std::vector<double> table;
    table.reserve(arr.size());
    for (const auto& v : arr) {
        if (!v.is_number()) throw ValueError("'table' must contain only numbers");
        table.push_back(v.get<double>());
    }
    return table;
}

}  // namespace

JointPmf pmf_from_json(const nlohmann::json& spec) {
    if (!spec.is_object()) throw ValueError("distribution must be a JSON object");
    return JointPmf(alphabets_from_json(require_field(spec, "variables")),
                    table_from_json(require_field(spec, "table")));
}

SchemeDistribution scheme_from_json(const nlohmann::json& spec) {
    JointPmf base = pmf_from_json(spec);
    auto it = spec.find("extended");
    if (it == spec.end()) return SchemeDistribution(std::move(base));
    return SchemeDistribution(std::move(base), pmf_from_json(*it));
}

PairChannel channel_from_json(const nlohmann::json& spec) {
    if (!spec.is_object()) throw ValueError("channel must be a JSON object");
    const auto& s1 = require_field(spec, "size1");
    const auto& s2 = require_field(spec, "size2");
    if (!s1.is_number_integer() || !s2.is_number_integer())
        throw ValueError("channel sizes must be integers");
    PairChannel ch;
    ch.size1 = static_cast<std::size_t>(s1.get<long long>());
    ch.size2 = static_cast<std::size_t>(s2.get<long long>());
    ch.joint = table_from_json(require_field(spec, "joint"));
    ch.validate();
    return ch;
}

SchemeDistribution load_scheme(const std::string& path) {
    return scheme_from_json(parse_file(path));
}

PairChannel load_channel(const std::string& path) {
    return channel_from_json(parse_file(path));
}

nlohmann::json system_to_json(const HalfSpaceSystem& sys) {
    nlohmann::json out;
    out["implicit_nonneg"] = sys.implicit_nonneg();
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t i = 0; i < sys.row_count(); ++i) {
        const auto& r = sys.rows()[i];
        nlohmann::json coeffs;
        for (std::size_t k = 0; k < sys.variables().size(); ++k)
            coeffs[sys.variables()[k]] = r.coeffs[k].convert_to<double>();
        rows.push_back({{"coeffs", std::move(coeffs)},
                        {"rhs", r.rhs.convert_to<double>()}});
    }
    out["inequalities"] = std::move(rows);
    return out;
}

nlohmann::json region_to_json(const Region2D& region) {
    nlohmann::json out = system_to_json(region.inequalities);
    nlohmann::json verts = nlohmann::json::array();
    for (const auto& v : region.vertices) verts.push_back({v[0], v[1]});
    out["vertices"] = std::move(verts);
    return out;
}

}  // namespace secrate
