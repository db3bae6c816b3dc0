#pragma once

#include <fstream>
#include <limits>
#include <sstream>
#include <string>

#include <json.hpp>

#include "zkit/ns_lattice.hpp"
#include "zkit/rational.hpp"
#include "zkit/toric.hpp"

namespace zkit {

using json = nlohmann::ordered_json;

// Rationals serialize as bare integers when integral (and small enough for a
// JSON number), otherwise as "p/q" in lowest terms. Nothing ever becomes a
// float.
inline json rational_to_json(const Rational& q) {
    if (is_integer(q)) {
        Integer n = rat_num(q);
        if (n >= std::numeric_limits<long long>::min() &&
            n <= std::numeric_limits<long long>::max())
            return n.convert_to<long long>();
    }
    return format_rational(q);
}

inline Rational rational_from_json(const json& j) {
    if (j.is_number_integer()) return Rational(j.get<long long>());
    if (j.is_string()) return parse_rational(j.get<std::string>());
    fail(errc::input_error, "expected an integer or a 'p/q' string, got " + j.dump());
}

inline json class_to_json(const NSClass& c) {
    json out = json::array();
    for (const auto& q : c.coords) out.push_back(rational_to_json(q));
    return out;
}

inline NSClass class_from_json(const json& j, std::size_t rank) {
    if (!j.is_array() || j.size() != rank)
        fail(errc::input_error, "expected an array of " + std::to_string(rank) + " coordinates");
    NSClass c = NSClass::zero(rank);
    for (std::size_t i = 0; i < rank; ++i) c.coords[i] = rational_from_json(j[i]);
    return c;
}

namespace detail {
inline const json& require_field(const json& j, const char* name) {
    auto it = j.find(name);
    if (it == j.end()) fail(errc::input_error, std::string("missing field '") + name + "'");
    return *it;
}
} // namespace detail

inline SurfaceModel model_from_json(const json& j) {
    if (!j.is_object()) fail(errc::input_error, "surface model must be a JSON object");
    SurfaceModel m;

    const json& basis = detail::require_field(j, "basis");
    if (!basis.is_array() || basis.empty())
        fail(errc::input_error, "'basis' must be a nonempty array of names");
    for (const auto& b : basis) m.basis_names.push_back(b.get<std::string>());
    m.rank = m.basis_names.size();

    const json& gram = detail::require_field(j, "gram");
    if (!gram.is_array() || gram.size() != m.rank)
        fail(errc::input_error, "'gram' must be a rank x rank array");
    m.gram = Matrix<Rational>(m.rank, m.rank);
    for (std::size_t i = 0; i < m.rank; ++i) {
        if (!gram[i].is_array() || gram[i].size() != m.rank)
            fail(errc::input_error, "'gram' must be a rank x rank array");
        for (std::size_t k = 0; k < m.rank; ++k) m.gram(i, k) = rational_from_json(gram[i][k]);
    }

    m.canonical = class_from_json(detail::require_field(j, "canonical"), m.rank);
    m.chi = detail::require_field(j, "chi").get<long long>();
    m.pg = detail::require_field(j, "pg").get<long long>();

    const json& curves = detail::require_field(j, "curves");
    if (!curves.is_array()) fail(errc::input_error, "'curves' must be an array");
    for (const auto& c : curves) {
        CurveGenerator g;
        g.name = detail::require_field(c, "name").get<std::string>();
        g.cls = class_from_json(detail::require_field(c, "coords"), m.rank);
        m.curves.push_back(std::move(g));
    }

    if (j.contains("ample")) m.ample = class_from_json(j["ample"], m.rank);
    m.kodaira_equals_numerical =
        detail::require_field(j, "kodaira_equals_numerical").get<bool>();
    return m;
}

inline json model_to_json(const SurfaceModel& m) {
    json out;
    out["basis"] = m.basis_names;
    json gram = json::array();
    for (std::size_t i = 0; i < m.rank; ++i) {
        json row = json::array();
        for (std::size_t k = 0; k < m.rank; ++k) row.push_back(rational_to_json(m.gram(i, k)));
        gram.push_back(std::move(row));
    }
    out["gram"] = std::move(gram);
    out["canonical"] = class_to_json(m.canonical);
    out["chi"] = m.chi;
    out["pg"] = m.pg;
    json curves = json::array();
    for (const auto& c : m.curves) {
        json cj;
        cj["name"] = c.name;
        cj["coords"] = class_to_json(c.cls);
        curves.push_back(std::move(cj));
    }
    out["curves"] = std::move(curves);
    if (m.ample) out["ample"] = class_to_json(*m.ample);
    out["kodaira_equals_numerical"] = m.kodaira_equals_numerical;
    return out;
}

inline ToricFan fan_from_json(const json& j) {
    if (!j.is_object()) fail(errc::input_error, "fan must be a JSON object");
    const json& rays = detail::require_field(j, "rays");
    if (!rays.is_array()) fail(errc::input_error, "'rays' must be an array of [x,y] pairs");
    std::vector<std::array<long long, 2>> rs;
    for (const auto& r : rays) {
        if (!r.is_array() || r.size() != 2 || !r[0].is_number_integer() ||
            !r[1].is_number_integer())
            fail(errc::input_error, "each ray must be a pair of integers");
        rs.push_back({r[0].get<long long>(), r[1].get<long long>()});
    }
    return build_fan(rs);
}

inline json fan_to_json(const ToricFan& fan) {
    json out;
    json rays = json::array();
    for (const auto& r : fan.rays) rays.push_back(json::array({r[0], r[1]}));
    out["rays"] = std::move(rays);
    return out;
}

inline json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(errc::input_error, "cannot open '" + path + "'");
    try {
        return json::parse(in);
    } catch (const nlohmann::json::exception& ex) {
        fail(errc::input_error, "cannot parse '" + path + "': " + ex.what());
    }
}

inline void write_json_file(const std::string& path, const json& j) {
    std::ofstream out(path);
    if (!out) fail(errc::input_error, "cannot open '" + path + "' for writing");
    out << j.dump(2) << "\n";
}

inline SurfaceModel load_model_file(const std::string& path) {
    return model_from_json(read_json_file(path));
}

inline ToricFan load_fan_file(const std::string& path) {
    return fan_from_json(read_json_file(path));
}

} // namespace zkit
