#include "prh/io.hpp"

#include <cmath>
#include <cstring>
#include <fstream>

#include "prh/errors.hpp"

namespace prh {

namespace {

constexpr char kMagic[4] = {'P', 'R', 'H', 'F'};
constexpr uint32_t kVersion = 1;

// The format is little-endian; this implementation targets little-endian
// hosts (x86-64/aarch64) and writes native byte order.
template <typename T>
void put(std::ostream& os, T v) {
    os.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T>
T get(std::istream& is) {
    T v{};
    is.read(reinterpret_cast<char*>(&v), sizeof(T));
    if (!is) throw ConfigError("field file truncated");
    return v;
}

}  // namespace

void write_prhf(const std::string& path, const Field& f) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw ConfigError("cannot open for writing: " + path);
    os.write(kMagic, 4);
    put<uint32_t>(os, kVersion);
    put<uint32_t>(os, static_cast<uint32_t>(f.lattice.dim));
    put<uint32_t>(os, static_cast<uint32_t>(f.lattice.points_per_axis));
    put<double>(os, f.lattice.extent);
    os.write(reinterpret_cast<const char*>(f.values.data()),
             static_cast<std::streamsize>(f.values.size() * sizeof(double)));
    if (!os) throw ConfigError("write failed: " + path);
}

Field read_prhf(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw ConfigError("cannot open field file: " + path);
    char magic[4];
    is.read(magic, 4);
    if (!is || std::memcmp(magic, kMagic, 4) != 0)
        throw ConfigError("not a PRHF field file: " + path);
    uint32_t version = get<uint32_t>(is);
    if (version != kVersion)
        throw ConfigError("unsupported PRHF version " + std::to_string(version));
    uint32_t dim = get<uint32_t>(is);
    uint32_t n = get<uint32_t>(is);
    double extent = get<double>(is);
    Lattice lat = make_lattice(static_cast<int>(dim), static_cast<int>(n), extent);
    Field f(lat);
    is.read(reinterpret_cast<char*>(f.values.data()),
            static_cast<std::streamsize>(f.values.size() * sizeof(double)));
    if (!is) throw ConfigError("field file truncated: " + path);
    for (double v : f.values)
        if (!std::isfinite(v)) throw ConfigError("field file contains non-finite values");
    return f;
}

namespace {

using nlohmann::json;

bool type_matches(const json& doc, const std::string& t) {
    if (t == "object") return doc.is_object();
    if (t == "array") return doc.is_array();
    if (t == "string") return doc.is_string();
    if (t == "number") return doc.is_number();
    if (t == "integer") return doc.is_number_integer();
    if (t == "boolean") return doc.is_boolean();
    if (t == "null") return doc.is_null();
    return false;
}

std::string validate_node(const json& doc, const json& schema, const std::string& where) {
    if (schema.contains("type")) {
        const auto& t = schema["type"];
        bool ok = false;
        if (t.is_string()) ok = type_matches(doc, t.get<std::string>());
        else
            for (const auto& tt : t) ok = ok || type_matches(doc, tt.get<std::string>());
        if (!ok) return where + ": expected type " + t.dump();
    }
    if (schema.contains("enum")) {
        bool ok = false;
        for (const auto& v : schema["enum"]) ok = ok || v == doc;
        if (!ok) return where + ": value not in enum " + schema["enum"].dump();
    }
    if (schema.contains("const") && schema["const"] != doc)
        return where + ": expected const " + schema["const"].dump();
    if (schema.contains("oneOf")) {
        bool any = false;
        for (const auto& alt : schema["oneOf"])
            if (validate_node(doc, alt, where).empty()) {
                any = true;
                break;
            }
        if (!any) return where + ": no oneOf alternative matched";
    }
    if (doc.is_object()) {
        if (schema.contains("required"))
            for (const auto& r : schema["required"])
                if (!doc.contains(r.get<std::string>()))
                    return where + ": missing required member '" + r.get<std::string>() + "'";
        if (schema.contains("properties"))
            for (auto it = schema["properties"].begin(); it != schema["properties"].end(); ++it)
                if (doc.contains(it.key())) {
                    auto err = validate_node(doc[it.key()], it.value(), where + "." + it.key());
                    if (!err.empty()) return err;
                }
    }
    if (doc.is_array() && schema.contains("items")) {
        for (std::size_t i = 0; i < doc.size(); ++i) {
            auto err = validate_node(doc[i], schema["items"], where + "[" + std::to_string(i) + "]");
            if (!err.empty()) return err;
        }
    }
    return "";
}

}  // namespace

std::string validate_against_schema(const nlohmann::json& doc, const nlohmann::json& schema) {
    return validate_node(doc, schema, "$");
}

nlohmann::json decay_fit_to_json(const DecayFit& fit) {
    return nlohmann::json{
        {"fitted_rate", fit.fitted_rate},
        {"intercept", fit.intercept},
        {"window", {fit.window_lo, fit.window_hi}},
        {"r_squared", fit.r_squared},
        {"reference_rate", fit.reference_rate},
        {"within_tolerance", fit.within_tolerance},
        {"bins_used", fit.bins_used},
    };
}

nlohmann::json report_to_json(const SolveReport& rep, const ProblemSpec& spec,
                              const nlohmann::json& config_echo,
                              const std::string& field_path) {
    nlohmann::json trace = nlohmann::json::array();
    for (const auto& t : rep.trace)
        trace.push_back({t.iter, t.energy, t.grad_residual});

    nlohmann::json diagnostics{
        {"symmetry_deviation", rep.symmetry_dev},
        {"min_value", rep.min_value},
        {"max_value", rep.max_value},
    };
    if (rep.decay) diagnostics["decay_fit"] = decay_fit_to_json(*rep.decay);

    nlohmann::json doc{
        {"kind", "solve_report"},
        {"status", to_string(rep.status)},
        {"energy", rep.energy},
        {"grad_residual", rep.grad_residual},
        {"nehari_residual", rep.nehari_residual},
        {"iterations", rep.iterations},
        {"seed", rep.seed},
        {"trace", trace},
        {"field_path", field_path},
        {"center_of_mass",
         {rep.center_of_mass[0], rep.center_of_mass[1], rep.center_of_mass[2]}},
        {"diagnostics", diagnostics},
        {"config", config_echo},
        {"warnings", spec.warnings},
        {"hypotheses_overridden", spec.hypotheses_overridden},
        {"dim_outside_hypotheses", spec.lattice.dim < 3},
    };
    if (rep.limit_level_E_inf) doc["limit_level_E_inf"] = *rep.limit_level_E_inf;
    if (rep.comparison_margin) doc["comparison_margin"] = *rep.comparison_margin;
    if (spec.kernel.kind == KernelSpec::Kind::newton)
        doc["newton_zero_mode_policy"] = "mean_zero";
    return doc;
}

}  // namespace prh
