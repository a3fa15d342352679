#include "phev/config.hpp"

#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

#include "phev/error.hpp"
#include "phev/moment_matching.hpp"

namespace phev::config {

using nlohmann::json;

namespace {

std::string join(const std::string& prefix, const std::string& key)
{
    return prefix.empty() ? key : prefix + "." + key;
}

void require_object(const json& j, const std::string& field)
{
    if (!j.is_object()) {
        throw ConfigInvalid(field, "expected an object");
    }
}

void reject_unknown(const json& j, const std::string& field,
                    const std::set<std::string>& allowed)
{
    for (const auto& item : j.items()) {
        if (!allowed.contains(item.key())) {
            throw ConfigInvalid(join(field, item.key()), "unknown key");
        }
    }
}

const json& member(const json& j, const std::string& field, const std::string& key)
{
    const auto it = j.find(key);
    if (it == j.end()) {
        throw ConfigInvalid(join(field, key), "missing");
    }
    return *it;
}

double number(const json& j, const std::string& field, const std::string& key)
{
    const json& v = member(j, field, key);
    if (!v.is_number()) {
        throw ConfigInvalid(join(field, key), "expected a number");
    }
    return v.get<double>();
}

std::uint64_t unsigned_integer(const json& v, const std::string& field)
{
    if (!v.is_number_unsigned()) {
        throw ConfigInvalid(field, "expected a nonnegative integer");
    }
    return v.get<std::uint64_t>();
}

std::vector<double> number_list(const json& j, const std::string& field,
                                const std::string& key)
{
    const json& v = member(j, field, key);
    if (!v.is_array()) {
        throw ConfigInvalid(join(field, key), "expected an array of numbers");
    }
    std::vector<double> out;
    for (const auto& x : v) {
        if (!x.is_number()) {
            throw ConfigInvalid(join(field, key), "expected an array of numbers");
        }
        out.push_back(x.get<double>());
    }
    return out;
}

struct ParsedDistribution {
    Distribution distribution;
    bool variance_matched = true;
};

ParsedDistribution parse_distribution(const json& j, const std::string& field)
{
    require_object(j, field);
    const json& fam = member(j, field, "family");
    if (!fam.is_string()) {
        throw ConfigInvalid(join(field, "family"), "expected a string");
    }
    Family family{};
    try {
        family = parse_family(fam.get<std::string>());
    } catch (const InvalidParameter& e) {
        throw ConfigInvalid(join(field, "family"), e.what());
    }

    if (j.contains("match")) {
        reject_unknown(j, field, {"family", "match"});
        const json& m = j.at("match");
        const std::string mfield = join(field, "match");
        require_object(m, mfield);
        reject_unknown(m, mfield, {"mean", "variance"});
        const double mean = number(m, mfield, "mean");
        const double variance = family == Family::Exponential && !m.contains("variance")
                                    ? mean * mean
                                    : number(m, mfield, "variance");
        try {
            auto match = match_moments(family, mean, variance);
            return {std::move(match.distribution), match.variance_matched};
        } catch (const Error& e) {
            throw ConfigInvalid(mfield, e.what());
        }
    }

    try {
        switch (family) {
        case Family::Gaussian:
            reject_unknown(j, field, {"family", "mean", "variance"});
            return {make_gaussian(number(j, field, "mean"), number(j, field, "variance"))};
        case Family::Uniform:
            reject_unknown(j, field, {"family", "low", "high"});
            return {make_uniform(number(j, field, "low"), number(j, field, "high"))};
        case Family::Exponential:
            reject_unknown(j, field, {"family", "mean"});
            return {make_exponential(number(j, field, "mean"))};
        case Family::TruncatedGaussianPositive:
            reject_unknown(j, field, {"family", "mu", "variance"});
            return {make_truncated_gaussian(number(j, field, "mu"),
                                            number(j, field, "variance"))};
        case Family::Rician:
            reject_unknown(j, field, {"family", "nu", "sigma"});
            return {make_rician(number(j, field, "nu"), number(j, field, "sigma"))};
        case Family::Lattice:
            reject_unknown(j, field, {"family", "atoms", "probs"});
            return {make_lattice(number_list(j, field, "atoms"),
                                 number_list(j, field, "probs"))};
        }
    } catch (const InvalidParameter& e) {
        throw ConfigInvalid(field, e.what());
    }
    throw ConfigInvalid(join(field, "family"), "unsupported family");
}

ScenarioConfig from_json(const json& root)
{
    require_object(root, "<root>");
    reject_unknown(root, "",
                   {"name", "fleet_size", "arrival", "charge_time", "distance", "outlet",
                    "power_kw", "resolution_h", "seed", "fold_window", "notes"});

    ScenarioConfig config;
    config.canonical = root.dump();

    const json& name = member(root, "", "name");
    if (!name.is_string() || name.get<std::string>().empty()) {
        throw ConfigInvalid("name", "expected a nonempty string");
    }
    config.name = name.get<std::string>();

    if (root.contains("fleet_size")) {
        config.fleet_size = unsigned_integer(root.at("fleet_size"), "fleet_size");
        if (config.fleet_size < 1) {
            throw ConfigInvalid("fleet_size", "must be >= 1");
        }
    }

    config.arrival = parse_distribution(member(root, "", "arrival"), "arrival").distribution;

    const bool has_charge = root.contains("charge_time");
    const bool has_distance = root.contains("distance");
    if (has_charge == has_distance) {
        throw ConfigInvalid("charge_time", "give exactly one of charge_time or distance");
    }

    if (root.contains("outlet")) {
        const json& o = root.at("outlet");
        if (!o.is_string()) {
            throw ConfigInvalid("outlet", "expected an outlet name");
        }
        try {
            config.outlet = outlet_lookup(o.get<std::string>());
        } catch (const UnknownOutlet& e) {
            throw ConfigInvalid("outlet", e.what());
        }
    }

    if (has_charge) {
        auto parsed = parse_distribution(root.at("charge_time"), "charge_time");
        if (parsed.distribution.support().low < 0.0) {
            throw ConfigInvalid("charge_time", "support must lie in [0, inf)");
        }
        if (!parsed.variance_matched) {
            config.notes.push_back(
                "charge_time: exponential has one degree of freedom; only the mean "
                "was matched");
        }
        config.charge = std::move(parsed.distribution);
    } else {
        const json& d = root.at("distance");
        require_object(d, "distance");
        reject_unknown(d, "distance", {"distribution", "mode", "kwh_per_mile"});
        DistanceSpec spec{
            parse_distribution(member(d, "distance", "distribution"), "distance.distribution")
                .distribution};
        if (d.contains("mode")) {
            if (!d.at("mode").is_string()) {
                throw ConfigInvalid("distance.mode", "expected \"rate\" or \"energy\"");
            }
            try {
                spec.mode = parse_mode(d.at("mode").get<std::string>());
            } catch (const InvalidParameter& e) {
                throw ConfigInvalid("distance.mode", e.what());
            }
        }
        if (d.contains("kwh_per_mile")) {
            spec.kwh_per_mile = number(d, "distance", "kwh_per_mile");
        }
        try {
            derive_charge_time_distribution(spec.distance, config.outlet, spec.kwh_per_mile,
                                            spec.mode);
        } catch (const InvalidParameter& e) {
            throw ConfigInvalid("distance", e.what());
        }
        config.charge = std::move(spec);
    }

    if (root.contains("power_kw")) {
        const double p = number(root, "", "power_kw");
        if (!(p > 0.0) || !std::isfinite(p)) {
            throw ConfigInvalid("power_kw", "must be finite and > 0");
        }
        config.power_kw = p;
    }

    if (root.contains("resolution_h")) {
        config.resolution_h = number(root, "", "resolution_h");
    }
    try {
        TimeGrid::with_resolution(config.resolution_h);
    } catch (const InvalidParameter& e) {
        throw ConfigInvalid("resolution_h", e.what());
    }

    if (root.contains("seed")) {
        config.seed = unsigned_integer(root.at("seed"), "seed");
    }

    if (root.contains("fold_window")) {
        const json& w = root.at("fold_window");
        if (w.is_string() && w.get<std::string>() == "auto") {
            config.fold_window.reset();
        } else if (w.is_number_unsigned() && w.get<std::uint64_t>() >= 1
                   && w.get<std::uint64_t>() <= 1000) {
            config.fold_window = static_cast<int>(w.get<std::uint64_t>());
        } else {
            throw ConfigInvalid("fold_window", "expected an integer in [1, 1000] or \"auto\"");
        }
    }

    if (root.contains("notes")) {
        const json& n = root.at("notes");
        if (!n.is_array()) {
            throw ConfigInvalid("notes", "expected an array of strings");
        }
        for (const auto& s : n) {
            if (!s.is_string()) {
                throw ConfigInvalid("notes", "expected an array of strings");
            }
            config.notes.push_back(s.get<std::string>());
        }
    }
    return config;
}

// 100/12 written with enough digits to round to the same double.
constexpr std::string_view kMatchedMoments = R"("match": {"mean": 6, "variance": 8.3333333333333339})";

const std::map<std::string, std::string, std::less<>>& presets()
{
    static const std::map<std::string, std::string, std::less<>> table = [] {
        const std::string head = R"(
  "fleet_size": 100000,
  "arrival": {"family": "gaussian", "mean": 19, "variance": 10},
  "outlet": "Standard",
  "power_kw": 1.4,
  "resolution_h": 0.05,
  "seed": 1,)";
        const std::string power_note =
            R"("power_kw 1.4 assumes the Standard outlet; the published curves state no draw")";
        std::map<std::string, std::string, std::less<>> t;
        t["fig9-uniform"] = "{\n  \"name\": \"fig9-uniform\"," + head + R"(
  "charge_time": {"family": "uniform", "low": 1, "high": 11},
  "fold_window": 2,
  "notes": [)" + power_note + "]\n}\n";
        t["fig8-trunc-gauss"] = "{\n  \"name\": \"fig8-trunc-gauss\"," + head + R"(
  "charge_time": {"family": "truncated_gaussian", )" + std::string(kMatchedMoments) + R"(},
  "fold_window": 2,
  "notes": [)" + power_note + "]\n}\n";
        t["fig8-rician"] = "{\n  \"name\": \"fig8-rician\"," + head + R"(
  "charge_time": {"family": "rician", )" + std::string(kMatchedMoments) + R"(},
  "fold_window": 2,
  "notes": [)" + power_note + "]\n}\n";
        t["fig8-exponential"] = "{\n  \"name\": \"fig8-exponential\"," + head + R"(
  "charge_time": {"family": "exponential", "match": {"mean": 6}},
  "fold_window": "auto",
  "notes": [)" + power_note + "]\n}\n";
        return t;
    }();
    return table;
}

}  // namespace

ScenarioConfig parse_scenario(std::string_view json_text)
{
    json root;
    try {
        root = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ConfigInvalid("<root>", std::string("malformed JSON: ") + e.what());
    }
    return from_json(root);
}

ScenarioConfig load_scenario(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open config file " + path.string());
    }
    std::ostringstream text;
    text << in.rdbuf();
    return parse_scenario(text.str());
}

void override_seed(ScenarioConfig& config, std::uint64_t seed)
{
    config.seed = seed;
    if (!config.canonical.empty()) {
        json root = json::parse(config.canonical);
        root["seed"] = seed;
        config.canonical = root.dump();
    }
}

std::vector<std::string> preset_names()
{
    std::vector<std::string> names;
    for (const auto& [name, text] : presets()) {
        names.push_back(name);
    }
    return names;
}

std::string preset_text(std::string_view name)
{
    const auto it = presets().find(name);
    if (it == presets().end()) {
        throw ConfigInvalid("preset", "unknown preset '" + std::string(name) + "'");
    }
    return it->second;
}

ScenarioConfig load_preset(std::string_view name)
{
    return parse_scenario(preset_text(name));
}

}  // namespace phev::config
