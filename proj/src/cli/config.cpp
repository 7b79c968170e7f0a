#include <cstdio>
#include <fstream>
#include <set>

#include "margulis/cli.hpp"

namespace margulis::cli
{

const char* version() { return MARGULIS_LAB_VERSION; }

const std::map<std::string, double>& default_tolerances()
{
    static const std::map<std::string, double> t{
        {"relation", 1e-9},       {"length", 1e-6},      {"cross", 1e-10},
        {"frame", 1e-9},          {"killing", 1e-12},    {"adjoint_lift", 1e-8},
        {"iso_det", 1e-12},       {"coboundary", 1e-9},  {"gm", 1e-6},
        {"twist", 1e-6},          {"twist_margulis", 1e-8}, {"gauge", 1e-9},
    };
    return t;
}

double RunConfig::tolerance(const std::string& name) const
{
    const auto it = tolerances.find(name);
    if (it == tolerances.end()) {
        throw UsageError("unknown tolerance '" + name + "'");
    }
    return it->second;
}

std::string config_hash(const nlohmann::json& j)
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : j.dump()) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

namespace
{

std::vector<double> reals(const nlohmann::json& j, const char* key, std::size_t n,
                          const std::vector<double>& fallback)
{
    if (!j.contains(key)) {
        return fallback;
    }
    const auto& a = j.at(key);
    if (!a.is_array()) {
        throw UsageError(std::string(key) + " must be an array");
    }
    std::vector<double> v;
    for (const auto& x : a) {
        if (!x.is_number()) {
            throw UsageError(std::string(key) + " must contain numbers");
        }
        v.push_back(x.get<double>());
    }
    if (v.size() != n) {
        throw UsageError(std::string(key) + " needs " + std::to_string(n) + " values, got " +
                         std::to_string(v.size()));
    }
    return v;
}

}  // namespace

RunConfig parse_config(const nlohmann::json& j)
{
    static const std::set<std::string> known{
        "b", "boundary_lengths", "dividing_lengths", "hyperbolic_twists",
        "alpha", "beta", "t", "seed", "tolerances"};
    if (!j.is_object()) {
        throw UsageError("config must be a JSON object");
    }
    for (const auto& [key, value] : j.items()) {
        if (!known.contains(key)) {
            throw UsageError("unknown config key '" + key + "'");
        }
    }
    if (!j.contains("b") || !j.at("b").is_number_integer()) {
        throw UsageError("config needs an integer b");
    }
    const int b = j.at("b").get<int>();
    if (b < 3) {
        throw UsageError("b must be at least 3, got " + std::to_string(b));
    }

    RunConfig cfg;
    const HolonomySpec d = HolonomySpec::symmetric(b);
    cfg.spec.b = b;
    cfg.spec.boundary_lengths = reals(j, "boundary_lengths", b + 1, d.boundary_lengths);
    cfg.spec.dividing_lengths = reals(j, "dividing_lengths", b - 2, d.dividing_lengths);
    cfg.spec.hyperbolic_twists = reals(j, "hyperbolic_twists", b - 2, d.hyperbolic_twists);
    try {
        cfg.spec.validate();
    }
    catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }

    const DeformationParams zero = DeformationParams::zero(b);
    cfg.deformation.alpha = reals(j, "alpha", b + 1, zero.alpha);
    cfg.deformation.beta = reals(j, "beta", b - 2, zero.beta);
    cfg.deformation.t = reals(j, "t", b - 2, zero.t);

    if (j.contains("seed")) {
        const auto& seed = j.at("seed");
        if (!seed.is_number_integer() || seed.get<std::int64_t>() < 0) {
            throw UsageError("seed must be a non-negative integer");
        }
        cfg.seed = j.at("seed").get<std::uint64_t>();
    }

    cfg.tolerances = default_tolerances();
    if (j.contains("tolerances")) {
        const auto& t = j.at("tolerances");
        if (!t.is_object()) {
            throw UsageError("tolerances must be an object");
        }
        for (const auto& [name, value] : t.items()) {
            if (!cfg.tolerances.contains(name)) {
                throw UsageError("unknown tolerance '" + name + "'");
            }
            if (!value.is_number() || !(value.get<double>() > 0)) {
                throw UsageError("tolerance '" + name + "' must be a positive number");
            }
            cfg.tolerances[name] = value.get<double>();
        }
    }
    cfg.hash = config_hash(j);
    return cfg;
}

RunConfig load_config(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) {
        throw UsageError("cannot read config " + path.string());
    }
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(in);
    }
    catch (const nlohmann::json::parse_error& e) {
        throw UsageError("config " + path.string() + ": " + e.what());
    }
    return parse_config(j);
}

}  // namespace margulis::cli
