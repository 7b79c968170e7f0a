#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "margulis/affine.hpp"
#include "margulis/fuchsian.hpp"

namespace margulis::cli
{

inline constexpr int exit_pass = 0;
inline constexpr int exit_finding = 1;
inline constexpr int exit_usage = 2;

const char* version();

/** Malformed or inconsistent input; maps to exit code 2. */
class UsageError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

struct RunConfig
{
    HolonomySpec spec;
    DeformationParams deformation;
    std::map<std::string, double> tolerances;
    std::filesystem::path output_dir = ".";
    std::uint64_t seed = 1;
    /** 16 hex digits of FNV-1a over the canonical JSON dump. */
    std::string hash;

    /** Throws UsageError for names that are not in default_tolerances(). */
    double tolerance(const std::string& name) const;
};

const std::map<std::string, double>& default_tolerances();

/**
 * Missing holonomy fields default to HolonomySpec::symmetric(b), a missing
 * deformation to zero. Unknown keys, wrong sizes and b < 3 raise UsageError.
 */
RunConfig parse_config(const nlohmann::json& j);
RunConfig load_config(const std::filesystem::path& path);

std::string config_hash(const nlohmann::json& j);

struct CheckRow
{
    std::string check;
    double lhs = 0;
    double rhs = 0;
    double residual = 0;
    double tolerance = 0;
    bool pass = false;
};

/** which: lorentz, iso, gm, twist or all. Throws UsageError otherwise. */
std::vector<CheckRow> run_suite(const RunConfig& cfg, const HolonomyPtr& hol,
                                const std::string& which);

int cmd_holonomy(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_cocycle(const RunConfig& cfg, bool gauge_check, std::ostream& out, std::ostream& err);
int cmd_verify(const RunConfig& cfg, const std::string& which, std::ostream& out,
               std::ostream& err);
int cmd_scan(const RunConfig& cfg, int max_len, std::ostream& out, std::ostream& err);

/** Entry point of margulis-lab. */
int run(int argc, char** argv);

}  // namespace margulis::cli
