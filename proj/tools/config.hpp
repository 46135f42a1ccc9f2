#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

namespace antisym::cli {

using json = nlohmann::json;

inline constexpr const char* kVersion = "1.0.0";

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Parameters for one subcommand after defaults, file and overrides are merged.
struct RunConfig {
    std::string command;
    json params;  ///< includes "seed"; never includes the thread count
    int threads = 1;
    std::string out;  ///< empty means stdout

    std::uint64_t seed() const { return params.at("seed").get<std::uint64_t>(); }
    double num(const std::string& key) const;
    long integer(const std::string& key) const;
    bool flag(const std::string& key) const;
    std::string str(const std::string& key) const;
    /// Scalars are promoted to one-element lists.
    std::vector<double> list(const std::string& key) const;
    const json& sub(const std::string& key) const { return params.at(key); }
};

/// Defaults for a subcommand; their keys and types form its schema.
json defaults_for(const std::string& command);

const std::vector<std::string>& commands();

/// Checks `given` against `schema`: unknown keys and type mismatches throw.
/// Numbers given where a list is expected are accepted as one-element lists.
json merge_checked(const json& schema, const json& given, const std::string& where);

struct Overrides {
    std::optional<std::string> config_path;
    std::optional<std::uint64_t> seed;
    std::optional<int> threads;
    std::optional<std::string> out;
    std::vector<std::string> assignments;  ///< key=json-value, dotted keys reach nested objects
};

RunConfig load_config(const std::string& command, const Overrides& ov);

/// ANTISYM_THREADS if set, else the hardware concurrency.
int default_threads();

}  // namespace antisym::cli
