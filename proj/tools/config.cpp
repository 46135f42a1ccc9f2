#include "config.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <thread>

namespace antisym::cli {

namespace {

bool numeric_list(const json& j) {
    if (!j.is_array()) return false;
    for (const auto& e : j)
        if (!e.is_number()) return false;
    return true;
}

void assign_dotted(json& target, const std::string& key, const json& value) {
    json* node = &target;
    std::size_t start = 0;
    while (true) {
        const auto dot = key.find('.', start);
        const std::string part = key.substr(start, dot == std::string::npos ? dot : dot - start);
        if (dot == std::string::npos) {
            (*node)[part] = value;
            return;
        }
        node = &(*node)[part];
        start = dot + 1;
    }
}

}  // namespace

const std::vector<std::string>& commands() {
    static const std::vector<std::string> names{"pair-exact", "pair-mc",   "continuum",
                                                "fp-check",   "territory", "verify"};
    return names;
}

json defaults_for(const std::string& command) {
    json d;
    d["seed"] = 1;
    if (command == "pair-exact") {
        d["p"] = {0.45, 0.47, 0.49, 0.5, 0.51};
        d["F"] = 1.0;
        d["a"] = 1.0;
        d["dN"] = 1;
        d["tau_min"] = 0.1;
        d["tau_max"] = 100.0;
        d["n_tau"] = 41;
        d["tau"] = json::array();  // explicit grid; overrides the log grid when non-empty
    } else if (command == "pair-mc") {
        d["p"] = {0.4, 0.5, 0.6};
        d["F"] = 1.0;
        d["a"] = 1.0;
        d["dN"] = 1;
        d["n_replicas"] = 1000000;
        d["tau_max"] = 50.0;
        d["n_tau"] = 50;
        d["tau"] = json::array();
        d["block_size"] = 4096;
    } else if (command == "continuum") {
        d["D"] = 1.0;
        d["v"] = {-0.5, 0.0, 0.5};
        d["x10"] = 0.0;
        d["x20"] = 1.0;
        d["t_min"] = 0.1;
        d["t_max"] = 500.0;
        d["n_t"] = 30;
        d["t"] = json::array();
        d["grid"] = {{"enabled", false}, {"t", 1.0}, {"n", 21}, {"out", ""}};
    } else if (command == "fp-check") {
        d["D"] = 1.0;
        d["v"] = {-0.5, 0.0, 0.5};
        d["x10"] = 0.0;
        d["x20"] = 1.0;
        d["t_end"] = 1.0;
        d["n_cells"] = {500, 1000, 2000};
        d["tol"] = 1e-3;
        d["min_order"] = 1.8;
    } else if (command == "territory") {
        d["n_animals"] = 10;
        d["lattice_size"] = 400;
        d["R"] = 1.0;
        d["a"] = 1.0;
        d["Z"] = {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0, 1.1, 1.2};
        d["min_events"] = 10000;
        d["t_burn"] = 0.0;
        d["t_measure"] = 0.0;
        d["sample_interval"] = 0.0;
        d["max_time"] = 1e9;
        d["fit_out"] = "";
    } else if (command == "verify") {
        d["fredholm_samples"] = 100;
        d["grid_n"] = 21;
        d["fp_cells"] = 2000;
    } else {
        throw ConfigError("unknown subcommand '" + command + "'");
    }
    return d;
}

json merge_checked(const json& schema, const json& given, const std::string& where) {
    if (!given.is_object()) throw ConfigError(where + ": expected an object");
    json out = schema;
    for (const auto& [key, value] : given.items()) {
        const std::string path = where.empty() ? key : where + "." + key;
        if (!schema.contains(key)) throw ConfigError("unknown key '" + path + "'");
        const json& ref = schema.at(key);
        if (ref.is_object()) {
            out[key] = merge_checked(ref, value, path);
        } else if (ref.is_array()) {
            if (value.is_number())
                out[key] = json::array({value});
            else if (numeric_list(value))
                out[key] = value;
            else
                throw ConfigError("'" + path + "' must be a number or a list of numbers");
        } else if (ref.is_number_float()) {
            if (!value.is_number()) throw ConfigError("'" + path + "' must be a number");
            out[key] = value.get<double>();
        } else if (ref.is_number_integer()) {
            if (!value.is_number_integer()) throw ConfigError("'" + path + "' must be an integer");
            if (value.is_number_unsigned())
                out[key] = value.get<std::uint64_t>();
            else if (value.get<long long>() < 0)
                throw ConfigError("'" + path + "' must be non-negative");
            else
                out[key] = value;
        } else if (ref.is_boolean()) {
            if (!value.is_boolean()) throw ConfigError("'" + path + "' must be true or false");
            out[key] = value;
        } else if (ref.is_string()) {
            if (!value.is_string()) throw ConfigError("'" + path + "' must be a string");
            out[key] = value;
        }
    }
    return out;
}

double RunConfig::num(const std::string& key) const { return params.at(key).get<double>(); }
long RunConfig::integer(const std::string& key) const { return params.at(key).get<long>(); }
bool RunConfig::flag(const std::string& key) const { return params.at(key).get<bool>(); }
std::string RunConfig::str(const std::string& key) const {
    return params.at(key).get<std::string>();
}
std::vector<double> RunConfig::list(const std::string& key) const {
    const json& j = params.at(key);
    if (j.is_number()) return {j.get<double>()};
    return j.get<std::vector<double>>();
}

int default_threads() {
    if (const char* env = std::getenv("ANTISYM_THREADS")) {
        char* end = nullptr;
        const long n = std::strtol(env, &end, 10);
        if (end == env || *end != '\0' || n < 1)
            throw ConfigError("ANTISYM_THREADS must be a positive integer");
        return static_cast<int>(n);
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

RunConfig load_config(const std::string& command, const Overrides& ov) {
    RunConfig rc;
    rc.command = command;
    const json schema = defaults_for(command);
    json given = json::object();
    if (ov.config_path) {
        std::ifstream in(*ov.config_path);
        if (!in) throw ConfigError("cannot open config file '" + *ov.config_path + "'");
        try {
            given = json::parse(in);
        } catch (const json::parse_error& e) {
            throw ConfigError("config file '" + *ov.config_path + "': " + e.what());
        }
    }
    for (const auto& a : ov.assignments) {
        const auto eq = a.find('=');
        if (eq == std::string::npos || eq == 0) throw ConfigError("--set expects key=value, got '" + a + "'");
        const std::string text = a.substr(eq + 1);
        json value;
        try {
            value = json::parse(text);
        } catch (const json::parse_error&) {
            value = text;  // bare strings
        }
        assign_dotted(given, a.substr(0, eq), value);
    }
    if (ov.seed) given["seed"] = *ov.seed;
    rc.params = merge_checked(schema, given, "");
    rc.threads = ov.threads ? *ov.threads : default_threads();
    if (rc.threads < 1) throw ConfigError("--threads must be >= 1");
    rc.out = ov.out.value_or("");
    return rc;
}

}  // namespace antisym::cli
