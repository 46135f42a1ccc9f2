#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include <CLI11.hpp>

#include "antisym/model.hpp"
#include "antisym/numerics.hpp"
#include "commands.hpp"

using namespace antisym;

int main(int argc, char** argv) {
    CLI::App app{"Anti-symmetric exclusion pair: analytics, simulation and verification"};
    app.require_subcommand(1);
    app.set_version_flag("--version", cli::kVersion);

    struct Opts {
        std::string config, out;
        std::uint64_t seed = 0;
        int threads = 0;
        std::vector<std::string> set;
    };
    std::map<std::string, Opts> opts;
    const std::map<std::string, std::string> about{
        {"pair-exact", "exact, asymptotic and short-time moments of the lattice pair"},
        {"pair-mc", "Monte Carlo moments with standard errors"},
        {"continuum", "continuum separation and msd, optional propagator grid"},
        {"fp-check", "Crank-Nicolson separation density against the closed form"},
        {"territory", "territory sweep over Z with exponential fit"},
        {"verify", "invariant battery and closed-form adjudication as JSON"},
    };
    for (const auto& name : cli::commands()) {
        auto* sub = app.add_subcommand(name, about.at(name));
        Opts& o = opts[name];
        sub->add_option("--config", o.config, "JSON configuration file")->check(CLI::ExistingFile);
        sub->add_option("--seed", o.seed, "random seed");
        sub->add_option("--out", o.out, "output path (default stdout)");
        sub->add_option("--threads", o.threads, "worker threads (default $ANTISYM_THREADS)")
            ->check(CLI::PositiveNumber);
        sub->add_option("--set", o.set, "override key=value, value parsed as JSON");
    }
    CLI11_PARSE(app, argc, argv);

    const std::string name = app.get_subcommands().front()->get_name();
    const auto* sub = app.get_subcommands().front();
    const Opts& o = opts[name];
    cli::Overrides ov;
    if (sub->count("--config")) ov.config_path = o.config;
    if (sub->count("--seed")) ov.seed = o.seed;
    if (sub->count("--threads")) ov.threads = o.threads;
    if (sub->count("--out")) ov.out = o.out;
    ov.assignments = o.set;

    try {
        const auto rc = cli::load_config(name, ov);
        std::ostringstream buf;
        const int code = cli::run_command(rc, buf);
        if (rc.out.empty()) {
            std::cout << buf.str();
        } else {
            std::ofstream f(rc.out, std::ios::binary);
            if (!f) throw cli::ConfigError("cannot write '" + rc.out + "'");
            f << buf.str();
        }
        return code;
    } catch (const cli::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid input: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return 3;
    }
}
