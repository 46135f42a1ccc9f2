#pragma once

#include <ostream>
#include <string>

#include "config.hpp"

namespace antisym::cli {

/// Shortest round-trippable-enough text for CSV cells; "nan" for NaN.
std::string fmt(double x);

/// `#`-prefixed metadata: version, subcommand, parameter echo and seed.
std::string header(const RunConfig& rc);

/// Runs one subcommand, writing its primary output to `os`. Returns the exit code.
int run_command(const RunConfig& rc, std::ostream& os);

int cmd_pair_exact(const RunConfig& rc, std::ostream& os);
int cmd_pair_mc(const RunConfig& rc, std::ostream& os);
int cmd_continuum(const RunConfig& rc, std::ostream& os);
int cmd_fp_check(const RunConfig& rc, std::ostream& os);
int cmd_territory(const RunConfig& rc, std::ostream& os);
int cmd_verify(const RunConfig& rc, std::ostream& os);

}  // namespace antisym::cli
