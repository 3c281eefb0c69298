#ifndef DEFFUANT_CLI_COMMANDS_HPP
#define DEFFUANT_CLI_COMMANDS_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "deffuant/cli/run_config.hpp"

namespace deffuant::cli
{

/// Parses `args` (without the program name) and runs one command. Returns an ExitCode.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int cmd_bound(const RunConfig& config, std::ostream& out);
int cmd_simulate(const RunConfig& config, std::ostream& out);
int cmd_sweep(const RunConfig& config, std::ostream& out);
int cmd_check(const RunConfig& config, std::ostream& out);

/// Shortest round-trip decimal form.
std::string format_double(double value);

/// Appends rows to a CSV file, writing `header` only when the file is new or empty.
/// Throws IoError if the file exists with a different header.
void append_csv(const std::string& path, const std::string& header, const std::vector<std::string>& rows);

} // namespace deffuant::cli

#endif
