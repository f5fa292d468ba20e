#pragma once

#include <cstdint>
#include <exception>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "pseudosun/cli/config.hpp"

namespace pseudosun::cli {

enum ExitCode : int { kExitOk = 0, kExitConfig = 2, kExitNumerical = 3, kExitIo = 4 };

struct RunContext {
  std::filesystem::path out_dir = ".";
  std::optional<std::uint64_t> seed;  // overrides the config seed when set
};

struct CommandResult {
  std::vector<std::filesystem::path> files;
  std::string summary;
};

inline constexpr std::string_view kCommands[] = {"spectrum", "fit", "dynamics", "heralded",
                                                 "coincidence"};

CommandResult run_spectrum(const LoadedConfig& config, const RunContext& ctx);
CommandResult run_fit(const LoadedConfig& config, const RunContext& ctx);
CommandResult run_dynamics(const LoadedConfig& config, const RunContext& ctx);
CommandResult run_heralded(const LoadedConfig& config, const RunContext& ctx);
CommandResult run_coincidence(const LoadedConfig& config, const RunContext& ctx);

/// Dispatches by name; throws ConfigError for an unknown command.
CommandResult run_command(std::string_view command, const LoadedConfig& config,
                          const RunContext& ctx);

int exit_code_for(const std::exception& e);

/// Loads the config, runs, reports to the streams, and returns the exit code.
int execute(std::string_view command, const std::filesystem::path& config_path,
            const RunContext& ctx, std::ostream& out, std::ostream& err);

}  // namespace pseudosun::cli
