#pragma once

// Command-line driver: verify, sums, sweep, bench.
//
//   deltasums <command> [--key=value ...] [--config=FILE]
//
// Flags and the config file (`key = value` per line, '#' comments) are
// parsed with CLI11; flags given on the command line override the file. Exit codes: 0 success,
// 1 a check failed, 2 configuration error.

#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>

#include "deltasums/error.hpp"
#include "deltasums/modular.hpp"

namespace deltasums::cli {

struct ConfigError : Error { using Error::Error; };

inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitConfigError = 2;

struct RunConfig {
    std::string command;
    std::map<std::string, std::string> params;  // everything except the common keys below
    std::optional<std::string> output_path;    // --out
    u64 seed = 1;                               // --seed
    int jobs = 1;                               // --jobs
};

// args excludes the program name. Throws ConfigError.
RunConfig parse_args(std::span<const std::string> args);

int cmd_verify(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_sums(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_sweep(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_bench(const RunConfig& config, std::ostream& out, std::ostream& err);

// Parses and dispatches; never throws.
int run(std::span<const std::string> args, std::ostream& out, std::ostream& err);

std::string usage();

}  // namespace deltasums::cli
