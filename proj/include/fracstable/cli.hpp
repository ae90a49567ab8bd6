#pragma once

#include <cstdint>
#include <string>

namespace fracstable::cli {

/// Exit statuses of the command-line tool.
enum ExitCode : int { kOk = 0, kValidation = 2, kAccuracy = 3, kVerification = 4 };

/// Entry point of `fracstable sample|solve|telegraph|limit|verify`.
int main(int argc, char** argv);

/// Shortest decimal string that parses back to the same double.
std::string format_double(double value);

/// 64-bit FNV-1a hash, used to tag outputs with their configuration.
std::uint64_t fnv1a64(const std::string& data);

}  // namespace fracstable::cli
