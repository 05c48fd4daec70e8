#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include "canal/router.hpp"

namespace canal::cli {

enum class Subcommand { route, analyze, train, bench };

struct CliInvocation {
    Subcommand subcommand = Subcommand::route;
    std::string input_path;
    Algorithm algorithm = Algorithm::adaptive;
    std::optional<std::string> bank_path;
    std::optional<int> max_rows;  // default: channel density + 2
    std::optional<std::string> svg_out;
    std::optional<std::string> dot_out;
    std::optional<std::string> vcg_dot_out;
    std::optional<std::string> report_out;
    std::uint64_t seed = 0;
    int trials = 20;
    int instances = 200;
    int buckets = kDefaultBucketCount;
};

/// Exit codes: 0 success, 1 usage/parse/IO error, 2 routing failure, 3 validation violations.
int run(const CliInvocation& invocation, std::ostream& out, std::ostream& err);

/// Parses argv (subcommand first) and calls run().
int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace canal::cli
