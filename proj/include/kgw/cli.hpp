#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace kgw {

enum class Command { analyze, compute, crt, verify, fjrw_check };

struct RunConfig {
    Command command = Command::compute;
    int N = 4;
    int d = 5;
    int g = 1;
    int n = 0;
    int beta = 1;
    unsigned prime = 41;
    std::string conjugate = "1";  // an index or "all"
    bool hodge = true;
    bool paranoid = false;
    bool dump_graphs = false;
    bool assert_no_large_automorphisms = false;
    int verbosity = 0;
    std::optional<std::string> output_path;
    std::vector<std::string> inputs;  // crt
    // fjrw-check
    std::string bundle = "a:1";
    int trunc_t = 8;
    int trunc_x = 8;
    std::vector<long> weights{1, -4, 16, -64, 256};
};

/// Parses argv with flags > config file (--config, INI/TOML key = value) >
/// defaults. Returns the exit status when parsing ends the run (help or a
/// parse error), written to `err`.
std::optional<int> parse_args(int argc, const char* const* argv, RunConfig& config, std::ostream& out,
                              std::ostream& err);

/// Executes the command; JSON goes to `out` (or the output file), diagnostics
/// to `err`. Returns the process exit status.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace kgw
