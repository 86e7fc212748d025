#pragma once

#include <string>
#include <vector>

namespace grd {

/// CLI entry point (the `grd` binary is a thin wrapper). Subcommands:
/// growth, classify-graph, rdtest, reduce-check, multiplier, axioms.
/// Exit codes: 0 all checks pass, 1 a check failed, 2 input error.
/// All randomness derives from one seed (--seed, env GRD_SEED, default 0);
/// reports are byte-identical for identical (command, params, seed) at any
/// worker count.
int run(const std::vector<std::string>& args);

int run(int argc, char** argv);

}  // namespace grd
