#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace electra::cli {

inline constexpr int kExitPass = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitUsage = 2;

/// Runs one command (`table`, `figure`, `check`, `simulate`, `periodicity`).
/// `args` excludes the program name. Every command prints a one-line summary
/// starting with the command name and writes its files plus `config.json` and
/// `manifest.json` to the output directory (`--out`, else $ELECTRA_OUT, else
/// ./electra_out).
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace electra::cli
