#pragma once

namespace sleeve::cli {

/// CLI entry point. Subcommands: recover-atpe, recover-ogm, retrieval,
/// experiment, plot. Returns 0 on success, 2 on usage errors (unknown
/// subcommand or flag, missing config file), 1 on runtime failures.
int run(int argc, const char* const* argv);

}  // namespace sleeve::cli
