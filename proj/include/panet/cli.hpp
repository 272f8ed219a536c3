#pragma once

namespace panet {

//! Entry point of the command-line tool (subcommands: simulate, theory, fit,
//! compare, verify). Returns the process exit code; errors are reported on
//! stderr. Kept out of main() so tests can drive it in-process.
int run_cli(int argc, const char* const* argv);

}  // namespace panet
