#pragma once

namespace amp {

// Full command-line entry point; returns the process exit status.
// Subcommands: example1, example2, custom, decompose, export-atoms.
// Flags: --config <path>, --out <dir>, --set key=value (repeatable), --svg.
int cli_main(int argc, const char* const* argv);

}  // namespace amp
