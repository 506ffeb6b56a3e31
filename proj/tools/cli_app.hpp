#pragma once

/// Command-line front end over pathint::run, factored out of main so tests
/// can drive it in-process. Returns the process exit code.
int cli_main(int argc, const char* const* argv);
