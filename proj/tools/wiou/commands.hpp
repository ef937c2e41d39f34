#pragma once

namespace wiou::cli {

// Parses and dispatches the command line. Exit status: 0 on success, 1 for
// I/O or decode failures, 2 for validation failures (including bad flags).
int run(int argc, char** argv);

}  // namespace wiou::cli
