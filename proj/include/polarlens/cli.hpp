#pragma once

namespace polarlens {

// Entry point for the polarlens command. Exit codes: 0 success, 1 usage
// error, 2 data error, 3 numerical degeneracy.
int run(int argc, const char* const* argv);

} // namespace polarlens
