#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace mls {

/// Runs one command line (program name excluded). Exit codes: 0 for yes or
/// pass, 1 for no or fail, 2 for usage and input errors.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// FNV-1a, 64 bit.
std::uint64_t fnv1a64(const std::string& bytes);

}  // namespace mls
