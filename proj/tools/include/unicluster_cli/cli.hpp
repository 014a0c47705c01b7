#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace unicluster::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitIo = 3;
inline constexpr int kExitAlgorithm = 4;

/// Entry point behind the `unicluster` executable. args excludes argv[0].
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace unicluster::cli
