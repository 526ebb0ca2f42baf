#ifndef TNNCLUST_TOOLS_CLI_HPP
#define TNNCLUST_TOOLS_CLI_HPP

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace tnn::cli {

enum ExitCode : int {
  kOk = 0,
  kInternalError = 1,
  kUsageError = 2,
};

/// Runs one `tnnclust` invocation. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

/// FNV-1a 64 of a file's bytes, as 16 hex digits; used for manifest checksums.
std::string file_checksum(const std::filesystem::path& path);

}  // namespace tnn::cli

#endif  // TNNCLUST_TOOLS_CLI_HPP
