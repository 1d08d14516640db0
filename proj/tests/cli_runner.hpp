#pragma once

// Helpers for driving the installed CLI binary from tests. The binary path
// arrives through the PROPFAIR_CLI environment variable, set by CTest.

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <string>

namespace testcli {

struct CommandResult {
  int exit_code = -1;
  std::string output;
};

inline std::string cli_path() {
  if (const char* env = std::getenv("PROPFAIR_CLI")) return env;
  throw std::runtime_error("PROPFAIR_CLI is not set; run these tests through ctest");
}

// Runs a shell command and captures stdout (append 2>&1 to fold in stderr).
inline CommandResult run_command(const std::string& command) {
  FILE* pipe = popen(command.c_str(), "r");
  if (pipe == nullptr) throw std::runtime_error("popen failed for: " + command);
  CommandResult result;
  std::array<char, 4096> buffer{};
  std::size_t got = 0;
  while ((got = fread(buffer.data(), 1, buffer.size(), pipe)) > 0) {
    result.output.append(buffer.data(), got);
  }
  const int status = pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

inline CommandResult run_cli(const std::string& args) {
  return run_command(cli_path() + " " + args + " 2>/dev/null");
}

inline CommandResult run_cli_merged(const std::string& args) {
  return run_command(cli_path() + " " + args + " 2>&1");
}

class TempFile {
 public:
  TempFile(const std::string& stem, const std::string& contents) {
    path_ = std::filesystem::temp_directory_path() /
            (stem + "." + std::to_string(::getpid()) + ".json");
    std::ofstream out(path_);
    out << contents;
  }
  ~TempFile() {
    std::error_code ec;
    std::filesystem::remove(path_, ec);
  }
  TempFile(const TempFile&) = delete;
  TempFile& operator=(const TempFile&) = delete;

  std::string path() const { return path_.string(); }

 private:
  std::filesystem::path path_;
};

}  // namespace testcli
