#pragma once

// End-to-end analysis: ingest, lexicons, profile, distributions, fits and
// reports. Everything is computed in memory first, so a failing stage leaves
// no partial output behind.

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "lexstat/config.hpp"
#include "lexstat/error.hpp"

namespace lexstat {

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int usage = 1;
inline constexpr int missing_input = 2;
inline constexpr int malformed_input = 3;
inline constexpr int stage_failure = 4;
inline constexpr int output_failure = 5;
}  // namespace exit_code

class StageError : public Error {
 public:
  StageError(std::string stage, int code, const std::string& what)
      : Error("stage '" + stage + "': " + what), stage_(std::move(stage)), code_(code) {}

  const std::string& stage() const noexcept { return stage_; }
  int exit_code() const noexcept { return code_; }

 private:
  std::string stage_;
  int code_;
};

struct Bundle {
  std::map<std::string, std::string> files;  // file name -> content
  std::vector<std::string> notices;
};

// Throws StageError.
Bundle run_analysis(const RunConfig& cfg);

// Creates `dir` if needed; throws StageError("output", ...) on failure.
void write_bundle(const Bundle& bundle, const std::filesystem::path& dir);

}  // namespace lexstat
