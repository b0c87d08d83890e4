#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace torlin::cli {

enum class Format { json, csv };

struct ExperimentConfig {
  std::string command;
  std::filesystem::path alpha_path;
  std::filesystem::path function_path;
  std::filesystem::path form_path;
  std::filesystem::path curve_path;
  std::optional<std::int64_t> radius;
  std::optional<double> tau;
  int cutoff = 3;
  int samples = 100;
  std::uint64_t seed = 1;
  std::optional<double> eps_res;
  std::vector<int> schedule{1, 2, 6, 24};
  std::vector<double> basepoint;
  std::filesystem::path out_dir;
  std::optional<Format> format;
};

const std::vector<std::string>& commands();

/// Exit status: 0 success, 1 domain error, 2 malformed input, 3 internal failure.
/// Results go to `out` or to <out_dir>/<command>.<ext>; error records go to `err`.
int run(const ExperimentConfig& config, std::ostream& out, std::ostream& err);

/// One-line JSON error record.
std::string error_record(const std::string& kind, const std::string& message);

}  // namespace torlin::cli
